#include "oracle.hpp"

#include <numeric>
#include <set>

namespace kzq::oracle {

Int det_expand(const IntMat& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMat minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = m(r, k);
    Int term = m(0, c) * det_expand(minor);
    total += (c % 2 == 0) ? term : Int(-term);
  }
  return total;
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return abs(a);
  }
  Int x1, y1;
  Int q = a / b;  // truncating
  Int r = a - q * b;
  Int g = ext_gcd(b, r, x1, y1);
  x = y1;
  y = x1 - q * y1;
  return g;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::vector<Int> invariant_factors(const IntMat& m) {
  std::vector<Int> out;
  Int prev = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Int d = 0;
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k)) {
        IntMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
        Int v = det_expand(sub);
        mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
      }
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

IntMat hnf(const IntMat& m) {
  IntMat h = m;
  const std::size_t n = h.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.rows() && k < n; ++i) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      Int a = h(i, k), b = h(i, j), x, y;
      Int g = ext_gcd(a, b, x, y);
      Int u = -b / g, v = a / g;
      for (std::size_t r = 0; r < h.rows(); ++r) {
        Int ck = h(r, k), cj = h(r, j);
        h(r, k) = x * ck + y * cj;
        h(r, j) = u * ck + v * cj;
      }
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0)
      for (std::size_t r = 0; r < h.rows(); ++r) h(r, k) = -h(r, k);
    for (std::size_t j = 0; j < k; ++j) {
      Int q = floor_div(h(i, j), h(i, k));
      for (std::size_t r = 0; r < h.rows(); ++r) h(r, j) -= q * h(r, k);
    }
    ++k;
  }
  return h;
}

IntMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

bool orthogonal(const CharacterTable& t, std::string* why) {
  const ClassData& cd = t.classes();
  const std::size_t k = cd.count();
  const Cyclotomic order(static_cast<long>(t.group().order()));
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (t.size() != k) return fail("row count differs from class count");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Cyclotomic s;
      for (std::size_t c = 0; c < k; ++c)
        s += Cyclotomic(static_cast<long>(cd.size(c))) * t.value(i, c) * t.value(j, c).conj();
      if (s != (i == j ? order : Cyclotomic()))
        return fail("rows " + std::to_string(i) + "," + std::to_string(j));
    }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = c; d < k; ++d) {
      Cyclotomic s;
      for (std::size_t i = 0; i < k; ++i) s += t.value(i, c) * t.value(i, d).conj();
      Cyclotomic want = c == d ? Cyclotomic(Rat(t.group().order(), cd.size(c))) : Cyclotomic();
      if (s != want) return fail("columns " + std::to_string(c) + "," + std::to_string(d));
    }
  return true;
}

namespace {

std::vector<unsigned> units_for(unsigned o, FieldTag field) {
  std::vector<unsigned> out;
  unsigned m = o;
  if (field.kind == FieldKind::Qp)
    while (m % field.p == 0) m /= field.p;
  for (unsigned t = 1; t <= o; ++t) {
    if (std::gcd(t, o) != 1) continue;
    if (field.kind == FieldKind::Q) {
      out.push_back(t);
      continue;
    }
    unsigned mod = field.kind == FieldKind::Qp ? m : o;
    if (mod == 1) {
      out.push_back(t);
      continue;
    }
    unsigned pw = 1 % mod;
    bool hit = false;
    for (unsigned s = 0; s <= mod && !hit; ++s) {
      if (pw == t % mod) hit = true;
      pw = static_cast<unsigned>((static_cast<unsigned long>(pw) * field.p) % mod);
    }
    if (hit) out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> element_components(const FiniteGroup& g, FieldTag field, std::size_t& count) {
  const std::size_t n = g.order();
  std::vector<std::size_t> comp(n, static_cast<std::size_t>(-1));
  count = 0;
  for (Elem x = 0; x < n; ++x) {
    if (comp[x] != static_cast<std::size_t>(-1)) continue;
    unsigned o = g.element_order(x);
    if (field.kind == FieldKind::Fp && o % field.p == 0) continue;
    for (unsigned t : units_for(o, field)) {
      Elem z = g.pow(x, t);
      for (Elem y = 0; y < n; ++y) comp[g.mul(g.mul(g.inv(y), z), y)] = count;
    }
    ++count;
  }
  return comp;
}

}  // namespace

std::size_t galois_orbit_count(const FiniteGroup& g, FieldTag field) {
  std::size_t count = 0;
  element_components(g, field, count);
  return count;
}

std::size_t rational_class_orbits(const GroupHom& t) {
  const FiniteGroup& g = t.source();
  std::size_t count = 0;
  auto comp = element_components(g, FieldTag::rationals(), count);
  std::vector<std::size_t> perm(count);
  for (Elem x = 0; x < g.order(); ++x) perm[comp[x]] = comp[t(x)];
  std::vector<bool> seen(count, false);
  std::size_t orbits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (seen[i]) continue;
    ++orbits;
    for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return orbits;
}

namespace {

Int map_entry(long x, long d_src, long d_tgt) {
  if (d_src == 0) return x;
  if (d_tgt == 0) return 0;
  return Int(x) * (d_tgt / std::gcd(d_tgt, d_src));
}

struct Unimodular {
  IntMat u, inv;
};

Unimodular random_unimodular(std::mt19937_64& rng, std::size_t n) {
  Unimodular r{IntMat::identity(n), IntMat::identity(n)};
  if (n < 2) return r;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int step = 0; step < 4; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    long c = coef(rng);
    IntMat e = IntMat::identity(n), einv = IntMat::identity(n);
    e(i, j) = c;
    einv(i, j) = -c;
    r.u = r.u * e;
    r.inv = einv * r.inv;
  }
  return r;
}

IntMat diag(const std::vector<long>& d) {
  IntMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

struct Side {
  std::vector<long> da, dc;
  Unimodular basis;
  FgAbGroup A, B, C;
  AbMap i, p;
};

Side random_side(std::mt19937_64& rng) {
  static const long moduli[] = {0, 1, 2, 3, 4, 6};
  std::uniform_int_distribution<std::size_t> dim(0, 2), mod(0, 5);
  Side s;
  std::size_t a = dim(rng), c = dim(rng);
  for (std::size_t k = 0; k < a; ++k) s.da.push_back(moduli[mod(rng)]);
  for (std::size_t k = 0; k < c; ++k) s.dc.push_back(moduli[mod(rng)]);
  std::vector<long> db = s.da;
  db.insert(db.end(), s.dc.begin(), s.dc.end());
  s.basis = random_unimodular(rng, a + c);
  s.A = FgAbGroup(a, diag(s.da));
  s.C = FgAbGroup(c, diag(s.dc));
  s.B = FgAbGroup(a + c, s.basis.u * diag(db));
  IntMat incl(a + c, a), proj(c, a + c);
  for (std::size_t k = 0; k < a; ++k) incl(k, k) = 1;
  for (std::size_t k = 0; k < c; ++k) proj(k, a + k) = 1;
  s.i = AbMap(s.A, s.B, s.basis.u * incl);
  s.p = AbMap(s.B, s.C, proj * s.basis.inv);
  return s;
}

}  // namespace

Ladder random_ladder(std::mt19937_64& rng) {
  Side top = random_side(rng), bot = random_side(rng);
  std::uniform_int_distribution<long> coef(-3, 3);
  const std::size_t a = top.da.size(), c = top.dc.size();
  const std::size_t a2 = bot.da.size(), c2 = bot.dc.size();
  IntMat X(a2, a), Y(a2, c), Z(c2, c);
  for (std::size_t j = 0; j < a2; ++j)
    for (std::size_t i = 0; i < a; ++i) X(j, i) = map_entry(coef(rng), top.da[i], bot.da[j]);
  for (std::size_t j = 0; j < a2; ++j)
    for (std::size_t i = 0; i < c; ++i) Y(j, i) = map_entry(coef(rng), top.dc[i], bot.da[j]);
  for (std::size_t j = 0; j < c2; ++j)
    for (std::size_t i = 0; i < c; ++i) Z(j, i) = map_entry(coef(rng), top.dc[i], bot.dc[j]);
  IntMat fb = IntMat::vcat(IntMat::hcat(X, Y), IntMat::hcat(IntMat(c2, a), Z));
  bool finite = true;
  for (const auto* v : {&top.da, &top.dc, &bot.da, &bot.dc})
    for (long d : *v)
      if (d == 0) finite = false;
  return Ladder{ShortExactSeq(top.i, top.p), ShortExactSeq(bot.i, bot.p), AbMap(top.A, bot.A, X),
                AbMap(top.B, bot.B, bot.basis.u * fb * top.basis.inv), AbMap(top.C, bot.C, Z), finite};
}

Int order(const AbType& t) {
  if (t.rank > 0) return 0;
  Int n = 1;
  for (const auto& d : t.torsion) n *= d;
  return n;
}

bool six_term_consistent(const SnakeResult& s, const Ladder& l, std::string* why) {
  (void)l;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!s.ker_ab.then(s.ker_bc).is_zero()) return fail("ker_a -> ker_c nonzero");
  if (!s.ker_bc.then(s.delta).is_zero()) return fail("ker_b -> cok_a nonzero");
  if (!s.delta.then(s.cok_ab).is_zero()) return fail("ker_c -> cok_b nonzero");
  if (!s.cok_ab.then(s.cok_bc).is_zero()) return fail("cok_a -> cok_c nonzero");
  const AbType* seq[] = {&s.ker_a.group.type(), &s.ker_b.group.type(), &s.ker_c.group.type(),
                         &s.cok_a.group.type(), &s.cok_b.group.type(), &s.cok_c.group.type()};
  long ranks = 0;
  for (int k = 0; k < 6; ++k) ranks += (k % 2 == 0 ? 1 : -1) * static_cast<long>(seq[k]->rank);
  if (ranks != 0) return fail("alternating rank sum " + std::to_string(ranks));
  bool all_finite = true;
  for (const auto* t : seq)
    if (t->rank > 0) all_finite = false;
  if (all_finite) {
    Rat q = 1;
    for (int k = 0; k < 6; ++k) q = k % 2 == 0 ? Rat(q * order(*seq[k])) : Rat(q / order(*seq[k]));
    if (q != 1) return fail("alternating order product " + q.get_str());
  }
  return true;
}

}  // namespace kzq::oracle
