#include "kzq/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kzq/error.hpp"

namespace kzq {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) { return powmod(a, m - 2, m); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(u64 p) {
  std::vector<u64> factors;
  u64 n = p - 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    factors.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (u64 q : factors)
      if (powmod(g, (p - 1) / q, p) == 1) ok = false;
    if (ok) return g;
  }
}

using Vec = std::vector<u64>;

// Row echelon basis of span(rows) with pivot entries 1, fully reduced.
struct Space {
  std::vector<Vec> basis;
  std::vector<std::size_t> pivots;
  int retries = 0;
};

Space echelon(std::vector<Vec> rows, u64 p) {
  Space s;
  if (rows.empty()) return s;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    u64 inv = invmod(rows[r][col], p);
    for (u64& x : rows[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      u64 f = rows[i][col];
      for (std::size_t k = 0; k < n; ++k) rows[i][k] = (rows[i][k] + p - mulmod(f, rows[r][k], p)) % p;
    }
    s.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  s.basis = std::move(rows);
  return s;
}

// Null space of a square matrix (as basis vectors).
std::vector<Vec> nullspace(std::vector<Vec> m, u64 p) {
  const std::size_t n = m.size();
  Space s = echelon(std::move(m), p);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : s.pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < s.pivots.size(); ++i) v[s.pivots[i]] = (p - s.basis[i][free]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CharacterTable CharacterTable::compute(const FiniteGroup& g, std::uint64_t seed) {
  const ClassData& cd = g.classes();
  const std::size_t k = cd.count();
  const u64 order = g.order();
  const u64 e = cd.exponent();

  u64 bound = 2 * static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  while ((bound / 2) * (bound / 2) < order) bound += 2;
  u64 p = e + 1;
  while (p <= bound || !is_prime(p)) p += e;

  // c[j][a][l] = #{x in C_j : x^-1 z_l in C_a}; M_j has entries (a, l).
  std::vector<std::vector<std::vector<u64>>> c(k, std::vector<std::vector<u64>>(k, std::vector<u64>(k, 0)));
  for (std::size_t l = 0; l < k; ++l) {
    Elem z = cd.at(l).representative;
    for (Elem x = 0; x < order; ++x) ++c[cd.class_of(x)][cd.class_of(g.mul(g.inv(x), z))][l];
  }

  std::mt19937_64 rng(seed);
  std::vector<Space> done;
  std::vector<Space> work;
  {
    std::vector<Vec> id(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    work.push_back(echelon(id, p));
  }
  while (!work.empty()) {
    Space sp = std::move(work.back());
    work.pop_back();
    const std::size_t d = sp.basis.size();
    if (d == 1) {
      done.push_back(std::move(sp));
      continue;
    }
    if (sp.retries >= 64) throw Error(ErrorCode::Internal, "eigenspace splitting failed after 64 attempts");
    ++sp.retries;
    std::vector<u64> coef(k);
    for (u64& r : coef) r = rng() % p;
    // A = sum_j coef_j M_j; R[i][m] = (A v_m)[pivot_i].
    std::vector<Vec> av(d, Vec(k, 0));
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t a = 0; a < k; ++a) {
        u64 acc = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (coef[j] == 0) continue;
          u64 row = 0;
          for (std::size_t l = 0; l < k; ++l)
            if (c[j][a][l]) row = (row + mulmod(c[j][a][l] % p, sp.basis[m][l], p)) % p;
          acc = (acc + mulmod(coef[j], row, p)) % p;
        }
        av[m][a] = acc;
      }
    std::vector<Vec> R(d, Vec(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m) R[i][m] = av[m][sp.pivots[i]];
    std::vector<Space> parts;
    std::size_t total = 0;
    for (u64 lambda = 0; lambda < p && total < d; ++lambda) {
      std::vector<Vec> S = R;
      for (std::size_t i = 0; i < d; ++i) S[i][i] = (S[i][i] + p - lambda) % p;
      std::vector<Vec> ns = nullspace(S, p);
      if (ns.empty()) continue;
      std::vector<Vec> vecs;
      for (const Vec& u : ns) {
        Vec v(k, 0);
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t l = 0; l < k; ++l) v[l] = (v[l] + mulmod(u[m], sp.basis[m][l], p)) % p;
        vecs.push_back(std::move(v));
      }
      total += vecs.size();
      parts.push_back(echelon(std::move(vecs), p));
    }
    if (total != d) throw Error(ErrorCode::Internal, "class matrix combination not diagonalizable");
    if (parts.size() == 1) {
      work.push_back(std::move(sp));
      continue;
    }
    for (Space& s : parts) work.push_back(std::move(s));
  }
  if (done.size() != k) throw Error(ErrorCode::Internal, "character count differs from class count");

  const std::vector<std::size_t> inv_class(cd.inverse_map().begin(), cd.inverse_map().end());
  const u64 root = powmod(primitive_root(p), (p - 1) / e, p);
  std::vector<ClassFunction> rows;
  for (const Space& s : done) {
    const Vec& w = s.basis[0];
    if (s.pivots[0] != 0) throw Error(ErrorCode::Internal, "central character vanishes at identity");
    u64 sum = 0;
    for (std::size_t a = 0; a < k; ++a)
      sum = (sum + mulmod(mulmod(w[a], w[inv_class[a]], p), invmod(cd.size(a) % p, p), p)) % p;
    u64 d2 = mulmod(order % p, invmod(sum, p), p);
    u64 deg = 0;
    for (u64 x = 1; x <= p / 2; ++x)
      if (mulmod(x, x, p) == d2) {
        deg = x;
        break;
      }
    if (deg == 0 || deg * deg > order || order % deg) throw Error(ErrorCode::Internal, "degree recovery failed");
    Vec chi(k);
    for (std::size_t a = 0; a < k; ++a) chi[a] = mulmod(mulmod(w[a], deg, p), invmod(cd.size(a) % p, p), p);

    ClassFunction row(k);
    for (std::size_t a = 0; a < k; ++a) {
      const u64 o = cd.order(a);
      const u64 zo = powmod(root, e / o, p);
      const u64 inv_o = invmod(o % p, p);
      std::vector<Rat> mu(o, 0);
      for (u64 j = 0; j < o; ++j) {
        u64 acc = 0;
        for (u64 i = 0; i < o; ++i) {
          u64 val = chi[cd.power(a, static_cast<long long>(i))];
          u64 tw = powmod(zo, (o - (i * j) % o) % o, p);
          acc = (acc + mulmod(val, tw, p)) % p;
        }
        acc = mulmod(acc, inv_o, p);
        if (acc > deg) throw Error(ErrorCode::Internal, "eigenvalue multiplicity out of range");
        mu[j] = static_cast<long>(acc);
      }
      row[a] = Cyclotomic::from_dense(static_cast<unsigned>(o), mu);
    }
    rows.push_back(std::move(row));
  }

  auto fingerprint = [](const ClassFunction& f) { return kzq::render(f); };
  auto is_trivial = [](const ClassFunction& f) {
    return std::all_of(f.begin(), f.end(), [](const Cyclotomic& x) { return x == Cyclotomic(1); });
  };
  std::vector<std::tuple<int, Rat, std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < rows.size(); ++i)
    keys.emplace_back(is_trivial(rows[i]) ? 0 : 1, *rows[i][0].rational(), fingerprint(rows[i]), i);
  std::sort(keys.begin(), keys.end());
  CharacterTable t;
  t.group_ = g;
  t.prime_ = p;
  t.seed_ = seed;
  for (const auto& key : keys) t.rows_.push_back(rows[std::get<3>(key)]);

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Cyclotomic ip = inner_product(t.rows_[i], t.rows_[j], g);
      if (ip != Cyclotomic(i == j ? 1 : 0)) throw Error(ErrorCode::Internal, "computed table fails orthogonality");
    }
  return t;
}

long CharacterTable::degree(std::size_t i) const {
  return rows_.at(i).at(0).rational()->get_num().get_si();
}

std::string render(const ClassFunction& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? " | " : "") + f[i].str();
  return out;
}

std::string CharacterTable::render() const {
  const ClassData& cd = classes();
  std::ostringstream out;
  out << "order:";
  for (std::size_t c = 0; c < cd.count(); ++c) out << ' ' << cd.order(c);
  out << "\nsize:";
  for (std::size_t c = 0; c < cd.count(); ++c) out << ' ' << cd.size(c);
  out << '\n';
  for (std::size_t i = 0; i < rows_.size(); ++i) out << "X." << (i + 1) << ": " << kzq::render(rows_[i]) << '\n';
  return out.str();
}

CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed) {
  return CharacterTable::compute(g, seed);
}

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b, const FiniteGroup& g) {
  const ClassData& cd = g.classes();
  if (a.size() != cd.count() || b.size() != cd.count())
    throw Error(ErrorCode::InvalidArgument, "class function length differs from class count");
  auto inv = cd.inverse_map();
  Cyclotomic sum;
  for (std::size_t c = 0; c < cd.count(); ++c) {
    if (a[c].is_zero()) continue;
    sum += Cyclotomic(static_cast<long>(cd.size(c))) * a[c] * b[inv[c]];
  }
  return sum * Cyclotomic(Rat(1, static_cast<unsigned long>(g.order())));
}

ClassFunction trivial_character(const FiniteGroup& g) { return ClassFunction(g.classes().count(), Cyclotomic(1)); }

ClassFunction regular_character(const FiniteGroup& g) {
  ClassFunction f(g.classes().count(), Cyclotomic(0));
  f[0] = Cyclotomic(static_cast<long>(g.order()));
  return f;
}

ClassFunction induce(const GroupHom& h, const ClassFunction& f) {
  h.require_injective();
  const ClassData& hc = h.source().classes();
  const ClassData& kc = h.target().classes();
  if (f.size() != hc.count()) throw Error(ErrorCode::InvalidArgument, "class function length differs from class count");
  auto fusion = h.class_fusion();
  std::vector<Cyclotomic> sums(kc.count());
  for (std::size_t c = 0; c < hc.count(); ++c)
    sums[fusion[c]] += Cyclotomic(static_cast<long>(hc.size(c))) * f[c];
  ClassFunction out(kc.count());
  const long nk = static_cast<long>(h.target().order());
  const long nh = static_cast<long>(h.source().order());
  for (std::size_t k = 0; k < kc.count(); ++k)
    out[k] = sums[k] * Cyclotomic(Rat(nk, static_cast<unsigned long>(nh * static_cast<long>(kc.size(k)))));
  return out;
}

ClassFunction restrict(const GroupHom& h, const ClassFunction& f) {
  if (f.size() != h.target().classes().count())
    throw Error(ErrorCode::InvalidArgument, "class function length differs from class count");
  auto fusion = h.class_fusion();
  ClassFunction out(fusion.size());
  for (std::size_t c = 0; c < fusion.size(); ++c) out[c] = f[fusion[c]];
  return out;
}

ClassFunction power_twist(const ClassData& cd, const ClassFunction& f, long long k) {
  ClassFunction out(f.size());
  auto pm = cd.power_map(k);
  for (std::size_t c = 0; c < f.size(); ++c) out[c] = f[pm[c]];
  return out;
}

}  // namespace kzq
