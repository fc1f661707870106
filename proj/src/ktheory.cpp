#include "kzq/ktheory.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kzq/error.hpp"

namespace kzq {

namespace {

Int to_int(const Rat& q, ErrorCode code, const std::string& what) {
  if (q.get_den() != 1) throw Error(code, what + ": " + q.get_str());
  return q.get_num();
}

std::vector<unsigned> merge_primes(std::vector<unsigned> primes, unsigned long order) {
  if (primes.empty()) return prime_divisors(order);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (unsigned p : primes)
    if (!is_prime_number(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  return primes;
}

bool divides(unsigned p, unsigned long n) { return n % p == 0; }

// Block-diagonal sum of a list of groups.
FgAbGroup sum_groups(const std::vector<FgAbGroup>& gs) {
  FgAbGroup out = FgAbGroup::free(0);
  for (const auto& g : gs) out = FgAbGroup::direct_sum(out, g);
  return out;
}

AbMap sum_maps(const std::vector<AbMap>& ms) {
  if (ms.empty()) return AbMap::zero(FgAbGroup::free(0), FgAbGroup::free(0));
  AbMap out = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) out = diag_sum(out, ms[i]);
  return out;
}

void add_block(IntMat& m, std::size_t r0, std::size_t c0, const IntMat& b, int sign) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) += sign * b(r, c);
}

}  // namespace

const std::vector<QpIrr>& GroupData::qp(unsigned p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = qp_cache_.find(p);
  if (it == qp_cache_.end())
    it = qp_cache_.emplace(p, qp_irreducible_characters(table, p, irrs)).first;
  return it->second;
}

std::shared_ptr<const GroupData> analyze(const FiniteGroup& g, const SchurProvider& provider,
                                         std::uint64_t seed) {
  auto d = std::make_shared<GroupData>(g, CharacterTable::compute(g, seed));
  d->fingerprint = group_fingerprint(d->table);
  d->irrs = rational_irreducibles(d->table, provider);
  return d;
}

std::shared_ptr<const GroupData> Analyzer::get(const FiniteGroup& g) {
  if (g.label().empty()) return analyze(g, provider_, seed_);
  auto it = cache_.find(g.label());
  if (it != cache_.end() && it->second->group.order() == g.order()) return it->second;
  auto d = analyze(g, provider_, seed_);
  cache_[g.label()] = d;
  return d;
}

K0QBasis k0q(const GroupData& g) {
  std::size_t n = g.r_q();
  std::vector<Int> reg(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& I = g.irrs[i];
    long deg = I.constituent_degree;  // multiplicity of V_I in QG is chi(1)/m(I)
    if (deg % static_cast<long>(I.schur.m_global) != 0)
      throw Error(ErrorCode::DataConflict, "Schur index does not divide the degree");
    reg[i] = deg / static_cast<long>(I.schur.m_global);
  }
  FgAbGroup lattice = FgAbGroup::free(n);
  FgAbGroup reduced(n, IntMat::from_columns(n, {reg}));
  return {lattice, reduced, reg};
}

SCGroup sc_group(const GroupData& g, std::vector<unsigned> primes) {
  primes = merge_primes(std::move(primes), g.group.order());
  const auto& cd = g.group.classes();
  unsigned e = cd.exponent();
  std::size_t ph = euler_phi(e);

  SCGroup out;
  out.primes = primes;
  std::vector<FgAbGroup> groups;
  std::vector<IntMat> res_blocks;
  for (unsigned p : primes) {
    SCBlock b;
    b.p = p;
    if (!divides(p, g.group.order())) {
      b.group = FgAbGroup::free(0);
      b.flattened = IntMat(0, 0);
      groups.push_back(b.group);
      res_blocks.push_back(IntMat(0, g.r_q()));
      out.blocks.push_back(std::move(b));
      continue;
    }
    const auto& qps = g.qp(p);
    for (std::size_t c = 0; c < cd.count(); ++c)
      if (cd.order(c) % p == 0) b.singular_classes.push_back(c);
    std::size_t n = qps.size();
    IntMat F(b.singular_classes.size() * ph, n);
    std::vector<std::vector<Int>> cols;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> col;
      for (std::size_t k = 0; k < b.singular_classes.size(); ++k) {
        auto co = qps[j].character[b.singular_classes[k]].coords(e);
        for (std::size_t t = 0; t < ph; ++t) {
          Int v = to_int(co[t], ErrorCode::DataConflict, "non-integral Q_p character value");
          F(k * ph + t, j) = v;
          col.push_back(v);
        }
      }
      cols.push_back(std::move(col));
    }
    b.flattened = F;
    b.group = FgAbGroup(n, kernel_basis(F));
    b.rank = lattice_of_columns(F.rows(), cols).rank;

    IntMat R(n, g.r_q());
    for (std::size_t j = 0; j < n; ++j) {
      unsigned m = g.irrs[qps[j].parent].schur.m_global;
      if (m % qps[j].m_p != 0)
        throw Error(ErrorCode::DataConflict, "local Schur index does not divide the global one");
      R(j, qps[j].parent) = m / qps[j].m_p;
    }
    groups.push_back(b.group);
    res_blocks.push_back(R);
    out.blocks.push_back(std::move(b));
  }
  out.group = sum_groups(groups);
  IntMat R(0, g.r_q());
  for (const auto& b : res_blocks) R = IntMat::vcat(R, b);
  K0QBasis k = k0q(g);
  out.restriction_unreduced = AbMap(k.lattice, out.group, R);
  out.restriction = AbMap(k.reduced, out.group, R);
  for (const auto& b : out.blocks) out.rank += b.rank;
  return out;
}

KTheoryReport carter(const GroupData& g) {
  KTheoryReport r;
  r.group = g.group.label();
  r.r_q = galois_partition(g.group, FieldTag::rationals()).orbit_count();
  if (r.r_q != g.r_q())
    throw Error(ErrorCode::Internal, "rational class count differs from rational irreducible count");
  long rank = 1 - static_cast<long>(r.r_q);
  for (unsigned p : prime_divisors(g.group.order())) {
    r.r_qp[p] = galois_partition(g.group, FieldTag::padic(p)).orbit_count();
    r.r_fp[p] = galois_partition(g.group, FieldTag::finite(p)).orbit_count();
    rank += static_cast<long>(r.r_qp[p]) - static_cast<long>(r.r_fp[p]);
  }
  r.carter_rank = rank;
  r.s = s_count(g.irrs, g.group.order());
  r.k_minus_1.rank = static_cast<std::size_t>(std::max(0L, rank));
  r.k_minus_1.torsion.assign(r.s, Int(2));
  return r;
}

KMinus1 k_minus_1_via_sc(const GroupData& g, std::vector<unsigned> primes) {
  KMinus1 out{k0q(g), sc_group(g, std::move(primes)), {}, false};
  out.k_minus_1 = cokernel(out.sc.restriction);
  try {
    ShortExactSeq seq(out.sc.restriction, out.k_minus_1.proj);
    out.exact = true;
  } catch (const Error&) {
    out.exact = false;
  }
  return out;
}

KTheoryReport invariants(const GroupData& g) {
  KTheoryReport r = carter(g);
  KMinus1 k = k_minus_1_via_sc(g);
  r.k_minus_1_sc = k.k_minus_1.group.type();
  r.sc_rank = k.sc.rank;
  r.sequence_exact = k.exact;
  r.agreement = k.exact && r.k_minus_1 == r.k_minus_1_sc && r.carter_rank >= 0;
  return r;
}

IntMat induction_matrix(const GroupHom& e, const GroupData& h, const GroupData& k) {
  e.require_injective();
  IntMat M(k.r_q(), h.r_q());
  for (std::size_t i = 0; i < h.r_q(); ++i) {
    ClassFunction ind = induce(e, h.irrs[i].character);
    for (std::size_t j = 0; j < k.r_q(); ++j) {
      const auto& J = k.irrs[j];
      auto ip = inner_product(ind, k.table.row(J.orbit.front()), k.group).rational();
      if (!ip) throw Error(ErrorCode::NonIntegralCoefficient, "irrational induction coefficient");
      Int a = to_int(*ip / Rat(J.schur.m_global), ErrorCode::NonIntegralCoefficient,
                     "induction coefficient");
      if (a < 0) throw Error(ErrorCode::NonIntegralCoefficient, "negative induction coefficient");
      M(j, i) = a;
    }
  }
  return M;
}

IntMat induction_matrix_qp(const GroupHom& e, const GroupData& h, const GroupData& k, unsigned p) {
  if (!divides(p, h.group.order()) || !divides(p, k.group.order())) {
    std::size_t rows = divides(p, k.group.order()) ? k.qp(p).size() : 0;
    std::size_t cols = divides(p, h.group.order()) ? h.qp(p).size() : 0;
    if (cols != 0 && rows == 0)
      throw Error(ErrorCode::InvalidArgument, "prime divides the subgroup but not the group");
    return IntMat(rows, cols);
  }
  e.require_injective();
  const auto& hq = h.qp(p);
  const auto& kq = k.qp(p);
  IntMat M(kq.size(), hq.size());
  for (std::size_t i = 0; i < hq.size(); ++i) {
    ClassFunction ind = induce(e, hq[i].character);
    for (std::size_t j = 0; j < kq.size(); ++j) {
      auto ip = inner_product(ind, k.table.row(kq[j].members.front()), k.group).rational();
      if (!ip) throw Error(ErrorCode::NonIntegralCoefficient, "irrational induction coefficient");
      Int a = to_int(*ip / Rat(kq[j].m_p), ErrorCode::NonIntegralCoefficient,
                     "local induction coefficient");
      if (a < 0) throw Error(ErrorCode::NonIntegralCoefficient, "negative induction coefficient");
      M(j, i) = a;
    }
  }
  return M;
}

AbMap induction_on_k0q(const GroupHom& e, const GroupData& h, const GroupData& k) {
  return AbMap(k0q(h).reduced, k0q(k).reduced, induction_matrix(e, h, k));
}

ImageResult image_from_one_skeleton(const OneSkeleton& sk) {
  if (sk.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty skeleton");
  std::set<unsigned> pset;
  for (const auto& v : sk.vertices)
    for (unsigned p : prime_divisors(v->group.order())) pset.insert(p);
  for (const auto& e : sk.edges) {
    if (e.f_vertex >= sk.vertices.size() || e.g_vertex >= sk.vertices.size())
      throw Error(ErrorCode::InvalidArgument, "edge vertex out of range");
    for (unsigned p : prime_divisors(e.group->group.order())) pset.insert(p);
  }
  std::vector<unsigned> primes(pset.begin(), pset.end());
  if (primes.empty()) primes.push_back(2);

  struct Side {
    std::vector<KMinus1> parts;
    FgAbGroup a, a_free, b, c, c_free;
    AbMap i, p, i_free, p_free;
    std::vector<std::size_t> a_off, b_off;                 // per group
    std::vector<std::vector<std::size_t>> b_prime_off;     // per group, per prime
  };
  auto build = [&](const std::vector<const GroupData*>& gs) {
    Side s;
    std::vector<FgAbGroup> as, afs, bs, cs, cfs;
    std::vector<AbMap> is, ps, ifs, pfs;
    std::size_t ao = 0, bo = 0;
    for (const auto* g : gs) {
      KMinus1 k = k_minus_1_via_sc(*g, primes);
      Cokernel cf = cokernel(k.sc.restriction_unreduced);
      s.a_off.push_back(ao);
      s.b_off.push_back(bo);
      std::vector<std::size_t> po;
      std::size_t o = bo;
      for (const auto& b : k.sc.blocks) {
        po.push_back(o);
        o += b.group.n_gens();
      }
      s.b_prime_off.push_back(po);
      ao += k.k0q.reduced.n_gens();
      bo += k.sc.group.n_gens();
      as.push_back(k.k0q.reduced);
      afs.push_back(k.k0q.lattice);
      bs.push_back(k.sc.group);
      cs.push_back(k.k_minus_1.group);
      cfs.push_back(cf.group);
      is.push_back(k.sc.restriction);
      ps.push_back(k.k_minus_1.proj);
      ifs.push_back(k.sc.restriction_unreduced);
      pfs.push_back(cf.proj);
      s.parts.push_back(std::move(k));
    }
    s.a = sum_groups(as);
    s.a_free = sum_groups(afs);
    s.b = sum_groups(bs);
    s.c = sum_groups(cs);
    s.c_free = sum_groups(cfs);
    s.i = sum_maps(is);
    s.p = sum_maps(ps);
    s.i_free = sum_maps(ifs);
    s.p_free = sum_maps(pfs);
    return s;
  };
  std::vector<const GroupData*> eg, vg;
  for (const auto& e : sk.edges) eg.push_back(e.group.get());
  for (const auto& v : sk.vertices) vg.push_back(v.get());
  Side E = build(eg), V = build(vg);

  IntMat MA(V.a.n_gens(), E.a.n_gens());
  IntMat MB(V.b.n_gens(), E.b.n_gens());
  for (std::size_t k = 0; k < sk.edges.size(); ++k) {
    const auto& ed = sk.edges[k];
    const GroupData& h = *ed.group;
    for (int side = 0; side < 2; ++side) {
      const GroupHom& f = side == 0 ? ed.f : ed.g;
      std::size_t v = side == 0 ? ed.f_vertex : ed.g_vertex;
      int sign = side == 0 ? 1 : -1;
      const GroupData& kk = *sk.vertices[v];
      if (f.source().order() != h.group.order() || f.target().order() != kk.group.order())
        throw Error(ErrorCode::InvalidArgument, "edge map does not match its groups");
      add_block(MA, V.a_off[v], E.a_off[k], induction_matrix(f, h, kk), sign);
      for (std::size_t pi = 0; pi < primes.size(); ++pi)
        add_block(MB, V.b_prime_off[v][pi], E.b_prime_off[k][pi],
                  induction_matrix_qp(f, h, kk, primes[pi]), sign);
    }
  }
  // Induced map on K_-1: push generators of SC through MB.
  AbMap fA(E.a, V.a, MA);
  AbMap fA_free(E.a_free, V.a_free, MA);
  AbMap fB(E.b, V.b, MB);
  if (!E.i.then(fB).equals(fA.then(V.i)) || !E.i_free.then(fB).equals(fA_free.then(V.i_free)))
    throw Error(ErrorCode::NonCommutingLadder, "induction does not commute with restriction to SC");
  AbMap fC, fC_free;
  try {
    fC = AbMap(E.c, V.c, MB);
    fC_free = AbMap(E.c_free, V.c_free, MB);
  } catch (const Error&) {
    throw Error(ErrorCode::NonCommutingLadder, "induction does not descend to K_-1");
  }

  ShortExactSeq top(E.i, E.p), bot(V.i, V.p);
  SnakeResult sn = snake(top, bot, fA, fB, fC);

  ImageResult r;
  r.ker_k0q = sn.ker_a.group.type();
  r.ker_sc = sn.ker_b.group.type();
  r.ker_k_minus_1 = sn.ker_c.group.type();
  r.image = cokernel(sn.ker_bc).group.type();
  r.snake_image = image(sn.delta).type();
  r.snake_exact = sn.exact;

  Kernel kb = kernel(fB);
  Kernel kc = kernel(fC_free);
  AbMap kbc = restrict_to(E.p_free, kb.incl, kc.incl);
  r.image_unreduced = cokernel(kbc).group.type();

  r.agreement = r.snake_exact && r.image == r.snake_image && r.image == r.image_unreduced;
  return r;
}

ImageResult amalgam_image(const AmalgamSpec& a) {
  auto h = a.h->group.order();
  if (a.k1->group.order() != 2 * h || a.k2->group.order() != 2 * h)
    throw Error(ErrorCode::NotIndexTwo, "amalgam factors must contain the edge group with index 2");
  a.e1.require_injective();
  a.e2.require_injective();
  OneSkeleton sk{{a.k1, a.k2}, {SkeletonEdge{a.h, a.e1, 0, a.e2, 1}}};
  return image_from_one_skeleton(sk);
}

Vc1Result vc1_k0q(std::shared_ptr<const GroupData> h, const GroupHom& t) {
  const auto& G = h->group;
  if (t.source().order() != G.order() || t.target().order() != G.order())
    throw Error(ErrorCode::NotAutomorphism, "map must be an endomorphism of H");
  auto v = t.verify();
  if (!v.is_hom || !v.is_injective)
    throw Error(ErrorCode::NotAutomorphism, "map is not an automorphism");

  IntMat T = induction_matrix(t, *h, *h);
  std::size_t n = h->r_q();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (T(j, i) != 0) parent[find(i)] = find(j);
  Vc1Result r;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) ++r.orbits;
  r.k0q = FgAbGroup(n, IntMat::identity(n) - T).type();
  OneSkeleton sk{{h}, {SkeletonEdge{h, GroupHom::identity(G), 0, t, 0}}};
  r.image = image_from_one_skeleton(sk).image;
  return r;
}

}  // namespace kzq
