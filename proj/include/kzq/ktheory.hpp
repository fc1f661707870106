#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kzq/rational_rep.hpp"
#include "kzq/zlin.hpp"

namespace kzq {

/// Character-theoretic data of one group, resolved against a Schur provider.
struct GroupData {
  FiniteGroup group;
  CharacterTable table;
  std::vector<RationalIrr> irrs;
  std::string fingerprint;

  GroupData(FiniteGroup g, CharacterTable t) : group(std::move(g)), table(std::move(t)) {}

  const std::vector<QpIrr>& qp(unsigned p) const;

  std::size_t r_q() const noexcept { return irrs.size(); }

 private:
  mutable std::mutex mu_;
  mutable std::map<unsigned, std::vector<QpIrr>> qp_cache_;
};

std::shared_ptr<const GroupData> analyze(const FiniteGroup& g, const SchurProvider& provider,
                                         std::uint64_t seed = 0);

/// Caches analyses by group label (unlabelled groups are not cached).
class Analyzer {
 public:
  explicit Analyzer(const SchurProvider& provider, std::uint64_t seed = 0)
      : provider_(provider), seed_(seed) {}
  std::shared_ptr<const GroupData> get(const FiniteGroup& g);
  const SchurProvider& provider() const noexcept { return provider_; }

 private:
  const SchurProvider& provider_;
  std::uint64_t seed_;
  std::map<std::string, std::shared_ptr<const GroupData>> cache_;
};

/// K_0(QG) on the rational irreducibles and its reduced quotient by the class
/// of the regular module, sum_I (chi_I(1)/m(I)) [I].
struct K0QBasis {
  FgAbGroup lattice;
  FgAbGroup reduced;
  std::vector<Int> regular;
};
K0QBasis k0q(const GroupData& g);

/// Singular characters for the primes in `primes`. Block p is generated by the
/// Q_p-irreducibles modulo those combinations vanishing on p-singular classes.
struct SCBlock {
  unsigned p = 0;
  std::vector<std::size_t> singular_classes;
  IntMat flattened;          // (singular classes x phi(e)) by r_{Q_p}
  FgAbGroup group;
  std::size_t rank = 0;      // rank of the spanned lattice
};
struct SCGroup {
  std::vector<unsigned> primes;
  std::vector<SCBlock> blocks;
  FgAbGroup group;                 // direct sum of the blocks
  AbMap restriction;               // reduced K_0(QG) -> SC(G)
  AbMap restriction_unreduced;     // K_0(QG) -> SC(G)
  std::size_t rank = 0;
};
/// Defaults to the primes dividing |G|.
SCGroup sc_group(const GroupData& g, std::vector<unsigned> primes = {});

struct KTheoryReport {
  std::string group;
  std::size_t r_q = 0;
  std::map<unsigned, std::size_t> r_qp;
  std::map<unsigned, std::size_t> r_fp;
  long carter_rank = 0;
  unsigned s = 0;
  AbType k_minus_1;          // Z^r + (Z/2)^s
  AbType k_minus_1_sc;       // cokernel of K~0(QG) -> SC(G)
  std::size_t sc_rank = 0;
  bool sequence_exact = false;
  bool agreement = false;
};

/// Carter's formula from class-orbit counts and Schur data only.
KTheoryReport carter(const GroupData& g);

struct KMinus1 {
  K0QBasis k0q;
  SCGroup sc;
  Cokernel k_minus_1;
  bool exact = false;  // 0 -> K~0 Q -> SC -> K_-1 -> 0 verified
};
KMinus1 k_minus_1_via_sc(const GroupData& g, std::vector<unsigned> primes = {});

/// Carter values plus the SC cross-check.
KTheoryReport invariants(const GroupData& g);

/// Induction on K_0(Q-): column I lists a_J = <Ind chi_I, psi_J>/m(J).
IntMat induction_matrix(const GroupHom& e, const GroupData& h, const GroupData& k);
/// Same on Q_p-irreducibles for one prime.
IntMat induction_matrix_qp(const GroupHom& e, const GroupData& h, const GroupData& k, unsigned p);
AbMap induction_on_k0q(const GroupHom& e, const GroupData& h, const GroupData& k);

struct SkeletonEdge {
  std::shared_ptr<const GroupData> group;
  GroupHom f;
  std::size_t f_vertex = 0;
  GroupHom g;
  std::size_t g_vertex = 0;
};

struct OneSkeleton {
  std::vector<std::shared_ptr<const GroupData>> vertices;
  std::vector<SkeletonEdge> edges;
};

struct ImageResult {
  AbType ker_k0q;
  AbType ker_sc;
  AbType ker_k_minus_1;
  AbType image;           // cok(ker^SC -> ker^K_-1)
  AbType snake_image;     // image of the connecting map
  AbType image_unreduced; // same computation from unreduced K_0(Q-)
  bool snake_exact = false;
  bool agreement = false;
};

/// Ladder of 0 -> K~0 Q -> SC -> K_-1 -> 0 over edges and vertices with
/// vertical maps F(f) - F(g). Throws NonCommutingLadder.
ImageResult image_from_one_skeleton(const OneSkeleton& sk);

struct AmalgamSpec {
  std::shared_ptr<const GroupData> h, k1, k2;
  GroupHom e1, e2;
};
/// Throws NotIndexTwo, NotInjective.
ImageResult amalgam_image(const AmalgamSpec& a);

struct Vc1Result {
  std::size_t orbits = 0;
  AbType k0q;           // coinvariants of t on K_0(QH)
  AbType image;         // from the one-skeleton (H, id, t)
};
/// Throws NotAutomorphism.
Vc1Result vc1_k0q(std::shared_ptr<const GroupData> h, const GroupHom& t);

}  // namespace kzq
