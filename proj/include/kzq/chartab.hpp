#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kzq/cyclotomic.hpp"
#include "kzq/perm.hpp"

namespace kzq {

/// Values indexed by conjugacy class.
using ClassFunction = std::vector<Cyclotomic>;

/// Exact complex character table. Rows: trivial character first, then sorted
/// by (degree, rendering of the value list).
class CharacterTable {
 public:
  /// Dixon-Schneider over F_l followed by an exact lift to Q(zeta_e).
  static CharacterTable compute(const FiniteGroup& g, std::uint64_t seed = 0);

  const FiniteGroup& group() const noexcept { return group_; }
  const ClassData& classes() const noexcept { return group_.classes(); }
  std::size_t size() const noexcept { return rows_.size(); }
  const ClassFunction& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<ClassFunction>& rows() const noexcept { return rows_; }
  const Cyclotomic& value(std::size_t i, std::size_t c) const { return rows_.at(i).at(c); }
  long degree(std::size_t i) const;

  /// Modulus used for the eigenspace computation, and the splitting seed.
  unsigned long prime() const noexcept { return prime_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Header lines "order"/"size", then one row per character.
  std::string render() const;

 private:
  FiniteGroup group_;
  std::vector<ClassFunction> rows_;
  unsigned long prime_ = 0;
  std::uint64_t seed_ = 0;
};

CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed = 0);

/// (1/|G|) sum_g a(g) b(g^-1).
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b, const FiniteGroup& g);

ClassFunction trivial_character(const FiniteGroup& g);
ClassFunction regular_character(const FiniteGroup& g);

/// Induction along an injective homomorphism; throws NotInjective.
ClassFunction induce(const GroupHom& h, const ClassFunction& f);
/// Composition with h (restriction along h).
ClassFunction restrict(const GroupHom& h, const ClassFunction& f);

/// The class function g -> f(g^k).
ClassFunction power_twist(const ClassData& cd, const ClassFunction& f, long long k);

std::string render(const ClassFunction& f);

}  // namespace kzq
