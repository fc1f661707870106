#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kzq/chartab.hpp"

namespace kzq {

enum class FieldKind { Q, Qp, Fp };

struct FieldTag {
  FieldKind kind = FieldKind::Q;
  unsigned p = 0;
  static FieldTag rationals() { return {FieldKind::Q, 0}; }
  static FieldTag padic(unsigned p) { return {FieldKind::Qp, p}; }
  static FieldTag finite(unsigned p) { return {FieldKind::Fp, p}; }
  std::string str() const;
};

bool is_prime_number(unsigned long n);
std::vector<unsigned> prime_divisors(unsigned long n);

/// Units t mod e acting on classes by g -> g^t for the given field: all of
/// (Z/e)^x over Q; over Q_p (e = p^a m) those t with t mod m in <p>; over F_p
/// the cyclic group <p> (only meaningful on p-regular classes).
std::vector<unsigned> acting_units(unsigned e, FieldTag field);

struct GaloisPartition {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  FieldTag field;
  std::vector<std::size_t> orbit_of;  // npos for classes outside the partition
  std::vector<std::vector<std::size_t>> orbits;
  std::size_t orbit_count() const noexcept { return orbits.size(); }
};

/// Throws NotPrime for Q_p / F_p with p not prime.
GaloisPartition galois_partition(const FiniteGroup& g, FieldTag field);

/// Orbits of irreducible characters under chi -> chi(g^t), t in `units`.
std::vector<std::vector<std::size_t>> character_orbits(const CharacterTable& t,
                                                       const std::vector<unsigned>& units);

/// (1/|G|) sum chi(g^2): +1 real, 0 complex, -1 quaternionic.
int fs_indicator(const CharacterTable& t, std::size_t i);

struct SchurData {
  unsigned m_infinity = 1;
  std::map<unsigned, unsigned> m_p;  // only primes dividing |G|; absent means 1
  unsigned m_global = 1;
  unsigned at(unsigned p) const;
};

struct RationalIrr {
  std::vector<std::size_t> orbit;  // complex irreducible indices
  ClassFunction character;          // m(I) times the orbit sum
  long degree = 0;
  std::size_t center_degree = 0;    // orbit size
  long constituent_degree = 0;
  int fs = 1;
  std::string fingerprint;
  SchurData schur;
};

/// Hex FNV-1a of (order, class (order,size) multiset, degree multiset).
std::string group_fingerprint(const CharacterTable& t);
/// Hex FNV-1a of (degree, multiset of (order, size, value) over rational classes)
/// for the orbit sum of the given irreducibles.
std::string orbit_fingerprint(const CharacterTable& t, const std::vector<std::size_t>& orbit);

/// Local Schur indices keyed by fingerprints, loaded from text files:
///   schur group=<hash> name=<label>
///   schur group=<hash> irr=<hash> p=<prime|inf> m=<int>
/// Lines starting with '#' are comments; "# provenance: ..." lines are kept.
class SchurProvider {
 public:
  void load(const std::filesystem::path& file);
  void declare(const std::string& group, const std::string& name);
  /// p == 0 means the infinite place.
  void add(const std::string& group, const std::string& irr, unsigned p, unsigned m);

  bool knows(const std::string& group) const { return groups_.count(group) > 0; }
  std::string group_name(const std::string& group) const;
  /// Listed indices for the orbit (p == 0 is infinity); throws UnknownSchurIndex
  /// if the group was never declared.
  std::map<unsigned, unsigned> lookup(const std::string& group, const std::string& irr) const;

  const std::vector<std::string>& provenance() const noexcept { return provenance_; }
  const std::vector<std::string>& files() const noexcept { return files_; }

 private:
  std::map<std::string, std::string> groups_;
  std::map<std::pair<std::string, std::string>, std::map<unsigned, unsigned>> entries_;
  std::vector<std::string> provenance_;
  std::vector<std::string> files_;
};

/// One entry per Q-Galois orbit of complex irreducibles, in order of first member.
/// Throws UnknownSchurIndex or DataConflict.
std::vector<RationalIrr> rational_irreducibles(const CharacterTable& t, const SchurProvider& provider);

/// #I with even m(I) and odd m_p(I) for every p dividing the group order.
unsigned s_count(const std::vector<RationalIrr>& irrs, unsigned long group_order);

struct QpIrr {
  std::size_t parent = 0;             // index into the rational irreducibles
  std::vector<std::size_t> members;   // complex irreducible indices
  ClassFunction character;            // m_p times the suborbit sum
  unsigned m_p = 1;
};

/// Q_p-irreducible characters: Q_p-Galois suborbits of every rational orbit.
std::vector<QpIrr> qp_irreducible_characters(const CharacterTable& t, unsigned p,
                                             const std::vector<RationalIrr>& irrs);

}  // namespace kzq
