#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kzq {

using Point = std::uint32_t;

/// Permutation of {0, ..., degree-1} stored as its image array.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);

  /// Parses cycle notation with 1-based points, e.g. "(1,2,3)(4,5)" or "()".
  static Perm from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  std::span<const Point> images() const noexcept { return images_; }

  /// Composite "first *this, then next"; matches right actions, x^(gh) = (x^g)^h.
  Perm then(const Perm& next) const;
  Perm inverse() const;
  bool is_identity() const noexcept;

  /// Cycle notation with 1-based points; "()" for the identity.
  std::string to_cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

using Elem = std::uint32_t;

class FiniteGroup;

struct ConjugacyClass {
  Elem representative;        // smallest element index in the class
  std::vector<Elem> members;  // sorted
  unsigned order;             // element order
};

/// Conjugacy classes of a finite group with element orders and power maps.
/// Classes are sorted by (element order, class size, representative), so the
/// identity class is always index 0.
class ClassData {
 public:
  std::size_t count() const noexcept { return classes_.size(); }
  const ConjugacyClass& at(std::size_t c) const { return classes_[c]; }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }

  std::size_t class_of(Elem g) const { return class_of_[g]; }
  std::size_t size(std::size_t c) const { return classes_[c].members.size(); }
  unsigned order(std::size_t c) const { return classes_[c].order; }
  unsigned exponent() const noexcept { return exponent_; }

  /// Class of g^k for g in class c; k is reduced modulo the exponent.
  std::size_t power(std::size_t c, long long k) const;
  /// The whole map c -> class(g^k).
  std::span<const std::size_t> power_map(long long k) const;
  std::span<const std::size_t> inverse_map() const { return power_map(-1); }

 private:
  friend struct ClassDataBuilder;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  unsigned exponent_ = 1;
  std::vector<std::vector<std::size_t>> powers_;  // [k mod exponent][class]
};

/// A finite permutation group with all elements enumerated.
///
/// Elements are numbered breadth-first from the identity by word length in the
/// generators; elements of equal word length are ordered by their image
/// arrays. The identity is element 0. Instances share immutable state, so
/// copies are cheap and thread-safe.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultOrderBound = 4096;

  /// Closure of `gens`. `names` labels the generators (defaults a, b, c, ...);
  /// `degree` is only consulted when `gens` is empty.
  static FiniteGroup from_generators(std::vector<Perm> gens,
                                     std::vector<std::string> names = {},
                                     std::size_t degree = 1,
                                     std::size_t order_bound = kDefaultOrderBound);

  std::size_t order() const noexcept;
  std::size_t degree() const noexcept;
  const std::string& label() const noexcept;
  FiniteGroup with_label(std::string label) const;

  const std::vector<Perm>& generators() const noexcept;
  const std::vector<std::string>& generator_names() const noexcept;
  std::optional<std::size_t> generator_index(std::string_view name) const;
  Elem generator(std::size_t i) const;

  const Perm& element(Elem g) const;
  std::optional<Elem> find(const Perm& p) const;
  static constexpr Elem identity() noexcept { return 0; }

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long k) const;
  unsigned element_order(Elem a) const;
  bool is_abelian() const;

  /// Word for g as generator indices, from the breadth-first enumeration.
  std::vector<std::size_t> word_of(Elem g) const;
  /// Predecessor of g in the enumeration: g == mul(parent, generator(gen)).
  std::pair<Elem, std::size_t> parent_of(Elem g) const;

  const ClassData& classes() const noexcept;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Conjugacy classes (cached at construction).
const ClassData& conjugacy_classes(const FiniteGroup& g);

/// Permutation group on disjoint point sets. Clashing generator names from
/// `b` get a "_2" suffix.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           std::size_t order_bound = FiniteGroup::kDefaultOrderBound);

/// Generator assignment source -> target.
class GroupHom {
 public:
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> gen_images);

  struct Verification {
    bool is_hom = false;
    bool is_injective = false;
  };

  const FiniteGroup& source() const noexcept { return source_; }
  const FiniteGroup& target() const noexcept { return target_; }
  const std::vector<Elem>& gen_images() const noexcept { return gen_images_; }

  /// Extends the assignment along enumeration words and checks
  /// f(x g) == f(x) f(g) for every element x and generator g.
  Verification verify() const;

  /// Image of every source element (by enumeration words).
  const std::vector<Elem>& element_map() const noexcept { return map_; }
  Elem operator()(Elem g) const { return map_[g]; }

  /// Target class of each source class.
  std::vector<std::size_t> class_fusion() const;
  std::size_t image_order() const;

  /// Throws NotInjective unless the map is an injective homomorphism.
  void require_injective() const;

  static GroupHom identity(const FiniteGroup& g);
  /// Conjugation x -> c^-1 x c.
  static GroupHom conjugation(const FiniteGroup& g, Elem c);

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Elem> gen_images_;
  std::vector<Elem> map_;
};

GroupHom::Verification verify_hom(const GroupHom& h);

}  // namespace kzq
