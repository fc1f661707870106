#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace kzq {

using Int = mpz_class;

/// Dense integer matrix, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMat(std::size_t rows, std::size_t cols, std::initializer_list<long> values);

  static IntMat identity(std::size_t n);
  /// Columns given as vectors of equal length `rows`.
  static IntMat from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Int> column(std::size_t c) const;
  IntMat columns(std::size_t first, std::size_t count) const;
  IntMat row_block(std::size_t first, std::size_t count) const;
  IntMat transpose() const;
  bool is_zero() const;

  /// [a | b]; row counts must match (an empty 0x0 operand adopts the other's rows).
  static IntMat hcat(const IntMat& a, const IntMat& b);
  /// [a ; b]
  static IntMat vcat(const IntMat& a, const IntMat& b);
  /// block diagonal
  static IntMat diag_sum(const IntMat& a, const IntMat& b);

  friend IntMat operator*(const IntMat& a, const IntMat& b);
  friend IntMat operator+(const IntMat& a, const IntMat& b);
  friend IntMat operator-(const IntMat& a, const IntMat& b);
  IntMat operator-() const;
  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Column Hermite normal form: H == M * U with U unimodular. Pivot entries are
/// positive and entries left of a pivot lie in [0, pivot).
struct HnfResult {
  IntMat H;
  IntMat U;
  std::size_t rank = 0;
};
HnfResult hnf(const IntMat& M);

/// Smith normal form D == P * M * Q; P, Q unimodular with inverses recorded.
struct SnfResult {
  IntMat D;
  IntMat P, Pinv;
  IntMat Q, Qinv;
  std::size_t rank = 0;
  /// Nonzero diagonal entries, d1 | d2 | ...
  std::vector<Int> factors() const;
};
SnfResult snf(const IntMat& M);

std::size_t rank(const IntMat& M);
Int det(const IntMat& M);

/// Basis (as columns) of the integer kernel {x : M x == 0}.
IntMat kernel_basis(const IntMat& M);
/// Some integer x with M x == b, if one exists.
std::optional<std::vector<Int>> solve(const IntMat& M, const std::vector<Int>& b);
/// Solutions column by column; nullopt if any column is unsolvable.
std::optional<IntMat> solve(const IntMat& M, const IntMat& B);

/// Isomorphism type of a finitely generated abelian group.
struct AbType {
  std::size_t rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain
  bool is_zero() const { return rank == 0 && torsion.empty(); }
  /// "0", "Z/2", "Z^2 + (Z/2)^2 + Z/12"
  std::string str() const;
  friend bool operator==(const AbType&, const AbType&) = default;
};

/// Z^n modulo the column span of `relations`.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::size_t n_gens, IntMat relations);
  static FgAbGroup free(std::size_t n);
  static FgAbGroup from_type(const AbType& t);

  std::size_t n_gens() const noexcept { return n_; }
  const IntMat& relations() const noexcept { return rel_; }
  const AbType& type() const noexcept { return type_; }
  std::size_t free_rank() const noexcept { return type_.rank; }
  const std::vector<Int>& torsion() const noexcept { return type_.torsion; }
  bool is_zero() const { return type_.is_zero(); }

  /// v represents the zero element.
  bool is_trivial_element(const std::vector<Int>& v) const;

  static FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);

 private:
  std::size_t n_ = 0;
  IntMat rel_;
  AbType type_;
};

/// Homomorphism given on generators; matrix is n_target x n_source.
class AbMap {
 public:
  AbMap() = default;
  /// Throws InvalidArgument unless relations map into target relations.
  AbMap(FgAbGroup source, FgAbGroup target, IntMat matrix);
  static AbMap zero(const FgAbGroup& s, const FgAbGroup& t);
  static AbMap identity(const FgAbGroup& g);

  const FgAbGroup& source() const noexcept { return src_; }
  const FgAbGroup& target() const noexcept { return tgt_; }
  const IntMat& matrix() const noexcept { return m_; }

  AbMap then(const AbMap& next) const;
  friend AbMap operator-(const AbMap& a, const AbMap& b);
  friend AbMap operator+(const AbMap& a, const AbMap& b);
  AbMap operator-() const;

  /// Equal as homomorphisms (differences land in the target relations).
  bool equals(const AbMap& other) const;
  bool is_zero() const;
  bool is_injective() const;
  bool is_surjective() const;

  /// Some source vector mapping to y modulo target relations.
  std::optional<std::vector<Int>> preimage(const std::vector<Int>& y) const;

 private:
  FgAbGroup src_;
  FgAbGroup tgt_;
  IntMat m_;
};

/// Source-to-target block map [f | g] : A (+) B -> C.
AbMap hstack(const AbMap& f, const AbMap& g);
/// (f, g) : A -> B (+) C.
AbMap vstack(const AbMap& f, const AbMap& g);
/// f (+) g : A (+) C -> B (+) D.
AbMap diag_sum(const AbMap& f, const AbMap& g);

struct Kernel {
  FgAbGroup group;
  AbMap incl;
};
Kernel kernel(const AbMap& f);

struct Cokernel {
  FgAbGroup group;
  AbMap proj;
};
Cokernel cokernel(const AbMap& f);

/// Image of f as a quotient of the source: Z^n_src modulo the kernel lattice.
FgAbGroup image(const AbMap& f);

/// Restriction of f : A -> B to kernels, given inclusions ka : K_A -> A and
/// kb : K_B -> B with f(K_A) inside K_B.
AbMap restrict_to(const AbMap& f, const AbMap& ka, const AbMap& kb);

/// im(f) == ker(g) for f : A -> B, g : B -> C.
bool exact_at(const AbMap& f, const AbMap& g);

/// Presentation with SNF-diagonal relations; to_new / to_old are inverse isomorphisms.
struct Simplified {
  FgAbGroup group;
  AbMap to_new;
  AbMap to_old;
};
Simplified simplify(const FgAbGroup& g);

/// Free lattice spanned by the given vectors; basis holds the HNF columns.
struct Lattice {
  FgAbGroup group;
  IntMat basis;
  std::size_t rank = 0;
};
Lattice lattice_of_columns(std::size_t dim, const std::vector<std::vector<Int>>& vectors);

class ShortExactSeq {
 public:
  /// Throws InvalidArgument unless i injective, p surjective and im i == ker p.
  ShortExactSeq(AbMap i, AbMap p);
  const AbMap& i() const noexcept { return i_; }
  const AbMap& p() const noexcept { return p_; }
  const FgAbGroup& A() const noexcept { return i_.source(); }
  const FgAbGroup& B() const noexcept { return i_.target(); }
  const FgAbGroup& C() const noexcept { return p_.target(); }

 private:
  AbMap i_;
  AbMap p_;
};

/// Connecting map of the ladder top -> bot with vertical fA, fB, fC.
struct SnakeResult {
  Kernel ker_a, ker_b, ker_c;
  Cokernel cok_a, cok_b, cok_c;
  AbMap ker_ab, ker_bc;  // induced maps on kernels
  AbMap delta;           // ker fC -> cok fA
  AbMap cok_ab, cok_bc;  // induced maps on cokernels
  bool exact = false;    // six-term sequence verified exact everywhere
};
SnakeResult snake(const ShortExactSeq& top, const ShortExactSeq& bot, const AbMap& fA,
                  const AbMap& fB, const AbMap& fC);

}  // namespace kzq
