#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kzq {

using Rat = mpq_class;
using Int = mpz_class;

/// Euler's totient.
unsigned euler_phi(unsigned n);

/// An element of Q(zeta_e) in the power basis 1, z, ..., z^(phi(e)-1) reduced
/// modulo the e-th cyclotomic polynomial. Values are always stored at their
/// smallest conductor, so equality is coefficientwise.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long v) : coeffs_{Rat(v)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rat& v) : coeffs_{v} { coeffs_[0].canonicalize(); }  // NOLINT

  /// zeta_e^k.
  static Cyclotomic root_of_unity(unsigned e, long long k);
  /// sum_k dense[k] * zeta_e^k, with dense.size() == e.
  static Cyclotomic from_dense(unsigned e, const std::vector<Rat>& dense);
  /// Coefficients on the reduced power basis of conductor e.
  static Cyclotomic from_basis(unsigned e, std::vector<Rat> coeffs);

  unsigned conductor() const noexcept { return conductor_; }
  const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }
  /// Coordinates on the reduced power basis of Q(zeta_e); conductor() must divide e.
  std::vector<Rat> coords(unsigned e) const;

  bool is_zero() const;
  std::optional<Rat> rational() const;

  Cyclotomic operator-() const;
  Cyclotomic inverse() const;
  /// zeta_e -> zeta_e^t.
  Cyclotomic galois(long long t) const;
  Cyclotomic conj() const { return galois(-1); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }

  /// "a0 + a1*z8 + a2*z8^2"; "0" for zero.
  std::string str() const;
  /// Inverse of str(); also accepts terms like "3/2*z12^5" with mixed conductors.
  static Cyclotomic parse(std::string_view text);

 private:
  Cyclotomic(unsigned e, std::vector<Rat> coeffs) : conductor_(e), coeffs_(std::move(coeffs)) {}
  void canonicalize();

  unsigned conductor_ = 1;
  std::vector<Rat> coeffs_{Rat(0)};
};

Cyclotomic galois_apply(long long t, const Cyclotomic& x);
std::optional<Rat> is_rational(const Cyclotomic& x);

}  // namespace kzq
