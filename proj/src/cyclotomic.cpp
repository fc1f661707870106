#include "kzq/cyclotomic.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "kzq/error.hpp"

namespace kzq {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Per-conductor reduction data: red[k] holds x^k mod Phi_e for 0 <= k < e.
struct Field {
  unsigned e = 1;
  unsigned phi = 1;
  std::vector<std::vector<Int>> red;
};

std::vector<Int> cyclotomic_poly(unsigned e) {
  std::vector<Int> num(e + 1, 0);
  num[0] = -1;
  num[e] = 1;
  for (unsigned d = 1; d < e; ++d) {
    if (e % d) continue;
    std::vector<Int> den = cyclotomic_poly(d);
    const std::size_t dd = den.size() - 1;
    std::vector<Int> quot(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      Int c = num[i];
      if (c == 0) continue;
      quot[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

const Field& field(unsigned e) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[e];
  if (slot) return *slot;
  auto f = std::make_unique<Field>();
  f->e = e;
  f->phi = euler_phi(e);
  std::vector<Int> poly = cyclotomic_poly(e);
  f->red.assign(e, std::vector<Int>(f->phi, 0));
  for (unsigned k = 0; k < e; ++k) {
    if (k < f->phi) {
      f->red[k][k] = 1;
      continue;
    }
    std::vector<Int> shifted(f->phi + 1, 0);
    for (unsigned i = 0; i < f->phi; ++i) shifted[i + 1] = f->red[k - 1][i];
    Int top = shifted[f->phi];
    for (unsigned i = 0; i < f->phi; ++i) f->red[k][i] = shifted[i] - top * poly[i];
  }
  slot = std::move(f);
  return *slot;
}

std::vector<Rat> reduce(const Field& f, const std::vector<Rat>& dense) {
  std::vector<Rat> out(f.phi, 0);
  for (unsigned k = 0; k < f.e; ++k) {
    if (dense[k] == 0) continue;
    const auto& r = f.red[k];
    for (unsigned i = 0; i < f.phi; ++i)
      if (r[i] != 0) out[i] += dense[k] * r[i];
  }
  return out;
}

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

Cyclotomic Cyclotomic::root_of_unity(unsigned e, long long k) {
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "conductor must be positive");
  std::vector<Rat> dense(e, 0);
  dense[static_cast<std::size_t>(mod(k, e))] = 1;
  return from_dense(e, dense);
}

Cyclotomic Cyclotomic::from_dense(unsigned e, const std::vector<Rat>& dense) {
  if (dense.size() != e) throw Error(ErrorCode::InvalidArgument, "dense vector length must equal conductor");
  std::vector<Rat> d = dense;
  for (Rat& c : d) c.canonicalize();
  Cyclotomic x(e, reduce(field(e), d));
  x.canonicalize();
  return x;
}

Cyclotomic Cyclotomic::from_basis(unsigned e, std::vector<Rat> coeffs) {
  if (coeffs.size() != euler_phi(e))
    throw Error(ErrorCode::InvalidArgument, "coefficient count must equal phi(conductor)");
  for (Rat& c : coeffs) c.canonicalize();
  Cyclotomic x(e, std::move(coeffs));
  x.canonicalize();
  return x;
}

std::vector<Rat> Cyclotomic::coords(unsigned e) const {
  if (e % conductor_) throw Error(ErrorCode::InvalidArgument, "conductor does not divide target field");
  const Field& f = field(e);
  std::vector<Rat> dense(e, 0);
  const unsigned step = e / conductor_;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) dense[j * step] = coeffs_[j];
  return reduce(f, dense);
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }

std::optional<Rat> Cyclotomic::rational() const {
  if (conductor_ == 1) return coeffs_[0];
  return std::nullopt;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (Rat& c : r.coeffs_) c = -c;
  return r;
}

namespace {

std::vector<Rat> galois_dense(const Field& f, const std::vector<Rat>& coeffs, long long t) {
  std::vector<Rat> dense(f.e, 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) dense[static_cast<std::size_t>(mod(static_cast<long long>(j) * t, f.e))] += coeffs[j];
  return dense;
}

}  // namespace

Cyclotomic Cyclotomic::galois(long long t) const {
  const unsigned e = conductor_;
  if (std::gcd(mod(t, e), static_cast<long long>(e)) != 1)
    throw Error(ErrorCode::NotCoprime, "Galois exponent " + std::to_string(t) +
                                           " is not coprime to conductor " + std::to_string(e));
  if (e == 1) return *this;
  const Field& f = field(e);
  Cyclotomic r(e, reduce(f, galois_dense(f, coeffs_, t)));
  return r;  // Galois conjugation preserves the conductor.
}

void Cyclotomic::canonicalize() {
  bool rational = true;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) rational = false;
  if (rational) {
    Rat c = coeffs_.empty() ? Rat(0) : coeffs_[0];
    conductor_ = 1;
    coeffs_.assign(1, c);
    return;
  }
  const unsigned e = conductor_;
  const Field& f = field(e);
  for (unsigned d = 1; d < e; ++d) {
    if (e % d) continue;
    bool fixed = true;
    for (unsigned t = 1 + d; t < e && fixed; t += d) {
      if (std::gcd(t, e) != 1) continue;
      if (reduce(f, galois_dense(f, coeffs_, t)) != coeffs_) fixed = false;
    }
    if (!fixed) continue;
    // Solve A y = x where column j of A is zeta_d^j written at conductor e.
    const unsigned pd = euler_phi(d);
    const unsigned step = e / d;
    std::vector<std::vector<Rat>> aug(f.phi, std::vector<Rat>(pd + 1, 0));
    for (unsigned j = 0; j < pd; ++j)
      for (unsigned i = 0; i < f.phi; ++i) aug[i][j] = f.red[j * step][i];
    for (unsigned i = 0; i < f.phi; ++i) aug[i][pd] = coeffs_[i];
    std::vector<unsigned> pivot_row(pd);
    unsigned row = 0;
    for (unsigned col = 0; col < pd; ++col) {
      unsigned piv = row;
      while (piv < f.phi && aug[piv][col] == 0) ++piv;
      if (piv == f.phi) throw Error(ErrorCode::Internal, "subfield basis is not independent");
      std::swap(aug[piv], aug[row]);
      Rat inv = 1 / aug[row][col];
      for (unsigned k = col; k <= pd; ++k) aug[row][k] *= inv;
      for (unsigned r = 0; r < f.phi; ++r) {
        if (r == row || aug[r][col] == 0) continue;
        Rat factor = aug[r][col];
        for (unsigned k = col; k <= pd; ++k) aug[r][k] -= factor * aug[row][k];
      }
      pivot_row[col] = row++;
    }
    std::vector<Rat> y(pd);
    for (unsigned col = 0; col < pd; ++col) y[col] = aug[pivot_row[col]][pd];
    conductor_ = d;
    coeffs_ = std::move(y);
    return;
  }
}

namespace {

unsigned lcm_conductor(const Cyclotomic& a, const Cyclotomic& b) {
  return std::lcm(a.conductor(), b.conductor());
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) {
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    r.canonicalize();
    return r;
  }
  const unsigned e = lcm_conductor(a, b);
  std::vector<Rat> x = a.coords(e);
  std::vector<Rat> y = b.coords(e);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  Cyclotomic r(e, std::move(x));
  r.canonicalize();
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == 1) {
    Cyclotomic r = b;
    for (Rat& c : r.coeffs_) c *= a.coeffs_[0];
    r.canonicalize();
    return r;
  }
  if (b.conductor_ == 1) return b * a;
  const unsigned e = lcm_conductor(a, b);
  const Field& f = field(e);
  std::vector<Rat> x = a.coords(e);
  std::vector<Rat> y = b.coords(e);
  std::vector<Rat> dense(e, 0);
  for (unsigned i = 0; i < f.phi; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < f.phi; ++j)
      if (y[j] != 0) dense[(i + j) % e] += x[i] * y[j];
  }
  Cyclotomic r(e, reduce(f, dense));
  r.canonicalize();
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (conductor_ == 1) return Cyclotomic(Rat(1) / coeffs_[0]);
  Cyclotomic others(1);
  for (unsigned t = 2; t < conductor_; ++t)
    if (std::gcd(t, conductor_) == 1) others *= galois(t);
  Cyclotomic norm = *this * others;
  auto n = norm.rational();
  if (!n) throw Error(ErrorCode::Internal, "norm is not rational");
  return others * Cyclotomic(Rat(1) / *n);
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

std::string Cyclotomic::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rat& c = coeffs_[k];
    if (c == 0) continue;
    Rat mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "z" + std::to_string(conductor_);
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

class CycParser {
 public:
  explicit CycParser(std::string_view text) : s_(text) {}

  Cyclotomic run() {
    skip();
    Cyclotomic total;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
        sign = s_[i_] == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        break;
      }
      Cyclotomic t = term();
      total += sign < 0 ? -t : t;
      first = false;
      skip();
      if (i_ == s_.size()) break;
    }
    if (i_ != s_.size()) fail("'+', '-' or end of input");
    return total;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) { throw ParseError(i_, expected, s_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string digits() {
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(start, i_ - start);
  }

  Cyclotomic root() {
    ++i_;  // 'z'
    std::string e = digits();
    if (e.empty()) fail("conductor after 'z'");
    unsigned cond = static_cast<unsigned>(std::stoul(e));
    if (cond == 0) fail("positive conductor");
    long long k = 1;
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      bool neg = false;
      if (i_ < s_.size() && s_[i_] == '-') {
        neg = true;
        ++i_;
      }
      std::string ks = digits();
      if (ks.empty()) fail("exponent");
      k = std::stoll(ks);
      if (neg) k = -k;
    }
    return Cyclotomic::root_of_unity(cond, k);
  }

  Cyclotomic term() {
    if (i_ < s_.size() && s_[i_] == 'z') return root();
    std::string num = digits();
    if (num.empty()) fail("number or 'z'");
    std::string text = num;
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      std::string den = digits();
      if (den.empty() || std::stoul(den) == 0) fail("nonzero denominator");
      text += "/" + den;
    }
    Rat c(text);
    c.canonicalize();
    skip();
    if (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      skip();
      if (i_ >= s_.size() || s_[i_] != 'z') fail("'z'");
      return Cyclotomic(c) * root();
    }
    return Cyclotomic(c);
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

Cyclotomic Cyclotomic::parse(std::string_view text) { return CycParser(text).run(); }

Cyclotomic galois_apply(long long t, const Cyclotomic& x) { return x.galois(t); }

std::optional<Rat> is_rational(const Cyclotomic& x) { return x.rational(); }

}  // namespace kzq
