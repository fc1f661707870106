#include "kzq/zlin.hpp"

#include <algorithm>
#include <sstream>

#include "kzq/error.hpp"

namespace kzq {

IntMat::IntMat(std::size_t rows, std::size_t cols, std::initializer_list<long> values)
    : IntMat(rows, cols) {
  if (values.size() != rows * cols) throw Error(ErrorCode::InvalidArgument, "matrix literal size mismatch");
  std::size_t k = 0;
  for (long v : values) data_[k++] = v;
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
  IntMat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error(ErrorCode::InvalidArgument, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Int> IntMat::column(std::size_t c) const {
  std::vector<Int> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMat IntMat::columns(std::size_t first, std::size_t count) const {
  IntMat m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

IntMat IntMat::row_block(std::size_t first, std::size_t count) const {
  IntMat m(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
  return m;
}

IntMat IntMat::transpose() const {
  IntMat m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool IntMat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMat IntMat::hcat(const IntMat& a, const IntMat& b) {
  if (a.rows_ == 0 && a.cols_ == 0) return b;
  if (b.rows_ == 0 && b.cols_ == 0) return a;
  if (a.rows_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "hcat row mismatch");
  IntMat m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
  }
  return m;
}

IntMat IntMat::vcat(const IntMat& a, const IntMat& b) {
  if (a.rows_ == 0 && a.cols_ == 0) return b;
  if (b.rows_ == 0 && b.cols_ == 0) return a;
  if (a.cols_ != b.cols_) throw Error(ErrorCode::InvalidArgument, "vcat column mismatch");
  IntMat m(a.rows_ + b.rows_, a.cols_);
  for (std::size_t j = 0; j < a.cols_; ++j) {
    for (std::size_t i = 0; i < a.rows_; ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i) m(a.rows_ + i, j) = b(i, j);
  }
  return m;
}

IntMat IntMat::diag_sum(const IntMat& a, const IntMat& b) {
  IntMat m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix product dimension mismatch");
  IntMat m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::InvalidArgument, "matrix sum dimension mismatch");
  IntMat m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

IntMat IntMat::operator-() const {
  IntMat m = *this;
  for (Int& x : m.data_) x = -x;
  return m;
}

IntMat operator-(const IntMat& a, const IntMat& b) { return a + (-b); }

std::string IntMat::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

void col_addmul(IntMat& m, std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}
void row_addmul(IntMat& m, std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}
void col_swap(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
void row_swap(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void col_neg(IntMat& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}
void row_neg(IntMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HnfResult hnf(const IntMat& M) {
  HnfResult r{M, IntMat::identity(M.cols()), 0};
  IntMat& H = r.H;
  IntMat& U = r.U;
  const std::size_t n = M.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < M.rows() && k < n; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j)
        if (H(i, j) != 0 && (best == n || abs(H(i, j)) < abs(H(i, best)))) best = j;
      if (best == n) break;
      col_swap(H, k, best);
      col_swap(U, k, best);
      bool done = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (H(i, j) == 0) continue;
        Int q = trunc_div(H(i, j), H(i, k));
        col_addmul(H, j, k, -q);
        col_addmul(U, j, k, -q);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (k >= n || H(i, k) == 0) continue;
    if (H(i, k) < 0) {
      col_neg(H, k);
      col_neg(U, k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Int q = floor_div(H(i, j), H(i, k));
      if (q == 0) continue;
      col_addmul(H, j, k, -q);
      col_addmul(U, j, k, -q);
    }
    ++k;
  }
  r.rank = k;
  return r;
}

std::vector<Int> SnfResult::factors() const {
  std::vector<Int> f;
  for (std::size_t i = 0; i < rank; ++i) f.push_back(D(i, i));
  return f;
}

SnfResult snf(const IntMat& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  SnfResult r{M, IntMat::identity(m), IntMat::identity(m), IntMat::identity(n), IntMat::identity(n), 0};
  IntMat& D = r.D;
  // Row op R_a += c R_b: P gets the same; Pinv gets C_b -= c C_a.
  auto row_add = [&](std::size_t a, std::size_t b, const Int& c) {
    row_addmul(D, a, b, c);
    row_addmul(r.P, a, b, c);
    col_addmul(r.Pinv, b, a, -c);
  };
  auto col_add = [&](std::size_t a, std::size_t b, const Int& c) {
    col_addmul(D, a, b, c);
    col_addmul(r.Q, a, b, c);
    row_addmul(r.Qinv, b, a, -c);
  };
  auto rswap = [&](std::size_t a, std::size_t b) {
    row_swap(D, a, b);
    row_swap(r.P, a, b);
    col_swap(r.Pinv, a, b);
  };
  auto cswap = [&](std::size_t a, std::size_t b) {
    col_swap(D, a, b);
    col_swap(r.Q, a, b);
    row_swap(r.Qinv, a, b);
  };
  std::size_t t = 0;
  while (t < std::min(m, n)) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (bi == m || abs(D(i, j)) < abs(D(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    rswap(t, bi);
    cswap(t, bj);
    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i)
        if (D(i, t) != 0) row_add(i, t, -trunc_div(D(i, t), D(t, t)));
      for (std::size_t j = t + 1; j < n; ++j)
        if (D(t, j) != 0) col_add(j, t, -trunc_div(D(t, j), D(t, t)));
      std::size_t ri = m, cj = n;
      for (std::size_t i = t + 1; i < m; ++i)
        if (D(i, t) != 0 && (ri == m || abs(D(i, t)) < abs(D(ri, t)))) ri = i;
      for (std::size_t j = t + 1; j < n; ++j)
        if (D(t, j) != 0 && (cj == n || abs(D(t, j)) < abs(D(t, cj)))) cj = j;
      if (ri != m) {
        rswap(t, ri);
        continue;
      }
      if (cj != n) {
        cswap(t, cj);
        continue;
      }
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_add(t, bad, 1);
    }
    if (D(t, t) < 0) {
      row_neg(D, t);
      row_neg(r.P, t);
      col_neg(r.Pinv, t);
    }
    ++t;
  }
  r.rank = t;
  return r;
}

std::size_t rank(const IntMat& M) { return hnf(M).rank; }

Int det(const IntMat& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMat A = M;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      row_swap(A, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = v;
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMat kernel_basis(const IntMat& M) {
  HnfResult h = hnf(M);
  return h.U.columns(h.rank, M.cols() - h.rank);
}

std::optional<IntMat> solve(const IntMat& M, const IntMat& B) {
  if (B.rows() != M.rows()) throw Error(ErrorCode::InvalidArgument, "solve dimension mismatch");
  SnfResult s = snf(M);
  IntMat Y = s.P * B;
  IntMat Z(M.cols(), B.cols());
  for (std::size_t c = 0; c < B.cols(); ++c) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i < s.rank) {
        if (Y(i, c) % s.D(i, i) != 0) return std::nullopt;
        Z(i, c) = Y(i, c) / s.D(i, i);
      } else if (Y(i, c) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.Q * Z;
}

std::optional<std::vector<Int>> solve(const IntMat& M, const std::vector<Int>& b) {
  auto x = solve(M, IntMat::from_columns(M.rows(), {b}));
  if (!x) return std::nullopt;
  return x->column(0);
}

// ---------------------------------------------------------------------------

std::string AbType::str() const {
  std::vector<std::string> parts;
  if (rank == 1) parts.push_back("Z");
  if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    std::string base = "Z/" + torsion[i].get_str();
    parts.push_back(j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i));
    i = j;
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

FgAbGroup::FgAbGroup(std::size_t n_gens, IntMat relations) : n_(n_gens), rel_(std::move(relations)) {
  if (rel_.rows() == 0 && rel_.cols() == 0) rel_ = IntMat(n_, 0);
  if (rel_.rows() != n_) throw Error(ErrorCode::InvalidArgument, "relation matrix row count must equal generator count");
  SnfResult s = snf(rel_);
  type_.rank = n_ - s.rank;
  for (const Int& d : s.factors())
    if (d != 1) type_.torsion.push_back(d);
}

FgAbGroup FgAbGroup::free(std::size_t n) { return FgAbGroup(n, IntMat(n, 0)); }

FgAbGroup FgAbGroup::from_type(const AbType& t) {
  const std::size_t n = t.rank + t.torsion.size();
  IntMat rel(n, t.torsion.size());
  for (std::size_t i = 0; i < t.torsion.size(); ++i) rel(t.rank + i, i) = t.torsion[i];
  return FgAbGroup(n, rel);
}

bool FgAbGroup::is_trivial_element(const std::vector<Int>& v) const {
  if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return true;
  return solve(rel_, v).has_value();
}

FgAbGroup FgAbGroup::direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(a.n_ + b.n_, IntMat::diag_sum(a.rel_, b.rel_));
}

namespace {

bool same_presentation(const FgAbGroup& a, const FgAbGroup& b) {
  return a.n_gens() == b.n_gens() && a.relations() == b.relations();
}

bool columns_in_span(const IntMat& R, const IntMat& V) {
  if (V.cols() == 0 || V.is_zero()) return true;
  if (R.cols() == 0) return false;
  return solve(R, V).has_value();
}

}  // namespace

AbMap::AbMap(FgAbGroup source, FgAbGroup target, IntMat matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (m_.rows() == 0 && m_.cols() == 0) m_ = IntMat(tgt_.n_gens(), src_.n_gens());
  if (m_.rows() != tgt_.n_gens() || m_.cols() != src_.n_gens())
    throw Error(ErrorCode::InvalidArgument, "map matrix has wrong shape");
  if (!columns_in_span(tgt_.relations(), m_ * src_.relations()))
    throw Error(ErrorCode::InvalidArgument, "map does not respect relations");
}

AbMap AbMap::zero(const FgAbGroup& s, const FgAbGroup& t) {
  return AbMap(s, t, IntMat(t.n_gens(), s.n_gens()));
}

AbMap AbMap::identity(const FgAbGroup& g) { return AbMap(g, g, IntMat::identity(g.n_gens())); }

AbMap AbMap::then(const AbMap& next) const {
  if (!same_presentation(tgt_, next.src_))
    throw Error(ErrorCode::InvalidArgument, "composing maps with mismatched groups");
  return AbMap(src_, next.tgt_, next.m_ * m_);
}

AbMap operator+(const AbMap& a, const AbMap& b) {
  if (!same_presentation(a.src_, b.src_) || !same_presentation(a.tgt_, b.tgt_))
    throw Error(ErrorCode::InvalidArgument, "adding maps with mismatched groups");
  return AbMap(a.src_, a.tgt_, a.m_ + b.m_);
}

AbMap AbMap::operator-() const { return AbMap(src_, tgt_, -m_); }

AbMap operator-(const AbMap& a, const AbMap& b) { return a + (-b); }

bool AbMap::equals(const AbMap& other) const {
  return same_presentation(src_, other.src_) && same_presentation(tgt_, other.tgt_) &&
         columns_in_span(tgt_.relations(), m_ - other.m_);
}

bool AbMap::is_zero() const { return columns_in_span(tgt_.relations(), m_); }

bool AbMap::is_injective() const { return kernel(*this).group.is_zero(); }

bool AbMap::is_surjective() const { return cokernel(*this).group.is_zero(); }

std::optional<std::vector<Int>> AbMap::preimage(const std::vector<Int>& y) const {
  auto x = solve(IntMat::hcat(m_, tgt_.relations()), y);
  if (!x) return std::nullopt;
  x->resize(src_.n_gens());
  return x;
}

AbMap hstack(const AbMap& f, const AbMap& g) {
  if (!same_presentation(f.target(), g.target()))
    throw Error(ErrorCode::InvalidArgument, "hstack target mismatch");
  return AbMap(FgAbGroup::direct_sum(f.source(), g.source()), f.target(),
               IntMat::hcat(f.matrix(), g.matrix()));
}

AbMap vstack(const AbMap& f, const AbMap& g) {
  if (!same_presentation(f.source(), g.source()))
    throw Error(ErrorCode::InvalidArgument, "vstack source mismatch");
  IntMat m = IntMat::vcat(f.matrix(), g.matrix());
  if (f.matrix().rows() + g.matrix().rows() == 0) m = IntMat(0, f.source().n_gens());
  return AbMap(f.source(), FgAbGroup::direct_sum(f.target(), g.target()), m);
}

AbMap diag_sum(const AbMap& f, const AbMap& g) {
  return AbMap(FgAbGroup::direct_sum(f.source(), g.source()),
               FgAbGroup::direct_sum(f.target(), g.target()),
               IntMat::diag_sum(f.matrix(), g.matrix()));
}

namespace {

// Lattice {x in Z^n_src : f(x) == 0}, as HNF basis columns.
IntMat preimage_of_zero(const AbMap& f) {
  const std::size_t ns = f.source().n_gens();
  IntMat N = IntMat::hcat(f.matrix(), f.target().relations());
  if (N.cols() == 0) return IntMat(ns, 0);
  IntMat K = kernel_basis(N);
  IntMat X = K.row_block(0, ns);
  HnfResult h = hnf(X);
  return h.H.columns(0, h.rank);
}

}  // namespace

Kernel kernel(const AbMap& f) {
  IntMat Lb = preimage_of_zero(f);
  IntMat C;
  if (f.source().relations().cols() == 0) {
    C = IntMat(Lb.cols(), 0);
  } else {
    auto c = solve(Lb, f.source().relations());
    if (!c) throw Error(ErrorCode::Internal, "source relations outside kernel lattice");
    C = *c;
  }
  FgAbGroup K(Lb.cols(), C);
  return {K, AbMap(K, f.source(), Lb)};
}

Cokernel cokernel(const AbMap& f) {
  FgAbGroup C(f.target().n_gens(), IntMat::hcat(f.target().relations(), f.matrix()));
  return {C, AbMap(f.target(), C, IntMat::identity(f.target().n_gens()))};
}

FgAbGroup image(const AbMap& f) {
  return FgAbGroup(f.source().n_gens(), preimage_of_zero(f));
}

AbMap restrict_to(const AbMap& f, const AbMap& ka, const AbMap& kb) {
  IntMat V = f.matrix() * ka.matrix();
  const std::size_t lb = kb.source().n_gens();
  IntMat Y(lb, V.cols());
  if (V.cols() > 0) {
    IntMat N = IntMat::hcat(kb.matrix(), kb.target().relations());
    if (N.cols() == 0) {
      if (!V.is_zero()) throw Error(ErrorCode::InvalidArgument, "map does not restrict to kernels");
    } else {
      auto sol = solve(N, V);
      if (!sol) throw Error(ErrorCode::InvalidArgument, "map does not restrict to kernels");
      Y = sol->row_block(0, lb);
    }
  }
  return AbMap(ka.source(), kb.source(), Y);
}

bool exact_at(const AbMap& f, const AbMap& g) {
  if (!f.then(g).is_zero()) return false;
  IntMat kg = kernel(g).incl.matrix();
  if (kg.cols() == 0) return true;
  IntMat N = IntMat::hcat(f.matrix(), f.target().relations());
  return columns_in_span(N, kg);
}

Simplified simplify(const FgAbGroup& g) {
  SnfResult s = snf(g.relations());
  std::vector<std::size_t> keep;
  std::vector<Int> orders;
  for (std::size_t i = 0; i < g.n_gens(); ++i) {
    if (i < s.rank && s.D(i, i) == 1) continue;
    keep.push_back(i);
    orders.push_back(i < s.rank ? s.D(i, i) : Int(0));
  }
  std::size_t ntors = 0;
  for (const Int& o : orders)
    if (o != 0) ++ntors;
  IntMat rel(keep.size(), ntors);
  std::size_t c = 0;
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (orders[k] != 0) rel(k, c++) = orders[k];
  FgAbGroup ng(keep.size(), rel);
  IntMat to_new(keep.size(), g.n_gens());
  IntMat to_old(g.n_gens(), keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k)
    for (std::size_t j = 0; j < g.n_gens(); ++j) {
      to_new(k, j) = s.P(keep[k], j);
      to_old(j, k) = s.Pinv(j, keep[k]);
    }
  return {ng, AbMap(g, ng, to_new), AbMap(ng, g, to_old)};
}

Lattice lattice_of_columns(std::size_t dim, const std::vector<std::vector<Int>>& vectors) {
  IntMat X = IntMat::from_columns(dim, vectors);
  HnfResult h = hnf(X);
  return {FgAbGroup::free(h.rank), h.H.columns(0, h.rank), h.rank};
}

ShortExactSeq::ShortExactSeq(AbMap i, AbMap p) : i_(std::move(i)), p_(std::move(p)) {
  if (!same_presentation(i_.target(), p_.source()))
    throw Error(ErrorCode::InvalidArgument, "sequence maps do not compose");
  if (!i_.is_injective()) throw Error(ErrorCode::InvalidArgument, "first map of sequence not injective");
  if (!p_.is_surjective()) throw Error(ErrorCode::InvalidArgument, "second map of sequence not surjective");
  if (!exact_at(i_, p_)) throw Error(ErrorCode::InvalidArgument, "sequence not exact in the middle");
}

SnakeResult snake(const ShortExactSeq& top, const ShortExactSeq& bot, const AbMap& fA,
                  const AbMap& fB, const AbMap& fC) {
  if (!top.i().then(fB).equals(fA.then(bot.i())))
    throw Error(ErrorCode::NonCommutingSquare, "left square does not commute");
  if (!top.p().then(fC).equals(fB.then(bot.p())))
    throw Error(ErrorCode::NonCommutingSquare, "right square does not commute");

  SnakeResult r{kernel(fA), kernel(fB), kernel(fC), cokernel(fA), cokernel(fB), cokernel(fC),
                {}, {}, {}, {}, {}, false};
  r.ker_ab = restrict_to(top.i(), r.ker_a.incl, r.ker_b.incl);
  r.ker_bc = restrict_to(top.p(), r.ker_b.incl, r.ker_c.incl);
  r.cok_ab = AbMap(r.cok_a.group, r.cok_b.group, bot.i().matrix());
  r.cok_bc = AbMap(r.cok_b.group, r.cok_c.group, bot.p().matrix());

  // theta: E = {(b, a) : fB b == i2 a} -> ker fC, (b, a) -> p1 b, surjective
  // with kernel im(A1 -> E). phi: (b, a) -> [a] in cok fA. delta = phi theta^-1,
  // evaluated on each generator of ker fC through an explicit theta-preimage.
  const IntMat& kc = r.ker_c.incl.matrix();
  IntMat D(fA.target().n_gens(), kc.cols());
  for (std::size_t j = 0; j < kc.cols(); ++j) {
    auto b = top.p().preimage(kc.column(j));
    if (!b) throw Error(ErrorCode::Internal, "snake: no lift through surjection");
    IntMat fb = fB.matrix() * IntMat::from_columns(b->size(), {*b});
    auto a = bot.i().preimage(fb.column(0));
    if (!a) throw Error(ErrorCode::Internal, "snake: lift not in image of injection");
    for (std::size_t i = 0; i < a->size(); ++i) D(i, j) = (*a)[i];
  }
  r.delta = AbMap(r.ker_c.group, r.cok_a.group, D);

  r.exact = r.ker_ab.is_injective() && exact_at(r.ker_ab, r.ker_bc) &&
            exact_at(r.ker_bc, r.delta) && exact_at(r.delta, r.cok_ab) &&
            exact_at(r.cok_ab, r.cok_bc) && r.cok_bc.is_surjective();
  return r;
}

}  // namespace kzq
