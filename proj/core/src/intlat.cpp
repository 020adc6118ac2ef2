#include "cycdesc/intlat.hpp"

#include <utility>

#include "cycdesc/error.hpp"

namespace cycdesc {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_addmul(m(dst, c).get_mpz_t(), q.get_mpz_t(), m(src, c).get_mpz_t());
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) mpz_addmul(m(r, dst).get_mpz_t(), q.get_mpz_t(), m(r, src).get_mpz_t());
}

mpz_class tdiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void verify(const IntMatrix& a, const SNFResult& r) {
  if (!(r.U * a * r.V == r.D)) fail(ErrorCode::VerificationFailure, "Smith form: U*A*V != D");
  const mpz_class du = r.U.determinant(), dv = r.V.determinant();
  if (abs(du) != 1 || abs(dv) != 1) fail(ErrorCode::VerificationFailure, "Smith form: transform is not unimodular");
  const IntVector d = r.diagonal();
  for (std::size_t i = 0; i < r.D.rows(); ++i) {
    for (std::size_t j = 0; j < r.D.cols(); ++j) {
      if (i != j && r.D(i, j) != 0) fail(ErrorCode::VerificationFailure, "Smith form: D is not diagonal");
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) fail(ErrorCode::VerificationFailure, "Smith form: negative invariant factor");
    if (i + 1 < d.size() && d[i] != 0 && d[i + 1] % d[i] != 0) {
      fail(ErrorCode::VerificationFailure, "Smith form: divisibility chain broken");
    }
    if (i + 1 < d.size() && d[i] == 0 && d[i + 1] != 0) fail(ErrorCode::VerificationFailure, "Smith form: zero before nonzero");
  }
}

}  // namespace

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) fail(ErrorCode::InvalidArgument, "column length does not match the row count");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorCode::InvalidArgument, "matrix dimensions do not match");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) mpz_addmul(out(i, j).get_mpz_t(), a.get_mpz_t(), other(k, j).get_mpz_t());
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) fail(ErrorCode::InvalidArgument, "matrix and vector dimensions do not match");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      swap_rows(m, k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_ptr e = m(i, j).get_mpz_t();
        mpz_mul(e, e, m(k, k).get_mpz_t());
        mpz_submul(e, m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
        mpz_divexact(e, e, prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ", ";
      out += (*this)(r, c).get_str();
    }
    out += "]";
  }
  return out + "]";
}

IntVector SNFResult::diagonal() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SNFResult::rank() const {
  std::size_t r = 0;
  for (const auto& d : diagonal()) r += d != 0;
  return r;
}

SNFResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SNFResult r{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = r.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero absolute value in the remaining block, first by position.
    auto pick = [&](bool line_only) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (line_only && i != t && j != t) continue;
          if (d(i, j) == 0) continue;
          if (bi == m || mpz_cmpabs(d(i, j).get_mpz_t(), d(bi, bj).get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      }
      return std::pair{bi, bj};
    };
    auto [pi, pj] = pick(false);
    if (pi == m) break;
    for (;;) {
      swap_rows(d, t, pi);
      swap_rows(r.U, t, pi);
      swap_cols(d, t, pj);
      swap_cols(r.V, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        const mpz_class q = tdiv(d(i, t), d(t, t));
        add_row(d, i, t, -q);
        add_row(r.U, i, t, -q);
        clean = clean && d(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        const mpz_class q = tdiv(d(t, j), d(t, t));
        add_col(d, j, t, -q);
        add_col(r.V, j, t, -q);
        clean = clean && d(t, j) == 0;
      }
      if (!clean) {
        std::tie(pi, pj) = pick(true);
        continue;
      }
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      add_row(d, t, bad, 1);
      add_row(r.U, t, bad, 1);
      pi = t;
      pj = t;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) r.U(t, c) = -r.U(t, c);
    }
  }
  verify(a, r);
  return r;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) fail(ErrorCode::InvalidArgument, "right-hand side length does not match the matrix");
  const SNFResult s = snf(a);
  const IntVector c = s.U * b;
  IntVector y(a.cols());
  const IntVector d = s.diagonal();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const mpz_class di = i < d.size() ? d[i] : mpz_class(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % di != 0) return std::nullopt;
    y[i] = c[i] / di;
  }
  IntVector x = s.V * y;
  if (a * x != b) fail(ErrorCode::VerificationFailure, "integer solution does not satisfy the system");
  return x;
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const SNFResult s = snf(a);
  std::vector<IntVector> out;
  for (std::size_t j = s.rank(); j < a.cols(); ++j) out.push_back(s.V.column(j));
  return out;
}

IntVector quotient_invariants(std::size_t ambient_rank, const IntMatrix& gens) {
  if (gens.cols() > 0 && gens.rows() != ambient_rank) {
    fail(ErrorCode::InvalidArgument, "generators do not live in the ambient lattice");
  }
  IntVector out(ambient_rank, 0);
  if (gens.cols() == 0) return out;
  const IntVector d = snf(gens).diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i];
  return out;
}

bool is_saturated(std::size_t ambient_rank, const IntMatrix& gens) {
  for (const auto& d : quotient_invariants(ambient_rank, gens)) {
    if (d != 0 && d != 1) return false;
  }
  return true;
}

}  // namespace cycdesc
