#pragma once

// Integer matrices (arbitrary precision) and Smith normal form with
// unimodular transforms: U * m * V = D, d1 | d2 | ...

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "surfrep/errors.hpp"

namespace surfrep {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw input_error("negative matrix shape");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  mpz_class& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const mpz_class& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (at(i, j) != (i == j ? 1 : 0)) return false;
      }
    return true;
  }

  bool is_zero() const {
    for (const mpz_class& z : e_)
      if (z != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw consistency_error("integer matrix product shape mismatch");
    IntMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }
  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
    x.check_same_shape(y);
    IntMatrix r = x;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += y.e_[k];
    return r;
  }
  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    x.check_same_shape(y);
    IntMatrix r = x;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] -= y.e_[k];
    return r;
  }
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
  }

  // columns of x followed by columns of y
  static IntMatrix hstack(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows_ != y.rows_) throw consistency_error("hstack row mismatch");
    IntMatrix r(x.rows_, x.cols_ + y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      for (int j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
      for (int j = 0; j < y.cols_; ++j) r.at(i, x.cols_ + j) = y.at(i, j);
    }
    return r;
  }

  static IntMatrix vstack(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.cols_) throw consistency_error("vstack col mismatch");
    IntMatrix r(x.rows_ + y.rows_, x.cols_);
    for (int j = 0; j < x.cols_; ++j) {
      for (int i = 0; i < x.rows_; ++i) r.at(i, j) = x.at(i, j);
      for (int i = 0; i < y.rows_; ++i) r.at(x.rows_ + i, j) = y.at(i, j);
    }
    return r;
  }

  // fraction-free Bareiss determinant
  mpz_class det() const {
    if (rows_ != cols_) throw consistency_error("det of a non-square matrix");
    const int n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (a.at(k, k) == 0) {
        int piv = -1;
        for (int r = k + 1; r < n; ++r) {
          if (a.at(r, k) != 0) {
            piv = r;
            break;
          }
        }
        if (piv < 0) return 0;
        for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i) {
        for (int j = k + 1; j < n; ++j) {
          a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        }
        a.at(i, k) = 0;
      }
      prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ";[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += at(i, j).get_str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw consistency_error("integer matrix shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<mpz_class> e_;
};

struct SmithResult {
  IntMatrix d;                      // diagonal, U * m * V = d
  IntMatrix u;                      // unimodular row transform
  IntMatrix v;                      // unimodular column transform
  std::vector<mpz_class> diagonal;  // the min(rows,cols) diagonal entries
};

namespace detail {

inline void snf_swap_rows(IntMatrix& m, int i, int j) {
  for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}
inline void snf_swap_cols(IntMatrix& m, int i, int j) {
  for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}
inline void snf_add_row(IntMatrix& m, int dst, int src, const mpz_class& f) {
  for (int c = 0; c < m.cols(); ++c) m.at(dst, c) += f * m.at(src, c);
}
inline void snf_add_col(IntMatrix& m, int dst, int src, const mpz_class& f) {
  for (int r = 0; r < m.rows(); ++r) m.at(r, dst) += f * m.at(r, src);
}
inline void snf_negate_row(IntMatrix& m, int i) {
  for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

}  // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& m) {
  const int rows = m.rows(), cols = m.cols();
  const int nmin = std::min(rows, cols);
  SmithResult res{m, IntMatrix::identity(rows), IntMatrix::identity(cols), {}};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  for (int t = 0; t < nmin; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the lower-right block
      int pi = -1, pj = -1;
      mpz_class best;
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          if (d.at(i, j) == 0) continue;
          mpz_class a = abs(d.at(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // block is zero; later diagonal entries stay 0
      if (pi != t) {
        detail::snf_swap_rows(d, t, pi);
        detail::snf_swap_rows(u, t, pi);
      }
      if (pj != t) {
        detail::snf_swap_cols(d, t, pj);
        detail::snf_swap_cols(v, t, pj);
      }
      bool lone = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d.at(i, t) != 0) {
          mpz_class q = d.at(i, t) / d.at(t, t);
          if (q != 0) {
            detail::snf_add_row(d, i, t, -q);
            detail::snf_add_row(u, i, t, -q);
          }
          if (d.at(i, t) != 0) lone = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d.at(t, j) != 0) {
          mpz_class q = d.at(t, j) / d.at(t, t);
          if (q != 0) {
            detail::snf_add_col(d, j, t, -q);
            detail::snf_add_col(v, j, t, -q);
          }
          if (d.at(t, j) != 0) lone = false;
        }
      }
      if (!lone) continue;
      // pivot divides everything below-right? if not, fold the offender in
      int oi = -1, oj = -1;
      for (int i = t + 1; i < rows && oi < 0; ++i)
        for (int j = t + 1; j < cols; ++j) {
          if (d.at(i, j) % d.at(t, t) != 0) {
            oi = i;
            oj = j;
            break;
          }
        }
      if (oi < 0) break;
      detail::snf_add_row(d, t, oi, 1);
      detail::snf_add_row(u, t, oi, 1);
    }
    if (d.at(t, t) < 0) {
      detail::snf_negate_row(d, t);
      detail::snf_negate_row(u, t);
    }
  }
  res.diagonal.reserve(nmin);
  for (int t = 0; t < nmin; ++t) res.diagonal.push_back(d.at(t, t));
  return res;
}

}  // namespace surfrep
