#pragma once

// Dense matrices over an exact field, reduced row echelon form, nullspaces,
// and the deterministic search for an invertible element of a matrix span.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfrep/scalar.hpp"

namespace surfrep {

class Matrix {
 public:
  Matrix() = default;

  Matrix(FieldTag field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Scalar::zero(field)) {
    if (rows < 0 || cols < 0) throw input_error("negative matrix shape");
  }

  static Matrix identity(FieldTag field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
  }

  FieldTag field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }

  bool is_zero() const {
    for (const Scalar& s : e_)
      if (!s.is_zero()) return false;
    return true;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
      }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Scalar trace() const {
    Scalar t = Scalar::zero(field_);
    for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
    return t;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix r = x;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] += y.e_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.check_same_shape(y);
    Matrix r = x;
    for (size_t k = 0; k < r.e_.size(); ++k) r.e_[k] -= y.e_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_ || !(x.field_ == y.field_)) throw consistency_error("matrix product shape/field mismatch");
    Matrix r(x.field_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Scalar& xik = x.at(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          if (y.at(k, j).is_zero()) continue;
          r.at(i, j) += xik * y.at(k, j);
        }
      }
    return r;
  }
  friend Matrix operator*(const Scalar& c, const Matrix& x) {
    Matrix r = x;
    for (Scalar& s : r.e_) s = c * s;
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.field_ == y.field_ && x.e_ == y.e_;
  }

  // row-major flattening (used for span computations and the End(r) bases)
  std::vector<Scalar> vec() const { return e_; }

  static Matrix from_vec(FieldTag field, int rows, int cols, const std::vector<Scalar>& v) {
    Matrix m(field, rows, cols);
    if (v.size() != m.e_.size()) throw consistency_error("from_vec size mismatch");
    m.e_ = v;
    return m;
  }

  Scalar det() const {
    if (!is_square()) throw consistency_error("det of a non-square matrix");
    Matrix a = *this;
    Scalar d = Scalar::one(field_);
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      for (int r = col; r < rows_; ++r) {
        if (!a.at(r, col).is_zero()) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return Scalar::zero(field_);
      if (piv != col) {
        for (int j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(col, j));
        d = -d;
      }
      d *= a.at(col, col);
      const Scalar inv = a.at(col, col).inverse();
      for (int r = col + 1; r < rows_; ++r) {
        if (a.at(r, col).is_zero()) continue;
        const Scalar f = a.at(r, col) * inv;
        for (int j = col; j < cols_; ++j) a.at(r, j) -= f * a.at(col, j);
      }
    }
    return d;
  }

  std::optional<Matrix> inverse() const {
    if (!is_square()) throw consistency_error("inverse of a non-square matrix");
    const int n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, n + i) = Scalar::one(field_);
    }
    int rank = 0;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = rank; r < n; ++r) {
        if (!aug.at(r, col).is_zero()) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return std::nullopt;
      if (piv != rank)
        for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(rank, j));
      const Scalar inv = aug.at(rank, col).inverse();
      for (int j = 0; j < 2 * n; ++j) aug.at(rank, j) *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == rank || aug.at(r, col).is_zero()) continue;
        const Scalar f = aug.at(r, col);
        for (int j = 0; j < 2 * n; ++j) aug.at(r, j) -= f * aug.at(rank, j);
      }
      ++rank;
    }
    Matrix out(field_, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
  }

  bool invertible() const { return is_square() && !det().is_zero(); }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ";[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += at(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

  // canonical key for hashing/orbit dedup
  std::string key() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_) + "/" + field_.str() + ":" + str();
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) {
      throw consistency_error("matrix shape/field mismatch");
    }
  }

  FieldTag field_;
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

struct RrefResult {
  Matrix reduced;
  int rank = 0;
  std::vector<int> pivots;
};

inline RrefResult rref(const Matrix& m) {
  RrefResult res{m, 0, {}};
  Matrix& a = res.reduced;
  for (int col = 0; col < a.cols(); ++col) {
    int piv = -1;
    for (int r = res.rank; r < a.rows(); ++r) {
      if (!a.at(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != res.rank)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(res.rank, j));
    const Scalar inv = a.at(res.rank, col).inverse();
    for (int j = 0; j < a.cols(); ++j) a.at(res.rank, j) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == res.rank || a.at(r, col).is_zero()) continue;
      const Scalar f = a.at(r, col);
      for (int j = 0; j < a.cols(); ++j) a.at(r, j) -= f * a.at(res.rank, j);
    }
    res.pivots.push_back(col);
    ++res.rank;
  }
  return res;
}

// basis of {v : m v = 0}, ordered by ascending free column
inline std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
    v[f] = Scalar::one(m.field());
    for (int row = 0; row < r.rank; ++row) {
      v[r.pivots[row]] = -r.reduced.at(row, f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental row-space accumulator with coordinates over the accepted rows.
class RrefAccumulator {
 public:
  RrefAccumulator(FieldTag field, int width) : field_(field), width_(width) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }

  // returns true when v was independent (and is from now on basis element #rank-1)
  bool insert(const std::vector<Scalar>& v) {
    auto [rem, combo] = reduce(v);
    int lead = -1;
    for (int j = 0; j < width_; ++j) {
      if (!rem[j].is_zero()) {
        lead = j;
        break;
      }
    }
    if (lead < 0) return false;
    const Scalar inv = rem[lead].inverse();
    for (Scalar& s : rem) s *= inv;
    combo.resize(rank() + 1, Scalar::zero(field_));
    for (Scalar& s : combo) s = -(s * inv);
    combo[rank()] = inv;
    // keep rows ordered by pivot column
    size_t pos = 0;
    while (pos < rows_.size() && rows_[pos].pivot < lead) ++pos;
    rows_.insert(rows_.begin() + pos, Row{lead, std::move(rem), std::move(combo)});
    return true;
  }

  // coordinates of v over the accepted elements, or nullopt if outside the span
  std::optional<std::vector<Scalar>> coordinates(const std::vector<Scalar>& v) const {
    auto [rem, combo] = reduce(v);
    for (const Scalar& s : rem) {
      if (!s.is_zero()) return std::nullopt;
    }
    combo.resize(rank(), Scalar::zero(field_));
    return combo;
  }

 private:
  struct Row {
    int pivot;
    std::vector<Scalar> v;      // pivot entry normalized to 1
    std::vector<Scalar> combo;  // v = sum combo[k] * accepted_basis[k]
  };

  // rem = v - sum c_i row_i; combo = sum c_i row_i.combo
  std::pair<std::vector<Scalar>, std::vector<Scalar>> reduce(std::vector<Scalar> v) const {
    if (static_cast<int>(v.size()) != width_) throw consistency_error("accumulator width mismatch");
    std::vector<Scalar> combo(rank(), Scalar::zero(field_));
    for (const Row& row : rows_) {
      const Scalar c = v[row.pivot];
      if (c.is_zero()) continue;
      for (int j = 0; j < width_; ++j) {
        if (!row.v[j].is_zero()) v[j] -= c * row.v[j];
      }
      for (size_t k = 0; k < row.combo.size(); ++k) combo[k] += c * row.combo[k];
    }
    return {std::move(v), std::move(combo)};
  }

  FieldTag field_;
  int width_;
  std::vector<Row> rows_;
};

// Deterministic search for an invertible element of span{basis}.
// Over Q the grid {0..r}^d is complete: det of a combination is a polynomial
// of degree <= r in each coefficient, so if it is not identically zero it is
// nonzero somewhere on the grid.  Over GF(p) the whole space GF(p)^d is
// enumerated.  Exceeding the evaluation cap is reported as inconclusive,
// never converted into a "none".
struct SpanSearch {
  enum class Status { found, none, cap_exceeded };
  Status status = Status::none;
  std::optional<Matrix> witness;
  std::vector<Scalar> coefficients;
  unsigned long long evaluations = 0;
  unsigned long long cap = 0;
};

inline constexpr unsigned long long kDefaultSpanCap = 1'000'000;

inline SpanSearch invertible_in_span(const std::vector<Matrix>& basis,
                                     unsigned long long cap = kDefaultSpanCap) {
  SpanSearch out;
  out.cap = cap;
  if (basis.empty()) return out;
  const FieldTag field = basis.front().field();
  const int n = basis.front().rows();
  for (const Matrix& b : basis) {
    if (!b.is_square() || b.rows() != n || !(b.field() == field)) {
      throw consistency_error("invertible_in_span: mixed basis shapes");
    }
  }
  const int d = static_cast<int>(basis.size());
  const long long per_axis = field.is_rational() ? n + 1 : field.modulus();

  std::vector<long long> c(d, 0);
  Matrix combo(field, n, n);  // tracks sum c_i basis_i incrementally
  while (true) {
    ++out.evaluations;
    if (out.evaluations > cap) {
      out.status = SpanSearch::Status::cap_exceeded;
      return out;
    }
    if (!combo.det().is_zero()) {
      out.status = SpanSearch::Status::found;
      out.witness = combo;
      out.coefficients.reserve(d);
      for (long long ci : c) out.coefficients.push_back(Scalar::from_long(field, ci));
      return out;
    }
    // odometer step with incremental combo update
    int k = d - 1;
    while (k >= 0) {
      if (c[k] + 1 < per_axis) {
        c[k] += 1;
        combo = combo + basis[k];
        break;
      }
      // reset digit k to 0: subtract c[k] copies of basis[k]
      for (long long t = 0; t < c[k]; ++t) combo = combo - basis[k];
      c[k] = 0;
      --k;
    }
    if (k < 0) break;  // grid exhausted
  }
  out.status = SpanSearch::Status::none;
  return out;
}

}  // namespace surfrep
