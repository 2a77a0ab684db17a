#pragma once

// The span W_phi of the image of a representation, the induced stabilizer
// representation rho on W_phi (rho(f) phi(gamma) = phi(f_* gamma)), its
// reducibility witness and kernel characterization, and the recovery of an
// inner conjugator from an algebra automorphism of End(r).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfrep/representation.hpp"

namespace surfrep {

class AlgebraBasis {
 public:
  AlgebraBasis(FieldTag field, int r) : field_(field), r_(r), acc_(field, r * r) {}

  FieldTag field() const { return field_; }
  int matrix_size() const { return r_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }

  bool try_add(const Matrix& m) {
    if (!acc_.insert(m.vec())) return false;
    basis_.push_back(m);
    return true;
  }

  bool in_span(const Matrix& m) const { return acc_.coordinates(m.vec()).has_value(); }

  std::vector<Scalar> coordinates(const Matrix& m) const {
    auto c = acc_.coordinates(m.vec());
    if (!c) throw consistency_error("matrix outside the algebra span");
    return *c;
  }

 private:
  FieldTag field_;
  int r_;
  std::vector<Matrix> basis_;
  RrefAccumulator acc_;
};

// Saturation: seed with I and the generator images with inverses, then close
// under left and right multiplication by generator images.  The worklist
// order (insertion order; per element: symbols ascending, image before
// inverse, left product before right) makes the pivot basis deterministic.
inline AlgebraBasis span_w_phi(const Representation& phi) {
  const int r = phi.dim();
  AlgebraBasis out(phi.field(), r);
  out.try_add(Matrix::identity(phi.field(), r));
  std::vector<Matrix> gens;
  for (int s = 0; s < phi.presentation().alphabet.symbol_count(); ++s) {
    gens.push_back(phi.matrix(s));
    gens.push_back(phi.matrix_inverse(s));
  }
  for (const Matrix& g : gens) out.try_add(g);
  for (size_t i = 0; i < out.basis().size(); ++i) {
    if (out.dim() == r * r) break;  // already all of End(r)
    const Matrix b = out.basis()[i];
    for (const Matrix& g : gens) {
      out.try_add(g * b);
      out.try_add(b * g);
    }
  }
  return out;
}

// coordinates of I in the algebra basis; every RhoMatrix fixes this vector
inline std::vector<Scalar> reducibility_witness(const AlgebraBasis& basis) {
  return basis.coordinates(Matrix::identity(basis.field(), basis.matrix_size()));
}

inline std::vector<Scalar> reducibility_witness(const Representation& phi) {
  return reducibility_witness(span_w_phi(phi));
}

// dim W_phi = r^2, i.e. the image spans all of End(r)
inline bool irreducibility_dim_test(const Representation& phi) {
  return span_w_phi(phi).dim() == phi.dim() * phi.dim();
}

struct RhoMatrix {
  int dim = 0;
  Matrix matrix;       // the map X -> A X A^{-1} restricted to W_phi
  Matrix conjugator;   // the witness A used
  std::string source_label;
};

struct BuildRho {
  enum class Status { built, not_in_stabilizer, inconclusive };
  Status status = Status::not_in_stabilizer;
  std::optional<RhoMatrix> rho;
  unsigned long long cap_fired = 0;

  bool built() const { return status == Status::built; }
};

namespace detail {

inline std::vector<Scalar> matvec(const Matrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.rows(), Scalar::zero(m.field()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

}  // namespace detail

inline BuildRho build_rho(const Representation& phi, const AlgebraBasis& basis, const MappingClass& f,
                          const SolveOptions& opts = {}) {
  BuildRho out;
  const WitnessResult w = in_stabilizer_class(f, phi, opts);
  if (w.status == WitnessResult::Status::inconclusive) {
    out.status = BuildRho::Status::inconclusive;
    out.cap_fired = w.cap_fired;
    return out;
  }
  if (w.status == WitnessResult::Status::none) {
    out.status = BuildRho::Status::not_in_stabilizer;
    return out;
  }
  const Matrix& A = *w.witness;
  const Matrix Ainv = *A.inverse();
  const int d = basis.dim();
  Matrix m(phi.field(), d, d);
  for (int col = 0; col < d; ++col) {
    const std::vector<Scalar> c = basis.coordinates(A * basis.basis()[col] * Ainv);
    for (int row = 0; row < d; ++row) m.at(row, col) = c[row];
  }
  if (m.det().is_zero()) throw consistency_error("rho matrix is singular");
  const std::vector<Scalar> iv = reducibility_witness(basis);
  if (detail::matvec(m, iv) != iv) throw consistency_error("rho matrix moves the coordinate vector of I");
  out.status = BuildRho::Status::built;
  out.rho = RhoMatrix{d, std::move(m), A, f.label()};
  return out;
}

inline BuildRho build_rho(const Representation& phi, const MappingClass& f, const SolveOptions& opts = {}) {
  return build_rho(phi, span_w_phi(phi), f, opts);
}

// rho(f) applied to the coordinates of phi(gamma) equals the coordinates of
// phi(f_* gamma)
inline bool rho_c1_holds(const Representation& phi, const AlgebraBasis& basis, const RhoMatrix& rho,
                         const MappingClass& f, const Word& gamma) {
  const std::vector<Scalar> lhs = detail::matvec(rho.matrix, basis.coordinates(phi.evaluate(gamma)));
  const std::vector<Scalar> rhs = basis.coordinates(phi.evaluate(apply(f, gamma)));
  return lhs == rhs;
}

// rho(f g) = rho(f) rho(g), matrices compared exactly
inline bool verify_homomorphism(const Representation& phi, const MappingClass& f, const MappingClass& g,
                                const SolveOptions& opts = {}) {
  const AlgebraBasis basis = span_w_phi(phi);
  const BuildRho rf = build_rho(phi, basis, f, opts);
  const BuildRho rg = build_rho(phi, basis, g, opts);
  const BuildRho rfg = build_rho(phi, basis, compose(f, g), opts);
  if (!rf.built() || !rg.built() || !rfg.built()) {
    throw input_error("verify_homomorphism: a factor is not in the class stabilizer");
  }
  return rfg.rho->matrix == rf.rho->matrix * rg.rho->matrix;
}

// (rho(f) = id) <=> (f . phi = phi); disagreement would contradict the kernel
// characterization and is raised as an internal consistency error
inline bool kernel_test(const Representation& phi, const MappingClass& f, const SolveOptions& opts = {}) {
  const BuildRho r = build_rho(phi, f, opts);
  if (!r.built()) throw input_error("kernel_test: f is not in the class stabilizer");
  const bool rho_trivial = r.rho->matrix.is_identity();
  const bool strict = in_strict_stabilizer(f, phi);
  if (rho_trivial != strict) {
    throw consistency_error("kernel characterization violated (rho trivial: " +
                            std::to_string(rho_trivial) + ", strict stabilizer: " + std::to_string(strict) +
                            ")");
  }
  return rho_trivial;
}

// Two independent invertible conjugators yield the same restriction to W_phi.
// Vacuously true when the solution space is a line.
inline bool well_definedness_check(const Representation& phi, const MappingClass& f,
                                   const SolveOptions& opts = {}) {
  const Representation pulled = pullback_by(f, phi);
  const std::vector<Matrix> space = conjugator_solution_space(phi, pulled);
  if (space.size() < 2) return true;

  const int r = phi.dim();
  const int d = static_cast<int>(space.size());
  const FieldTag field = phi.field();
  const long long per_axis = field.is_rational() ? r + 1 : field.modulus();

  std::optional<Matrix> a1, a2;
  std::vector<Scalar> c1;
  std::vector<long long> c(d, 0);
  unsigned long long evals = 0;
  for (;;) {
    ++evals;
    if (evals > opts.span_cap) throw unsupported_error("well_definedness_check: search cap exceeded");
    Matrix combo(field, r, r);
    for (int k = 0; k < d; ++k) {
      if (c[k] != 0) combo = combo + (Scalar::from_long(field, c[k]) * space[k]);
    }
    if (!combo.det().is_zero()) {
      std::vector<Scalar> coeffs;
      for (long long ck : c) coeffs.push_back(Scalar::from_long(field, ck));
      if (!a1) {
        a1 = combo;
        c1 = coeffs;
      } else {
        // proportional coefficient vectors give the same projective point
        int lead = -1;
        for (int k = 0; k < d; ++k) {
          if (!c1[k].is_zero()) {
            lead = k;
            break;
          }
        }
        const Scalar lambda = coeffs[lead] / c1[lead];
        bool proportional = true;
        for (int k = 0; k < d && proportional; ++k) proportional = coeffs[k] == lambda * c1[k];
        if (!proportional) {
          a2 = combo;
          break;
        }
      }
    }
    int k = d - 1;
    while (k >= 0 && c[k] + 1 >= per_axis) c[k--] = 0;
    if (k < 0) break;
    c[k] += 1;
  }
  if (!a1 || !a2) return true;  // no second direction: nothing to compare

  const AlgebraBasis basis = span_w_phi(phi);
  Matrix m1(field, basis.dim(), basis.dim()), m2(field, basis.dim(), basis.dim());
  const Matrix a1inv = *a1->inverse(), a2inv = *a2->inverse();
  for (int col = 0; col < basis.dim(); ++col) {
    const auto v1 = basis.coordinates(*a1 * basis.basis()[col] * a1inv);
    const auto v2 = basis.coordinates(*a2 * basis.basis()[col] * a2inv);
    for (int row = 0; row < basis.dim(); ++row) {
      m1.at(row, col) = v1[row];
      m2.at(row, col) = v2[row];
    }
  }
  return m1 == m2;
}

// the r^2 x r^2 matrix of X -> A X A^{-1} on End(r), row-major basis
inline Matrix conjugation_operator(const Matrix& A) {
  if (!A.is_square()) throw input_error("conjugation_operator: square matrix required");
  const auto Ainv = A.inverse();
  if (!Ainv) throw input_error("conjugation_operator: singular matrix");
  const int r = A.rows();
  Matrix F(A.field(), r * r, r * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Matrix Eij(A.field(), r, r);
      Eij.at(i, j) = Scalar::one(A.field());
      const Matrix img = A * Eij * *Ainv;
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) F.at(a * r + b, i * r + j) = img.at(a, b);
    }
  return F;
}

// Recover A with F(X) = A X A^{-1} from a unital algebra automorphism F of
// End(r), given as an r^2 x r^2 matrix in the row-major matrix-unit basis.
// Rejects maps that fail the matrix-unit product identities (e.g. the
// transpose map, an antiautomorphism).
inline Matrix inner_from_algebra_automorphism(const Matrix& F) {
  if (!F.is_square()) throw input_error("not a square matrix");
  int r = 0;
  while ((r + 1) * (r + 1) <= F.rows()) ++r;
  if (r * r != F.rows() || r == 0) throw input_error("size is not a perfect square");
  const FieldTag field = F.field();
  if (F.det().is_zero()) throw input_error("not an algebra automorphism: not bijective");

  // images of the matrix units E_ij (row-major vec convention)
  std::vector<std::vector<Matrix>> P(r, std::vector<Matrix>(r, Matrix(field, r, r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Matrix img(field, r, r);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) img.at(a, b) = F.at(a * r + b, i * r + j);
      P[i][j] = std::move(img);
    }
  // multiplicativity on matrix units: F(E_ij) F(E_kl) = delta_jk F(E_il)
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          const Matrix prod = P[i][j] * P[k][l];
          const Matrix expect = j == k ? P[i][l] : Matrix(field, r, r);
          if (!(prod == expect)) throw input_error("not an algebra automorphism: unit products fail");
        }
  Matrix unit_sum(field, r, r);
  for (int i = 0; i < r; ++i) unit_sum = unit_sum + P[i][i];
  if (!unit_sum.is_identity()) throw input_error("not an algebra automorphism: not unital");

  // F(E_11) is a rank-one idempotent; its image spans the first column of A
  std::vector<Scalar> v1(r, Scalar::zero(field));
  bool found = false;
  for (int col = 0; col < r && !found; ++col) {
    for (int row = 0; row < r; ++row) {
      if (!P[0][0].at(row, col).is_zero()) {
        for (int k = 0; k < r; ++k) v1[k] = P[0][0].at(k, col);
        found = true;
        break;
      }
    }
  }
  if (!found) throw input_error("not an algebra automorphism: F(E_11) = 0");
  Matrix A(field, r, r);
  for (int i = 0; i < r; ++i) {
    const std::vector<Scalar> vi = detail::matvec(P[i][0], v1);
    for (int k = 0; k < r; ++k) A.at(k, i) = vi[k];
  }
  const auto Ainv = A.inverse();
  if (!Ainv) throw input_error("not an algebra automorphism: recovered matrix is singular");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Matrix Eij(field, r, r);
      Eij.at(i, j) = Scalar::one(field);
      if (!(A * Eij * *Ainv == P[i][j])) {
        throw consistency_error("inner recovery failed on a matrix unit");
      }
    }
  return A;
}

}  // namespace surfrep
