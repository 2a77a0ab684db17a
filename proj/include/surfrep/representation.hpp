#pragma once

// Representations phi: pi -> GL(r, F) with exact matrices, the mapping class
// action by precomposition, simultaneous conjugacy witnesses, stabilizer
// membership and orbit enumeration.  Searches with caps report three-valued
// outcomes; "none" is always certified, never a timeout in disguise.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfrep/mapping_class.hpp"
#include "surfrep/matrix.hpp"
#include "surfrep/word.hpp"

namespace surfrep {

class Representation {
 public:
  static Representation create(Presentation pres, FieldTag field, int r, std::vector<Matrix> assign) {
    Representation rep(std::move(pres), field, r, std::move(assign));
    rep.validate();
    return rep;
  }

  static Representation trivial(Presentation pres, FieldTag field, int r) {
    std::vector<Matrix> assign(pres.alphabet.symbol_count(), Matrix::identity(field, r));
    return Representation(std::move(pres), field, r, std::move(assign));
  }

  const Presentation& presentation() const { return pres_; }
  FieldTag field() const { return field_; }
  int dim() const { return r_; }

  const Matrix& matrix(int sym) const { return gen_.at(sym); }
  const Matrix& matrix_inverse(int sym) const { return gen_inv_.at(sym); }

  Matrix evaluate(const Word& w) const {
    Matrix acc = Matrix::identity(field_, r_);
    for (const Letter& l : w.letters()) {
      if (l.sym < 0 || l.sym >= static_cast<int>(gen_.size())) {
        throw input_error("word uses a symbol outside the representation alphabet");
      }
      acc = acc * (l.sgn > 0 ? gen_[l.sym] : gen_inv_[l.sym]);
    }
    return acc;
  }

  void validate() const {
    if (static_cast<int>(gen_.size()) != pres_.alphabet.symbol_count()) {
      throw input_error("representation: assignment size mismatch");
    }
    for (size_t s = 0; s < gen_.size(); ++s) {
      if (gen_[s].rows() != r_ || gen_[s].cols() != r_ || !(gen_[s].field() == field_)) {
        throw input_error("representation: matrix shape/field mismatch at " +
                          pres_.alphabet.symbol_name(static_cast<int>(s)));
      }
    }
    if (pres_.closed() && pres_.alphabet.genus >= 1) {
      if (!evaluate(pres_.relator()).is_identity()) {
        throw input_error("representation: relator does not evaluate to the identity");
      }
    }
  }

  std::string key() const {
    std::string k = field_.str() + "/r" + std::to_string(r_);
    for (const Matrix& m : gen_) k += ";" + m.str();
    return k;
  }

  friend bool operator==(const Representation& x, const Representation& y) {
    return x.pres_ == y.pres_ && x.field_ == y.field_ && x.r_ == y.r_ && x.gen_ == y.gen_;
  }

 private:
  Representation(Presentation pres, FieldTag field, int r, std::vector<Matrix> assign)
      : pres_(std::move(pres)), field_(field), r_(r), gen_(std::move(assign)) {
    gen_inv_.reserve(gen_.size());
    for (size_t s = 0; s < gen_.size(); ++s) {
      auto inv = gen_[s].inverse();
      if (!inv) {
        throw input_error("representation: matrix for " + pres_.alphabet.symbol_name(static_cast<int>(s)) +
                          " is singular");
      }
      gen_inv_.push_back(std::move(*inv));
    }
  }

  Presentation pres_;
  FieldTag field_;
  int r_ = 0;
  std::vector<Matrix> gen_, gen_inv_;
};

inline Matrix evaluate(const Representation& rep, const Word& w) { return rep.evaluate(w); }

// (f . phi)(gamma) = phi(f_*^{-1} gamma): each generator x gets phi(f_*^{-1} x)
inline Representation act(const MappingClass& f, const Representation& phi) {
  if (!(f.presentation() == phi.presentation())) throw input_error("act: presentation mismatch");
  const int n = phi.presentation().alphabet.symbol_count();
  std::vector<Matrix> assign;
  assign.reserve(n);
  for (int s = 0; s < n; ++s) assign.push_back(phi.evaluate(f.backward(s)));
  return Representation::create(phi.presentation(), phi.field(), phi.dim(), std::move(assign));
}

// the conjugacy class [phi] in the deformation space; equality is decided by
// conjugate_witness, no canonical form is stored
struct DeformationClass {
  Representation representative;
};

struct SolveOptions {
  unsigned long long span_cap = kDefaultSpanCap;
  int trace_prefilter_depth = 3;
};

struct WitnessResult {
  enum class Status { found, none, inconclusive };
  Status status = Status::none;
  std::optional<Matrix> witness;
  unsigned long long cap_fired = 0;  // set when inconclusive

  bool found() const { return status == Status::found; }
};

namespace detail {

inline std::vector<Word> words_up_to(const Alphabet& ab, int maxlen) {
  std::vector<Word> out{Word{}};
  std::vector<Letter> cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) return;
    for (int s = 0; s < ab.symbol_count(); ++s) {
      for (int sgn : {1, -1}) {
        Letter l{s, sgn};
        if (!cur.empty() && cur.back() == inverse_of(l)) continue;
        cur.push_back(l);
        out.push_back(Word::from_letters(cur));
        self(self, remaining - 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, maxlen);
  return out;
}

// necessary condition: conjugate representations share all traces
inline bool trace_prefilter(const Representation& phi, const Representation& psi, int depth) {
  for (const Word& w : words_up_to(phi.presentation().alphabet, depth)) {
    if (!(phi.evaluate(w).trace() == psi.evaluate(w).trace())) return false;
  }
  return true;
}

// stacked Sylvester system: A phi(x) = psi(x) A for all generators x
inline std::vector<Matrix> conjugator_space(const Representation& phi, const Representation& psi) {
  const int r = phi.dim();
  const int nsym = phi.presentation().alphabet.symbol_count();
  const FieldTag f = phi.field();
  Matrix sys(f, nsym * r * r, r * r);
  for (int s = 0; s < nsym; ++s) {
    const Matrix& P = phi.matrix(s);
    const Matrix& Q = psi.matrix(s);
    // row-major vec: row (i,j), col (k,l): d_{ik} P_{lj} - d_{lj} Q_{ik}
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int row = s * r * r + i * r + j;
        for (int l = 0; l < r; ++l) sys.at(row, i * r + l) += P.at(l, j);
        for (int k = 0; k < r; ++k) sys.at(row, k * r + j) -= Q.at(i, k);
      }
  }
  std::vector<Matrix> basis;
  for (const auto& v : nullspace(sys)) basis.push_back(Matrix::from_vec(f, r, r, v));
  return basis;
}

}  // namespace detail

// invertible A with A phi(x) A^{-1} = psi(x) for every generator x
inline WitnessResult conjugate_witness(const Representation& phi, const Representation& psi,
                                       const SolveOptions& opts = {}) {
  if (!(phi.presentation() == psi.presentation()) || phi.dim() != psi.dim() ||
      !(phi.field() == psi.field())) {
    throw input_error("conjugate_witness: shape mismatch");
  }
  WitnessResult out;
  if (phi == psi) {
    out.status = WitnessResult::Status::found;
    out.witness = Matrix::identity(phi.field(), phi.dim());
    return out;
  }
  if (!detail::trace_prefilter(phi, psi, opts.trace_prefilter_depth)) {
    out.status = WitnessResult::Status::none;  // certified: traces are conjugation invariants
    return out;
  }
  const std::vector<Matrix> basis = detail::conjugator_space(phi, psi);
  if (basis.empty()) {
    out.status = WitnessResult::Status::none;
    return out;
  }
  const SpanSearch search = invertible_in_span(basis, opts.span_cap);
  switch (search.status) {
    case SpanSearch::Status::found: {
      const Matrix& A = *search.witness;
      const Matrix Ainv = *A.inverse();
      for (int s = 0; s < phi.presentation().alphabet.symbol_count(); ++s) {
        if (!(A * phi.matrix(s) * Ainv == psi.matrix(s))) {
          throw consistency_error("conjugate_witness: solver returned a non-witness");
        }
      }
      out.status = WitnessResult::Status::found;
      out.witness = A;
      return out;
    }
    case SpanSearch::Status::none:
      out.status = WitnessResult::Status::none;
      return out;
    case SpanSearch::Status::cap_exceeded:
      out.status = WitnessResult::Status::inconclusive;
      out.cap_fired = search.cap;
      return out;
  }
  return out;
}

// class equality in the deformation space (three-valued, like the witness)
inline WitnessResult deformation_equal(const DeformationClass& x, const DeformationClass& y,
                                       const SolveOptions& opts = {}) {
  return conjugate_witness(x.representative, y.representative, opts);
}

// x -> phi(f_* x), the representation the stabilizer witness must reach
inline Representation pullback_by(const MappingClass& f, const Representation& phi) {
  if (!(f.presentation() == phi.presentation())) throw input_error("pullback_by: presentation mismatch");
  const int n = phi.presentation().alphabet.symbol_count();
  std::vector<Matrix> assign;
  assign.reserve(n);
  for (int s = 0; s < n; ++s) assign.push_back(phi.evaluate(f.forward(s)));
  return Representation::create(phi.presentation(), phi.field(), phi.dim(), std::move(assign));
}

// solution space of the stacked Sylvester system {A phi(x) = psi(x) A}
inline std::vector<Matrix> conjugator_solution_space(const Representation& phi, const Representation& psi) {
  return detail::conjugator_space(phi, psi);
}

// witness A_f with A_f phi(gamma) A_f^{-1} = phi(f_* gamma); I when f fixes
// phi pointwise
inline WitnessResult in_stabilizer_class(const MappingClass& f, const Representation& phi,
                                         const SolveOptions& opts = {}) {
  return conjugate_witness(phi, pullback_by(f, phi), opts);
}

// f . phi = phi exactly in Hom
inline bool in_strict_stabilizer(const MappingClass& f, const Representation& phi) {
  if (!(f.presentation() == phi.presentation())) throw input_error("in_strict_stabilizer: presentation mismatch");
  for (int s = 0; s < phi.presentation().alphabet.symbol_count(); ++s) {
    if (!(phi.evaluate(f.backward(s)) == phi.matrix(s))) return false;
  }
  return true;
}

struct FixedPointResult {
  enum class Verdict { yes, no, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  // per-generator certificates (label -> conjugator) for a "yes"
  std::vector<std::pair<std::string, Matrix>> witnesses;
  std::string detail;  // failing generator or the cap that fired
};

// [phi] fixed by every member of S (generators suffice: stabilizers are subgroups)
inline FixedPointResult is_global_fixed_point(const Representation& phi, const GeneratorSet& S,
                                              const SolveOptions& opts = {}) {
  FixedPointResult out;
  bool saw_inconclusive = false;
  std::string cap_note;
  for (const MappingClass& f : S.classes) {
    const WitnessResult w = in_stabilizer_class(f, phi, opts);
    if (w.status == WitnessResult::Status::none) {
      out.verdict = FixedPointResult::Verdict::no;
      out.detail = "moved by '" + f.label() + "'";
      out.witnesses.clear();
      return out;
    }
    if (w.status == WitnessResult::Status::inconclusive) {
      saw_inconclusive = true;
      cap_note = "conjugator search cap " + std::to_string(w.cap_fired) + " hit at '" + f.label() + "'";
      continue;
    }
    out.witnesses.emplace_back(f.label(), *w.witness);
  }
  if (saw_inconclusive) {
    out.verdict = FixedPointResult::Verdict::inconclusive;
    out.detail = cap_note;
    out.witnesses.clear();
  } else {
    out.verdict = FixedPointResult::Verdict::yes;
  }
  return out;
}

struct OrbitReport {
  enum class Mode { hom, cls };
  Mode mode = Mode::hom;
  std::vector<Representation> members;  // representatives in discovery order
  bool cap_hit = false;
  bool inconclusive = false;  // a class-equality test hit the solver cap
  unsigned long long cap = 0;
  bool closed = false;  // verified closure (only meaningful when complete)

  int size() const { return static_cast<int>(members.size()); }
};

namespace detail {

inline std::string trace_signature(const Representation& phi, int depth) {
  std::vector<std::string> traces;
  for (const Word& w : words_up_to(phi.presentation().alphabet, depth)) {
    traces.push_back(phi.evaluate(w).trace().str());
  }
  std::sort(traces.begin(), traces.end());
  std::string sig;
  for (const std::string& t : traces) {
    sig += t;
    sig += ',';
  }
  return sig;
}

}  // namespace detail

// breadth-first closure of {phi} under the stored generators (sets are closed
// under inverses).  Mode hom compares points exactly; mode cls compares up to
// conjugacy via the sorted trace signature prefilter plus witness confirmation.
inline OrbitReport orbit(const Representation& phi, const GeneratorSet& S, unsigned long long cap,
                         OrbitReport::Mode mode = OrbitReport::Mode::hom, const SolveOptions& opts = {}) {
  OrbitReport report;
  report.mode = mode;
  report.cap = cap;

  std::map<std::string, std::vector<int>> index;  // key/signature -> member ids
  auto state_key = [&](const Representation& r) {
    return mode == OrbitReport::Mode::hom ? r.key() : detail::trace_signature(r, opts.trace_prefilter_depth);
  };
  auto find_member = [&](const Representation& r, const std::string& key) -> std::optional<int> {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    for (int id : it->second) {
      if (mode == OrbitReport::Mode::hom) return id;  // exact key match
      const WitnessResult w = conjugate_witness(report.members[id], r, opts);
      if (w.status == WitnessResult::Status::found) return id;
      if (w.status == WitnessResult::Status::inconclusive) report.inconclusive = true;
    }
    return std::nullopt;
  };

  report.members.push_back(phi);
  index[state_key(phi)].push_back(0);
  std::vector<int> frontier{0};
  while (!frontier.empty() && !report.cap_hit) {
    std::vector<int> next;
    for (int id : frontier) {
      for (const MappingClass& f : S.classes) {
        const Representation moved = act(f, report.members[id]);
        const std::string key = state_key(moved);
        if (find_member(moved, key)) continue;
        if (static_cast<unsigned long long>(report.members.size()) >= cap) {
          report.cap_hit = true;
          break;
        }
        report.members.push_back(moved);
        index[key].push_back(static_cast<int>(report.members.size()) - 1);
        next.push_back(static_cast<int>(report.members.size()) - 1);
      }
      if (report.cap_hit) break;
    }
    frontier = std::move(next);
  }

  if (!report.cap_hit && !report.inconclusive) {
    report.closed = true;  // explicit closure re-check
    for (const Representation& m : report.members) {
      for (const MappingClass& f : S.classes) {
        const Representation moved = act(f, m);
        if (!find_member(moved, state_key(moved))) {
          report.closed = false;
          break;
        }
      }
      if (!report.closed) break;
    }
  }
  return report;
}

}  // namespace surfrep
