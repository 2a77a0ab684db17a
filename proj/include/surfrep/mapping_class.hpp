#pragma once

// Mapping classes as validated automorphisms of the surface group, given by
// generator -> word maps with explicit inverses.  Validation checks the
// inverse identities in the group, relator conjugacy (closed case), purity,
// the symplectic condition on homology and, for twists, the transvection
// form of the homology action.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfrep/intmatrix.hpp"
#include "surfrep/word.hpp"

namespace surfrep {

namespace detail {

inline Word apply_images(const std::vector<Word>& images, const Word& w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    if (l.sym < 0 || l.sym >= static_cast<int>(images.size())) {
      throw input_error("word uses a symbol outside the mapping class alphabet");
    }
    const Word im = l.sgn > 0 ? images[l.sym] : images[l.sym].inverse();
    for (const Letter& m : im.letters()) out.push_back(m);
  }
  return Word::from_letters(std::move(out));
}

}  // namespace detail

inline int h1_rank(const Presentation& p) {
  return 2 * p.alphabet.genus + std::max(p.alphabet.punctures - 1, 0);
}

// intersection form on H_1 in the basis a1,b1,...,ag,bg,c1,...,c_{n-1};
// puncture classes pair to zero
inline IntMatrix intersection_form(const Presentation& p) {
  const int m = h1_rank(p);
  IntMatrix j(m, m);
  for (int i = 0; i < p.alphabet.genus; ++i) {
    j.at(2 * i, 2 * i + 1) = 1;
    j.at(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

struct TwistData {
  std::vector<long long> h1_class;  // curve class in the H_1 basis
  int sign = 1;                     // homology action is I + sign * c (c^T J)
};

class MappingClass {
 public:
  static MappingClass create(Presentation pres, std::string label, std::vector<Word> forward,
                             std::vector<Word> backward, bool pure = false,
                             std::optional<TwistData> twist = std::nullopt) {
    MappingClass f(std::move(pres), std::move(label), std::move(forward), std::move(backward), pure,
                   std::move(twist));
    f.validate();
    return f;
  }

  // testing hook for negative controls; skips all invariants
  static MappingClass create_unchecked(Presentation pres, std::string label, std::vector<Word> forward,
                                       std::vector<Word> backward, bool pure = false,
                                       std::optional<TwistData> twist = std::nullopt) {
    return MappingClass(std::move(pres), std::move(label), std::move(forward), std::move(backward), pure,
                        std::move(twist));
  }

  const Presentation& presentation() const { return pres_; }
  const std::string& label() const { return label_; }
  const Word& forward(int sym) const { return fwd_.at(sym); }
  const Word& backward(int sym) const { return bwd_.at(sym); }
  const std::vector<Word>& forward_images() const { return fwd_; }
  const std::vector<Word>& backward_images() const { return bwd_; }
  bool pure() const { return pure_; }
  const std::optional<TwistData>& twist() const { return twist_; }

  void validate() const;

  friend bool operator==(const MappingClass& x, const MappingClass& y) {
    return x.pres_ == y.pres_ && x.fwd_ == y.fwd_ && x.bwd_ == y.bwd_;
  }

 private:
  MappingClass(Presentation pres, std::string label, std::vector<Word> forward, std::vector<Word> backward,
               bool pure, std::optional<TwistData> twist)
      : pres_(std::move(pres)),
        label_(std::move(label)),
        fwd_(std::move(forward)),
        bwd_(std::move(backward)),
        pure_(pure),
        twist_(std::move(twist)) {}

  Presentation pres_;
  std::string label_;
  std::vector<Word> fwd_, bwd_;
  bool pure_ = false;
  std::optional<TwistData> twist_;
};

inline Word apply(const MappingClass& f, const Word& w) { return detail::apply_images(f.forward_images(), w); }

inline Word apply_inverse(const MappingClass& f, const Word& w) {
  return detail::apply_images(f.backward_images(), w);
}

inline MappingClass inverse(const MappingClass& f) {
  std::string label = f.label();
  if (label.size() > 3 && label.substr(label.size() - 3) == "^-1") {
    label = label.substr(0, label.size() - 3);
  } else {
    label += "^-1";
  }
  std::optional<TwistData> twist = f.twist();
  if (twist) twist->sign = -twist->sign;
  return MappingClass::create(f.presentation(), std::move(label), f.backward_images(), f.forward_images(),
                              f.pure(), std::move(twist));
}

// f after g: (compose(f,g))_* = f_* o g_*
inline MappingClass compose(const MappingClass& f, const MappingClass& g) {
  if (!(f.presentation() == g.presentation())) throw input_error("compose: presentation mismatch");
  const int n = f.presentation().alphabet.symbol_count();
  std::vector<Word> fwd(n), bwd(n);
  for (int s = 0; s < n; ++s) {
    fwd[s] = detail::apply_images(f.forward_images(), g.forward(s));
    bwd[s] = detail::apply_images(g.backward_images(), f.backward(s));
  }
  return MappingClass::create(f.presentation(), f.label() + "*" + g.label(), std::move(fwd), std::move(bwd),
                              f.pure() && g.pure());
}

inline MappingClass identity_class(const Presentation& pres) {
  const int n = pres.alphabet.symbol_count();
  std::vector<Word> id(n);
  for (int s = 0; s < n; ++s) id[s] = Word::from_letters({{s, 1}});
  return MappingClass::create(pres, "id", id, id, true);
}

// the inner automorphism x -> alpha x alpha^{-1}
inline MappingClass point_push(const Presentation& pres, const Word& alpha) {
  const int n = pres.alphabet.symbol_count();
  std::vector<Word> fwd(n), bwd(n);
  for (int s = 0; s < n; ++s) {
    const Word x = Word::from_letters({{s, 1}});
    fwd[s] = x.conjugated_by(alpha);
    bwd[s] = x.conjugated_by(alpha.inverse());
  }
  return MappingClass::create(pres, "push(" + alpha.str(pres.alphabet) + ")", std::move(fwd), std::move(bwd),
                              true);
}

// iota(f_* gamma) = f iota(gamma) f^{-1}, as automorphisms of pi; the right
// side is composed without intermediate revalidation, the comparison itself
// is the check
inline bool birman_relation_check(const MappingClass& f, const Word& gamma) {
  const Presentation& p = f.presentation();
  const Word lhs_conj = apply(f, gamma);
  for (int s = 0; s < p.alphabet.symbol_count(); ++s) {
    const Word x = Word::from_letters({{s, 1}});
    const Word lhs = x.conjugated_by(lhs_conj);
    // (f o iota(gamma) o f^{-1})(x)
    const Word rhs = apply(f, apply_inverse(f, x).conjugated_by(gamma));
    if (!p.equal_in_group(lhs, rhs)) return false;
  }
  return true;
}

// abelianized action on H_1 = Z^{2g + max(n-1,0)}; c_n is rewritten via the
// boundary identity as -(c_1 + ... + c_{n-1})
inline IntMatrix homology_action(const MappingClass& f) {
  const Presentation& p = f.presentation();
  const int g2 = 2 * p.alphabet.genus;
  const int n = p.alphabet.punctures;
  const int m = h1_rank(p);
  IntMatrix h(m, m);
  for (int col = 0; col < m; ++col) {
    const int sym = col;  // basis order matches symbol order with c_n dropped
    const auto e = exponent_sums(p.alphabet, f.forward(sym));
    const long long last = n >= 1 ? e[p.alphabet.c_index(n)] : 0;
    for (int row = 0; row < m; ++row) {
      h.at(row, col) = static_cast<long>(row < g2 ? e[row] : e[row] - last);
    }
  }
  return h;
}

// M^T J M = J for the closed-surface intersection form
inline bool symplectic_check(const MappingClass& f) {
  if (f.presentation().alphabet.punctures != 0) {
    throw unsupported_error("symplectic_check is defined for closed surfaces only");
  }
  const IntMatrix j = intersection_form(f.presentation());
  const IntMatrix h = homology_action(f);
  return h.transpose() * j * h == j;
}

inline void MappingClass::validate() const {
  const Alphabet& ab = pres_.alphabet;
  const int n = ab.symbol_count();
  if (static_cast<int>(fwd_.size()) != n || static_cast<int>(bwd_.size()) != n) {
    throw validation_error("mapping class '" + label_ + "': image table size mismatch");
  }
  for (int s = 0; s < n; ++s) {
    for (const auto& img : {fwd_[s], bwd_[s]}) {
      for (const Letter& l : img.letters()) {
        if (l.sym < 0 || l.sym >= n) {
          throw validation_error("mapping class '" + label_ + "': image uses unknown symbol");
        }
      }
    }
  }
  // explicit inverse witnesses: backward o forward = forward o backward = id
  for (int s = 0; s < n; ++s) {
    const Word x = Word::from_letters({{s, 1}});
    if (!pres_.equal_in_group(detail::apply_images(bwd_, fwd_[s]), x)) {
      throw validation_error("mapping class '" + label_ + "': backward is not a left inverse at " +
                             ab.symbol_name(s));
    }
    if (!pres_.equal_in_group(detail::apply_images(fwd_, bwd_[s]), x)) {
      throw validation_error("mapping class '" + label_ + "': backward is not a right inverse at " +
                             ab.symbol_name(s));
    }
  }
  // closed case: the relator maps to a conjugate of itself or its inverse
  if (pres_.closed() && ab.genus >= 1) {
    const Word rel = pres_.relator();
    const Word img = detail::apply_images(fwd_, rel);
    if (!free_conjugate(img, rel) && !free_conjugate(img, rel.inverse())) {
      throw validation_error("mapping class '" + label_ + "': relator image not conjugate to relator^{+-1}");
    }
    if (!symplectic_check(*this)) {
      throw validation_error("mapping class '" + label_ + "': homology action is not symplectic");
    }
  }
  // purity: each puncture loop maps to a conjugate of itself
  if (pure_) {
    for (int j = 1; j <= ab.punctures; ++j) {
      const Word cj = Word::from_letters({{ab.c_index(j), 1}});
      if (!free_conjugate(fwd_[ab.c_index(j)], cj)) {
        throw validation_error("mapping class '" + label_ + "': not pure at c" + std::to_string(j));
      }
    }
  }
  // twist transvection form: H = I + sign * c (c^T J)
  if (twist_) {
    const int m = h1_rank(pres_);
    if (static_cast<int>(twist_->h1_class.size()) != m || (twist_->sign != 1 && twist_->sign != -1)) {
      throw validation_error("mapping class '" + label_ + "': malformed twist data");
    }
    const IntMatrix j = intersection_form(pres_);
    IntMatrix expect = IntMatrix::identity(m);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        mpz_class ctj = 0;  // (c^T J)_c
        for (int k = 0; k < m; ++k) ctj += static_cast<long>(twist_->h1_class[k]) * j.at(k, c);
        expect.at(r, c) += twist_->sign * static_cast<long>(twist_->h1_class[r]) * ctj;
      }
    }
    if (!(homology_action(*this) == expect)) {
      throw validation_error("mapping class '" + label_ + "': homology action is not the stated transvection");
    }
  }
}

struct GeneratorSet {
  Presentation pres;
  std::string name;
  std::string provenance;
  std::vector<MappingClass> classes;

  void validate() const {
    for (const MappingClass& f : classes) {
      if (!(f.presentation() == pres)) {
        throw validation_error("generator set '" + name + "': member on a different presentation");
      }
      f.validate();
    }
    // closed under the stored inverses
    for (const MappingClass& f : classes) {
      bool found = false;
      for (const MappingClass& g : classes) {
        bool match = true;
        for (int s = 0; s < pres.alphabet.symbol_count() && match; ++s) {
          match = pres.equal_in_group(g.forward(s), f.backward(s));
        }
        if (match) {
          found = true;
          break;
        }
      }
      if (!found) {
        throw validation_error("generator set '" + name + "': no stored inverse for '" + f.label() + "'");
      }
    }
  }
};

}  // namespace surfrep
