#pragma once

// Shipped generator sets: Lickorish-style handle twists plus connecting
// twists between adjacent handles, with explicit inverses.  The connector
// word maps were computed by lifting braid half-twists through the
// hyperelliptic double cover of the punctured disk and rewriting in the
// standard generators; every member is re-verified by MappingClass
// validation (relator conjugacy, inverse identities, purity, symplectic
// homology action, transvection form).
//
// Orientation convention: a twist about a curve of class c acts on H_1 by
// I + sign * c (c^T J) with J the standard intersection form.

#include <string>
#include <utility>
#include <vector>

#include "surfrep/mapping_class.hpp"

namespace surfrep {

namespace detail {

inline std::vector<Word> identity_images(const Presentation& p) {
  std::vector<Word> v(p.alphabet.symbol_count());
  for (int s = 0; s < p.alphabet.symbol_count(); ++s) v[s] = Word::from_letters({{s, 1}});
  return v;
}

inline std::vector<long long> h1_vector(const Presentation& p,
                                        const std::vector<std::pair<int, long long>>& entries) {
  std::vector<long long> v(h1_rank(p), 0);
  for (auto& [idx, val] : entries) v[idx] = val;
  return v;
}

// twist about the alpha_i curve (class a_i): b_i -> b_i a_i
inline MappingClass alpha_twist(const Presentation& p, int i) {
  const Alphabet& ab = p.alphabet;
  auto fwd = identity_images(p), bwd = identity_images(p);
  fwd[ab.b_index(i)] = Word::parse(ab, "b" + std::to_string(i) + " a" + std::to_string(i));
  bwd[ab.b_index(i)] = Word::parse(ab, "b" + std::to_string(i) + " a" + std::to_string(i) + "'");
  return MappingClass::create(p, "t_a" + std::to_string(i), std::move(fwd), std::move(bwd), true,
                              TwistData{h1_vector(p, {{ab.a_index(i), 1}}), 1});
}

// twist about the beta_i curve (class b_i): a_i -> a_i b_i^{-1}
inline MappingClass beta_twist(const Presentation& p, int i) {
  const Alphabet& ab = p.alphabet;
  auto fwd = identity_images(p), bwd = identity_images(p);
  fwd[ab.a_index(i)] = Word::parse(ab, "a" + std::to_string(i) + " b" + std::to_string(i) + "'");
  bwd[ab.a_index(i)] = Word::parse(ab, "a" + std::to_string(i) + " b" + std::to_string(i));
  return MappingClass::create(p, "t_b" + std::to_string(i), std::move(fwd), std::move(bwd), true,
                              TwistData{h1_vector(p, {{ab.b_index(i), 1}}), 1});
}

// twist about the connecting curve through handles i and i+1
// (class a_i - a_{i+1}); fixes every generator of the other handles
inline MappingClass connector_twist(const Presentation& p, int i) {
  const Alphabet& ab = p.alphabet;
  const std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
  const std::string A = "a" + std::to_string(i + 1), B = "b" + std::to_string(i + 1);
  auto fwd = identity_images(p), bwd = identity_images(p);
  fwd[ab.b_index(i)] = Word::parse(ab, b + " " + a + "' " + b + "' " + A + " " + b);
  fwd[ab.a_index(i + 1)] = Word::parse(ab, b + " " + a + "' " + b + "' " + A + " " + b + " " + a + " " + b + "'");
  fwd[ab.b_index(i + 1)] = Word::parse(ab, B + " " + A + "' " + b + " " + a + " " + b + "'");
  bwd[ab.b_index(i)] = Word::parse(ab, A + "' " + b + " " + a);
  bwd[ab.a_index(i + 1)] = Word::parse(
      ab, A + "' " + b + " " + a + " " + b + "' " + A + " " + b + " " + a + "' " + b + "' " + A);
  bwd[ab.b_index(i + 1)] = Word::parse(ab, B + " " + b + " " + a + "' " + b + "' " + A);
  return MappingClass::create(
      p, "t_g" + std::to_string(i) + std::to_string(i + 1), std::move(fwd), std::move(bwd), true,
      TwistData{h1_vector(p, {{ab.a_index(i), 1}, {ab.a_index(i + 1), -1}}), -1});
}

// sphere braid twist about a curve enclosing punctures i < j
inline MappingClass sphere_braid_twist(const Presentation& p, int i, int j,
                                       std::vector<long long> h1_class) {
  const Alphabet& ab = p.alphabet;
  // half-twist generators sigma_k exchanging punctures k, k+1
  auto sigma = [&](int k, bool inv) {
    auto img = identity_images(p);
    const int ck = ab.c_index(k), cn = ab.c_index(k + 1);
    const Word xk = Word::from_letters({{ck, 1}}), xn = Word::from_letters({{cn, 1}});
    if (!inv) {
      img[ck] = xk * xn * xk.inverse();
      img[cn] = xk;
    } else {
      img[ck] = xn;
      img[cn] = xn.inverse() * xk * xn;
    }
    return img;
  };
  // A_{ij} = sigma_{j-1} ... sigma_{i+1} sigma_i^2 sigma_{i+1}^{-1} ... sigma_{j-1}^{-1}
  auto compose_images = [&](const std::vector<Word>& outer, const std::vector<Word>& inner) {
    std::vector<Word> r(inner.size());
    for (size_t s = 0; s < inner.size(); ++s) r[s] = apply_images(outer, inner[s]);
    return r;
  };
  auto fwd = compose_images(sigma(i, false), sigma(i, false));
  auto bwd = compose_images(sigma(i, true), sigma(i, true));
  for (int k = i + 1; k < j; ++k) {
    fwd = compose_images(sigma(k, false), compose_images(fwd, sigma(k, true)));
    bwd = compose_images(sigma(k, false), compose_images(bwd, sigma(k, true)));
  }
  return MappingClass::create(p, "A" + std::to_string(i) + std::to_string(j), std::move(fwd), std::move(bwd),
                              true, TwistData{std::move(h1_class), 1});
}

}  // namespace detail

inline GeneratorSet shipped_genset(int g, int n) {
  const Presentation p{Alphabet{g, n}};
  GeneratorSet set;
  set.pres = p;
  set.name = "g" + std::to_string(g) + "n" + std::to_string(n);

  auto add_with_inverse = [&set](MappingClass f) {
    set.classes.push_back(inverse(f));
    set.classes.insert(set.classes.end() - 1, std::move(f));
  };

  if (g >= 1 && (n == 0 || n == 1) && g <= 3) {
    for (int i = 1; i <= g; ++i) {
      add_with_inverse(detail::alpha_twist(p, i));
      add_with_inverse(detail::beta_twist(p, i));
    }
    for (int i = 1; i < g; ++i) add_with_inverse(detail::connector_twist(p, i));
    set.provenance =
        "Lickorish-style family: handle twists t_a_i (class a_i), t_b_i (class b_i) and "
        "connecting twists t_g_i,i+1 (class a_i - a_{i+1}) derived by lifting braid "
        "half-twists through the hyperelliptic double cover; orientation fixed by "
        "H = I + sign*c*(c^T J); every class machine-validated with its inverse.";
    return set;
  }
  if (g == 0 && n == 3) {
    add_with_inverse(detail::sphere_braid_twist(p, 1, 2, {1, 1}));
    add_with_inverse(detail::sphere_braid_twist(p, 2, 3, {-1, 0}));
    add_with_inverse(detail::sphere_braid_twist(p, 1, 3, {0, -1}));
    set.provenance =
        "Pure sphere braid twists A_ij about curves enclosing punctures i,j; "
        "all act trivially on H_1.";
    return set;
  }
  throw input_error("no shipped generator set for (g,n)=(" + std::to_string(g) + "," + std::to_string(n) + ")");
}

inline std::vector<std::pair<int, int>> shipped_genset_keys() {
  return {{1, 0}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {0, 3}};
}

inline GeneratorSet shipped_genset_by_name(const std::string& name) {
  for (auto [g, n] : shipped_genset_keys()) {
    if (name == "g" + std::to_string(g) + "n" + std::to_string(n)) return shipped_genset(g, n);
  }
  throw input_error("unknown shipped generator set '" + name + "'");
}

}  // namespace surfrep
