#pragma once

// Exhaustive finite-field exploration: all homomorphisms pi -> GL(r, GF(p))
// for tiny parameters, their conjugacy classes (by direct conjugation with
// the full finite group), the generator-set action on classes, and the fixed
// class atlas.  Parallel sharding is deterministic: the merged maps are
// keyed by canonical serializations, so single-threaded and multi-threaded
// runs produce identical atlases.

#include <gmpxx.h>

#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "surfrep/gensets.hpp"
#include "surfrep/representation.hpp"

namespace surfrep {

struct SearchSpec {
  int g = 0, n = 0, r = 1;
  long long p = 2;
  unsigned long long max_tuples = 4'000'000;
  enum class Mode { hom, cls } mode = Mode::cls;
  int threads = 1;

  std::string mode_name() const { return mode == Mode::hom ? "hom" : "cls"; }
};

// all invertible r x r matrices over GF(p), lexicographic in the row-major
// residue vector
inline std::vector<Matrix> general_linear_group(long long p, int r) {
  const FieldTag f = FieldTag::prime(p);
  std::vector<Matrix> out;
  std::vector<long long> entries(static_cast<size_t>(r) * r, 0);
  for (;;) {
    Matrix m(f, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m.at(i, j) = Scalar::from_long(f, entries[i * r + j]);
    if (!m.det().is_zero()) out.push_back(std::move(m));
    int k = static_cast<int>(entries.size()) - 1;
    while (k >= 0 && entries[k] + 1 >= p) entries[k--] = 0;
    if (k < 0) break;
    entries[k] += 1;
  }
  return out;
}

inline mpz_class general_linear_order(long long p, int r) {
  // prod_{i<r} (p^r - p^i)
  mpz_class pr = 1;
  for (int i = 0; i < r; ++i) pr *= static_cast<long>(p);
  mpz_class out = 1, pi = 1;
  for (int i = 0; i < r; ++i) {
    out *= pr - pi;
    pi *= static_cast<long>(p);
  }
  return out;
}

inline mpz_class hom_search_space(const SearchSpec& spec) {
  mpz_class total = 1;
  const mpz_class order = general_linear_order(spec.p, spec.r);
  for (int s = 0; s < 2 * spec.g + spec.n; ++s) total *= order;
  return total;
}

namespace detail {

// relator check on a tuple of GL elements (closed surfaces)
inline bool relator_holds(const std::vector<int>& tuple, const std::vector<Matrix>& gl,
                          const std::vector<int>& inv_index, int g, int r, const FieldTag& f) {
  Matrix acc = Matrix::identity(f, r);
  for (int i = 0; i < g; ++i) {
    const Matrix& A = gl[tuple[2 * i]];
    const Matrix& B = gl[tuple[2 * i + 1]];
    acc = acc * A * B * gl[inv_index[tuple[2 * i]]] * gl[inv_index[tuple[2 * i + 1]]];
  }
  return acc.is_identity();
}

inline std::vector<int> gl_inverse_table(const std::vector<Matrix>& gl) {
  std::map<std::string, int> by_key;
  for (size_t i = 0; i < gl.size(); ++i) by_key[gl[i].str()] = static_cast<int>(i);
  std::vector<int> inv(gl.size());
  for (size_t i = 0; i < gl.size(); ++i) inv[i] = by_key.at((*gl[i].inverse()).str());
  return inv;
}

inline std::string tuple_key(const std::vector<Matrix>& assign) {
  std::string k;
  for (const Matrix& m : assign) {
    k += m.str();
    k += '|';
  }
  return k;
}

// canonical representative of the conjugation orbit: the lexicographically
// smallest conjugate tuple, computed by direct conjugation over GL(r,p)
inline std::pair<std::string, std::vector<Matrix>> canonical_class(
    const std::vector<Matrix>& assign, const std::vector<Matrix>& gl,
    const std::vector<int>& inv_index) {
  std::string best_key;
  std::vector<Matrix> best;
  for (size_t c = 0; c < gl.size(); ++c) {
    std::vector<Matrix> conj;
    conj.reserve(assign.size());
    for (const Matrix& m : assign) conj.push_back(gl[c] * m * gl[inv_index[c]]);
    std::string key = tuple_key(conj);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(conj);
    }
  }
  return {best_key, best};
}

}  // namespace detail

// every generator tuple over GL(r,p) passing the relator check (n = 0) or
// all tuples (n >= 1), each exactly once, in odometer order
template <typename Callback>
void enumerate_homs(const SearchSpec& spec, Callback&& cb) {
  if (hom_search_space(spec) > mpz_class(std::to_string(spec.max_tuples))) {
    throw unsupported_error("enumerate_homs: search space " + hom_search_space(spec).get_str() +
                            " exceeds max-tuples cap " + std::to_string(spec.max_tuples));
  }
  const FieldTag f = FieldTag::prime(spec.p);
  const std::vector<Matrix> gl = general_linear_group(spec.p, spec.r);
  const std::vector<int> inv = detail::gl_inverse_table(gl);
  const int slots = 2 * spec.g + spec.n;
  const Presentation pres{Alphabet{spec.g, spec.n}};

  std::vector<int> tuple(slots, 0);
  for (;;) {
    const bool keep = spec.n >= 1 || spec.g == 0 ||
                      detail::relator_holds(tuple, gl, inv, spec.g, spec.r, f);
    if (keep) {
      std::vector<Matrix> assign;
      assign.reserve(slots);
      for (int s = 0; s < slots; ++s) assign.push_back(gl[tuple[s]]);
      cb(Representation::create(pres, f, spec.r, std::move(assign)));
    }
    int k = slots - 1;
    while (k >= 0 && tuple[k] + 1 >= static_cast<int>(gl.size())) tuple[k--] = 0;
    if (k < 0) break;
    tuple[k] += 1;
  }
}

inline std::vector<Representation> enumerate_homs(const SearchSpec& spec) {
  std::vector<Representation> out;
  enumerate_homs(spec, [&](Representation r) { out.push_back(std::move(r)); });
  return out;
}

struct Atlas {
  int g = 0, n = 0, r = 1;
  long long p = 2;
  std::string mode;
  std::string genset_name;
  unsigned long long total_homs = 0;
  unsigned long long class_count = 0;  // hom count in hom mode
  std::map<unsigned long long, unsigned long long> orbit_histogram;  // size -> #orbits
  std::vector<Representation> fixed_representatives;                 // orbit size 1
  std::vector<std::string> fixed_keys;
  unsigned long long inconclusive = 0;  // always 0: the finite search is exact

  // deterministic plain-text dump (the JSON layer mirrors this data)
  std::string canonical_text() const {
    std::string s;
    s += "atlas g=" + std::to_string(g) + " n=" + std::to_string(n) + " r=" + std::to_string(r) +
         " p=" + std::to_string(p) + " mode=" + mode + " genset=" + genset_name + "\n";
    s += "total_homs=" + std::to_string(total_homs) + "\n";
    s += "class_count=" + std::to_string(class_count) + "\n";
    for (const auto& [size, count] : orbit_histogram) {
      s += "orbit_size " + std::to_string(size) + " x" + std::to_string(count) + "\n";
    }
    for (const std::string& k : fixed_keys) s += "fixed " + k + "\n";
    s += "inconclusive=" + std::to_string(inconclusive) + "\n";
    return s;
  }
};

// Buckets homomorphisms into conjugacy classes (mode cls) or keeps them as
// points (mode hom), computes the S-action orbits, and reports fixed classes.
inline Atlas fixed_point_atlas(const SearchSpec& spec, const GeneratorSet& S) {
  if (!(S.pres == Presentation{Alphabet{spec.g, spec.n}})) {
    throw input_error("fixed_point_atlas: generator set presentation does not match the search spec");
  }
  if (hom_search_space(spec) > mpz_class(std::to_string(spec.max_tuples))) {
    throw unsupported_error("fixed_point_atlas: search space exceeds max-tuples cap");
  }
  const FieldTag f = FieldTag::prime(spec.p);
  const std::vector<Matrix> gl = general_linear_group(spec.p, spec.r);
  const std::vector<int> inv = detail::gl_inverse_table(gl);
  const int slots = 2 * spec.g + spec.n;
  const Presentation pres{Alphabet{spec.g, spec.n}};
  const bool classes = spec.mode == SearchSpec::Mode::cls;

  // sharded enumeration over the leading matrix index; deterministic merge
  const int nthreads = std::max(1, spec.threads);
  std::vector<std::map<std::string, Representation>> local_states(nthreads);
  std::vector<unsigned long long> local_hom_counts(nthreads, 0);

  auto worker = [&](int tid, int lead_lo, int lead_hi) {
    std::vector<int> tuple(slots, 0);
    if (slots == 0) {
      if (tid != 0) return;
      const Representation rep = Representation::create(pres, f, spec.r, {});
      local_states[tid].emplace(detail::tuple_key({}), rep);
      local_hom_counts[tid] = 1;
      return;
    }
    for (int lead = lead_lo; lead < lead_hi; ++lead) {
      tuple.assign(slots, 0);
      tuple[0] = lead;
      for (;;) {
        const bool keep =
            spec.n >= 1 || spec.g == 0 || detail::relator_holds(tuple, gl, inv, spec.g, spec.r, f);
        if (keep) {
          ++local_hom_counts[tid];
          std::vector<Matrix> assign;
          assign.reserve(slots);
          for (int s = 0; s < slots; ++s) assign.push_back(gl[tuple[s]]);
          if (classes) {
            auto [key, rep_assign] = detail::canonical_class(assign, gl, inv);
            if (!local_states[tid].count(key)) {
              local_states[tid].emplace(std::move(key),
                                        Representation::create(pres, f, spec.r, std::move(rep_assign)));
            }
          } else {
            std::string key = detail::tuple_key(assign);
            if (!local_states[tid].count(key)) {
              local_states[tid].emplace(std::move(key),
                                        Representation::create(pres, f, spec.r, std::move(assign)));
            }
          }
        }
        int k = slots - 1;
        while (k >= 1 && tuple[k] + 1 >= static_cast<int>(gl.size())) tuple[k--] = 0;
        if (k < 1) break;  // the lead slot is fixed per shard
        tuple[k] += 1;
      }
    }
  };

  if (nthreads == 1) {
    worker(0, 0, static_cast<int>(gl.size()));
  } else {
    std::vector<std::thread> pool;
    const int total = static_cast<int>(gl.size());
    for (int t = 0; t < nthreads; ++t) {
      const int lo = total * t / nthreads, hi = total * (t + 1) / nthreads;
      pool.emplace_back(worker, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  Atlas atlas;
  atlas.g = spec.g;
  atlas.n = spec.n;
  atlas.r = spec.r;
  atlas.p = spec.p;
  atlas.mode = spec.mode_name();
  atlas.genset_name = S.name;

  std::map<std::string, Representation> states;  // sorted: deterministic
  for (int t = 0; t < nthreads; ++t) {
    atlas.total_homs += local_hom_counts[t];
    for (auto& [key, rep] : local_states[t]) states.emplace(key, rep);
  }
  atlas.class_count = states.size();

  // generator action on states, then orbit decomposition
  std::vector<std::string> keys;
  std::map<std::string, int> key_index;
  std::vector<const Representation*> reps;
  for (auto& [key, rep] : states) {
    key_index[key] = static_cast<int>(keys.size());
    keys.push_back(key);
    reps.push_back(&rep);
  }
  auto state_of = [&](const Representation& rep) {
    std::vector<Matrix> assign;
    assign.reserve(slots);
    for (int s = 0; s < slots; ++s) assign.push_back(rep.matrix(s));
    const std::string key =
        classes ? detail::canonical_class(assign, gl, inv).first : detail::tuple_key(assign);
    return key_index.at(key);  // the action stays inside the enumerated space
  };
  const int nstates = static_cast<int>(keys.size());
  std::vector<std::vector<int>> moves(nstates);
  for (int i = 0; i < nstates; ++i) {
    for (const MappingClass& cl : S.classes) moves[i].push_back(state_of(act(cl, *reps[i])));
  }
  std::vector<int> orbit_id(nstates, -1);
  int next_orbit = 0;
  for (int i = 0; i < nstates; ++i) {
    if (orbit_id[i] >= 0) continue;
    std::vector<int> stack{i};
    orbit_id[i] = next_orbit;
    unsigned long long size = 0;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      ++size;
      for (int nxt : moves[cur]) {
        if (orbit_id[nxt] < 0) {
          orbit_id[nxt] = next_orbit;
          stack.push_back(nxt);
        }
      }
    }
    atlas.orbit_histogram[size] += 1;
    if (size == 1) {
      atlas.fixed_keys.push_back(keys[i]);
      atlas.fixed_representatives.push_back(*reps[i]);
    }
    ++next_orbit;
  }
  return atlas;
}

}  // namespace surfrep
