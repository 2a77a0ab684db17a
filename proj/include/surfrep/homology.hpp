#pragma once

// Co-invariants of H_1 under a generator set (Smith normal form readout) and
// the fixed characters of the induced action on Hom(H_1, GF(q)^x).

#include <string>
#include <vector>

#include "surfrep/gensets.hpp"
#include "surfrep/intmatrix.hpp"
#include "surfrep/mapping_class.hpp"
#include "surfrep/scalar.hpp"

namespace surfrep {

struct CoinvariantReport {
  int rank = 0;                          // rank of H_1
  IntMatrix stacked;                     // (H(f) - I) blocks side by side
  std::vector<mpz_class> smith_diagonal; // of the stacked matrix
  int free_rank = 0;                     // Z^free_rank summand of the quotient
  std::vector<mpz_class> torsion;       // diagonal entries > 1
  bool is_zero = false;                  // quotient is the zero module
};

// H_1 / span{(H(f) - I) v} as an abelian group
inline CoinvariantReport coinvariants(const GeneratorSet& S) {
  if (S.classes.empty()) throw input_error("coinvariants: empty generator set");
  CoinvariantReport rep;
  rep.rank = h1_rank(S.pres);
  const IntMatrix eye = IntMatrix::identity(rep.rank);
  bool first = true;
  for (const MappingClass& f : S.classes) {
    const IntMatrix block = homology_action(f) - eye;
    rep.stacked = first ? block : IntMatrix::hstack(rep.stacked, block);
    first = false;
  }
  const SmithResult smith = smith_normal_form(rep.stacked);
  rep.smith_diagonal = smith.diagonal;
  rep.is_zero = true;
  for (const mpz_class& d : rep.smith_diagonal) {
    if (d == 0) {
      ++rep.free_rank;
      rep.is_zero = false;
    } else if (d > 1) {
      rep.torsion.push_back(d);
      rep.is_zero = false;
    }
  }
  return rep;
}

struct CharacterFixedReport {
  long long q = 0;               // prime field size
  long long primitive_root = 1;  // chosen generator of GF(q)^x
  int rank = 0;                  // H_1 rank
  // fixed characters as exponent vectors e: chi(basis_i) = root^{e_i}
  std::vector<std::vector<long long>> exponents;
  // the same characters as residues mod q
  std::vector<std::vector<long long>> values;

  long long count() const { return static_cast<long long>(exponents.size()); }
  bool only_trivial() const {
    if (exponents.size() != 1) return false;
    for (long long e : exponents.front())
      if (e != 0) return false;
    return true;
  }
};

namespace detail {

inline long long smallest_primitive_root(long long q) {
  const long long n = q - 1;
  if (n == 1) return 1;
  std::vector<long long> prime_factors;
  long long m = n;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      prime_factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (long long g = 2; g < q; ++g) {
    bool ok = true;
    for (long long p : prime_factors) {
      if (powmod_u64(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(n / p),
                     static_cast<std::uint64_t>(q)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw consistency_error("no primitive root found");
}

}  // namespace detail

// All characters chi: H_1 -> GF(q)^x with chi o H(f) = chi for every f in S,
// computed as the kernel of the stacked (H(f)^T - I) action on the exponent
// lattice (Z/(q-1))^rank via Smith normal form.
inline CharacterFixedReport character_fixed_points(const GeneratorSet& S, long long q) {
  if (S.classes.empty()) throw input_error("character_fixed_points: empty generator set");
  if (q < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(q))) {
    throw input_error("character_fixed_points: field size must be prime");
  }
  CharacterFixedReport rep;
  rep.q = q;
  rep.rank = h1_rank(S.pres);
  rep.primitive_root = detail::smallest_primitive_root(q);
  const long long N = q - 1;

  const int m = rep.rank;
  const IntMatrix eye = IntMatrix::identity(m);
  IntMatrix stacked;
  bool first = true;
  for (const MappingClass& f : S.classes) {
    const IntMatrix block = homology_action(f).transpose() - eye;
    stacked = first ? block : IntMatrix::vstack(stacked, block);
    first = false;
  }
  const SmithResult smith = smith_normal_form(stacked);

  // stacked e = 0 mod N  <=>  diag y = 0 mod N with e = V y
  std::vector<long long> freedom(m);  // y_i takes gcd(d_i, N) values
  unsigned long long total = 1;
  for (int i = 0; i < m; ++i) {
    const mpz_class g = gcd(smith.diagonal[i], mpz_class(static_cast<long>(N)));
    freedom[i] = g == 0 ? N : g.get_si();
    total *= static_cast<unsigned long long>(freedom[i]);
    if (total > 1'000'000) throw unsupported_error("character_fixed_points: too many fixed characters");
  }

  std::vector<long long> y(m, 0), idx(m, 0);
  for (;;) {
    for (int i = 0; i < m; ++i) y[i] = idx[i] * (N / freedom[i]);
    std::vector<long long> e(m, 0);
    for (int i = 0; i < m; ++i) {
      mpz_class acc = 0;
      for (int j = 0; j < m; ++j) acc += smith.v.at(i, j) * static_cast<long>(y[j]);
      mpz_class r = acc % static_cast<long>(N);
      long long ei = r.get_si();
      if (ei < 0) ei += N;
      e[i] = ei;
    }
    rep.exponents.push_back(std::move(e));
    int k = m - 1;
    while (k >= 0 && idx[k] + 1 >= freedom[k]) idx[k--] = 0;
    if (k < 0) break;
    idx[k] += 1;
  }
  std::sort(rep.exponents.begin(), rep.exponents.end());

  rep.values.reserve(rep.exponents.size());
  for (const auto& e : rep.exponents) {
    std::vector<long long> val(m);
    for (int i = 0; i < m; ++i) {
      val[i] = static_cast<long long>(detail::powmod_u64(static_cast<std::uint64_t>(rep.primitive_root),
                                                         static_cast<std::uint64_t>(e[i]),
                                                         static_cast<std::uint64_t>(q)));
    }
    rep.values.push_back(std::move(val));
  }
  return rep;
}

}  // namespace surfrep
