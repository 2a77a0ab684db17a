#include <catch2/catch.hpp>

#include <set>

#include "surfrep/homology.hpp"
#include "test_util.hpp"

using namespace surfrep;

namespace {

// independent oracle: enumerate all exponent tuples in (Z/(q-1))^m directly
std::set<std::vector<long long>> brute_fixed_characters(const GeneratorSet& S, long long q) {
  const int m = h1_rank(S.pres);
  const long long N = q - 1;
  std::vector<IntMatrix> actions;
  for (const MappingClass& f : S.classes) actions.push_back(homology_action(f));
  std::set<std::vector<long long>> fixed;
  std::vector<long long> e(m, 0);
  for (;;) {
    bool ok = true;
    for (const IntMatrix& h : actions) {
      // chi(f_* basis_j) = prod_i chi(basis_i)^{h_ij} must equal chi(basis_j)
      for (int j = 0; j < m && ok; ++j) {
        mpz_class acc = 0;
        for (int i = 0; i < m; ++i) acc += h.at(i, j) * static_cast<long>(e[i]);
        acc -= static_cast<long>(e[j]);
        ok = acc % static_cast<long>(N) == 0;
      }
      if (!ok) break;
    }
    if (ok) fixed.insert(e);
    int k = m - 1;
    while (k >= 0 && e[k] + 1 >= N) e[k--] = 0;
    if (k < 0) break;
    e[k] += 1;
  }
  return fixed;
}

GeneratorSet with_pushes(GeneratorSet S, const std::vector<std::string>& alphas) {
  for (const std::string& a : alphas) {
    S.classes.push_back(point_push(S.pres, Word::parse(S.pres.alphabet, a)));
    S.classes.push_back(point_push(S.pres, Word::parse(S.pres.alphabet, a).inverse()));
  }
  return S;
}

}  // namespace

TEST_CASE("coinvariants vanish for the shipped positive-genus sets") {
  for (auto [g, n] : shipped_genset_keys()) {
    if (g == 0) continue;
    const CoinvariantReport rep = coinvariants(shipped_genset(g, n));
    CAPTURE(g, n);
    CHECK(rep.rank == 2 * g + std::max(n - 1, 0));
    CHECK(rep.is_zero);
    for (const mpz_class& d : rep.smith_diagonal) CHECK(d == 1);
  }
}

TEST_CASE("sphere control: trivial homology action, coinvariants Z^2") {
  const CoinvariantReport rep = coinvariants(shipped_genset(0, 3));
  CHECK(rep.rank == 2);
  CHECK_FALSE(rep.is_zero);
  CHECK(rep.free_rank == 2);
  CHECK(rep.torsion.empty());
  CHECK(rep.stacked.is_zero());
}

TEST_CASE("point pushes never change the coinvariant report") {
  const GeneratorSet base = shipped_genset(2, 1);
  const GeneratorSet extended = with_pushes(base, {"a1", "b2 c1", "a2 b1'"});
  const CoinvariantReport r1 = coinvariants(base);
  const CoinvariantReport r2 = coinvariants(extended);
  CHECK(r1.smith_diagonal == r2.smith_diagonal);
  CHECK(r1.free_rank == r2.free_rank);
  CHECK(r1.torsion == r2.torsion);
  CHECK(r1.is_zero == r2.is_zero);
}

TEST_CASE("fixed characters: shipped sets have only the trivial one") {
  for (auto [g, n] : shipped_genset_keys()) {
    if (g == 0) continue;
    for (long long q : {5LL, 7LL}) {
      const CharacterFixedReport rep = character_fixed_points(shipped_genset(g, n), q);
      CAPTURE(g, n, q);
      CHECK(rep.only_trivial());
    }
  }
}

TEST_CASE("fixed characters: identity set fixes everything") {
  GeneratorSet idset;
  idset.pres = Presentation{{1, 0}};
  idset.name = "id";
  idset.classes.push_back(identity_class(idset.pres));
  idset.validate();
  const CharacterFixedReport rep = character_fixed_points(idset, 5);
  CHECK(rep.count() == 16);  // (q-1)^2
}

TEST_CASE("fixed characters: sphere control has nontrivial fixed characters") {
  const CharacterFixedReport rep = character_fixed_points(shipped_genset(0, 3), 3);
  CHECK(rep.count() == 4);  // all of (Z/2)^2: the action is trivial
  CHECK_FALSE(rep.only_trivial());
}

TEST_CASE("fixed characters agree with the brute-force oracle") {
  for (auto [g, n] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{0, 3}, std::pair{1, 1}}) {
    for (long long q : {3LL, 5LL}) {
      const GeneratorSet S = shipped_genset(g, n);
      const CharacterFixedReport rep = character_fixed_points(S, q);
      const auto brute = brute_fixed_characters(S, q);
      CAPTURE(g, n, q);
      REQUIRE(rep.count() == static_cast<long long>(brute.size()));
      for (const auto& e : rep.exponents) CHECK(brute.count(e) == 1);
    }
  }
}

TEST_CASE("coinvariants zero iff only trivial fixed character (coprime q)") {
  for (auto [g, n] : shipped_genset_keys()) {
    const GeneratorSet S = shipped_genset(g, n);
    const CoinvariantReport co = coinvariants(S);
    for (long long q : {3LL, 5LL, 7LL}) {
      bool coprime = true;
      for (const mpz_class& t : co.torsion) coprime = coprime && gcd(t, mpz_class(static_cast<long>(q - 1))) == 1;
      if (!coprime) continue;
      const CharacterFixedReport ch = character_fixed_points(S, q);
      CAPTURE(g, n, q);
      CHECK(co.is_zero == ch.only_trivial());
    }
  }
}

TEST_CASE("character field size must be prime") {
  CHECK_THROWS_AS(character_fixed_points(shipped_genset(1, 0), 6), input_error);
}
