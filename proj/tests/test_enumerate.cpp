#include <catch2/catch.hpp>

#include "surfrep/enumerate.hpp"
#include "surfrep/homology.hpp"
#include "test_util.hpp"

using namespace surfrep;

TEST_CASE("general linear group enumeration") {
  CHECK(general_linear_group(2, 2).size() == 6);
  CHECK(general_linear_group(3, 2).size() == 48);
  CHECK(general_linear_group(5, 1).size() == 4);
  CHECK(general_linear_order(2, 2) == 6);
  CHECK(general_linear_order(3, 2) == 48);
  CHECK(general_linear_order(2, 3) == 168);
}

TEST_CASE("enumerate_homs: abelian torus target") {
  SearchSpec spec;
  spec.g = 1;
  spec.n = 0;
  spec.r = 1;
  spec.p = 5;
  const auto homs = enumerate_homs(spec);
  CHECK(homs.size() == 16);  // (GF(5)^x)^2, the relator is automatic

  bool trivial_present = false;
  for (const auto& h : homs) {
    trivial_present = trivial_present || (h.matrix(0).is_identity() && h.matrix(1).is_identity());
  }
  CHECK(trivial_present);
}

TEST_CASE("enumerate_homs: genus-2 closed over GF(2) matches the direct loop") {
  SearchSpec spec;
  spec.g = 2;
  spec.n = 0;
  spec.r = 2;
  spec.p = 2;
  const auto homs = enumerate_homs(spec);

  // independent oracle: a literal quadruple loop over GL(2,2)
  const auto gl = general_linear_group(2, 2);
  unsigned long long count = 0;
  for (const Matrix& A1 : gl)
    for (const Matrix& B1 : gl)
      for (const Matrix& A2 : gl)
        for (const Matrix& B2 : gl) {
          const Matrix c = A1 * B1 * *A1.inverse() * *B1.inverse() * A2 * B2 * *A2.inverse() *
                           *B2.inverse();
          if (c.is_identity()) ++count;
        }
  CHECK(homs.size() == count);
  CHECK(count == 486);
}

TEST_CASE("enumerate_homs honors the launch cap") {
  SearchSpec spec;
  spec.g = 2;
  spec.n = 0;
  spec.r = 2;
  spec.p = 2;
  spec.max_tuples = 100;
  CHECK_THROWS_AS(enumerate_homs(spec), unsupported_error);
}

TEST_CASE("atlas: r = 1 fixed classes match the character computation") {
  for (int g : {1, 2}) {
    for (long long p : {5LL, 7LL}) {
      SearchSpec spec;
      spec.g = g;
      spec.n = 0;
      spec.r = 1;
      spec.p = p;
      const GeneratorSet S = shipped_genset(g, 0);
      const Atlas atlas = fixed_point_atlas(spec, S);
      const CharacterFixedReport chars = character_fixed_points(S, p);
      CAPTURE(g, p);
      CHECK(static_cast<long long>(atlas.fixed_keys.size()) == chars.count());
      CHECK(atlas.fixed_keys.size() == 1);  // only the trivial class
      CHECK(atlas.fixed_representatives[0].matrix(0).is_identity());
    }
  }
}

TEST_CASE("atlas: genus-2 GF(2) classes, orbits and determinism") {
  SearchSpec spec;
  spec.g = 2;
  spec.n = 0;
  spec.r = 2;
  spec.p = 2;
  const GeneratorSet S = shipped_genset(2, 0);

  const Atlas cls = fixed_point_atlas(spec, S);
  CHECK(cls.total_homs == 486);
  CHECK(cls.class_count <= cls.total_homs);
  CHECK(cls.inconclusive == 0);

  // orbit sizes sum to the class count; fixed classes have orbit size 1
  unsigned long long covered = 0;
  for (const auto& [size, cnt] : cls.orbit_histogram) covered += size * cnt;
  CHECK(covered == cls.class_count);
  CHECK(cls.orbit_histogram.count(1) == (cls.fixed_keys.empty() ? 0 : 1));
  if (cls.orbit_histogram.count(1)) {
    CHECK(cls.orbit_histogram.at(1) == cls.fixed_keys.size());
  }
  // the trivial class is always fixed
  bool trivial_fixed = false;
  for (const auto& rep : cls.fixed_representatives) {
    bool triv = true;
    for (int s = 0; s < 4; ++s) triv = triv && rep.matrix(s).is_identity();
    trivial_fixed = trivial_fixed || triv;
  }
  CHECK(trivial_fixed);

  // hom mode refines class mode: at least as many orbits, each hom orbit
  // projecting onto a class orbit
  SearchSpec hom_spec = spec;
  hom_spec.mode = SearchSpec::Mode::hom;
  const Atlas hom = fixed_point_atlas(hom_spec, S);
  CHECK(hom.class_count == hom.total_homs);
  unsigned long long hom_covered = 0, hom_orbits = 0, cls_orbits = 0;
  for (const auto& [size, cnt] : hom.orbit_histogram) {
    hom_covered += size * cnt;
    hom_orbits += cnt;
  }
  for (const auto& [size, cnt] : cls.orbit_histogram) cls_orbits += cnt;
  CHECK(hom_covered == hom.class_count);
  CHECK(hom_orbits >= cls_orbits);
  CHECK(hom.fixed_keys.size() <= cls.fixed_keys.size());

  // parallel sharding is byte-identical
  SearchSpec par = spec;
  par.threads = 2;
  const Atlas cls2 = fixed_point_atlas(par, S);
  CHECK(cls.canonical_text() == cls2.canonical_text());
  SearchSpec par3 = spec;
  par3.threads = 3;
  CHECK(fixed_point_atlas(par3, S).canonical_text() == cls.canonical_text());
}

TEST_CASE("atlas: punctured free case enumerates every tuple") {
  SearchSpec spec;
  spec.g = 0;
  spec.n = 3;
  spec.r = 1;
  spec.p = 3;
  const GeneratorSet S = shipped_genset(0, 3);
  const Atlas atlas = fixed_point_atlas(spec, S);
  CHECK(atlas.total_homs == 8);  // (GF(3)^x)^3
  CHECK(atlas.class_count == 8);
  // the braid twists permute puncture loops by conjugation; on GL(1) values
  // conjugation is trivial but the letters still permute, so some characters move
  CHECK(atlas.fixed_keys.size() >= 1);
}
