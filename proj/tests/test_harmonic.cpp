#include "sphier/harmonic.hpp"

#include <stdexcept>

#include "sphier/rng.hpp"
#include "doctest.h"

using namespace sphier;

TEST_CASE("x1^2 splits as (x1^2 - s/2) + s/2") {
  Form f(2, 2);
  f.set_coeff(MultiIndex{2, 0}, 1.0);
  auto dec = harmonic_decompose(f);
  REQUIRE(dec.components.size() == 2);
  CHECK(dec.components[0].coeff(MultiIndex(std::vector<int>{0, 0})) ==
        doctest::Approx(0.5).epsilon(1e-14));
  Form h2 = dec.components[1];
  CHECK(h2.coeff(MultiIndex{2, 0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h2.coeff(MultiIndex{0, 2}) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("s^r decomposes as pure degree-0 component") {
  for (int n = 2; n <= 3; ++n) {
    auto dec = harmonic_decompose(s_power(n, 3));
    REQUIRE(dec.components.size() == 4);
    CHECK(dec.components[0].coeff(MultiIndex(std::vector<int>(n, 0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (size_t k = 1; k < 4; ++k) CHECK(dec.components[k].max_abs_coeff() < 1e-12);
  }
}

TEST_CASE("components are harmonic and recomposition is exact") {
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= 3; ++r) {
      auto rng = make_rng(900 + static_cast<uint64_t>(10 * n + r));
      Form f = random_form(n, 2 * r, rng);
      auto dec = harmonic_decompose(f);
      REQUIRE(static_cast<int>(dec.components.size()) == r + 1);
      for (int k = 0; k <= r; ++k) {
        const Form& h = dec.components[static_cast<size_t>(k)];
        CHECK(h.degree() == 2 * k);
        CHECK(h.laplacian().max_abs_coeff() < 1e-9);
      }
      CHECK(max_coeff_diff(recompose(dec), f) < 1e-10);
    }
  }
}

TEST_CASE("distinct layers are apolar-orthogonal") {
  auto rng = make_rng(77);
  Form f = random_form(3, 6, rng);
  auto dec = harmonic_decompose(f);
  int r = 3;
  for (int j = 0; j <= r; ++j) {
    for (int k = j + 1; k <= r; ++k) {
      Form lj = s_power(3, r - j) * dec.components[static_cast<size_t>(j)];
      Form lk = s_power(3, r - k) * dec.components[static_cast<size_t>(k)];
      CHECK(std::abs(apolar(lj, lk)) < 1e-8);
    }
  }
}

TEST_CASE("odd degree is rejected") {
  auto rng = make_rng(3);
  Form f = random_form(2, 3, rng);
  CHECK_THROWS_AS(harmonic_decompose(f), std::invalid_argument);
}
