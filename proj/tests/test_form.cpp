#include "sphier/form.hpp"

#include <cmath>
#include <stdexcept>

#include "sphier/rng.hpp"
#include "doctest.h"

using namespace sphier;

TEST_CASE("s_power expands the multinomial theorem") {
  // (x1^2+x2^2+x3^2)^3: coefficient of x1^2 x2^2 x3^2 is C(3;1,1,1) = 6
  Form s3 = s_power(3, 3);
  CHECK(s3.degree() == 6);
  CHECK(s3.coeff(MultiIndex{2, 2, 2}) == 6.0);
  CHECK(s3.coeff(MultiIndex{6, 0, 0}) == 1.0);
  CHECK(s3.coeff(MultiIndex{4, 2, 0}) == 3.0);

  // evaluation oracle: (|x|^2)^k pointwise
  std::vector<double> x{0.3, -1.2, 0.7};
  double s = 0.3 * 0.3 + 1.2 * 1.2 + 0.7 * 0.7;
  CHECK(s3.evaluate(x) == doctest::Approx(s * s * s).epsilon(1e-14));
}

TEST_CASE("product of forms matches pointwise product") {
  auto rng = make_rng(7);
  Form f = random_form(3, 2, rng);
  Form g = random_form(3, 3, rng);
  Form fg = f * g;
  CHECK(fg.degree() == 5);
  std::vector<double> x{0.5, -0.25, 1.5};
  CHECK(fg.evaluate(x) ==
        doctest::Approx(f.evaluate(x) * g.evaluate(x)).epsilon(1e-12));
}

TEST_CASE("laplacian of s^2 in 2 variables is 8s") {
  // d(x^4+2x^2y^2+y^4) = 12x^2+4y^2 + 4x^2+12y^2 = 16(x^2+y^2)... per term:
  // oracle by hand: lap(s^2) = (4+2n)*2*s with n=2 -> 16s
  Form lap = s_power(2, 2).laplacian();
  Form expect = s_power(2, 1) * 16.0;
  CHECK(max_coeff_diff(lap, expect) == 0.0);
}

TEST_CASE("laplacian product rule on s*g") {
  // lap(s*g) == 2(n + 2 deg g) g + s * lap(g)
  for (int n = 2; n <= 4; ++n) {
    auto rng = make_rng(11 + static_cast<uint64_t>(n));
    Form g = random_form(n, 3, rng);
    Form lhs = (s_power(n, 1) * g).laplacian();
    Form rhs = 2.0 * (n + 2 * g.degree()) * g + s_power(n, 1) * g.laplacian();
    CHECK(max_coeff_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("apolar adjunction: <f, s g> == <lap f, g>") {
  for (uint64_t trial = 0; trial < 5; ++trial) {
    auto rng = make_rng(100 + trial);
    Form f = random_form(3, 4, rng);
    Form g = random_form(3, 2, rng);
    double lhs = apolar(f, s_power(3, 1) * g);
    double rhs = apolar(f.laplacian(), g);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("apolar is symmetric and degree-separated") {
  auto rng = make_rng(5);
  Form f = random_form(2, 4, rng);
  Form g = random_form(2, 4, rng);
  CHECK(apolar(f, g) == doctest::Approx(apolar(g, f)).epsilon(1e-14));
  CHECK(apolar(f, s_power(2, 1)) == 0.0);
}

TEST_CASE("parse accepts decimals, rationals and comments") {
  const char* text =
      "# Motzkin-like term list\n"
      "1 4 2 0\n"
      "1/2 2 4 0   # rational coefficient\n"
      "-3.25 2 2 2\n"
      "\n"
      "1e0 0 0 6\n";
  Form f = parse_form(text);
  CHECK(f.n() == 3);
  CHECK(f.degree() == 6);
  CHECK(f.coeff(MultiIndex{4, 2, 0}) == 1.0);
  CHECK(f.coeff(MultiIndex{2, 4, 0}) == 0.5);
  CHECK(f.coeff(MultiIndex{2, 2, 2}) == -3.25);
  CHECK(f.coeff(MultiIndex{0, 0, 6}) == 1.0);
}

TEST_CASE("parse reports line numbers and offending monomials") {
  CHECK_THROWS_WITH_AS(parse_form("1 2 0\nbogus 1 1\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_form("1 2 0\n1 1 0\n"),
                       doctest::Contains("inhomogeneous"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_form("1 2 0 0\n", 2), doctest::Contains("line 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_form("# only comments\n"), std::invalid_argument);
}

TEST_CASE("format/parse round trip is exact and canonical") {
  auto rng = make_rng(42);
  Form f = random_form(3, 4, rng);
  Form g = parse_form(format_form(f), 3);
  CHECK(max_coeff_diff(f, g) == 0.0);
  // duplicated monomials accumulate, zeros are dropped
  Form h = parse_form("2 1 1\n-2 1 1\n0.5 0 2\n");
  CHECK(h.term_count() == 1);
  CHECK(h.coeff(MultiIndex{0, 2}) == 0.5);
}

TEST_CASE("evaluate on mismatched point size throws") {
  Form f = s_power(3, 1);
  CHECK_THROWS_AS(f.evaluate({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("set_coeff rejects off-degree monomials") {
  Form f(2, 4);
  CHECK_THROWS_AS(f.set_coeff(MultiIndex{1, 1}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(f.set_coeff(MultiIndex{4, 0, 0}, 1.0), std::invalid_argument);
}
