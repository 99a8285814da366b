#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "trajquad/errors.hpp"
#include "trajquad/greens.hpp"

using namespace trajquad;

namespace {

double half_sq(double x) { return 0.5 * x * x; }

double max_diff(const WaveProfile& p, const std::function<double(double)>& want, const std::vector<bool>* region = nullptr) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!region || (*region)[i]) worst = std::max(worst, std::abs(p.values[i] - want(p.nodes[i])));
  return worst;
}

}  // namespace

TEST_SUITE("greens") {
  TEST_CASE("profile layout") {
    auto p = make_profile(4.0, 801, half_sq, [](double x) { return x; });
    CHECK(p.size() == 801);
    CHECK(p.nodes[p.origin_index()] == 0.0);
    CHECK(p.spacing() == doctest::Approx(0.01));
    CHECK(p.s[0] == doctest::Approx(8.0));
    CHECK_THROWS_AS(make_profile(4.0, 800, half_sq, [](double) { return 0.0; }), ConfigError);
    CHECK(default_half_width(1.0) == doctest::Approx(6.0));
  }

  TEST_CASE("C on monomials") {
    const double g = 1.5;
    for (int k : {2, 3, 4}) {
      CAPTURE(k);
      auto f = make_profile(3.0, 1201, half_sq, [k](double x) { return std::pow(x, k); });
      auto c = apply_C(f, g);
      CHECK(max_diff(c, [&](double x) { return std::pow(x, k) / (k * g); }) < 1e-9);
    }
    auto z = apply_C(make_profile(3.0, 101, half_sq, [](double) { return 0.0; }), g);
    CHECK(max_diff(z, [](double) { return 0.0; }) == 0.0);
    CHECK_THROWS_AS(apply_C(make_profile(3.0, 101, half_sq, [](double) { return 1.0; }), g), DivergentAtOrigin);
  }

  TEST_CASE("Dbar on Hermite polynomials and errors") {
    const double g = 2.0, L = 5.0;
    auto f = make_profile(L, 2001, half_sq, [&](double x) { return hermite_value(2, std::sqrt(g) * x); });
    auto d = apply_Dbar(f, g);
    auto region = check_region(f, g);
    CHECK(region[f.origin_index()]);
    CHECK(!region.front());
    CHECK(max_diff(d, [&](double x) { return (hermite_value(2, std::sqrt(g) * x) + 2.0) / (2 * g); }, &region) < 1e-8);
    CHECK(d.values[d.origin_index()] == 0.0);

    auto zero = apply_Dbar(make_profile(L, 201, half_sq, [](double) { return 0.0; }), g);
    CHECK(max_diff(zero, [](double) { return 0.0; }) == 0.0);
    CHECK_THROWS_AS(apply_Dbar(make_profile(L, 201, half_sq, [](double x) { return std::exp(1.5 * x * x); }), g),
                    TailDivergence);
  }

  TEST_CASE("T by finite differences") {
    auto f = make_profile(2.0, 401, half_sq, [](double x) { return x * x * x; });
    auto t = apply_T(f);
    for (std::size_t i = 5; i + 5 < t.size(); ++i) CHECK(t.values[i] == doctest::Approx(-3.0 * t.nodes[i]).epsilon(1e-8));
  }

  TEST_CASE("irregular solution") {
    const double g = 1.0;
    auto p = make_profile(4.0, 801, half_sq, [](double) { return 0.0; });
    auto F = irregular_solution(p.nodes, p.s, g);
    CHECK(F.values[F.origin_index()] == 0.0);
    // F'(0) = 1
    std::size_t c = F.origin_index();
    CHECK((F.values[c + 1] - F.values[c - 1]) / (2 * F.spacing()) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(dkernel_wronskian(F, g, c, c) == doctest::Approx(0.0));
  }

  TEST_CASE("shift from the boundary") {
    const double g = 1.0;
    auto U = make_profile(8.0, 2001, half_sq, [](double) { return 2.5; });
    auto tau = U.with_values(std::vector<double>(U.size(), 0.0));
    CHECK(shift_from_boundary(U, tau, g) == doctest::Approx(2.5).epsilon(1e-12));

    // τ = ε(3/4 x² + 1/4 x⁴) is the first-order profile for U = x⁴; the shift picks up -21/8 ε
    const double eps = 1e-3;
    auto U4 = make_profile(8.0, 4001, half_sq, [](double x) { return x * x * x * x; });
    auto t4 = make_profile(8.0, 4001, half_sq, [&](double x) { return eps * (0.75 * x * x + 0.25 * x * x * x * x); });
    double d = shift_from_boundary(U4, t4, g);
    CHECK(std::abs(d - (0.75 - 21.0 / 8.0 * eps)) < 100 * eps * eps);

    auto flat = make_profile(8.0, 101, [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(shift_from_boundary(flat, flat.with_values(std::vector<double>(101, -1e6)), g), DegenerateProfile);
  }

  TEST_CASE("Hermite polynomials") {
    CHECK(hermite(0) == MultiPoly(1));
    CHECK(hermite(3) == MultiPoly::parse("8*x^3 - 12*x"));
    CHECK(hermite(4) == MultiPoly::parse("16*x^4 - 48*x^2 + 12"));
    for (int l = 0; l <= 6; ++l) CHECK(hermite_value(l, 0.3) == doctest::Approx(hermite(l).evaluate({{sym::x, 0.3}})));
  }

  TEST_CASE("identity battery at g = 1") {
    auto reports = run_identity_checks(1.0, 8.0, 4001);
    CHECK(reports.size() == 16);
    for (const auto& r : reports) {
      CAPTURE(r.identity);
      CAPTURE(r.max_residual);
      CHECK(r.passed());
      CHECK(r.grid_size == 4001);
    }
    auto j = nlohmann::json::parse(to_json(reports));
    REQUIRE(j.is_array());
    CHECK(j.size() == 16);
    for (const char* key : {"identity", "grid_size", "max_residual", "tolerance", "passed"}) CHECK(j[0].contains(key));
    CHECK(j[0]["passed"].get<bool>());
  }
}
