#include <catch2/catch.hpp>

#include <cmath>

#include "bernlab/anisotropy.hpp"
#include "oracles.hpp"

using namespace bernlab;

namespace {

Anisotropy one_jump_example() {
  return Anisotropy::usc_jumps(Anisotropy::constant(1.0), {{0.0, 2.0}});
}

}  // namespace

TEST_CASE("pointwise evaluation", "[anisotropy]") {
  auto c = Anisotropy::constant(1.0);
  CHECK(c.eval(0.0) == 1.0);
  CHECK(c.eval(2.7) == 1.0);

  auto q = one_jump_example();
  CHECK(q.eval(0.0) == 2.0);               // jump value attained at the jump angle
  CHECK(q.eval(1e-6) == 1.0);              // base immediately off the jump
  CHECK(q.eval(-1e-6) == 1.0);
  CHECK(q.eval(kTwoPi) == 2.0);            // canonical angle wraps onto the jump

  auto pw = Anisotropy::piecewise_linear({{0.0, 1.0}, {kPi, 2.0}});
  CHECK(pw.eval(kPi / 2) == Approx(1.5));
  CHECK(pw.eval(3 * kPi / 2) == Approx(1.5));  // periodic interpolation
  CHECK(pw.eval(kPi) == Approx(2.0));
}

TEST_CASE("bounds are tight", "[anisotropy]") {
  CHECK(Anisotropy::constant(2.0).bounds() == std::pair<double, double>{2.0, 2.0});
  auto q = one_jump_example();
  CHECK(q.bounds().first == 1.0);
  CHECK(q.bounds().second == 2.0);
  auto pw = Anisotropy::piecewise_linear({{0.0, 1.0}, {kPi, 3.0}});
  CHECK(pw.bounds().first == 1.0);
  CHECK(pw.bounds().second == 3.0);
}

TEST_CASE("construction validation", "[anisotropy]") {
  CHECK_THROWS_AS(Anisotropy::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy::piecewise_linear({{0.0, -0.5}}), std::invalid_argument);
  // jump must strictly exceed the base
  CHECK_THROWS_AS(Anisotropy::usc_jumps(Anisotropy::constant(1.0), {{0.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy::usc_jumps(Anisotropy::constant(1.0), {{0.0, 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("usc certificate on dyadic neighborhoods", "[anisotropy]") {
  auto q = Anisotropy::usc_jumps(
      Anisotropy::piecewise_linear({{0.0, 1.0}, {kPi / 2, 1.4}, {kPi, 1.1}, {3 * kPi / 2, 1.2}}),
      {{1.0, 2.0}, {4.0, 1.9}});
  for (const auto& jump : q.jumps()) {
    for (int k = 1; k <= 40; ++k) {
      const double delta = std::ldexp(1.0, -k);
      double sup_near = 0.0;
      for (int s = 1; s <= 16; ++s) {
        const double off = delta * s / 16.0;
        sup_near = std::max({sup_near, q.eval(jump.theta + off), q.eval(jump.theta - off)});
      }
      CHECK(sup_near <= q.eval(jump.theta));
    }
  }
}

TEST_CASE("sup-convolution approximation", "[anisotropy]") {
  SECTION("constants are fixed points") {
    auto c = Anisotropy::constant(1.7);
    auto cj = c.continuous_approx(3.0);
    CHECK(cj.kind() == AnisotropyKind::kConstant);
    CHECK(cj.eval(1.0) == 1.7);
  }

  SECTION("single jump becomes a cone: closed form and brute-force oracle") {
    auto q = one_jump_example();
    const double j = 4.0;
    auto qj = q.continuous_approx(j);
    CHECK(qj.continuous());
    CHECK(qj.eval(0.125) == Approx(1.5).margin(1e-12));  // max(1, 2 - 4*0.125)
    CHECK(qj.eval(0.0) == Approx(2.0).margin(1e-12));    // value at the jump angle
    CHECK(qj.eval(kPi) == Approx(1.0).margin(1e-12));
    auto q_fn = [&](double t) { return q.eval(t); };
    for (double th : {0.0, 0.05, 0.125, 0.25, 0.4, 1.0, 2.0, kPi, 5.0}) {
      const double brute = oracles::brute_sup_convolution(q_fn, j, th, 100000);
      CHECK(qj.eval(th) == Approx(brute).margin(j * kTwoPi / 100000 + 1e-12));
      CHECK(qj.eval(th) >= brute - 1e-12);  // exact sup dominates any grid sup
    }
  }

  SECTION("piecewise-linear base with steep segments") {
    auto base = Anisotropy::piecewise_linear(
        {{0.0, 1.0}, {0.3, 2.5}, {1.1, 1.2}, {kPi, 1.05}, {5.0, 1.8}});
    auto q = Anisotropy::usc_jumps(base, {{2.0, 3.0}});
    const double j = 2.0;
    auto qj = q.continuous_approx(j);
    auto q_fn = [&](double t) { return q.eval(t); };
    for (int k = 0; k < 64; ++k) {
      const double th = kTwoPi * k / 64;
      const double brute = oracles::brute_sup_convolution(q_fn, j, th, 100000, {2.0});
      REQUIRE(qj.eval(th) == Approx(brute).margin(j * kTwoPi / 100000 + 1e-12));
      REQUIRE(qj.eval(th) >= brute - 1e-12);
    }
  }
}

TEST_CASE("approximation invariants on a dense angular grid", "[anisotropy]") {
  auto q = Anisotropy::usc_jumps(
      Anisotropy::piecewise_linear({{0.0, 1.0}, {kPi / 2, 1.4}, {kPi, 1.1}, {3 * kPi / 2, 1.2}}),
      {{0.0, 2.0}});
  const std::vector<double> js{2.0, 4.0, 8.0, 16.0};
  std::vector<Anisotropy> qjs;
  for (double j : js) qjs.push_back(q.continuous_approx(j));

  const int grid = 10000;
  for (int k = 0; k < grid; ++k) {
    const double th = kTwoPi * k / grid;
    const double qv = q.eval(th);
    for (size_t a = 0; a < js.size(); ++a) {
      REQUIRE(qjs[a].eval(th) >= qv - 1e-12);          // Q^j >= Q
      if (a + 1 < js.size())
        REQUIRE(qjs[a].eval(th) >= qjs[a + 1].eval(th) - 1e-12);  // monotone in j
    }
  }

  // Lipschitz-j bound on sampled pairs
  for (size_t a = 0; a < js.size(); ++a) {
    for (int k = 0; k < 2000; ++k) {
      const double t1 = kTwoPi * k / 2000;
      const double t2 = kTwoPi * ((k * 37) % 2000) / 2000;
      REQUIRE(std::fabs(qjs[a].eval(t1) - qjs[a].eval(t2)) <=
              js[a] * geodesic_angle(t1, t2) + 1e-12);
    }
  }

  // equality at the jump angle for every j; decreasing error at continuity angles
  for (size_t a = 0; a < js.size(); ++a) CHECK(qjs[a].eval(0.0) == Approx(2.0).margin(1e-12));
  for (double th : {0.7, 1.9, 3.0, 4.5, 5.9}) {
    double prev = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < js.size(); ++a) {
      const double err = qjs[a].eval(th) - q.eval(th);
      REQUIRE(err >= -1e-12);
      REQUIRE(err <= prev + 1e-12);
      prev = err;
    }
  }
}
