#include "support.hpp"

#include <forge/error.hpp>
#include <forge/integrability.hpp>
#include <forge/numeric.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace forge;
using forge::testing::random_form;
using forge::testing::random_polynomial;

namespace {

constexpr double two_pi = 2 * std::numbers::pi;
const std::vector<std::string> xy = {"x", "y"};
const Expr x = Expr::symbol("x");
const Expr y = Expr::symbol("y");

DForm one_form(std::vector<Expr> c)
{
    DForm f(xy, 1);
    for (std::size_t i = 0; i < c.size(); ++i) f.add_term({static_cast<int>(i)}, c[i]);
    return f;
}

DForm angular()
{
    return one_form({-y / (x * x + y * y), x / (x * x + y * y)});
}

// Exact integral over [0,1]^2 of a polynomial, monomial by monomial.
double exact_unit_square(const Expr& e)
{
    const auto p = as_polynomial(e, xy);
    REQUIRE(p);
    Rational total = 0;
    for (const auto& [m, c] : *p) total += c / Rational((m[0] + 1) * (m[1] + 1));
    return static_cast<double>(total);
}

} // namespace

TEST_CASE("Gauss-Legendre rule integrates degree 9 exactly")
{
    double wsum = 0;
    for (double w : GaussLegendre5::weights()) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(composite_gauss([](double t) { return std::pow(t, 9) + std::pow(t, 8); }, -1, 1, 1)
          == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(composite_gauss([](double t) { return std::exp(t); }, 0, 1, 8) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
}

TEST_CASE("residue of the angular form")
{
    const QuadratureResult c = line_integral(angular(), Path{Circle{0, 0, 1}}, 64);
    CHECK(std::abs(c.value - two_pi) < 1e-10);
    CHECK(c.error_estimate < 1e-10);

    const QuadratureResult off = line_integral(angular(), Path{Circle{3, 0, 1}}, 64);
    CHECK(std::abs(off.value) < 1e-10);

    const Polyline square{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}}};
    CHECK(std::abs(line_integral(angular(), Path{square}, 64).value - two_pi) < 1e-10);
    CHECK(std::abs(line_integral(angular(), Path{RectangleBoundary{-2, -1, 3, 4}}, 64).value - two_pi) < 1e-10);

    Path clockwise{Circle{0, 0, 2}};
    clockwise.counterclockwise = false;
    CHECK(std::abs(line_integral(angular(), clockwise, 64).value + two_pi) < 1e-10);
}

TEST_CASE("pole on the path surfaces as a domain error")
{
    CHECK_THROWS_AS(line_integral(angular(), Path{Polyline{{{-1, 0}, {1, 0}}}}, 1), DomainError);
}

TEST_CASE("exp(x) dy around the unit circle")
{
    // Green: integral of exp(x) over the unit disk = 2 pi I_1(1)
    const double want = two_pi * std::cyl_bessel_i(1.0, 1.0);
    const QuadratureResult r = line_integral(one_form({Expr(0), exp(x)}), Path{Circle{0, 0, 1}}, 32);
    CHECK(std::abs(r.value - want) < 1e-12);
    CHECK(std::abs(r.value - want) <= r.error_estimate + 1e-14);
}

TEST_CASE("parametric path")
{
    const Expr t = Expr::symbol("t");
    const ParametricPath parabola{"t", 0, 1, {t, t * t}};
    // integral of y dx + x dy = d(xy) from (0,0) to (1,1)
    CHECK(line_integral(one_form({y, x}), Path{parabola}).value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("quadrature error decreases with refinement")
{
    const DForm f = one_form({Expr(0), exp(x) * sin(3 * y)});
    const double want = line_integral(f, Path{Circle{0.1, 0.2, 1.3}}, 256).value;
    double last = 1;
    for (int panels : {1, 2, 4}) {
        const QuadratureResult r = line_integral(f, Path{Circle{0.1, 0.2, 1.3}}, panels);
        const double err = std::abs(r.value - want);
        CHECK(err < last);
        CHECK(err <= r.error_estimate * 1.01 + 1e-14);
        last = err;
    }
}

TEST_CASE("Stokes for x dy on the unit square")
{
    const StokesReport s = stokes_check(one_form({Expr(0), x}), Region{RectangleRegion{0, 0, 1, 1}});
    CHECK(s.interior.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.boundary.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.passed);
}

TEST_CASE("property: Stokes on random polynomial 1-forms against exact integrals")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const DForm a = random_form(rng, 2, 1);
        const StokesReport s = stokes_check(a, Region{RectangleRegion{0, 0, 1, 1}});
        const Expr curl = differentiate(a.coefficient({1}), "x") - differentiate(a.coefficient({0}), "y");
        const double exact = exact_unit_square(curl);
        CHECK(std::abs(s.interior.value - exact) < 1e-12);
        CHECK(std::abs(s.boundary.value - exact) < 1e-12);
        CHECK(s.passed);
    }
}

TEST_CASE("property: Gauss theorem on random polynomial 2-forms in a box")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const DForm a = random_form(rng, 3, 2, 2);
        const StokesReport s = stokes_check(a, Region{BoxRegion{-0.5, 0, 0.25, 1, 2, 1.5}}, 1e-8, 4);
        CHECK(s.discrepancy < 1e-10);
    }
}

TEST_CASE("region and path validation")
{
    CHECK_THROWS_AS(line_integral(angular(), Path{Circle{0, 0, -1}}), PreconditionError);
    CHECK_THROWS_AS(area_integral(angular(), Region{RectangleRegion{0, 0, 1, 1}}), PreconditionError);
    CHECK_THROWS_AS(area_integral(DForm(xy, 2), Region{RectangleRegion{0, 0, 0, 1}}), PreconditionError);
    CHECK_THROWS_AS(line_integral(angular(), Path{Polyline{{{0, 0}}}}), PreconditionError);
}

TEST_CASE("property: finite differences agree with symbolic gradients")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-1, 1);
    for (int trial = 0; trial < 40; ++trial) {
        const Expr e = random_polynomial(rng, xy, 3) + sin(random_polynomial(rng, xy, 2));
        const GradientCheck g = fd_gradient_check(e, {{"x", coord(rng)}, {"y", coord(rng)}});
        CHECK(g.max_relative_error < 1e-6);
    }
}

TEST_CASE("RK4 is fourth order")
{
    // F = (p1^2 + x^2)/2: dx = p1, dp1 = -x, a rotation in phase space
    const Expr p1 = Expr::symbol("p1");
    const CharacteristicSystem sys = characteristics(PDEProblem({"x"}, (p1 * p1 + x * x) / 2));
    auto error = [&](double h) {
        const Trajectory t = integrate_characteristics(sys, {1.0, 0.0, 0.0}, 2.0, h);
        return std::abs(t.states.back()[0] - std::cos(2.0));
    };
    const double ratio = error(0.1) / error(0.05);
    CHECK(ratio > 14.0);
    CHECK(ratio < 18.0);
}

TEST_CASE("RK4 lands on the final time")
{
    const Expr p1 = Expr::symbol("p1");
    const CharacteristicSystem sys = characteristics(PDEProblem({"x"}, p1 - 1));
    const Trajectory t = integrate_characteristics(sys, {0.0, 1.0, 0.0}, 0.25, 0.1);
    CHECK(t.times.size() == 4);
    CHECK(t.times.back() == 0.25);
    CHECK(t.states.back()[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("transport trajectory is the line (t, 2t)")
{
    const Expr p1 = Expr::symbol("p1"), p2 = Expr::symbol("p2");
    const CharacteristicSystem sys = characteristics(PDEProblem(xy, p1 + 2 * p2));
    const Trajectory t = integrate_characteristics(sys, {0, 0, 0, 0, 0}, 1.0, 1e-3);
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        CHECK(std::abs(t.states[k][0] - t.times[k]) < 1e-12);
        CHECK(std::abs(t.states[k][1] - 2 * t.times[k]) < 1e-12);
    }
}
