#include "support.hpp"

#include <forge/error.hpp>
#include <forge/form.hpp>

#include <doctest.h>

using namespace forge;
using forge::testing::exactly_zero;
using forge::testing::random_form;
using forge::testing::same_form;

namespace {

const std::vector<std::string> xy = {"x", "y"};
const Expr x = Expr::symbol("x");
const Expr y = Expr::symbol("y");

DForm one_form(const std::vector<std::string>& coords, std::vector<Expr> coeffs)
{
    DForm f(coords, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term({static_cast<int>(i)}, coeffs[i]);
    return f;
}

DForm angular()
{
    return one_form(xy, {-y / (x * x + y * y), x / (x * x + y * y)});
}

} // namespace

TEST_CASE("basis ordering absorbs the permutation sign")
{
    DForm f({"x", "y", "z"}, 2);
    f.add_term({2, 0}, Expr(1)); // dz^dx = -dx^dz
    CHECK(to_string(f) == "-dx^dz");
    f.add_term({0, 0}, Expr(5)); // repeated index annihilates
    CHECK(to_string(f) == "-dx^dz");
    IndexTuple t = {2, 1, 0};
    CHECK(sort_with_sign(t) == -1);
    CHECK(t == IndexTuple{0, 1, 2});
}

TEST_CASE("rendering of forms")
{
    CHECK(to_string(angular()) == "-y/(x^2 + y^2)*dx + x/(x^2 + y^2)*dy");
    CHECK(to_string(DForm(xy, 2)) == "0");
    CHECK(basis_name({"x", "y", "z"}, {0, 2}) == "dx^dz");
}

TEST_CASE("angular form is closed away from the origin")
{
    const ClosureVerdict v = is_closed(angular());
    CHECK(v.closed);
    CHECK(v.certainty == Certainty::Exact);
    CHECK_FALSE(v.exact);
    REQUIRE(v.singular_denominators.size() == 1);
    CHECK(to_string(v.singular_denominators[0]) == "x^2 + y^2");
}

TEST_CASE("wedge of an odd form with itself vanishes")
{
    const DForm t = one_form(xy, {-y, x});
    CHECK(wedge(t, t).is_zero());
    CHECK(wedge(t, t).degree() == 2);
}

TEST_CASE("commutator of y dx and x dy")
{
    const auto k = commutator_components(one_form(xy, {y, Expr(0)}));
    REQUIRE(k.size() == 1);
    CHECK(to_string(k.at({0, 1})) == "-1");
    const auto k2 = commutator_components(one_form(xy, {-y, x}));
    CHECK(to_string(k2.at({0, 1})) == "2");
}

TEST_CASE("potential of 2x dx + 2y dy")
{
    const auto phi = find_potential(one_form(xy, {2 * x, 2 * y}));
    REQUIRE(phi);
    CHECK(to_string(*phi) == "x^2 + y^2");
}

TEST_CASE("potential rejects unclosed forms and skips rational ones")
{
    CHECK_THROWS_AS(find_potential(one_form(xy, {y, Expr(0)})), PreconditionError);
    CHECK_FALSE(find_potential(angular()).has_value());
}

TEST_CASE("2-D dual swaps and negates")
{
    const Expr u = x * x, v = sin(y);
    const DForm d = dual_form(one_form(xy, {u, v}));
    CHECK(same_form(d, one_form(xy, {-v, u})));
    CHECK(to_string(dual_form(one_form(xy, {2 * x, 2 * y}))) == "-2*y*dx + 2*x*dy");
}

TEST_CASE("pullback of the angular form onto the unit circle")
{
    const Expr s = Expr::symbol("s");
    const DForm pb = pullback(angular(), {"s"}, {cos(s), sin(s)});
    CHECK(pb.degree() == 1);
    CHECK(is_zero_verdict(is_zero(pb.coefficient({0}) - 1)));
}

TEST_CASE("conjugacy: harmonic and non-harmonic potentials")
{
    const ConjugacyReport h = conjugacy_report(one_form(xy, {2 * x, -2 * y}));
    CHECK(h.form.closed);
    CHECK(h.dual_verdict.closed);
    REQUIRE(h.harmonic);
    CHECK(*h.harmonic);
    REQUIRE(h.cauchy_riemann_pair);
    CHECK(*h.cauchy_riemann_pair);

    const ConjugacyReport n = conjugacy_report(one_form(xy, {2 * x, Expr(0)}));
    CHECK(n.form.closed);
    CHECK_FALSE(n.dual_verdict.closed);
    REQUIRE(n.harmonic);
    CHECK_FALSE(*n.harmonic);
}

TEST_CASE("forms over different frames do not combine")
{
    const DForm a = one_form(xy, {x, y});
    const DForm b = one_form({"x", "y", "z"}, {x, y, Expr(0)});
    CHECK_THROWS_AS(wedge(a, b), PreconditionError);
    CHECK_THROWS_AS(a + b, PreconditionError);
}

TEST_CASE("property: dd = 0")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 4;
        const int p = trial % (std::min(n, 3) + 1);
        const DForm w = random_form(rng, n, p);
        CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
    }
}

TEST_CASE("property: graded antisymmetry of the wedge product")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        const int p = trial % 3;
        const int q = (trial / 3) % 3;
        const DForm a = random_form(rng, n, std::min(p, n), 2);
        const DForm b = random_form(rng, n, std::min(q, n), 2);
        const int sign = (a.degree() * b.degree()) % 2 ? -1 : 1;
        CHECK(same_form(wedge(a, b), Expr(sign) * wedge(b, a)));
    }
}

TEST_CASE("property: wedge is associative")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const DForm a = random_form(rng, 4, 1, 2);
        const DForm b = random_form(rng, 4, 1, 2);
        const DForm c = random_form(rng, 4, 2, 1);
        CHECK(same_form(wedge(wedge(a, b), c), wedge(a, wedge(b, c))));
    }
}

TEST_CASE("property: Leibniz rule")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        const DForm a = random_form(rng, n, trial % 2, 2);
        const DForm b = random_form(rng, n, (trial / 2) % 2, 2);
        const int sign = a.degree() % 2 ? -1 : 1;
        const DForm lhs = exterior_derivative(wedge(a, b));
        const DForm rhs = wedge(exterior_derivative(a), b) + Expr(sign) * wedge(a, exterior_derivative(b));
        CHECK(same_form(lhs, rhs));
    }
}

TEST_CASE("property: double dual is +-identity")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const int p = trial % (n + 1);
        const DForm a = random_form(rng, n, p, 2);
        const int sign = (p * (n - p)) % 2 ? -1 : 1;
        CHECK(same_form(dual_form(dual_form(a)), Expr(sign) * a));
    }
}

TEST_CASE("property: potentials of exact forms are sound")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 3;
        const int p = 1 + trial % std::min(n, 3);
        const DForm a = exterior_derivative(random_form(rng, n, p - 1));
        const auto phi = find_potential(a);
        REQUIRE(phi);
        CHECK(same_form(exterior_derivative(*phi), a));
        CHECK(is_closed(a).exact);
    }
}

TEST_CASE("property: commutator entries match the hand formula for 1-forms")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 3;
        const DForm a = random_form(rng, n, 1);
        const auto k = commutator_components(a);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Expr want = differentiate(a.coefficient({j}), a.coords()[i])
                                  - differentiate(a.coefficient({i}), a.coords()[j]);
                const auto it = k.find({i, j});
                CHECK(exactly_zero((it == k.end() ? Expr(0) : it->second) - want));
            }
        }
    }
}
