#include "support.hpp"

#include <forge/error.hpp>
#include <forge/integrability.hpp>

#include <doctest.h>

#include <cmath>

using namespace forge;
using forge::testing::exactly_zero;

namespace {

const std::vector<std::string> xy = {"x", "y"};
const Expr x = Expr::symbol("x");
const Expr y = Expr::symbol("y");
const Expr p1 = Expr::symbol("p1");
const Expr p2 = Expr::symbol("p2");
const Expr u = Expr::symbol("u");

} // namespace

TEST_CASE("transport equation characteristics")
{
    const PDEProblem prob(xy, p1 + 2 * p2);
    const CharacteristicSystem s = characteristics(prob);
    CHECK(to_string(s.dx_rhs[0]) == "1");
    CHECK(to_string(s.dx_rhs[1]) == "2");
    CHECK(s.dp_rhs[0].is_constant(0));
    CHECK(s.dp_rhs[1].is_constant(0));
    CHECK(s.conservation == ZeroVerdict::ExactlyZero);
}

TEST_CASE("eikonal equation conserves F symbolically")
{
    const PDEProblem prob(xy, p1 * p1 + p2 * p2 - 1);
    const CharacteristicSystem s = characteristics(prob);
    CHECK(s.conservation == ZeroVerdict::ExactlyZero);
    CHECK(to_string(s.du_rhs) == "2*p1^2 + 2*p2^2");
}

TEST_CASE("quasi-linear equation with u dependence")
{
    // Burgers-like: p1 + u p2 = 0
    const PDEProblem prob(xy, p1 + u * p2);
    const ClosureSystem cs = closure_system(prob);
    CHECK(exactly_zero(cs.A[0] - p1 * p2));
    CHECK(exactly_zero(cs.A[1] - p2 * p2));
    CHECK(exactly_zero(cs.B[1] - u));
    CHECK(characteristics(prob).conservation == ZeroVerdict::ExactlyZero);
}

TEST_CASE("PDE validation")
{
    CHECK_THROWS_AS(PDEProblem(xy, p1 + Expr::symbol("q")), PreconditionError);
    CHECK_THROWS_AS(PDEProblem(xy, p1 - p1), PreconditionError);
    CHECK_THROWS_AS(PDEProblem({"u", "y"}, p1), PreconditionError);
    CHECK_THROWS_WITH_AS(characteristics(PDEProblem(xy, x * x + u)), doctest::Contains("no characteristic direction"),
                         PreconditionError);
}

TEST_CASE("functional relation verdicts")
{
    const RelationVerdict grad = functional_relation_verdict({xy, {2 * x * y, x * x}});
    CHECK(grad.kind == RelationKind::Identical);
    REQUIRE(grad.potential);
    CHECK(to_string(*grad.potential) == "x^2*y");

    const RelationVerdict rot = functional_relation_verdict({xy, {-y, x}});
    CHECK(rot.kind == RelationKind::Nonidentical);
    CHECK(to_string(rot.commutator.at({0, 1})) == "2");
}

TEST_CASE("canonical relation check")
{
    const CanonicalRelation r = canonical_relation_check(x * x + y, "x", "y");
    CHECK(exactly_zero(r.slope + Expr(1) / (2 * x)));
    CHECK(r.verdict == ZeroVerdict::ExactlyZero);
    CHECK_THROWS_WITH_AS(canonical_relation_check(y * y, "x", "y"), doctest::Contains("not solvable"),
                         PreconditionError);
}

TEST_CASE("Cauchy-Riemann suite")
{
    const CauchyRiemannReport a = cauchy_riemann_check(x, -y, "x", "y");
    CHECK(a.conjugated_pair);
    const CauchyRiemannReport b = cauchy_riemann_check(x, y, "x", "y");
    CHECK_FALSE(b.conjugated_pair);
    CHECK(is_zero_verdict(b.closure_verdict));
    CHECK(b.dual_verdict == ZeroVerdict::ExactlyNonzero);
    // real part and negated imaginary part of z^3
    const CauchyRiemannReport c = cauchy_riemann_check(x * x * x - 3 * x * y * y, y * y * y - 3 * x * x * y, "x", "y");
    CHECK(c.conjugated_pair);
    CHECK(c.u_harmonic);
    CHECK(c.v_harmonic);
    // gradient of a harmonic function with transcendental kernels
    const Expr f = exp(x) * cos(y);
    const CauchyRiemannReport d = cauchy_riemann_check(differentiate(f, "x"), differentiate(f, "y"), "x", "y");
    CHECK(d.conjugated_pair);
    CHECK(d.u_harmonic);
}

TEST_CASE("degeneracy scan on the eikonal equation")
{
    const PDEProblem prob(xy, p1 * p1 + p2 * p2 - 1);
    // p = (x, y): A = 0 everywhere, so [A; B] is rank-deficient at every node
    const DegeneracyScan s = degeneracy_scan(prob, {xy, {x, y}}, {{-1, -1}, {1, 1}}, 3);
    CHECK(s.nodes.size() == 9);
    CHECK(s.dx_block_degenerate == 9);
    CHECK(s.no_direction == 1); // the origin
    CHECK(s.rank_drop == 1);
    CHECK_THROWS_AS(degeneracy_scan(prob, {xy, {x, y}}, {{0, 0}, {0, 1}}, 3), PreconditionError);
    CHECK_THROWS_AS(degeneracy_scan(prob, {xy, {x, y}}, {{0, 0}, {1, 1}}, 1), PreconditionError);
}

TEST_CASE("degeneracy scan with a transversal closure system")
{
    const PDEProblem prob(xy, p1 + x * p2 + u);
    const DegeneracyScan s = degeneracy_scan(prob, {xy, {Expr(1), Expr(0)}}, {{0, 0}, {1, 1}}, 4, 0.0);
    // A = (p2 + p1, p2) = (1, 0), B = (1, x): the minor x vanishes only on x = 0
    CHECK(s.nodes.size() == 16);
    CHECK(s.dx_block_degenerate == 4);
    CHECK(s.no_direction == 0);
}

TEST_CASE("identical relation along characteristics")
{
    const PDEProblem eik(xy, p1 * p1 + p2 * p2 - 1);
    const IdenticalRelationReport r = identical_relation_on_characteristics(eik, {{0, 0}, {0.6, 0.8}, 0.0}, 1.0);
    CHECK(r.holds);
    CHECK(r.x_end[0] == doctest::Approx(1.2).epsilon(1e-9));
    CHECK(r.x_end[1] == doctest::Approx(1.6).epsilon(1e-9));
    CHECK(r.u_end == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(identical_relation_on_characteristics(eik, {{0, 0}, {1, 1}, 0.0}, 1.0), PreconditionError);
}

TEST_CASE("identical relation on a nonlinear problem")
{
    // F = p1 + p2^2/2 - x, started on F = 0
    const PDEProblem prob(xy, p1 + p2 * p2 / 2 - x);
    const IdenticalRelationReport r = identical_relation_on_characteristics(prob, {{1, 0}, {0.875, 0.5}, 0.0}, 0.5);
    CHECK(r.max_f_drift == doctest::Approx(0).epsilon(1e-6));
    CHECK_FALSE(r.truncated);
}
