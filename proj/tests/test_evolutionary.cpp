#include "support.hpp"

#include <forge/error.hpp>
#include <forge/evolutionary.hpp>

#include <doctest.h>

using namespace forge;
using forge::testing::exactly_zero;
using forge::testing::frame;
using forge::testing::random_connection;
using forge::testing::random_form;

namespace {

// Straight from the index formula, no shared helpers.
Expr brute_commutator(const DForm& a, const Connection& c, int i, int j)
{
    const auto& xs = a.coords();
    Expr k = differentiate(a.coefficient({j}), xs[static_cast<std::size_t>(i)])
             - differentiate(a.coefficient({i}), xs[static_cast<std::size_t>(j)]);
    for (int s = 0; s < a.dimension(); ++s) k = k + (c(s, j, i) - c(s, i, j)) * a.coefficient({s});
    return k;
}

Expr brute_curvature(const Connection& c, int m, int v, int r, int s)
{
    const auto& xs = c.coords();
    Expr R = differentiate(c(m, v, s), xs[static_cast<std::size_t>(r)])
             - differentiate(c(m, v, r), xs[static_cast<std::size_t>(s)]);
    for (int t = 0; t < c.dimension(); ++t) R = R + c(m, t, r) * c(t, v, s) - c(m, t, s) * c(t, v, r);
    return R;
}

} // namespace

TEST_CASE("hand case: a = dy with G^2_21 = 1")
{
    Connection c({"x", "y"});
    c.set(1, 1, 0, Expr(1));
    DForm a({"x", "y"}, 1);
    a.add_term({1}, Expr(1));
    const EvolutionaryCommutator k = evolutionary_commutator(a, c);
    CHECK(k.coordinate_part(0, 1).is_constant(0));
    CHECK(to_string(k.metric_part(0, 1)) == "1");
    CHECK(to_string(k.total(0, 1)) == "1");
    CHECK(to_string(k.total(1, 0)) == "-1");

    const ObstructionReport o = closure_obstruction(a, c);
    CHECK(o.kind == ObstructionKind::Metric);
    CHECK_FALSE(o.cancellation);
}

TEST_CASE("curvature example: only G^1_22 = x")
{
    Connection c({"x", "y"});
    c.set(0, 1, 1, Expr::symbol("x"));
    const Table4 R = curvature_components(c);
    CHECK(to_string(R(0, 1, 0, 1)) == "1");
    CHECK(to_string(R(0, 1, 1, 0)) == "-1");
    const ManifoldReport m = manifold_integrability_report(c);
    CHECK(m.torsion_free);
    CHECK_FALSE(m.flat);
    CHECK(m.verdict == IntegrabilityVerdict::Nonintegrable);
}

TEST_CASE("flat symmetric connection is integrable")
{
    const ManifoldReport m = manifold_integrability_report(Connection({"x", "y", "z"}));
    CHECK(m.verdict == IntegrabilityVerdict::Integrable);
    CHECK(m.bend.empty());
}

TEST_CASE("polar-coordinate connection is flat and torsion free")
{
    // Levi-Civita connection of dr^2 + r^2 dphi^2
    const Expr r = Expr::symbol("r");
    Connection c({"r", "phi"});
    c.set(0, 1, 1, -r);
    c.set(1, 0, 1, Expr(1) / r);
    c.set(1, 1, 0, Expr(1) / r);
    const ManifoldReport m = manifold_integrability_report(c);
    CHECK(m.torsion_free);
    CHECK(m.flat);
    CHECK(m.verdict == IntegrabilityVerdict::Integrable);
}

TEST_CASE("cancellation between coordinate and metric parts is reported")
{
    // a = x dy: coordinate part K_12 = 1; G^2_12 = 1/x gives metric part -1
    const Expr x = Expr::symbol("x");
    DForm a({"x", "y"}, 1);
    a.add_term({1}, x);
    Connection c({"x", "y"});
    c.set(1, 0, 1, Expr(1) / x);
    const ObstructionReport o = closure_obstruction(a, c);
    CHECK(o.kind == ObstructionKind::Closed);
    CHECK(o.cancellation);
}

TEST_CASE("evolutionary commutator needs a 1-form on the same frame")
{
    const Connection c({"x", "y"});
    CHECK_THROWS_AS(evolutionary_commutator(DForm({"x", "y"}, 2), c), PreconditionError);
    CHECK_THROWS_AS(evolutionary_commutator(DForm({"x", "y", "z"}, 1), c), PreconditionError);
}

TEST_CASE("property: brute-force oracle agrees with the commutator")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const DForm a = random_form(rng, n, 1);
        const Connection c = random_connection(rng, n, trial % 3 == 0);
        const EvolutionaryCommutator k = evolutionary_commutator(a, c);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) CHECK(exactly_zero(k.total(i, j) - brute_commutator(a, c, i, j)));
        }
    }
}

TEST_CASE("property: symmetric connections leave the commutator unchanged")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const DForm a = random_form(rng, n, 1);
        const EvolutionaryCommutator k = evolutionary_commutator(a, random_connection(rng, n, true));
        const auto plain = commutator_components(a);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const auto it = plain.find({i, j});
                CHECK(exactly_zero(k.total(i, j) - (it == plain.end() ? Expr(0) : it->second)));
            }
        }
    }
}

TEST_CASE("property: torsion vanishes iff the connection is symmetric")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 2;
        const bool sym = trial % 2 == 0;
        const Connection c = random_connection(rng, n, sym);
        const Table3 t = torsion_components(c);
        bool zero = true;
        for (const auto& e : t.entries) zero &= exactly_zero(e);
        CHECK(zero == c.is_symmetric());
        if (sym) CHECK(zero);
    }
}

TEST_CASE("property: curvature matches brute force and is antisymmetric")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + trial % 2;
        const Connection c = random_connection(rng, n, trial % 2 == 0, 1);
        const Table4 R = curvature_components(c);
        const Table3 T = torsion_components(c);
        for (int m = 0; m < n; ++m) {
            for (int v = 0; v < n; ++v) {
                for (int r = 0; r < n; ++r) {
                    CHECK(exactly_zero(T(m, v, r) + T(m, r, v)));
                    for (int s = 0; s < n; ++s) {
                        CHECK(exactly_zero(R(m, v, r, s) - brute_curvature(c, m, v, r, s)));
                        CHECK(exactly_zero(R(m, v, r, s) + R(m, v, s, r)));
                    }
                }
            }
        }
    }
}

TEST_CASE("frame helper")
{
    CHECK(frame(3) == std::vector<std::string>{"x", "y", "z"});
}
