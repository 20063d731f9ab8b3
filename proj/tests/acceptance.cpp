// Acceptance gate: one PASS/FAIL line per criterion.

#include "support.hpp"

#include <forge/dsl/interpreter.hpp>
#include <forge/dsl/parser.hpp>
#include <forge/dsl/report.hpp>
#include <forge/evolutionary.hpp>
#include <forge/form.hpp>
#include <forge/integrability.hpp>
#include <forge/numeric.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

using namespace forge;
using forge::testing::exactly_zero;
using forge::testing::random_connection;
using forge::testing::random_form;
using forge::testing::random_polynomial;
using forge::testing::same_form;

namespace {

constexpr double two_pi = 2 * std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) detail = what;
        pass &= ok;
    }
};

DForm one_form(const std::vector<std::string>& coords, const std::vector<Expr>& c)
{
    DForm f(coords, 1);
    for (std::size_t i = 0; i < c.size(); ++i) f.add_term({static_cast<int>(i)}, c[i]);
    return f;
}

Outcome dd_zero()
{
    Outcome o;
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> dim(1, 4);
    const auto t0 = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        const int n = dim(rng);
        std::uniform_int_distribution<int> deg(0, std::min(n, 3));
        const DForm w = random_form(rng, n, deg(rng), 3);
        const DForm dd = exterior_derivative(exterior_derivative(w));
        bool zero = true;
        for (const auto& [idx, c] : dd.terms()) zero &= is_zero(c) == ZeroVerdict::ExactlyZero;
        o.require(zero, "d(d w) nonzero for w = " + to_string(w));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(seconds < 10.0, "took " + std::to_string(seconds) + " s");
    return o;
}

Outcome worked_examples()
{
    Outcome o;
    const std::vector<std::string> c = {"x", "y", "z"};
    const Expr x = Expr::symbol("x"), y = Expr::symbol("y"), z = Expr::symbol("z");

    // zero degree: a = x^2 y + x sin z
    const DForm t0 = DForm::scalar(c, x * x * y + x * sin(z));
    DForm grad(c, 1);
    grad.add_term({0}, 2 * x * y + sin(z));
    grad.add_term({1}, x * x);
    grad.add_term({2}, x * cos(z));
    o.require(same_form(exterior_derivative(t0), grad), "gradient");

    // first degree: a1 = y z, a2 = x^2, a3 = exp(x) y
    const DForm t1 = one_form(c, {y * z, x * x, exp(x) * y});
    DForm curl(c, 2);
    curl.add_term({0, 1}, 2 * x - z);         // da2/dx1 - da1/dx2
    curl.add_term({1, 2}, exp(x));            // da3/dx2 - da2/dx3
    curl.add_term({2, 0}, y - exp(x) * y);    // da1/dx3 - da3/dx1, on dx3^dx1
    o.require(same_form(exterior_derivative(t1), curl), "curl");

    // second degree: a12 = x y z, a23 = x^2 + y, a31 = sin(y) z
    DForm t2(c, 2);
    t2.add_term({0, 1}, x * y * z);
    t2.add_term({1, 2}, x * x + y);
    t2.add_term({2, 0}, sin(y) * z);
    DForm div(c, 3);
    div.add_term({0, 1, 2}, 2 * x + z * cos(y) + x * y); // da23/dx1 + da31/dx2 + da12/dx3
    o.require(same_form(exterior_derivative(t2), div), "divergence");
    return o;
}

Outcome residue()
{
    Outcome o;
    const std::vector<std::string> c = {"x", "y"};
    const Expr x = Expr::symbol("x"), y = Expr::symbol("y");
    const DForm t = one_form(c, {-y / (x * x + y * y), x / (x * x + y * y)});
    const double circle = line_integral(t, Path{Circle{0, 0, 1}}).value;
    const double square = line_integral(t, Path{Polyline{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}}}}).value;
    o.require(std::abs(circle - two_pi) < 1e-6, "circle gives " + std::to_string(circle));
    o.require(std::abs(square - circle) < 1e-6, "square gives " + std::to_string(square));
    return o;
}

Outcome stokes()
{
    Outcome o;
    std::mt19937_64 rng(42);
    const Region unit{RectangleRegion{0, 0, 1, 1}};
    for (int trial = 0; trial < 50; ++trial) {
        const StokesReport s = stokes_check(random_form(rng, 2, 1, 3), unit, 1e-8);
        o.require(s.discrepancy <= 1e-8, "discrepancy " + std::to_string(s.discrepancy));
    }
    const StokesReport s = stokes_check(one_form({"x", "y"}, {Expr(0), Expr::symbol("x")}), unit, 1e-8);
    o.require(std::abs(s.interior.value - 1.0) <= 1e-8, "x dy interior");
    o.require(std::abs(s.boundary.value - 1.0) <= 1e-8, "x dy boundary");
    return o;
}

Outcome cauchy_riemann()
{
    Outcome o;
    const Expr x = Expr::symbol("x"), y = Expr::symbol("y");
    const std::vector<std::string> c = {"x", "y"};
    o.require(cauchy_riemann_check(x, -y, "x", "y").conjugated_pair, "(x, -y) should pass");
    const CauchyRiemannReport xy = cauchy_riemann_check(x, y, "x", "y");
    o.require(!is_zero_verdict(xy.dual_verdict), "(x, y) should fail the dual condition");

    auto harmonic = [&](const Expr& f) {
        const ConjugacyReport r = conjugacy_report(exterior_derivative(DForm::scalar(c, f)));
        return r.form.closed && r.dual_verdict.closed && r.harmonic.value_or(false);
    };
    o.require(harmonic(x * x - y * y), "x^2 - y^2 should be harmonic");
    o.require(!harmonic(x * x), "x^2 should not be harmonic");
    return o;
}

Outcome characteristic_curves()
{
    Outcome o;
    const std::vector<std::string> c = {"x", "y"};
    const Expr p1 = Expr::symbol("p1"), p2 = Expr::symbol("p2");

    const PDEProblem transport(c, p1 + 2 * p2);
    const CharacteristicSystem ts = characteristics(transport);
    o.require(ts.conservation == ZeroVerdict::ExactlyZero, "transport dF/dt");
    const Trajectory tt = integrate_characteristics(ts, {0, 0, 0, 0, 0}, 1.0, 1e-3);
    for (std::size_t k = 0; k < tt.states.size(); ++k) {
        o.require(std::abs(tt.states[k][0] - tt.times[k]) < 1e-6 && std::abs(tt.states[k][1] - 2 * tt.times[k]) < 1e-6,
                  "transport trajectory leaves (t, 2t)");
    }
    o.require(std::abs(tt.times.back() - 1.0) < 1e-15, "trajectory ends at T = 1");

    const PDEProblem eikonal(c, p1 * p1 + p2 * p2 - 1);
    const CharacteristicSystem es = characteristics(eikonal);
    o.require(es.conservation == ZeroVerdict::ExactlyZero, "eikonal dF/dt");
    const double a = 0.6, b = 0.8;
    const Trajectory et = integrate_characteristics(es, {0.3, -0.2, a, b, 0}, 1.0, 1e-3);
    for (const auto& s : et.states) {
        const double norm = std::hypot(s[2], s[3]);
        const double F = s[2] * s[2] + s[3] * s[3] - 1;
        o.require(std::abs(norm - 1) < 1e-6 && std::abs(F) < 1e-6, "eikonal drift");
    }
    return o;
}

Outcome evolutionary()
{
    Outcome o;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3;
        const DForm a = random_form(rng, n, 1, 3);
        const EvolutionaryCommutator k = evolutionary_commutator(a, random_connection(rng, n, true));
        const auto plain = commutator_components(a);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const auto it = plain.find({i, j});
                o.require(exactly_zero(k.total(i, j) - (it == plain.end() ? Expr(0) : it->second)),
                          "symmetric connection changed the commutator");
            }
        }
    }

    Connection hand({"x", "y"});
    hand.set(1, 1, 0, Expr(1));
    const auto k = evolutionary_commutator(one_form({"x", "y"}, {Expr(0), Expr(1)}), hand);
    o.require(k.total(0, 1).is_constant(1), "hand case K_12 = " + to_string(k.total(0, 1)));

    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 2;
        const DForm a = random_form(rng, n, 1, 3);
        const Connection c = random_connection(rng, n, false);
        const EvolutionaryCommutator e = evolutionary_commutator(a, c);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Expr want = differentiate(a.coefficient({j}), a.coords()[static_cast<std::size_t>(i)])
                            - differentiate(a.coefficient({i}), a.coords()[static_cast<std::size_t>(j)]);
                for (int s = 0; s < n; ++s) want = want + (c(s, j, i) - c(s, i, j)) * a.coefficient({s});
                o.require(exactly_zero(e.total(i, j) - want), "index-loop oracle disagrees");
            }
        }
    }
    return o;
}

Outcome torsion_curvature()
{
    Outcome o;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 2;
        const bool sym = trial % 2 == 0;
        const Connection c = random_connection(rng, n, sym);
        const Table3 t = torsion_components(c);
        bool zero = true;
        for (const auto& e : t.entries) zero &= exactly_zero(e);
        o.require(zero == c.is_symmetric() && zero == sym, "torsion/symmetry mismatch");
        for (int s = 0; s < n; ++s) {
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) o.require(exactly_zero(t(s, a, b) + t(s, b, a)), "torsion antisymmetry");
            }
        }
        if (trial < 10) {
            const Table4 R = curvature_components(c);
            for (int m = 0; m < n; ++m) {
                for (int v = 0; v < n; ++v) {
                    for (int r = 0; r < n; ++r) {
                        for (int s = 0; s < n; ++s) {
                            o.require(exactly_zero(R(m, v, r, s) + R(m, v, s, r)), "curvature antisymmetry");
                        }
                    }
                }
            }
        }
    }
    Connection ex({"x", "y"});
    ex.set(0, 1, 1, Expr::symbol("x"));
    const Expr r1212 = curvature_components(ex)(0, 1, 0, 1);
    o.require(r1212.is_constant(1), "R^1_212 = " + to_string(r1212));
    return o;
}

Outcome relations()
{
    Outcome o;
    std::mt19937_64 rng(42);
    const std::vector<std::string> c = {"x", "y"};
    const Expr x = Expr::symbol("x"), y = Expr::symbol("y");
    for (int trial = 0; trial < 20; ++trial) {
        const Expr f = random_polynomial(rng, c, 3);
        const MomentumField grad{c, {differentiate(f, "x"), differentiate(f, "y")}};
        o.require(functional_relation_verdict(grad).kind == RelationKind::Identical, "gradient field");
    }
    const RelationVerdict rot = functional_relation_verdict({c, {-y, x}});
    o.require(rot.kind == RelationKind::Nonidentical, "(-y, x) should be nonidentical");
    o.require(rot.commutator.count({0, 1}) && rot.commutator.at({0, 1}).is_constant(2), "K_12 = 2");

    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 2;
        const auto coords = forge::testing::frame(n);
        MomentumField m{coords, {}};
        // every other field is a gradient so both verdicts occur
        const Expr f = random_polynomial(rng, coords, 3);
        for (int i = 0; i < n; ++i) {
            m.components.push_back(trial % 2 ? differentiate(f, coords[static_cast<std::size_t>(i)])
                                             : random_polynomial(rng, coords, 2));
        }
        const bool identical = functional_relation_verdict(m).kind == RelationKind::Identical;
        o.require(identical == is_closed(m.as_form()).closed, "relation and closure disagree");
    }
    return o;
}

Outcome golden_corpus()
{
    Outcome o;
    namespace fs = std::filesystem;
    std::vector<fs::path> scripts;
    for (const auto& e : fs::directory_iterator(FORGE_CORPUS_DIR)) {
        if (e.path().extension() == ".forge") scripts.push_back(e.path());
    }
    std::sort(scripts.begin(), scripts.end());
    o.require(!scripts.empty(), "no corpus scripts found");
    for (const auto& s : scripts) {
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        fs::path expected = s;
        expected.replace_extension(".json");
        if (!fs::exists(expected)) {
            o.require(false, expected.filename().string() + " missing");
            continue;
        }
        std::string got;
        for (const auto& r : dsl::execute(dsl::parse(slurp(s)))) got += dsl::render(r, dsl::Format::Json) + "\n";
        o.require(got == slurp(expected), s.filename().string() + " differs");
    }
    if (o.pass) o.detail = std::to_string(scripts.size()) + " scripts";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"dd = 0 on 200 random polynomial forms", dd_zero},
        {"worked 3-D gradient/curl/divergence forms", worked_examples},
        {"residue 2*pi on circle and square loops", residue},
        {"integral relation on 50 random 1-forms and x dy", stokes},
        {"Cauchy-Riemann and harmonic suite", cauchy_riemann},
        {"characteristics of transport and eikonal equations", characteristic_curves},
        {"evolutionary commutator", evolutionary},
        {"torsion and curvature", torsion_curvature},
        {"identical / nonidentical relation classification", relations},
        {"golden DSL corpus", golden_corpus},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2zu. %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.empty() ? "" : " -- ", o.detail.c_str());
        failed += !o.pass;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
