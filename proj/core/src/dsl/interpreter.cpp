#include <forge/dsl/interpreter.hpp>
#include <forge/dsl/report.hpp>
#include <forge/error.hpp>
#include <forge/evolutionary.hpp>
#include <forge/form.hpp>
#include <forge/integrability.hpp>
#include <forge/numeric.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace forge::dsl {

namespace {

using nlohmann::json;

json number(double v)
{
    return round_for_report(v);
}

json numbers(const std::vector<double>& vs)
{
    json out = json::array();
    for (double v : vs) out.push_back(number(v));
    return out;
}

json quadrature(const QuadratureResult& q)
{
    return {{"value", number(q.value)}, {"error_estimate", number(q.error_estimate)}, {"panels", q.panels}};
}

json exprs(const std::vector<Expr>& es)
{
    json out = json::array();
    for (const auto& e : es) out.push_back(to_string(e));
    return out;
}

std::string key(char prefix, const std::vector<int>& zero_based)
{
    std::string k(1, prefix);
    for (int i : zero_based) k += "_" + std::to_string(i + 1);
    return k;
}

std::string_view verdict_word(bool closed)
{
    return closed ? "closed" : "not_closed";
}

// K_a_b for a < b of an antisymmetric table.
json table(const Table2& t)
{
    json out = json::object();
    for (int a = 0; a < t.n; ++a) {
        for (int b = a + 1; b < t.n; ++b) out[key('K', {a, b})] = to_string(t(a, b));
    }
    return out;
}

json components(char prefix, const std::vector<Component>& cs)
{
    json out = json::object();
    for (const auto& c : cs) out[key(prefix, c.indices)] = to_string(c.value);
    return out;
}

// Also lists each entry with its last two indices swapped and sign flipped.
json with_transposes(char prefix, const std::vector<Component>& cs)
{
    json out = components(prefix, cs);
    for (const auto& c : cs) {
        std::vector<int> swapped = c.indices;
        std::swap(swapped[swapped.size() - 2], swapped.back());
        out[key(prefix, swapped)] = to_string(simplify(-c.value));
    }
    return out;
}

// Every increasing (p+1)-tuple of d(a), zeros included.
json commutator_table(const DForm& a)
{
    const auto nonzero = commutator_components(a);
    json out = json::object();
    const int n = a.dimension();
    const int k = a.degree() + 1;
    if (k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        auto it = nonzero.find(idx);
        out[key('K', idx)] = it == nonzero.end() ? std::string("0") : to_string(it->second);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

class Interpreter {
public:
    Interpreter(const Script& script, const ExecOptions& options)
        : coords_(script.coords)
    {
        zero_.seed = options.seed;
        tolerance_ = options.tolerance;
    }

    std::vector<Report> run(const Script& script)
    {
        std::vector<Report> out;
        for (const auto& st : script.statements) {
            json r;
            try {
                std::visit([&](const auto& body) { r = dispatch(body); }, st.body);
            } catch (const std::exception& e) {
                r = json::object();
                r["status"] = "error";
                r["error"] = e.what();
                if (auto* decl = declared_name(st)) failed_.insert(*decl);
            }
            if (r.is_null()) continue; // successful declaration
            r["command"] = command_name(st);
            r["echo"] = st.echo;
            r["line"] = st.pos.line;
            if (!r.contains("status")) r["status"] = "ok";
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    static std::string command_name(const Statement& st)
    {
        return std::visit(
            [](const auto& b) -> std::string {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, CoordsDecl>) return "coords";
                else if constexpr (std::is_same_v<T, FormDecl>) return "form";
                else if constexpr (std::is_same_v<T, ConnectionDecl>) return "connection";
                else if constexpr (std::is_same_v<T, MomentumDecl>) return "momentum";
                else if constexpr (std::is_same_v<T, PdeDecl>) return "pde";
                else return b.name;
            },
            st.body);
    }

    static const std::string* declared_name(const Statement& st)
    {
        return std::visit(
            [](const auto& b) -> const std::string* {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, CoordsDecl>) return nullptr;
                else return &b.name;
            },
            st.body);
    }

    void available(const std::string& name) const
    {
        if (failed_.count(name)) throw Error("'" + name + "' is unavailable because its declaration failed");
    }

    // ---- declarations -----------------------------------------------------

    json dispatch(const CoordsDecl&) { return nullptr; }

    json dispatch(const FormDecl& d)
    {
        forms_.insert_or_assign(d.name, form(*d.value));
        return nullptr;
    }

    json dispatch(const ConnectionDecl& d)
    {
        Connection c(coords_);
        for (const auto& e : d.entries) c.set(e.upper - 1, e.lower1 - 1, e.lower2 - 1, scalar(*e.value));
        connections_.insert_or_assign(d.name, std::move(c));
        return nullptr;
    }

    json dispatch(const MomentumDecl& d)
    {
        MomentumField m{coords_, {}};
        for (const auto& c : d.components) m.components.push_back(scalar(*c));
        momenta_.insert_or_assign(d.name, std::move(m));
        return nullptr;
    }

    json dispatch(const PdeDecl& d)
    {
        pdes_.insert_or_assign(d.name, PDEProblem(coords_, scalar(*d.value)));
        return nullptr;
    }

    // ---- evaluation -------------------------------------------------------

    DForm form(const Node& n)
    {
        switch (n.kind) {
        case Node::Kind::Number: return DForm::scalar(coords_, Expr(n.number));
        case Node::Kind::Name:
            switch (n.name_kind) {
            case NameKind::Basis: return DForm::basis(coords_, coordinate_index(n.text.substr(1)));
            case NameKind::Form: {
                available(n.text);
                return forms_.at(n.text);
            }
            default: return DForm::scalar(coords_, Expr::symbol(n.text));
            }
        case Node::Kind::Negate: return -form(*n.children[0]);
        case Node::Kind::Binary: {
            const DForm a = form(*n.children[0]);
            const DForm b = form(*n.children[1]);
            if (n.text == "+" || n.text == "-") {
                if (a.degree() != b.degree()) {
                    throw Error("cannot " + std::string(n.text == "+" ? "add" : "subtract") + " forms of degree "
                                + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
                }
                return n.text == "+" ? a + b : a - b;
            }
            if (n.text == "*") {
                if (a.degree() == 0) return a.coefficient({}) * b;
                if (b.degree() == 0) return b.coefficient({}) * a;
                throw Error("'*' needs a scalar factor; use '^' for the wedge product");
            }
            if (n.text == "/") {
                if (b.degree() != 0) throw Error("division by a form of degree " + std::to_string(b.degree()));
                const Expr s = b.coefficient({});
                if (s.is_constant(0)) throw DomainError("division by zero", to_source(*n.children[1]));
                return (Expr(1) / s) * a;
            }
            // '^': power of scalars, wedge otherwise
            if (a.degree() == 0 && b.degree() == 0) {
                const Expr e = b.coefficient({});
                if (!e.is_constant() || denominator(e.value()) != 1) {
                    throw Error("exponent must be an integer constant, found " + to_string(e));
                }
                const Rational v = e.value();
                if (abs(v) > 1000) throw Error("exponent too large");
                const int k = static_cast<int>(numerator(v));
                const Expr base = a.coefficient({});
                if (k < 0 && base.is_constant(0)) throw DomainError("division by zero", to_source(*n.children[0]));
                return DForm::scalar(coords_, simplify(pow(base, k)));
            }
            return wedge(a, b);
        }
        case Node::Kind::Call: {
            const DForm a = form(*n.children[0]);
            if (n.text == "d") return exterior_derivative(a);
            if (n.text == "dual") return dual_form(a);
            if (a.degree() != 0) throw Error(n.text + " needs a scalar argument");
            const Expr x = a.coefficient({});
            if (n.text == "ln" && x.is_constant() && x.value() <= 0) throw DomainError("ln of a nonpositive value", to_string(x));
            static const std::map<std::string, Expr (*)(const Expr&), std::less<>> fns = {
                {"sin", &forge::sin}, {"cos", &forge::cos}, {"exp", &forge::exp}, {"ln", &forge::ln}};
            return DForm::scalar(coords_, simplify(fns.at(n.text)(x)));
        }
        case Node::Kind::Tuple: break;
        }
        throw Error("unexpected tuple");
    }

    Expr scalar(const Node& n)
    {
        const DForm f = form(n);
        if (f.degree() != 0) throw Error("expected a scalar but found a form of degree " + std::to_string(f.degree()));
        return f.coefficient({});
    }

    double numeric(const Node& n) const
    {
        switch (n.kind) {
        case Node::Kind::Number: return static_cast<double>(n.number);
        case Node::Kind::Name: return std::numbers::pi;
        case Node::Kind::Negate: return -numeric(*n.children[0]);
        case Node::Kind::Binary: {
            const double a = numeric(*n.children[0]);
            const double b = numeric(*n.children[1]);
            if (n.text == "+") return a + b;
            if (n.text == "-") return a - b;
            if (n.text == "*") return a * b;
            if (n.text == "/") {
                if (b == 0) throw DomainError("division by zero", to_source(n));
                return a / b;
            }
            return checked(std::pow(a, b), n);
        }
        case Node::Kind::Call: {
            const double x = numeric(*n.children[0]);
            if (n.text == "sin") return std::sin(x);
            if (n.text == "cos") return std::cos(x);
            if (n.text == "exp") return checked(std::exp(x), n);
            if (n.text == "ln") {
                if (x <= 0) throw DomainError("ln of a nonpositive value", to_source(n));
                return std::log(x);
            }
            if (x < 0) throw DomainError("sqrt of a negative value", to_source(n));
            return std::sqrt(x);
        }
        case Node::Kind::Tuple: break;
        }
        throw Error("expected a number");
    }

    static double checked(double v, const Node& n)
    {
        if (!std::isfinite(v)) throw DomainError("non-finite value", to_source(n));
        return v;
    }

    std::vector<double> tuple(const Node& n) const
    {
        std::vector<double> out;
        if (n.kind != Node::Kind::Tuple) {
            out.push_back(numeric(n));
        } else {
            for (const auto& c : n.children) out.push_back(numeric(*c));
        }
        return out;
    }

    int count(const Node& n, const char* what, int lo, int hi) const
    {
        const double v = numeric(n);
        if (v != std::floor(v) || v < lo || v > hi) {
            throw PreconditionError(std::string(what) + " must be an integer in [" + std::to_string(lo) + ", "
                                    + std::to_string(hi) + "]");
        }
        return static_cast<int>(v);
    }

    int coordinate_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == name) return static_cast<int>(i);
        }
        throw Error("undeclared coordinate " + name);
    }

    Path path(const Node& n) const
    {
        const auto& a = n.children;
        if (n.text == "circle") return Path{Circle{numeric(*a[0]), numeric(*a[1]), numeric(*a[2])}};
        if (n.text == "rect") {
            return Path{RectangleBoundary{numeric(*a[0]), numeric(*a[1]), numeric(*a[2]), numeric(*a[3])}};
        }
        if (n.text == "curve") {
            ParametricPath p{n.params[0], numeric(*n.bracket[0]), numeric(*n.bracket[1]), {}};
            Interpreter& self = const_cast<Interpreter&>(*this);
            for (const auto& c : a) p.components.push_back(self.scalar(*c));
            return Path{p};
        }
        Polyline line;
        for (const auto& c : a) line.points.push_back(tuple(*c));
        if (n.text == "polygon") line.points.push_back(line.points.front());
        return Path{line};
    }

    Region region(const Node& n) const
    {
        const auto& a = n.children;
        if (n.text == "rect") return Region{RectangleRegion{numeric(*a[0]), numeric(*a[1]), numeric(*a[2]), numeric(*a[3])}};
        return Region{BoxRegion{numeric(*a[0]), numeric(*a[1]), numeric(*a[2]), numeric(*a[3]), numeric(*a[4]),
                                numeric(*a[5])}};
    }

    const Connection& connection(const Node& n) const
    {
        available(n.text);
        return connections_.at(n.text);
    }

    const MomentumField& momentum(const Node& n) const
    {
        available(n.text);
        return momenta_.at(n.text);
    }

    const PDEProblem& pde(const Node& n) const
    {
        available(n.text);
        return pdes_.at(n.text);
    }

    void require_plane(const char* what) const
    {
        if (coords_.size() != 2) throw PreconditionError(std::string(what) + " needs exactly two coordinates");
    }

    // ---- commands -----------------------------------------------------------

    json dispatch(const Command& c)
    {
        const auto& a = c.args;
        auto arg = [&](std::size_t i) -> const Node& { return *a[i]; };
        auto has = [&](std::size_t i) { return a.size() > i; };
        const std::string& name = c.name;

        if (name == "d" || name == "dual" || name == "wedge") {
            DForm f = form(arg(0));
            if (name == "d") f = exterior_derivative(f);
            else if (name == "dual") f = dual_form(f);
            else f = wedge(f, form(arg(1)));
            return {{"degree", f.degree()}, {"form", to_string(f)}};
        }
        if (name == "closed") {
            const ClosureVerdict v = is_closed(form(arg(0)), zero_);
            json r = {{"verdict", verdict_word(v.closed)}, {"certainty", to_string(v.certainty)}};
            if (!v.closed) r["obstruction"] = to_string(v.commutator);
            if (v.potential) r["potential"] = to_string(*v.potential);
            if (!v.singular_denominators.empty()) r["singular_denominators"] = exprs(v.singular_denominators);
            return r;
        }
        if (name == "potential") {
            const auto phi = find_potential(form(arg(0)), zero_);
            if (!phi) return {{"found", false}, {"reason", "coefficients are not polynomial in the coordinates"}};
            return {{"found", true}, {"potential", to_string(*phi)}};
        }
        if (name == "commutator") {
            const DForm f = form(arg(0));
            return {{"degree", f.degree() + 1}, {"components", commutator_table(f)}};
        }
        if (name == "conjugacy") {
            const ConjugacyReport cr = conjugacy_report(form(arg(0)), zero_);
            json r = {{"verdict", verdict_word(cr.form.closed)},
                      {"certainty", to_string(cr.form.certainty)},
                      {"dual", to_string(cr.dual)},
                      {"dual_verdict", verdict_word(cr.dual_verdict.closed)},
                      {"dual_certainty", to_string(cr.dual_verdict.certainty)}};
            if (cr.cauchy_riemann_pair) r["cauchy_riemann_pair"] = *cr.cauchy_riemann_pair;
            if (cr.potential) r["potential"] = to_string(*cr.potential);
            if (cr.laplacian) r["laplacian"] = to_string(*cr.laplacian);
            if (cr.harmonic) r["harmonic"] = *cr.harmonic;
            return r;
        }
        if (name == "pullback") {
            const Node& m = arg(1);
            std::vector<Expr> images;
            for (const auto& e : m.children) images.push_back(scalar(*e));
            const DForm f = form(arg(0));
            const DForm pb = pullback(f, m.params, images);
            const ClosureVerdict v = is_closed(pb, zero_);
            json r = {{"parameters", m.params},
                      {"form", to_string(pb)},
                      {"verdict", verdict_word(v.closed)},
                      {"certainty", to_string(v.certainty)}};
            if (v.potential) r["potential"] = to_string(*v.potential);
            return r;
        }
        if (name == "evo_commutator") {
            const EvolutionaryCommutator k = evolutionary_commutator(form(arg(0)), connection(arg(1)));
            return {{"coordinate_part", table(k.coordinate_part)},
                    {"metric_part", table(k.metric_part)},
                    {"total", table(k.total)}};
        }
        if (name == "obstruction") {
            const ObstructionReport o = closure_obstruction(form(arg(0)), connection(arg(1)), zero_);
            return {{"verdict", to_string(o.kind)},
                    {"cancellation", o.cancellation},
                    {"certainty", to_string(o.exact ? Certainty::Exact : Certainty::Probabilistic)},
                    {"total", table(o.commutator.total)}};
        }
        if (name == "torsion" || name == "curvature" || name == "manifold") {
            const ManifoldReport m = manifold_integrability_report(connection(arg(0)), zero_);
            const std::string certainty(to_string(m.exact ? Certainty::Exact : Certainty::Probabilistic));
            if (name == "torsion") {
                return {{"torsion_free", m.torsion_free},
                        {"certainty", certainty},
                        {"components", with_transposes('T', m.torsion)}};
            }
            if (name == "curvature") {
                return {{"flat", m.flat}, {"certainty", certainty}, {"components", with_transposes('R', m.curvature)}};
            }
            return {{"verdict", to_string(m.verdict)},
                    {"torsion_free", m.torsion_free},
                    {"flat", m.flat},
                    {"certainty", certainty},
                    {"connection", components('G', m.bend)},
                    {"torsion", components('T', m.torsion)},
                    {"curvature", components('R', m.curvature)}};
        }
        if (name == "relation") {
            const RelationVerdict v = functional_relation_verdict(momentum(arg(0)), zero_);
            json r = {{"verdict", to_string(v.kind)},
                      {"certainty", to_string(v.certainty)},
                      {"theta", to_string(v.theta)},
                      {"commutator", commutator_table(v.theta)}};
            if (v.potential) r["potential"] = to_string(*v.potential);
            return r;
        }
        if (name == "closure_system") {
            const ClosureSystem s = closure_system(pde(arg(0)));
            return {{"A", exprs(s.A)}, {"B", exprs(s.B)}, {"degenerate", s.degenerate}};
        }
        if (name == "characteristics") {
            const CharacteristicSystem s = characteristics(pde(arg(0)), zero_);
            return {{"dx", exprs(s.dx_rhs)},
                    {"dp", exprs(s.dp_rhs)},
                    {"du", to_string(s.du_rhs)},
                    {"conservation_residual", to_string(s.conservation_residual)},
                    {"conservation", to_string(s.conservation)}};
        }
        if (name == "degeneracy") {
            const PDEProblem& p = pde(arg(0));
            const Region reg = region(arg(2));
            reg.validate();
            if (reg.dimension() != p.dimension()) throw PreconditionError("region dimension does not match the coordinates");
            CoordinateBox box;
            if (const auto* r = std::get_if<RectangleRegion>(&reg.shape)) {
                box = {{r->x0, r->y0}, {r->x0 + r->width, r->y0 + r->height}};
            } else {
                const auto& b = std::get<BoxRegion>(reg.shape);
                box = {{b.x0, b.y0, b.z0}, {b.x0 + b.wx, b.y0 + b.wy, b.z0 + b.wz}};
            }
            const int grid = has(3) ? count(arg(3), "grid", 2, 1000) : 5;
            const double u0 = has(4) ? numeric(arg(4)) : 0.0;
            const DegeneracyScan s = degeneracy_scan(p, momentum(arg(1)), box, grid, u0);
            json points = json::array();
            json directions = json::array();
            for (const auto& node : s.nodes) {
                if (node.dx_block_degenerate && points.size() < 10) points.push_back(numbers(node.x));
                if (node.direction.empty()) continue;
                const json dir = numbers(node.direction);
                if (directions.size() < 10 && std::find(directions.begin(), directions.end(), dir) == directions.end()) {
                    directions.push_back(dir);
                }
            }
            return {{"grid", grid},
                    {"nodes", s.nodes.size()},
                    {"domain_errors", s.domain_errors},
                    {"dx_block_degenerate", s.dx_block_degenerate},
                    {"rank_drop", s.rank_drop},
                    {"no_direction", s.no_direction},
                    {"degenerate_points", points},
                    {"directions", directions}};
        }
        if (name == "cr_check") {
            require_plane("cr_check");
            const CauchyRiemannReport r = cauchy_riemann_check(scalar(arg(0)), scalar(arg(1)), coords_[0], coords_[1], zero_);
            return {{"verdict", r.conjugated_pair ? "conjugated_pair" : "not_conjugated"},
                    {"closure_condition", to_string(r.closure_condition)},
                    {"closure_verdict", to_string(r.closure_verdict)},
                    {"dual_condition", to_string(r.dual_condition)},
                    {"dual_verdict", to_string(r.dual_verdict)},
                    {"laplacian_u", to_string(r.laplacian_u)},
                    {"laplacian_v", to_string(r.laplacian_v)},
                    {"u_harmonic", r.u_harmonic},
                    {"v_harmonic", r.v_harmonic}};
        }
        if (name == "canonical") {
            require_plane("canonical");
            const CanonicalRelation r = canonical_relation_check(scalar(arg(0)), coords_[0], coords_[1], zero_);
            return {{"slope", to_string(r.slope)},
                    {"relation", "d" + coords_[0] + "/d" + coords_[1] + " = " + to_string(r.slope)},
                    {"residual", to_string(r.residual)},
                    {"verdict", to_string(r.verdict)}};
        }
        if (name == "stokes") {
            const double tol = has(2) ? numeric(arg(2)) : tolerance_;
            const int panels = has(3) ? count(arg(3), "panels", 1, 100000) : 64;
            const StokesReport s = stokes_check(form(arg(0)), region(arg(1)), tol, panels);
            return {{"interior", quadrature(s.interior)},
                    {"boundary", quadrature(s.boundary)},
                    {"discrepancy", number(s.discrepancy)},
                    {"tolerance", number(tol)},
                    {"verdict", s.passed ? "pass" : "fail"}};
        }
        if (name == "loop_integral") {
            const int panels = has(2) ? count(arg(2), "panels", 1, 100000) : 64;
            return quadrature(line_integral(form(arg(0)), path(arg(1)), panels));
        }
        if (name == "area_integral") {
            const int panels = has(2) ? count(arg(2), "panels", 1, 100000) : 64;
            return quadrature(area_integral(form(arg(0)), region(arg(1)), panels));
        }
        if (name == "fd_check") {
            const Expr e = scalar(arg(0));
            const std::vector<double> at = tuple(arg(1));
            Point pt;
            for (std::size_t i = 0; i < coords_.size(); ++i) pt[coords_[i]] = at[i];
            const GradientCheck g = has(2) ? fd_gradient_check(e, pt, numeric(arg(2))) : fd_gradient_check(e, pt);
            json entries = json::object();
            for (const auto& en : g.entries) {
                entries[en.coordinate] = {{"symbolic", number(en.symbolic)},
                                          {"finite_difference", number(en.finite_difference)},
                                          {"relative_error", number(en.relative_error)}};
            }
            return {{"entries", entries}, {"max_relative_error", number(g.max_relative_error)}};
        }
        if (name == "trace") {
            const PDEProblem& p = pde(arg(0));
            TraceStart start{tuple(arg(1)), tuple(arg(2)), has(4) ? numeric(arg(4)) : 0.0};
            const double T = numeric(arg(3));
            const double step = has(5) ? numeric(arg(5)) : 1e-3;
            if (!(T > 0) || !(step > 0)) throw PreconditionError("trace needs T > 0 and step > 0");
            const IdenticalRelationReport r = identical_relation_on_characteristics(p, start, T, step);
            json out = {{"verdict", r.holds ? "identical_on_characteristic" : "violated"},
                        {"x_end", numbers(r.x_end)},
                        {"p_end", numbers(r.p_end)},
                        {"u_end", number(r.u_end)},
                        {"steps", r.steps},
                        {"max_f_drift", number(r.max_f_drift)},
                        {"max_step_mismatch", number(r.max_step_mismatch)},
                        {"cumulative_mismatch", number(r.cumulative_mismatch)},
                        {"truncated", r.truncated}};
            if (r.truncated) out["truncation_reason"] = r.truncation_reason;
            return out;
        }
        throw Error("unknown command " + name);
    }

    std::vector<std::string> coords_;
    ZeroTestOptions zero_;
    double tolerance_ = 1e-8;
    std::map<std::string, DForm, std::less<>> forms_;
    std::map<std::string, Connection, std::less<>> connections_;
    std::map<std::string, MomentumField, std::less<>> momenta_;
    std::map<std::string, PDEProblem, std::less<>> pdes_;
    std::set<std::string, std::less<>> failed_;
};

} // namespace

std::vector<Report> execute(const Script& script, const ExecOptions& options)
{
    return Interpreter(script, options).run(script);
}

std::size_t count_failures(const std::vector<Report>& reports)
{
    std::size_t n = 0;
    for (const auto& r : reports) n += r.value("status", "") == "error";
    return n;
}

} // namespace forge::dsl
