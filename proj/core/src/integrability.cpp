#include <forge/compiled_expr.hpp>
#include <forge/error.hpp>
#include <forge/integrability.hpp>
#include <forge/numeric.hpp>

#include <algorithm>
#include <cmath>

namespace forge {

PDEProblem::PDEProblem(std::vector<std::string> coords, Expr F)
    : coords_(std::move(coords))
{
    for (std::size_t i = 0; i < coords_.size(); ++i) momenta_.push_back("p" + std::to_string(i + 1));
    for (const auto& c : coords_) {
        if (c == unknown_ || std::find(momenta_.begin(), momenta_.end(), c) != momenta_.end()) {
            throw PreconditionError("coordinate '" + c + "' collides with a PDE symbol");
        }
    }
    F_ = simplify(F);
    for (const auto& s : free_symbols(F_)) {
        const bool known = s == unknown_ || std::find(coords_.begin(), coords_.end(), s) != coords_.end()
                           || std::find(momenta_.begin(), momenta_.end(), s) != momenta_.end();
        if (!known) throw PreconditionError("PDE uses undeclared symbol '" + s + "'");
    }
    if (F_.is_constant(0)) throw PreconditionError("PDE function is identically zero");
}

std::vector<std::string> PDEProblem::state_symbols() const
{
    std::vector<std::string> out = coords_;
    out.insert(out.end(), momenta_.begin(), momenta_.end());
    out.push_back(unknown_);
    return out;
}

DForm MomentumField::as_form() const
{
    if (components.size() != coords.size()) {
        throw PreconditionError("momentum field needs one component per coordinate");
    }
    DForm theta(coords, 1);
    for (std::size_t i = 0; i < components.size(); ++i) theta.add_term({static_cast<int>(i)}, components[i]);
    return theta;
}

std::string_view to_string(RelationKind k)
{
    return k == RelationKind::Identical ? "identical" : "nonidentical";
}

RelationVerdict functional_relation_verdict(const MomentumField& pf, const ZeroTestOptions& options)
{
    RelationVerdict r;
    r.theta = pf.as_form();
    for (const auto& [idx, k] : commutator_components(r.theta)) {
        const ZeroVerdict z = is_zero(k, options);
        if (!is_exact_verdict(z)) r.certainty = Certainty::Probabilistic;
        if (!is_zero_verdict(z)) r.commutator.emplace(idx, k);
    }
    r.kind = r.commutator.empty() ? RelationKind::Identical : RelationKind::Nonidentical;
    if (r.kind == RelationKind::Identical) {
        if (auto phi = find_potential(r.theta, options)) r.potential = phi->coefficient({});
    }
    return r;
}

ClosureSystem closure_system(const PDEProblem& prob)
{
    ClosureSystem s;
    const Expr Fu = differentiate(prob.F(), prob.unknown());
    s.degenerate = true;
    for (int i = 0; i < prob.dimension(); ++i) {
        const auto& x = prob.coords()[static_cast<std::size_t>(i)];
        const auto& p = prob.momenta()[static_cast<std::size_t>(i)];
        s.A.push_back(simplify(differentiate(prob.F(), x) + Expr::symbol(p) * Fu));
        s.B.push_back(differentiate(prob.F(), p));
        if (!s.B.back().is_constant(0)) s.degenerate = false;
    }
    return s;
}

CharacteristicSystem characteristics(const PDEProblem& prob, const ZeroTestOptions& options)
{
    const ClosureSystem cs = closure_system(prob);
    if (cs.degenerate) throw PreconditionError("no characteristic direction: F does not depend on the momenta");

    CharacteristicSystem sys;
    sys.coords = prob.coords();
    sys.momenta = prob.momenta();
    sys.unknown = prob.unknown();
    Expr du(0);
    for (int i = 0; i < prob.dimension(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        sys.dx_rhs.push_back(cs.B[k]);
        sys.dp_rhs.push_back(simplify(-cs.A[k]));
        du += Expr::symbol(prob.momenta()[k]) * cs.B[k];
    }
    sys.du_rhs = simplify(du);

    Expr dFdt = differentiate(prob.F(), prob.unknown()) * sys.du_rhs;
    for (int i = 0; i < prob.dimension(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        dFdt += differentiate(prob.F(), prob.coords()[k]) * sys.dx_rhs[k];
        dFdt += differentiate(prob.F(), prob.momenta()[k]) * sys.dp_rhs[k];
    }
    sys.conservation_residual = simplify(dFdt);
    sys.conservation = is_zero(sys.conservation_residual, options);
    return sys;
}

DegeneracyScan degeneracy_scan(const PDEProblem& prob, const MomentumField& pf, const CoordinateBox& region, int grid,
                               double u_value, double threshold)
{
    const std::size_t n = static_cast<std::size_t>(prob.dimension());
    if (grid < 2) throw PreconditionError("degeneracy_scan: grid needs at least 2 points per axis");
    if (region.lower.size() != n || region.upper.size() != n) {
        throw PreconditionError("degeneracy_scan: region dimension does not match the problem");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(region.upper[i] > region.lower[i])) throw PreconditionError("degeneracy_scan: empty region");
    }
    if (pf.components.size() != n) throw PreconditionError("degeneracy_scan: momentum field dimension mismatch");

    const ClosureSystem cs = closure_system(prob);
    const std::vector<std::string> slots = prob.state_symbols();
    std::vector<CompiledExpr> A, B, P;
    for (std::size_t i = 0; i < n; ++i) {
        A.emplace_back(cs.A[i], slots);
        B.emplace_back(cs.B[i], slots);
        P.emplace_back(pf.components[i], prob.coords());
    }

    DegeneracyScan scan;
    std::vector<int> counter(n, 0);
    std::vector<double> state(2 * n + 1);
    while (true) {
        DegeneracyNode node;
        node.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double f = static_cast<double>(counter[i]) / (grid - 1);
            node.x[i] = region.lower[i] + f * (region.upper[i] - region.lower[i]);
        }
        try {
            for (std::size_t i = 0; i < n; ++i) state[i] = node.x[i];
            for (std::size_t i = 0; i < n; ++i) state[n + i] = P[i](node.x);
            state[2 * n] = u_value;
            for (std::size_t i = 0; i < n; ++i) {
                node.A.push_back(A[i](state));
                node.B.push_back(B[i](state));
            }

            double b2 = 0;
            for (double b : node.B) b2 += b * b;
            node.b_norm = std::sqrt(b2);
            node.no_direction = node.b_norm < threshold;
            if (!node.no_direction) {
                for (double b : node.B) node.direction.push_back(b / node.b_norm);
            }

            node.dx_block_degenerate = true;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (std::abs(node.A[i] * node.B[j] - node.A[j] * node.B[i]) >= threshold) {
                        node.dx_block_degenerate = false;
                    }
                }
            }

            // Rows (A, B) and (B, -A) over the 2n unknowns (dx, dp).
            std::vector<double> r0(node.A), r1(node.B);
            r0.insert(r0.end(), node.B.begin(), node.B.end());
            for (double a : node.A) r1.push_back(-a);
            node.rank_drop = true;
            for (std::size_t c1 = 0; c1 < 2 * n && node.rank_drop; ++c1) {
                for (std::size_t c2 = c1 + 1; c2 < 2 * n; ++c2) {
                    if (std::abs(r0[c1] * r1[c2] - r0[c2] * r1[c1]) >= threshold) {
                        node.rank_drop = false;
                        break;
                    }
                }
            }

            scan.dx_block_degenerate += node.dx_block_degenerate;
            scan.rank_drop += node.rank_drop;
            scan.no_direction += node.no_direction;
            scan.nodes.push_back(std::move(node));
        } catch (const DomainError&) {
            ++scan.domain_errors;
        }

        std::size_t axis = 0;
        while (axis < n && ++counter[axis] == grid) counter[axis++] = 0;
        if (axis == n) break;
    }
    return scan;
}

CanonicalRelation canonical_relation_check(const Expr& p, const std::string& x, const std::string& y,
                                           const ZeroTestOptions& options)
{
    const Expr px = differentiate(p, x);
    const Expr py = differentiate(p, y);
    if (is_zero(px, options) == ZeroVerdict::ExactlyZero) {
        throw PreconditionError("relation not solvable for d" + x + "/d" + y);
    }
    CanonicalRelation r;
    r.slope = simplify(-py / px);
    r.residual = simplify(px * r.slope + py);
    r.verdict = is_zero(r.residual, options);
    return r;
}

CauchyRiemannReport cauchy_riemann_check(const Expr& u, const Expr& v, const std::string& x, const std::string& y,
                                         const ZeroTestOptions& options)
{
    CauchyRiemannReport r;
    r.closure_condition = simplify(differentiate(v, x) - differentiate(u, y));
    r.dual_condition = simplify(differentiate(u, x) + differentiate(v, y));
    r.closure_verdict = is_zero(r.closure_condition, options);
    r.dual_verdict = is_zero(r.dual_condition, options);
    r.conjugated_pair = is_zero_verdict(r.closure_verdict) && is_zero_verdict(r.dual_verdict);

    auto laplacian = [&](const Expr& f) {
        return simplify(differentiate(differentiate(f, x), x) + differentiate(differentiate(f, y), y));
    };
    r.laplacian_u = laplacian(u);
    r.laplacian_v = laplacian(v);
    r.u_harmonic = is_zero_verdict(is_zero(r.laplacian_u, options));
    r.v_harmonic = is_zero_verdict(is_zero(r.laplacian_v, options));
    return r;
}

IdenticalRelationReport identical_relation_on_characteristics(const PDEProblem& prob, const TraceStart& start, double T,
                                                              double step, double tolerance)
{
    const std::size_t n = static_cast<std::size_t>(prob.dimension());
    if (start.x.size() != n || start.p.size() != n) {
        throw PreconditionError("trace: start point and momentum need one entry per coordinate");
    }
    const CharacteristicSystem sys = characteristics(prob);
    const std::vector<std::string> slots = prob.state_symbols();
    const CompiledExpr F(prob.F(), slots);

    std::vector<double> y0 = start.x;
    y0.insert(y0.end(), start.p.begin(), start.p.end());
    y0.push_back(start.u);
    const double f0 = F(y0);
    if (std::abs(f0) > 1e-9) {
        throw PreconditionError("trace: start point does not satisfy F = 0 (|F| = " + std::to_string(std::abs(f0)) + ")");
    }

    const Trajectory traj = integrate_characteristics(sys, y0, T, step);

    IdenticalRelationReport r;
    r.truncated = traj.truncated;
    r.truncation_reason = traj.error;
    r.steps = traj.states.size() - 1;
    double cumulative = 0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& s = traj.states[k];
        try {
            r.max_f_drift = std::max(r.max_f_drift, std::abs(F(s)));
        } catch (const DomainError& e) {
            r.truncated = true;
            r.truncation_reason = e.what();
        }
        if (k == 0) continue;
        const auto& prev = traj.states[k - 1];
        double pdx = 0;
        for (std::size_t i = 0; i < n; ++i) pdx += 0.5 * (prev[n + i] + s[n + i]) * (s[i] - prev[i]);
        const double du = s[2 * n] - prev[2 * n];
        r.max_step_mismatch = std::max(r.max_step_mismatch, std::abs(du - pdx));
        cumulative += du - pdx;
    }
    r.cumulative_mismatch = std::abs(cumulative);

    const auto& last = traj.states.back();
    r.x_end.assign(last.begin(), last.begin() + static_cast<long>(n));
    r.p_end.assign(last.begin() + static_cast<long>(n), last.begin() + static_cast<long>(2 * n));
    r.u_end = last[2 * n];
    r.holds = !r.truncated && r.max_f_drift <= tolerance && r.max_step_mismatch <= tolerance
              && r.cumulative_mismatch <= tolerance;
    return r;
}

} // namespace forge
