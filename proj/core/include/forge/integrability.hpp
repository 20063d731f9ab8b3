#pragma once

#include <forge/expr.hpp>
#include <forge/form.hpp>

#include <optional>
#include <string>
#include <vector>

namespace forge {

/// First-order PDE F(x^i, u, p_i) = 0 with p_i = du/dx^i.
class PDEProblem {
public:
    /// Momentum symbols are named p1..pn and the unknown u. Throws
    /// PreconditionError if F uses other symbols, is identically zero, or a
    /// coordinate name collides with u / p_i.
    PDEProblem(std::vector<std::string> coords, Expr F);

    int dimension() const { return static_cast<int>(coords_.size()); }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::string& unknown() const { return unknown_; }
    const std::vector<std::string>& momenta() const { return momenta_; }
    const Expr& F() const { return F_; }

    /// Symbols in state order: x^1..x^n, p_1..p_n, u.
    std::vector<std::string> state_symbols() const;

private:
    std::vector<std::string> coords_;
    std::string unknown_ = "u";
    std::vector<std::string> momenta_;
    Expr F_;
};

/// Candidate derivative field p_i(x) for du = p_i dx^i.
struct MomentumField {
    std::vector<std::string> coords;
    std::vector<Expr> components;

    DForm as_form() const;
};

/// Autonomous parametrization of the characteristic direction:
/// dx^i/dt = dF/dp_i, dp_i/dt = -(dF/dx^i + p_i dF/du), du/dt = p_i dF/dp_i.
struct CharacteristicSystem {
    std::vector<std::string> coords;
    std::vector<std::string> momenta;
    std::string unknown;
    std::vector<Expr> dx_rhs;
    std::vector<Expr> dp_rhs;
    Expr du_rhs;
    /// dF/dt along the system, simplified.
    Expr conservation_residual;
    ZeroVerdict conservation = ZeroVerdict::ExactlyZero;
};

/// Coefficients of dF = 0 over (dx^i, dp_i):
/// A_i = dF/dx^i + p_i dF/du, B_i = dF/dp_i.
struct ClosureSystem {
    std::vector<Expr> A;
    std::vector<Expr> B;
    /// Every B_i is ExactlyZero: F does not depend on the momenta.
    bool degenerate = false;
};

enum class RelationKind { Identical, Nonidentical };

std::string_view to_string(RelationKind k);

struct RelationVerdict {
    RelationKind kind = RelationKind::Identical;
    Certainty certainty = Certainty::Exact;
    DForm theta;
    /// K_ij for i < j, nonzero entries only.
    std::map<IndexTuple, Expr> commutator;
    /// u with du = theta when the relation is identical and a potential exists.
    std::optional<Expr> potential;
};

RelationVerdict functional_relation_verdict(const MomentumField& pf, const ZeroTestOptions& options = {});

ClosureSystem closure_system(const PDEProblem& prob);

/// Throws PreconditionError("no characteristic direction") when every
/// dF/dp_i is ExactlyZero.
CharacteristicSystem characteristics(const PDEProblem& prob, const ZeroTestOptions& options = {});

struct CoordinateBox {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct DegeneracyNode {
    std::vector<double> x;
    std::vector<double> A;
    std::vector<double> B;
    double b_norm = 0;
    /// All 2x2 minors of the dx-block [A; B] vanish (A parallel to B).
    bool dx_block_degenerate = false;
    /// All 2x2 minors of the full arrangement [A B; B -A] vanish.
    bool rank_drop = false;
    /// B = 0: no integrating direction through this node.
    bool no_direction = false;
    /// B / |B| when defined.
    std::vector<double> direction;
};

struct DegeneracyScan {
    std::vector<DegeneracyNode> nodes;
    std::size_t dx_block_degenerate = 0;
    std::size_t rank_drop = 0;
    std::size_t no_direction = 0;
    std::size_t domain_errors = 0;
};

/// Samples the closure-system coefficients with p = pf(x) and u = u_value
/// on a regular grid (`grid` points per axis) of `region`.
DegeneracyScan degeneracy_scan(const PDEProblem& prob, const MomentumField& pf, const CoordinateBox& region, int grid,
                               double u_value = 0.0, double threshold = 1e-9);

struct CanonicalRelation {
    Expr slope; ///< dx/dy = -p_y / p_x
    Expr residual;
    ZeroVerdict verdict = ZeroVerdict::ExactlyZero;
};

/// Throws PreconditionError when dp/dx is ExactlyZero.
CanonicalRelation canonical_relation_check(const Expr& p, const std::string& x, const std::string& y,
                                           const ZeroTestOptions& options = {});

struct CauchyRiemannReport {
    Expr closure_condition; ///< dv/dx - du/dy
    Expr dual_condition;    ///< du/dx + dv/dy
    ZeroVerdict closure_verdict = ZeroVerdict::ExactlyZero;
    ZeroVerdict dual_verdict = ZeroVerdict::ExactlyZero;
    bool conjugated_pair = false;
    Expr laplacian_u;
    Expr laplacian_v;
    bool u_harmonic = false;
    bool v_harmonic = false;
};

CauchyRiemannReport cauchy_riemann_check(const Expr& u, const Expr& v, const std::string& x, const std::string& y,
                                         const ZeroTestOptions& options = {});

struct TraceStart {
    std::vector<double> x;
    std::vector<double> p;
    double u = 0;
};

struct IdenticalRelationReport {
    std::vector<double> x_end;
    std::vector<double> p_end;
    double u_end = 0;
    double max_f_drift = 0;
    /// max over steps of |du - (trapezoidal p_i dx^i)|
    double max_step_mismatch = 0;
    /// |u(T) - u(0) - sum of trapezoidal p_i dx^i|
    double cumulative_mismatch = 0;
    std::size_t steps = 0;
    bool truncated = false;
    std::string truncation_reason;
    bool holds = false;
};

/// Integrates the characteristic system with RK4 from `start` over [0, T]
/// and checks that F stays on zero and du = p_i dx^i holds step by step.
/// Throws PreconditionError if |F(start)| > 1e-9.
IdenticalRelationReport identical_relation_on_characteristics(const PDEProblem& prob, const TraceStart& start, double T,
                                                              double step = 1e-3, double tolerance = 1e-6);

} // namespace forge
