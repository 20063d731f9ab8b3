#pragma once

#include <forge/expr.hpp>
#include <forge/form.hpp>

#include <string>
#include <vector>

namespace forge {

/// Connection coefficients Gamma^s_{ab} over a coordinate frame. Entries are
/// addressed (upper, lower1, lower2), zero-based; unset entries are zero.
class Connection {
public:
    Connection() = default;
    explicit Connection(std::vector<std::string> coords);

    int dimension() const { return n_; }
    const std::vector<std::string>& coords() const { return coords_; }

    const Expr& operator()(int s, int a, int b) const { return gamma_[index(s, a, b)]; }
    void set(int s, int a, int b, const Expr& value);

    /// Gamma^s_{ab} - Gamma^s_{ba} is ExactlyZero for every triple.
    bool is_symmetric() const;

private:
    std::size_t index(int s, int a, int b) const
    {
        return (static_cast<std::size_t>(s) * n_ + a) * n_ + b;
    }

    std::vector<std::string> coords_;
    int n_ = 0;
    std::vector<Expr> gamma_;
};

/// Dense n x n table indexed (a, b).
struct Table2 {
    int n = 0;
    std::vector<Expr> entries;

    explicit Table2(int dim = 0)
        : n(dim)
        , entries(static_cast<std::size_t>(dim * dim), Expr(0))
    {
    }
    Expr& operator()(int a, int b) { return entries[static_cast<std::size_t>(a * n + b)]; }
    const Expr& operator()(int a, int b) const { return entries[static_cast<std::size_t>(a * n + b)]; }
};

/// Dense n^3 table indexed (s, a, b).
struct Table3 {
    int n = 0;
    std::vector<Expr> entries;

    explicit Table3(int dim = 0)
        : n(dim)
        , entries(static_cast<std::size_t>(dim * dim * dim), Expr(0))
    {
    }
    Expr& operator()(int s, int a, int b) { return entries[static_cast<std::size_t>((s * n + a) * n + b)]; }
    const Expr& operator()(int s, int a, int b) const
    {
        return entries[static_cast<std::size_t>((s * n + a) * n + b)];
    }
};

/// Dense n^4 table indexed (m, v, r, s).
struct Table4 {
    int n = 0;
    std::vector<Expr> entries;

    explicit Table4(int dim = 0)
        : n(dim)
        , entries(static_cast<std::size_t>(dim * dim * dim * dim), Expr(0))
    {
    }
    Expr& operator()(int m, int v, int r, int s)
    {
        return entries[static_cast<std::size_t>(((m * n + v) * n + r) * n + s)];
    }
    const Expr& operator()(int m, int v, int r, int s) const
    {
        return entries[static_cast<std::size_t>(((m * n + v) * n + r) * n + s)];
    }
};

/// Commutator of a first-degree form on a manifold with connection:
/// K_ab = (da_b/dx^a - da_a/dx^b) + (G^s_ba - G^s_ab) a_s.
struct EvolutionaryCommutator {
    Table2 coordinate_part; ///< from differentiating the coefficients
    Table2 metric_part;     ///< from differentiating the basis
    Table2 total;
};

EvolutionaryCommutator evolutionary_commutator(const DForm& a, const Connection& c);

/// T^s_ab = G^s_ab - G^s_ba.
Table3 torsion_components(const Connection& c);

/// R^m_{vrs} = d_r G^m_{vs} - d_s G^m_{vr} + G^m_{tr} G^t_{vs} - G^m_{ts} G^t_{vr}.
Table4 curvature_components(const Connection& c);

enum class IntegrabilityVerdict { Integrable, Nonintegrable, Undetermined };

std::string_view to_string(IntegrabilityVerdict v);

struct Component {
    std::vector<int> indices; ///< zero-based
    Expr value;
};

struct ManifoldReport {
    bool torsion_free = false;
    bool flat = false;
    /// True when every torsion/curvature verdict was exact.
    bool exact = true;
    IntegrabilityVerdict verdict = IntegrabilityVerdict::Undetermined;
    std::vector<Component> bend;      ///< nonzero Gamma^s_ab
    std::vector<Component> torsion;   ///< nonzero T^s_ab, a < b
    std::vector<Component> curvature; ///< nonzero R^m_vrs, r < s
};

ManifoldReport manifold_integrability_report(const Connection& c, const ZeroTestOptions& options = {});

enum class ObstructionKind { Closed, Coordinate, Metric, Both };

std::string_view to_string(ObstructionKind k);

struct ObstructionReport {
    ObstructionKind kind = ObstructionKind::Closed;
    /// Both parts are nonzero but cancel in the total.
    bool cancellation = false;
    bool exact = true;
    EvolutionaryCommutator commutator;
};

ObstructionReport closure_obstruction(const DForm& a, const Connection& c, const ZeroTestOptions& options = {});

} // namespace forge
