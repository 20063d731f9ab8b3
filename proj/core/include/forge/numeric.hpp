#pragma once

#include <forge/expr.hpp>
#include <forge/form.hpp>
#include <forge/integrability.hpp>

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace forge {

/// Nodes and weights of the 5-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre5 {
    static const std::array<double, 5>& nodes();
    static const std::array<double, 5>& weights();
};

/// Composite 5-point Gauss-Legendre rule of f over [a, b] with `panels`
/// equal panels. Summation order is fixed.
template <typename F>
double composite_gauss(F&& f, double a, double b, int panels)
{
    const auto& xs = GaussLegendre5::nodes();
    const auto& ws = GaussLegendre5::weights();
    const double h = (b - a) / panels;
    double total = 0;
    for (int k = 0; k < panels; ++k) {
        const double mid = a + (k + 0.5) * h;
        double panel = 0;
        for (std::size_t i = 0; i < 5; ++i) panel += ws[i] * f(mid + 0.5 * h * xs[i]);
        total += 0.5 * h * panel;
    }
    return total;
}

struct Circle {
    double cx = 0, cy = 0, radius = 1;
};

/// Boundary of an axis-aligned rectangle, traversed counterclockwise.
struct RectangleBoundary {
    double x0 = 0, y0 = 0, width = 1, height = 1;
};

/// Piecewise-linear path through the given points, in order.
struct Polyline {
    std::vector<std::vector<double>> points;
};

/// x^i = components[i](parameter), parameter in [t0, t1].
struct ParametricPath {
    std::string parameter;
    double t0 = 0, t1 = 1;
    std::vector<Expr> components;
};

struct Path {
    std::variant<Circle, RectangleBoundary, Polyline, ParametricPath> shape;
    /// Reverses the traversal direction when false.
    bool counterclockwise = true;

    int dimension() const;
    bool is_closed() const;
    /// Throws PreconditionError on nonpositive radius/widths or short polylines.
    void validate() const;
};

struct RectangleRegion {
    double x0 = 0, y0 = 0, width = 1, height = 1;
};

struct BoxRegion {
    double x0 = 0, y0 = 0, z0 = 0, wx = 1, wy = 1, wz = 1;
};

struct Region {
    std::variant<RectangleRegion, BoxRegion> shape;

    int dimension() const;
    void validate() const;
};

struct QuadratureResult {
    double value = 0;
    /// max(|I(2N) - I(N)|, round-off floor); the value is I(2N).
    double error_estimate = 0;
    int panels = 0;
};

/// Integral of a 1-form along a path (panels per smooth piece).
/// Poles on the path surface as DomainError.
QuadratureResult line_integral(const DForm& a, const Path& path, int panels = 64);

/// Integral of a top-degree form (2-form on a rectangle, 3-form on a box)
/// with `panels` panels per axis.
QuadratureResult area_integral(const DForm& a, const Region& region, int panels = 64);

/// Flux of a 2-form through the outward-oriented boundary of a box.
QuadratureResult boundary_integral(const DForm& a, const BoxRegion& box, int panels);

struct StokesReport {
    QuadratureResult interior; ///< integral of d(a) over the region
    QuadratureResult boundary; ///< integral of a over its boundary
    double discrepancy = 0;
    bool passed = false;
};

/// Both sides of the integral relation for a 1-form on a rectangle or a
/// 2-form on a box.
StokesReport stokes_check(const DForm& a, const Region& region, double tol = 1e-8, int panels = 64);

struct GradientCheckEntry {
    std::string coordinate;
    double symbolic = 0;
    double finite_difference = 0;
    double relative_error = 0;
};

struct GradientCheck {
    std::vector<GradientCheckEntry> entries;
    double max_relative_error = 0;
};

/// Central differences against symbolic partial derivatives; relative error
/// |fd - sym| / max(1, |sym|).
GradientCheck fd_gradient_check(const Expr& e, const Point& pt, double h = 1e-5);

struct Trajectory {
    std::vector<double> times;
    /// Each state is x^1..x^n, p_1..p_n, u.
    std::vector<std::vector<double>> states;
    bool truncated = false;
    std::string error;
};

/// Fixed-step classic RK4. The last step is shortened to land on T.
Trajectory integrate_characteristics(const CharacteristicSystem& sys, const std::vector<double>& start, double T,
                                     double step = 1e-3);

} // namespace forge
