#include <forge/compiled_expr.hpp>
#include <forge/error.hpp>
#include <forge/numeric.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <numbers>

namespace forge {

// ---------------------------------------------------------------------------
// Paths and regions

int Path::dimension() const
{
    return std::visit(
        [](const auto& s) -> int {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyline>) {
                return s.points.empty() ? 0 : static_cast<int>(s.points.front().size());
            } else if constexpr (std::is_same_v<T, ParametricPath>) {
                return static_cast<int>(s.components.size());
            } else {
                return 2;
            }
        },
        shape);
}

bool Path::is_closed() const
{
    if (const auto* p = std::get_if<Polyline>(&shape)) {
        return p->points.size() >= 2 && p->points.front() == p->points.back();
    }
    if (const auto* c = std::get_if<ParametricPath>(&shape)) {
        Point a{{c->parameter, c->t0}};
        Point b{{c->parameter, c->t1}};
        for (const Expr& e : c->components) {
            if (std::abs(evaluate(e, a) - evaluate(e, b)) > 1e-12) return false;
        }
        return true;
    }
    return true;
}

void Path::validate() const
{
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Circle>) {
                if (!(s.radius > 0)) throw PreconditionError("circle radius must be positive");
            } else if constexpr (std::is_same_v<T, RectangleBoundary>) {
                if (!(s.width > 0) || !(s.height > 0)) throw PreconditionError("rectangle widths must be positive");
            } else if constexpr (std::is_same_v<T, Polyline>) {
                if (s.points.size() < 2) throw PreconditionError("polyline needs at least two points");
                for (const auto& p : s.points) {
                    if (p.size() != s.points.front().size()) {
                        throw PreconditionError("polyline points have inconsistent dimension");
                    }
                }
            } else {
                if (!(s.t1 > s.t0)) throw PreconditionError("parameter range must be increasing");
            }
        },
        shape);
}

int Region::dimension() const
{
    return std::holds_alternative<RectangleRegion>(shape) ? 2 : 3;
}

void Region::validate() const
{
    if (const auto* r = std::get_if<RectangleRegion>(&shape)) {
        if (!(r->width > 0) || !(r->height > 0)) throw PreconditionError("region widths must be positive");
    } else {
        const auto& b = std::get<BoxRegion>(shape);
        if (!(b.wx > 0) || !(b.wy > 0) || !(b.wz > 0)) throw PreconditionError("region widths must be positive");
    }
}

namespace {

constexpr double kPi = std::numbers::pi;

// One smooth piece of a path: position and velocity at parameter t.
struct Piece {
    double t0 = 0, t1 = 1;
    std::function<void(double, std::vector<double>&, std::vector<double>&)> eval;
};

std::vector<Piece> pieces_of(const Path& path)
{
    std::vector<Piece> out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Circle>) {
                out.push_back({0.0, 2 * kPi, [s](double t, std::vector<double>& x, std::vector<double>& v) {
                                   x = {s.cx + s.radius * std::cos(t), s.cy + s.radius * std::sin(t)};
                                   v = {-s.radius * std::sin(t), s.radius * std::cos(t)};
                               }});
            } else if constexpr (std::is_same_v<T, RectangleBoundary>) {
                const std::vector<std::vector<double>> corners = {{s.x0, s.y0},
                                                                  {s.x0 + s.width, s.y0},
                                                                  {s.x0 + s.width, s.y0 + s.height},
                                                                  {s.x0, s.y0 + s.height},
                                                                  {s.x0, s.y0}};
                for (std::size_t k = 0; k + 1 < corners.size(); ++k) {
                    const auto a = corners[k];
                    const auto b = corners[k + 1];
                    out.push_back({0.0, 1.0, [a, b](double t, std::vector<double>& x, std::vector<double>& v) {
                                       x = {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
                                       v = {b[0] - a[0], b[1] - a[1]};
                                   }});
                }
            } else if constexpr (std::is_same_v<T, Polyline>) {
                for (std::size_t k = 0; k + 1 < s.points.size(); ++k) {
                    const auto a = s.points[k];
                    const auto b = s.points[k + 1];
                    out.push_back({0.0, 1.0, [a, b](double t, std::vector<double>& x, std::vector<double>& v) {
                                       x.resize(a.size());
                                       v.resize(a.size());
                                       for (std::size_t i = 0; i < a.size(); ++i) {
                                           x[i] = a[i] + t * (b[i] - a[i]);
                                           v[i] = b[i] - a[i];
                                       }
                                   }});
                }
            } else {
                const std::vector<std::string> slot{s.parameter};
                std::vector<CompiledExpr> pos, vel;
                for (const Expr& c : s.components) {
                    pos.emplace_back(c, slot);
                    vel.emplace_back(differentiate(c, s.parameter), slot);
                }
                out.push_back({s.t0, s.t1, [pos, vel](double t, std::vector<double>& x, std::vector<double>& v) {
                                   const double in[1] = {t};
                                   x.resize(pos.size());
                                   v.resize(vel.size());
                                   for (std::size_t i = 0; i < pos.size(); ++i) {
                                       x[i] = pos[i](in);
                                       v[i] = vel[i](in);
                                   }
                               }});
            }
        },
        path.shape);
    return out;
}

std::vector<CompiledExpr> compile_one_form(const DForm& a)
{
    std::vector<CompiledExpr> out;
    for (int i = 0; i < a.dimension(); ++i) out.emplace_back(a.coefficient({i}), a.coords());
    return out;
}

double round_off_floor(double magnitude)
{
    return 64.0 * DBL_EPSILON * (1.0 + magnitude);
}

} // namespace

QuadratureResult line_integral(const DForm& a, const Path& path, int panels)
{
    if (a.degree() != 1) throw PreconditionError("line_integral needs a 1-form");
    if (panels < 1) throw PreconditionError("line_integral needs at least one panel");
    path.validate();
    if (path.dimension() != a.dimension()) {
        throw PreconditionError("path dimension does not match the form's coordinates");
    }
    const std::vector<CompiledExpr> coeffs = compile_one_form(a);
    const std::vector<Piece> pieces = pieces_of(path);

    std::vector<double> x, v;
    auto integrand = [&](const Piece& piece, double t) {
        piece.eval(t, x, v);
        double s = 0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i](x) * v[i];
        return s;
    };
    auto integrate = [&](int n, bool absolute) {
        double total = 0;
        for (const Piece& piece : pieces) {
            total += composite_gauss(
                [&](double t) {
                    const double g = integrand(piece, t);
                    return absolute ? std::abs(g) : g;
                },
                piece.t0, piece.t1, n);
        }
        return total;
    };

    const double coarse = integrate(panels, false);
    const double fine = integrate(2 * panels, false);
    const double magnitude = integrate(panels, true);
    const double sign = path.counterclockwise ? 1.0 : -1.0;
    return {sign * fine, std::max(std::abs(fine - coarse), round_off_floor(magnitude)), panels};
}

namespace {

double integrate_rectangle(const CompiledExpr& f, double x0, double x1, double y0, double y1, int panels,
                           bool absolute)
{
    double in[2];
    return composite_gauss(
        [&](double x) {
            return composite_gauss(
                [&](double y) {
                    in[0] = x;
                    in[1] = y;
                    const double v = f(in);
                    return absolute ? std::abs(v) : v;
                },
                y0, y1, panels);
        },
        x0, x1, panels);
}

double integrate_box(const CompiledExpr& f, const BoxRegion& b, int panels, bool absolute)
{
    double in[3];
    return composite_gauss(
        [&](double x) {
            return composite_gauss(
                [&](double y) {
                    return composite_gauss(
                        [&](double z) {
                            in[0] = x;
                            in[1] = y;
                            in[2] = z;
                            const double v = f(in);
                            return absolute ? std::abs(v) : v;
                        },
                        b.z0, b.z0 + b.wz, panels);
                },
                b.y0, b.y0 + b.wy, panels);
        },
        b.x0, b.x0 + b.wx, panels);
}

// Coefficient on a face, with slots (free axis 1, free axis 2, fixed axis).
CompiledExpr face_coefficient(const DForm& a, const IndexTuple& idx, int fixed_axis)
{
    const auto& coords = a.coords();
    std::vector<std::string> slots;
    for (int i = 0; i < 3; ++i) {
        if (i != fixed_axis) slots.push_back(coords[static_cast<std::size_t>(i)]);
    }
    slots.push_back(coords[static_cast<std::size_t>(fixed_axis)]);
    return CompiledExpr(a.coefficient(idx), slots);
}

} // namespace

QuadratureResult area_integral(const DForm& a, const Region& region, int panels)
{
    if (panels < 1) throw PreconditionError("area_integral needs at least one panel");
    region.validate();
    if (a.dimension() != region.dimension() || a.degree() != region.dimension()) {
        throw PreconditionError("area_integral needs a top-degree form matching the region dimension");
    }
    if (const auto* r = std::get_if<RectangleRegion>(&region.shape)) {
        const CompiledExpr f(a.coefficient({0, 1}), a.coords());
        const double x1 = r->x0 + r->width, y1 = r->y0 + r->height;
        const double coarse = integrate_rectangle(f, r->x0, x1, r->y0, y1, panels, false);
        const double fine = integrate_rectangle(f, r->x0, x1, r->y0, y1, 2 * panels, false);
        const double magnitude = integrate_rectangle(f, r->x0, x1, r->y0, y1, panels, true);
        return {fine, std::max(std::abs(fine - coarse), round_off_floor(magnitude)), panels};
    }
    const auto& b = std::get<BoxRegion>(region.shape);
    const CompiledExpr f(a.coefficient({0, 1, 2}), a.coords());
    const double coarse = integrate_box(f, b, panels, false);
    const double fine = integrate_box(f, b, 2 * panels, false);
    const double magnitude = integrate_box(f, b, panels, true);
    return {fine, std::max(std::abs(fine - coarse), round_off_floor(magnitude)), panels};
}

QuadratureResult boundary_integral(const DForm& a, const BoxRegion& b, int panels)
{
    if (a.degree() != 2 || a.dimension() != 3) throw PreconditionError("boundary_integral needs a 2-form in 3-D");
    Region{b}.validate();

    // 2-form <-> flux of (a_yz, -a_xz, a_xy) through the outward boundary.
    struct Face {
        IndexTuple idx;
        int axis;
        double sign;
    };
    const std::array<Face, 3> faces{{{{1, 2}, 0, 1.0}, {{0, 2}, 1, -1.0}, {{0, 1}, 2, 1.0}}};
    const std::array<double, 3> lo{b.x0, b.y0, b.z0};
    const std::array<double, 3> width{b.wx, b.wy, b.wz};

    auto flux = [&](int n, bool absolute) {
        double total = 0;
        for (const Face& face : faces) {
            const CompiledExpr f = face_coefficient(a, face.idx, face.axis);
            int u_axis = -1, v_axis = -1;
            for (int i = 0; i < 3; ++i) {
                if (i == face.axis) continue;
                (u_axis < 0 ? u_axis : v_axis) = i;
            }
            for (double side : {1.0, -1.0}) {
                const double fixed = side > 0 ? lo[static_cast<std::size_t>(face.axis)] + width[static_cast<std::size_t>(face.axis)]
                                              : lo[static_cast<std::size_t>(face.axis)];
                double in[3];
                const double value = composite_gauss(
                    [&](double s) {
                        return composite_gauss(
                            [&](double t) {
                                in[0] = s;
                                in[1] = t;
                                in[2] = fixed;
                                const double g = f(in);
                                return absolute ? std::abs(g) : g;
                            },
                            lo[static_cast<std::size_t>(v_axis)],
                            lo[static_cast<std::size_t>(v_axis)] + width[static_cast<std::size_t>(v_axis)], n);
                    },
                    lo[static_cast<std::size_t>(u_axis)],
                    lo[static_cast<std::size_t>(u_axis)] + width[static_cast<std::size_t>(u_axis)], n);
                total += absolute ? value : side * face.sign * value;
            }
        }
        return total;
    };

    const double coarse = flux(panels, false);
    const double fine = flux(2 * panels, false);
    const double magnitude = flux(panels, true);
    return {fine, std::max(std::abs(fine - coarse), round_off_floor(magnitude)), panels};
}

StokesReport stokes_check(const DForm& a, const Region& region, double tol, int panels)
{
    StokesReport r;
    const DForm da = exterior_derivative(a);
    if (a.degree() == 1 && a.dimension() == 2) {
        const auto* rect = std::get_if<RectangleRegion>(&region.shape);
        if (!rect) throw PreconditionError("stokes_check: a 1-form needs a rectangle region");
        r.interior = area_integral(da, region, panels);
        r.boundary = line_integral(a, Path{RectangleBoundary{rect->x0, rect->y0, rect->width, rect->height}}, panels);
    } else if (a.degree() == 2 && a.dimension() == 3) {
        const auto* box = std::get_if<BoxRegion>(&region.shape);
        if (!box) throw PreconditionError("stokes_check: a 2-form needs a box region");
        r.interior = area_integral(da, region, panels);
        r.boundary = boundary_integral(a, *box, panels);
    } else {
        throw PreconditionError("stokes_check supports 1-forms in 2-D and 2-forms in 3-D");
    }
    r.discrepancy = std::abs(r.interior.value - r.boundary.value);
    r.passed = r.discrepancy <= tol;
    return r;
}

GradientCheck fd_gradient_check(const Expr& e, const Point& pt, double h)
{
    if (!(h > 0)) throw PreconditionError("fd_gradient_check: step must be positive");
    GradientCheck out;
    for (const auto& [name, value] : pt) {
        Point plus = pt, minus = pt;
        plus[name] = value + h;
        minus[name] = value - h;
        GradientCheckEntry entry;
        entry.coordinate = name;
        entry.symbolic = evaluate(differentiate(e, name), pt);
        entry.finite_difference = (evaluate(e, plus) - evaluate(e, minus)) / (2 * h);
        entry.relative_error =
            std::abs(entry.finite_difference - entry.symbolic) / std::max(1.0, std::abs(entry.symbolic));
        out.max_relative_error = std::max(out.max_relative_error, entry.relative_error);
        out.entries.push_back(std::move(entry));
    }
    return out;
}

Trajectory integrate_characteristics(const CharacteristicSystem& sys, const std::vector<double>& start, double T,
                                     double step)
{
    if (!(step > 0)) throw PreconditionError("integrate_characteristics: step must be positive");
    if (!(T >= 0)) throw PreconditionError("integrate_characteristics: duration must be nonnegative");
    const std::size_t n = sys.coords.size();
    if (start.size() != 2 * n + 1) throw PreconditionError("integrate_characteristics: state must have 2n+1 entries");

    std::vector<std::string> slots = sys.coords;
    slots.insert(slots.end(), sys.momenta.begin(), sys.momenta.end());
    slots.push_back(sys.unknown);

    std::vector<CompiledExpr> rhs;
    for (const Expr& e : sys.dx_rhs) rhs.emplace_back(e, slots);
    for (const Expr& e : sys.dp_rhs) rhs.emplace_back(e, slots);
    rhs.emplace_back(sys.du_rhs, slots);

    const std::size_t dim = start.size();
    auto f = [&](const std::vector<double>& y, std::vector<double>& out) {
        out.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) out[i] = rhs[i](y);
    };

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(start);

    const long steps = T == 0 ? 0 : static_cast<long>(std::ceil(T / step - 1e-9));
    std::vector<double> y = start, k1, k2, k3, k4, tmp(dim);
    double t = 0;
    try {
        for (long s = 0; s < steps; ++s) {
            const double t_next = (s + 1 == steps) ? T : static_cast<double>(s + 1) * step;
            const double h = t_next - t;
            f(y, k1);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
            f(tmp, k2);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
            f(tmp, k3);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
            f(tmp, k4);
            for (std::size_t i = 0; i < dim; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            t = t_next;
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
    } catch (const DomainError& e) {
        traj.truncated = true;
        traj.error = e.what();
    }
    return traj;
}

} // namespace forge
