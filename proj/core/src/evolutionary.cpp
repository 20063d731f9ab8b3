#include <forge/error.hpp>
#include <forge/evolutionary.hpp>

namespace forge {

Connection::Connection(std::vector<std::string> coords)
    : coords_(std::move(coords))
    , n_(static_cast<int>(coords_.size()))
    , gamma_(static_cast<std::size_t>(n_ * n_ * n_), Expr(0))
{
}

void Connection::set(int s, int a, int b, const Expr& value)
{
    for (int i : {s, a, b}) {
        if (i < 0 || i >= n_) throw PreconditionError("connection index out of range");
    }
    gamma_[index(s, a, b)] = simplify(value);
}

bool Connection::is_symmetric() const
{
    for (int s = 0; s < n_; ++s) {
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (is_zero((*this)(s, a, b) - (*this)(s, b, a)) != ZeroVerdict::ExactlyZero) return false;
            }
        }
    }
    return true;
}

Table3 torsion_components(const Connection& c)
{
    const int n = c.dimension();
    Table3 t(n);
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                Expr v = simplify(c(s, a, b) - c(s, b, a));
                t(s, b, a) = simplify(-v);
                t(s, a, b) = std::move(v);
            }
        }
    }
    return t;
}

EvolutionaryCommutator evolutionary_commutator(const DForm& a, const Connection& c)
{
    if (a.degree() != 1) {
        throw PreconditionError("evolutionary commutator is defined for first-degree forms only");
    }
    if (a.coords() != c.coords()) {
        throw PreconditionError("evolutionary commutator: form and connection use different coordinates");
    }
    const int n = a.dimension();
    EvolutionaryCommutator k{Table2(n), Table2(n), Table2(n)};

    for (const auto& [idx, value] : commutator_components(a)) {
        k.coordinate_part(idx[0], idx[1]) = value;
        k.coordinate_part(idx[1], idx[0]) = simplify(-value);
    }

    // (G^s_ba - G^s_ab) a_s = -T^s_ab a_s
    const Table3 torsion = torsion_components(c);
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            Expr acc(0);
            for (int s = 0; s < n; ++s) acc -= torsion(s, x, y) * a.coefficient({s});
            acc = simplify(acc);
            k.metric_part(y, x) = simplify(-acc);
            k.metric_part(x, y) = std::move(acc);
        }
    }

    for (std::size_t i = 0; i < k.total.entries.size(); ++i) {
        k.total.entries[i] = simplify(k.coordinate_part.entries[i] + k.metric_part.entries[i]);
    }
    return k;
}

Table4 curvature_components(const Connection& c)
{
    const int n = c.dimension();
    const auto& coords = c.coords();

    // dG[r](m, v, s) = d G^m_{vs} / dx^r
    std::vector<Table3> dgamma;
    dgamma.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        Table3 d(n);
        for (int m = 0; m < n; ++m) {
            for (int v = 0; v < n; ++v) {
                for (int s = 0; s < n; ++s) {
                    d(m, v, s) = differentiate(c(m, v, s), coords[static_cast<std::size_t>(r)]);
                }
            }
        }
        dgamma.push_back(std::move(d));
    }

    Table4 out(n);
    for (int m = 0; m < n; ++m) {
        for (int v = 0; v < n; ++v) {
            for (int r = 0; r < n; ++r) {
                for (int s = r + 1; s < n; ++s) {
                    Expr acc = dgamma[static_cast<std::size_t>(r)](m, v, s) - dgamma[static_cast<std::size_t>(s)](m, v, r);
                    for (int t = 0; t < n; ++t) {
                        acc += c(m, t, r) * c(t, v, s) - c(m, t, s) * c(t, v, r);
                    }
                    acc = simplify(acc);
                    out(m, v, s, r) = simplify(-acc);
                    out(m, v, r, s) = std::move(acc);
                }
            }
        }
    }
    return out;
}

std::string_view to_string(IntegrabilityVerdict v)
{
    switch (v) {
    case IntegrabilityVerdict::Integrable: return "integrable";
    case IntegrabilityVerdict::Nonintegrable: return "nonintegrable";
    case IntegrabilityVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

// Appends a nonzero component; returns false when the zero test was only
// probabilistic.
bool collect(std::vector<Component>& out, std::vector<int> indices, const Expr& value, const ZeroTestOptions& options,
             bool& any_nonzero)
{
    if (value.is_constant(0)) return true;
    const ZeroVerdict z = is_zero(value, options);
    if (!is_zero_verdict(z)) {
        out.push_back({std::move(indices), value});
        any_nonzero = true;
    }
    return is_exact_verdict(z);
}

} // namespace

ManifoldReport manifold_integrability_report(const Connection& c, const ZeroTestOptions& options)
{
    const int n = c.dimension();
    ManifoldReport r;
    bool unused = false;
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) collect(r.bend, {s, a, b}, c(s, a, b), options, unused);
        }
    }

    bool torsion_nonzero = false;
    const Table3 t = torsion_components(c);
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                r.exact &= collect(r.torsion, {s, a, b}, t(s, a, b), options, torsion_nonzero);
            }
        }
    }

    bool curvature_nonzero = false;
    const Table4 R = curvature_components(c);
    for (int m = 0; m < n; ++m) {
        for (int v = 0; v < n; ++v) {
            for (int x = 0; x < n; ++x) {
                for (int y = x + 1; y < n; ++y) {
                    r.exact &= collect(r.curvature, {m, v, x, y}, R(m, v, x, y), options, curvature_nonzero);
                }
            }
        }
    }

    r.torsion_free = !torsion_nonzero;
    r.flat = !curvature_nonzero;
    if (torsion_nonzero || curvature_nonzero) {
        r.verdict = IntegrabilityVerdict::Nonintegrable;
    } else {
        r.verdict = r.exact ? IntegrabilityVerdict::Integrable : IntegrabilityVerdict::Undetermined;
    }
    return r;
}

std::string_view to_string(ObstructionKind k)
{
    switch (k) {
    case ObstructionKind::Closed: return "closed";
    case ObstructionKind::Coordinate: return "coordinate_obstruction";
    case ObstructionKind::Metric: return "metric_obstruction";
    case ObstructionKind::Both: return "coordinate_and_metric_obstruction";
    }
    return "?";
}

ObstructionReport closure_obstruction(const DForm& a, const Connection& c, const ZeroTestOptions& options)
{
    ObstructionReport r{ObstructionKind::Closed, false, true, evolutionary_commutator(a, c)};
    const int n = a.dimension();
    auto vanishes = [&](const Table2& t) {
        bool all_zero = true;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                const ZeroVerdict z = is_zero(t(x, y), options);
                r.exact &= is_exact_verdict(z);
                all_zero &= is_zero_verdict(z);
            }
        }
        return all_zero;
    };
    const bool coordinate_zero = vanishes(r.commutator.coordinate_part);
    const bool metric_zero = vanishes(r.commutator.metric_part);
    const bool total_zero = vanishes(r.commutator.total);

    if (total_zero) {
        r.kind = ObstructionKind::Closed;
        r.cancellation = !coordinate_zero || !metric_zero;
    } else if (coordinate_zero) {
        r.kind = ObstructionKind::Metric;
    } else if (metric_zero) {
        r.kind = ObstructionKind::Coordinate;
    } else {
        r.kind = ObstructionKind::Both;
    }
    return r;
}

} // namespace forge
