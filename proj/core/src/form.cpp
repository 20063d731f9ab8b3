#include <forge/error.hpp>
#include <forge/form.hpp>

#include <algorithm>
#include <set>
#include <utility>

namespace forge {

int sort_with_sign(IndexTuple& indices)
{
    int sign = 1;
    // Insertion sort; tuples are short.
    for (std::size_t i = 1; i < indices.size(); ++i) {
        for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
            if (indices[j - 1] == indices[j]) return 0;
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < indices.size(); ++i) {
        if (indices[i - 1] == indices[i]) return 0;
    }
    return sign;
}

DForm::DForm(std::vector<std::string> coords, int degree)
    : coords_(std::move(coords))
    , degree_(degree)
{
    if (degree_ < 0) throw PreconditionError("form degree must be nonnegative");
}

DForm DForm::scalar(std::vector<std::string> coords, const Expr& value)
{
    DForm f(std::move(coords), 0);
    f.add_term({}, value);
    return f;
}

DForm DForm::basis(std::vector<std::string> coords, int index)
{
    DForm f(std::move(coords), 1);
    f.add_term({index}, Expr(1));
    return f;
}

Expr DForm::coefficient(const IndexTuple& indices) const
{
    auto it = terms_.find(indices);
    return it == terms_.end() ? Expr(0) : it->second;
}

void DForm::add_term(IndexTuple indices, const Expr& coeff)
{
    if (static_cast<int>(indices.size()) != degree_) {
        throw PreconditionError("basis tuple length does not match form degree");
    }
    for (int i : indices) {
        if (i < 0 || i >= dimension()) throw PreconditionError("basis index out of range");
    }
    const int sign = sort_with_sign(indices);
    if (sign == 0) return;
    auto it = terms_.find(indices);
    Expr value = it == terms_.end() ? Expr(sign) * coeff : it->second + Expr(sign) * coeff;
    value = simplify(value);
    if (value.is_constant(0)) {
        if (it != terms_.end()) terms_.erase(it);
        return;
    }
    if (it == terms_.end()) {
        terms_.emplace(std::move(indices), std::move(value));
    } else {
        it->second = std::move(value);
    }
}

void require_same_frame(const DForm& a, const DForm& b, const char* operation)
{
    if (a.coords() != b.coords()) {
        throw PreconditionError(std::string(operation) + ": forms live in different coordinate systems");
    }
}

DForm& DForm::operator+=(const DForm& other)
{
    require_same_frame(*this, other, "add");
    if (degree_ != other.degree_) throw PreconditionError("add: forms of different degree");
    for (const auto& [idx, c] : other.terms_) add_term(idx, c);
    return *this;
}

DForm operator-(const DForm& a)
{
    DForm out(a.coords_, a.degree_);
    for (const auto& [idx, c] : a.terms_) out.terms_.emplace(idx, simplify(-c));
    return out;
}

DForm operator-(const DForm& a, const DForm& b)
{
    return a + (-b);
}

DForm operator*(const Expr& s, const DForm& a)
{
    DForm out(a.coords_, a.degree_);
    for (const auto& [idx, c] : a.terms_) out.add_term(idx, s * c);
    return out;
}

bool operator==(const DForm& a, const DForm& b)
{
    if (a.coords() != b.coords() || a.degree() != b.degree()) return false;
    return (a - b).is_zero();
}

std::string basis_name(const std::vector<std::string>& coords, const IndexTuple& indices)
{
    std::string out;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (k) out += '^';
        out += 'd';
        out += coords[static_cast<std::size_t>(indices[k])];
    }
    return out;
}

std::string to_string(const DForm& form)
{
    if (form.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [idx, c] : form.terms()) {
        std::string term;
        bool negative = false;
        if (idx.empty()) {
            term = to_string(c);
        } else if (c.is_constant(1)) {
            term = basis_name(form.coords(), idx);
        } else if (c.is_constant(-1)) {
            term = basis_name(form.coords(), idx);
            negative = true;
        } else {
            std::string s = to_string(c);
            const bool wrap = c.kind() == Expr::Kind::Sum
                              || (c.kind() == Expr::Kind::Quotient && c.operands()[0].kind() == Expr::Kind::Sum);
            if (wrap) {
                s = "(" + s + ")";
            } else if (s.front() == '-') {
                negative = true;
                s.erase(0, 1);
            }
            term = s + "*" + basis_name(form.coords(), idx);
        }
        if (!idx.empty() && term.front() == '-' && !negative) {
            negative = true;
            term.erase(0, 1);
        }
        if (first) {
            out += negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
        first = false;
    }
    return out;
}

DForm wedge(const DForm& a, const DForm& b)
{
    require_same_frame(a, b, "wedge");
    DForm out(a.coords(), a.degree() + b.degree());
    if (out.degree() > out.dimension()) return out;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            IndexTuple merged = ia;
            merged.insert(merged.end(), ib.begin(), ib.end());
            IndexTuple probe = merged;
            if (sort_with_sign(probe) == 0) continue;
            out.add_term(std::move(merged), ca * cb);
        }
    }
    return out;
}

DForm exterior_derivative(const DForm& a)
{
    DForm out(a.coords(), a.degree() + 1);
    if (out.degree() > out.dimension()) return out;
    for (const auto& [idx, c] : a.terms()) {
        for (int j = 0; j < a.dimension(); ++j) {
            if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
            Expr dc = differentiate(c, a.coords()[static_cast<std::size_t>(j)]);
            if (dc.is_constant(0)) continue;
            IndexTuple t;
            t.reserve(idx.size() + 1);
            t.push_back(j);
            t.insert(t.end(), idx.begin(), idx.end());
            out.add_term(std::move(t), dc);
        }
    }
    return out;
}

std::map<IndexTuple, Expr> commutator_components(const DForm& a)
{
    return exterior_derivative(a).terms();
}

std::string_view to_string(Certainty c)
{
    return c == Certainty::Exact ? "exact" : "probabilistic";
}

namespace {

ClosureVerdict closure_of(const DForm& a, const ZeroTestOptions& options)
{
    const DForm da = exterior_derivative(a);
    ClosureVerdict v{false, Certainty::Exact, DForm(a.coords(), a.degree() + 1), false, std::nullopt, {}};
    for (const auto& [idx, c] : da.terms()) {
        const ZeroVerdict z = is_zero(c, options);
        if (!is_exact_verdict(z)) v.certainty = Certainty::Probabilistic;
        if (!is_zero_verdict(z)) v.commutator.add_term(idx, c);
    }
    v.closed = v.commutator.is_zero();

    std::set<std::string> seen;
    for (const auto& [idx, c] : a.terms()) {
        if (c.kind() != Expr::Kind::Quotient) continue;
        const Expr& den = c.operands()[1];
        if (seen.insert(to_string(den)).second) v.singular_denominators.push_back(den);
    }
    return v;
}

DForm radial_homotopy(const DForm& a, const std::vector<PolynomialTerms>& coefficients)
{
    const int p = a.degree();
    DForm phi(a.coords(), p - 1);
    std::size_t t = 0;
    for (const auto& [idx, c] : a.terms()) {
        PolynomialTerms integrated;
        for (const auto& [m, coeff] : coefficients[t]) {
            int total = 0;
            for (int e : m) total += e;
            integrated[m] = coeff / Rational(total + p);
        }
        ++t;
        const Expr g = from_polynomial(integrated, a.coords());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            IndexTuple rest;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                if (j != k) rest.push_back(idx[j]);
            }
            const Expr x = Expr::symbol(a.coords()[static_cast<std::size_t>(idx[k])]);
            phi.add_term(std::move(rest), Expr(k % 2 == 0 ? 1 : -1) * g * x);
        }
    }
    return phi;
}

std::optional<DForm> potential_of_closed(const DForm& a, const ClosureVerdict& v)
{
    if (!v.closed || v.certainty != Certainty::Exact || a.degree() == 0) return std::nullopt;
    std::vector<PolynomialTerms> coefficients;
    for (const auto& [idx, c] : a.terms()) {
        auto poly = as_polynomial(c, a.coords());
        if (!poly) return std::nullopt;
        coefficients.push_back(std::move(*poly));
    }
    DForm phi = radial_homotopy(a, coefficients);
    if (!(exterior_derivative(phi) == a)) return std::nullopt;
    return phi;
}

} // namespace

ClosureVerdict is_closed(const DForm& a, const ZeroTestOptions& options)
{
    ClosureVerdict v = closure_of(a, options);
    v.potential = potential_of_closed(a, v);
    v.exact = v.potential.has_value();
    return v;
}

std::optional<DForm> find_potential(const DForm& a, const ZeroTestOptions& options)
{
    const ClosureVerdict v = closure_of(a, options);
    if (!v.closed) {
        throw PreconditionError("find_potential: form is not closed; obstruction " + to_string(v.commutator));
    }
    return potential_of_closed(a, v);
}

DForm dual_form(const DForm& a)
{
    const int n = a.dimension();
    DForm out(a.coords(), n - a.degree());
    for (const auto& [idx, c] : a.terms()) {
        IndexTuple complement;
        for (int j = 0; j < n; ++j) {
            if (std::find(idx.begin(), idx.end(), j) == idx.end()) complement.push_back(j);
        }
        IndexTuple perm = idx;
        perm.insert(perm.end(), complement.begin(), complement.end());
        const int sign = sort_with_sign(perm);
        out.add_term(std::move(complement), Expr(sign) * c);
    }
    return out;
}

DForm pullback(const DForm& a, const std::vector<std::string>& params, const std::vector<Expr>& map)
{
    if (static_cast<int>(map.size()) != a.dimension()) {
        throw PreconditionError("pullback: map must give one expression per coordinate");
    }
    std::map<std::string, Expr, std::less<>> replacements;
    for (std::size_t i = 0; i < map.size(); ++i) replacements.emplace(a.coords()[i], map[i]);

    std::vector<DForm> differentials;
    for (const Expr& component : map) {
        DForm d(params, 1);
        for (std::size_t j = 0; j < params.size(); ++j) {
            d.add_term({static_cast<int>(j)}, differentiate(component, params[j]));
        }
        differentials.push_back(std::move(d));
    }

    DForm out(params, a.degree());
    if (a.degree() > static_cast<int>(params.size())) return out;
    for (const auto& [idx, c] : a.terms()) {
        DForm term = DForm::scalar(params, substitute(c, replacements));
        for (int i : idx) term = wedge(term, differentials[static_cast<std::size_t>(i)]);
        out += term;
    }
    return out;
}

ConjugacyReport conjugacy_report(const DForm& a, const ZeroTestOptions& options)
{
    ConjugacyReport r{is_closed(a, options), dual_form(a), {}, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    r.dual_verdict = is_closed(r.dual, options);
    if (a.dimension() == 2 && a.degree() == 1) {
        r.cauchy_riemann_pair = r.form.closed && r.dual_verdict.closed;
    }
    if (a.degree() == 1 && r.form.potential) {
        const Expr f = r.form.potential->coefficient({});
        Expr lap(0);
        for (const auto& x : a.coords()) lap += differentiate(differentiate(f, x), x);
        lap = simplify(lap);
        r.potential = f;
        r.laplacian = lap;
        r.harmonic = r.dual_verdict.closed;
    }
    return r;
}

} // namespace forge
