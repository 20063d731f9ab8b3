#include <forge/error.hpp>
#include <forge/expr.hpp>
#include <forge/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace forge {

namespace {

// A kernel is an indivisible variable of the rational-function normal form:
// a symbol, or a function application whose argument is already canonical.
struct KernelKey {
    int rank = 0; // 0 for symbols, 1 for function applications
    std::string text;

    friend auto operator<=>(const KernelKey&, const KernelKey&) = default;
};

KernelKey key_of(const Expr& kernel)
{
    if (kernel.kind() == Expr::Kind::Symbol) return {0, kernel.name()};
    return {1, to_string(kernel)};
}

struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

class Canonicalizer {
public:
    /// Rewrites function arguments into canonical form, folds special values
    /// and records every kernel encountered.
    Expr prepare(const Expr& e)
    {
        switch (e.kind()) {
        case Expr::Kind::Constant: return e;
        case Expr::Kind::Symbol: register_kernel(e); return e;
        case Expr::Kind::Apply: {
            Expr arg = simplify(e.operands()[0]);
            if (auto folded = fold(e.function(), arg)) return prepare(*folded);
            Expr kernel = Expr::apply(e.function(), arg);
            register_kernel(kernel);
            return kernel;
        }
        default: {
            std::vector<Expr> children;
            children.reserve(e.operands().size());
            for (const Expr& c : e.operands()) children.push_back(prepare(c));
            switch (e.kind()) {
            case Expr::Kind::Sum: return Expr::sum(std::move(children));
            case Expr::Kind::Product: return Expr::product(std::move(children));
            case Expr::Kind::Power: return Expr::power(children[0], e.exponent());
            case Expr::Kind::Quotient: return Expr::quotient(children[0], children[1]);
            default: return e;
            }
        }
        }
    }

    void assign_indices()
    {
        std::size_t i = 0;
        for (auto& [key, entry] : kernels_) entry.index = i++;
    }

    std::size_t variables() const { return kernels_.size(); }

    std::vector<Expr> kernels() const
    {
        std::vector<Expr> out;
        out.reserve(kernels_.size());
        for (const auto& [key, entry] : kernels_) out.push_back(entry.kernel);
        return out;
    }

    RationalFunction convert(const Expr& e) const
    {
        const std::size_t n = variables();
        switch (e.kind()) {
        case Expr::Kind::Constant:
            return {Polynomial::constant(n, e.value()), Polynomial::constant(n, 1)};
        case Expr::Kind::Symbol:
        case Expr::Kind::Apply:
            return {Polynomial::variable(n, kernels_.at(key_of(e)).index), Polynomial::constant(n, 1)};
        case Expr::Kind::Sum: {
            RationalFunction acc{Polynomial(n), Polynomial::constant(n, 1)};
            for (const Expr& t : e.operands()) acc = add(acc, convert(t));
            return acc;
        }
        case Expr::Kind::Product: {
            RationalFunction acc{Polynomial::constant(n, 1), Polynomial::constant(n, 1)};
            for (const Expr& f : e.operands()) {
                acc = multiply(acc, convert(f));
                if (acc.num.is_zero()) break;
            }
            return acc;
        }
        case Expr::Kind::Power: {
            RationalFunction base = convert(e.operands()[0]);
            int k = e.exponent();
            if (k < 0) {
                base = invert(base, e);
                k = -k;
            }
            return {base.num.pow(k), base.den.pow(k)};
        }
        case Expr::Kind::Quotient: {
            RationalFunction num = convert(e.operands()[0]);
            RationalFunction den = convert(e.operands()[1]);
            return multiply(num, invert(den, e));
        }
        }
        throw Error("simplify: unsupported node");
    }

    static RationalFunction normalize(Polynomial num, Polynomial den)
    {
        const std::size_t n = num.variables();
        if (num.is_zero()) return {std::move(num), Polynomial::constant(n, 1)};
        if (!den.is_constant()) {
            Polynomial g = gcd(num, den);
            if (!g.is_constant()) {
                num = divide_exact(num, g);
                den = divide_exact(den, g);
            }
        }
        const Rational lc = den.leading_coefficient();
        if (lc != 1) {
            num = num.scaled(1 / lc);
            den = den.scaled(1 / lc);
        }
        return {std::move(num), std::move(den)};
    }

private:
    struct Entry {
        Expr kernel;
        std::size_t index = 0;
    };

    void register_kernel(const Expr& kernel)
    {
        kernels_.try_emplace(key_of(kernel), Entry{kernel, 0});
    }

    static std::optional<Expr> fold(Function f, const Expr& arg)
    {
        if (arg.is_constant(0)) {
            switch (f) {
            case Function::Sin: return Expr(0);
            case Function::Cos: return Expr(1);
            case Function::Exp: return Expr(1);
            case Function::Ln: return std::nullopt;
            }
        }
        if (f == Function::Ln && arg.is_constant(1)) return Expr(0);
        if (f == Function::Ln && arg.kind() == Expr::Kind::Apply && arg.function() == Function::Exp) {
            return arg.operands()[0];
        }
        return std::nullopt;
    }

    static RationalFunction add(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.num.is_zero()) return b;
        if (b.num.is_zero()) return a;
        if (a.den == b.den) return normalize(a.num + b.num, a.den);
        return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
    }

    static RationalFunction multiply(const RationalFunction& a, const RationalFunction& b)
    {
        return normalize(a.num * b.num, a.den * b.den);
    }

    static RationalFunction invert(const RationalFunction& r, const Expr& where)
    {
        if (r.num.is_zero()) throw DomainError("division by zero", to_string(where));
        return normalize(r.den, r.num);
    }

    std::map<KernelKey, Entry> kernels_;
};

Expr to_expr(const Polynomial& p, const std::vector<Expr>& kernels)
{
    std::vector<Expr> terms;
    terms.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        std::vector<Expr> factors;
        if (c != 1) factors.emplace_back(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) factors.push_back(Expr::power(kernels[i], m[i]));
        }
        if (factors.empty()) factors.emplace_back(c);
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

struct Canonical {
    std::vector<Expr> kernels;
    RationalFunction value;
};

Canonical canonicalize(const Expr& e)
{
    Canonicalizer c;
    Expr prepared = c.prepare(e);
    c.assign_indices();
    RationalFunction rf = c.convert(prepared);
    return {c.kernels(), std::move(rf)};
}

} // namespace

Expr simplify(const Expr& e)
{
    if (e.kind() == Expr::Kind::Constant || e.kind() == Expr::Kind::Symbol) return e;
    Canonical c = canonicalize(e);
    Expr num = to_expr(c.value.num, c.kernels);
    if (c.value.den.is_constant()) return num;
    return Expr::quotient(std::move(num), to_expr(c.value.den, c.kernels));
}

bool is_rational_function(const Expr& e)
{
    if (e.kind() == Expr::Kind::Apply) return false;
    for (const Expr& child : e.operands()) {
        if (!is_rational_function(child)) return false;
    }
    return true;
}

namespace {

double term_scale(const Expr& num, const Point& pt)
{
    if (num.kind() != Expr::Kind::Sum) return std::abs(evaluate(num, pt));
    double s = 0;
    for (const Expr& t : num.operands()) s += std::abs(evaluate(t, pt));
    return s;
}

} // namespace

ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options)
{
    const Expr s = simplify(e);
    if (s.is_constant()) return s.value() == 0 ? ZeroVerdict::ExactlyZero : ZeroVerdict::ExactlyNonzero;
    if (is_rational_function(s)) return ZeroVerdict::ExactlyNonzero;

    const Expr num = s.kind() == Expr::Kind::Quotient ? s.operands()[0] : s;
    const Expr den = s.kind() == Expr::Kind::Quotient ? s.operands()[1] : Expr(1);
    const std::set<std::string> symbols = free_symbols(s);

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> coordinate(-options.box, options.box);

    int accepted = 0;
    int attempts = 0;
    while (accepted < options.samples) {
        if (attempts++ >= options.max_attempts) {
            throw Error("is_zero: too many sample points outside the domain of '" + to_string(s) + "'");
        }
        Point pt;
        for (const auto& name : symbols) pt[name] = coordinate(rng);
        try {
            if (evaluate(den, pt) == 0) continue;
            const double value = evaluate(num, pt);
            const double scale = std::max(1.0, term_scale(num, pt));
            if (std::abs(value) > options.tolerance * scale) return ZeroVerdict::ProbablyNonzero;
            ++accepted;
        } catch (const DomainError&) {
            continue;
        }
    }
    return ZeroVerdict::ProbablyZero;
}

std::optional<PolynomialTerms> as_polynomial(const Expr& e, std::span<const std::string> coords)
{
    Canonical c = canonicalize(e);
    if (!c.value.den.is_constant()) return std::nullopt;

    std::vector<std::size_t> slot(c.kernels.size());
    for (std::size_t i = 0; i < c.kernels.size(); ++i) {
        const Expr& k = c.kernels[i];
        if (k.kind() != Expr::Kind::Symbol) return std::nullopt;
        auto it = std::find(coords.begin(), coords.end(), k.name());
        if (it == coords.end()) return std::nullopt;
        slot[i] = static_cast<std::size_t>(it - coords.begin());
    }

    PolynomialTerms out;
    for (const auto& [m, coeff] : c.value.num.terms()) {
        std::vector<int> exps(coords.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) exps[slot[i]] += m[i];
        out[exps] += coeff;
    }
    return out;
}

Expr from_polynomial(const PolynomialTerms& terms, std::span<const std::string> coords)
{
    Expr acc(0);
    for (const auto& [m, c] : terms) {
        Expr term(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) term *= pow(Expr::symbol(coords[i]), m[i]);
        }
        acc += term;
    }
    return simplify(acc);
}

} // namespace forge
