#include <forge/polynomial.hpp>

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

namespace forge {

Polynomial::Polynomial(std::size_t variables)
    : variables_(variables)
{
}

Polynomial Polynomial::constant(std::size_t variables, const Rational& c)
{
    Polynomial p(variables);
    p.add_term(Monomial(variables, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index)
{
    Polynomial p(variables);
    Monomial m(variables, 0);
    m[index] = 1;
    p.add_term(m, 1);
    return p;
}

bool Polynomial::is_constant() const
{
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

Rational Polynomial::constant_value() const
{
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Polynomial::degree_in(std::size_t var) const
{
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Polynomial Polynomial::coefficient_in(std::size_t var, int k) const
{
    Polynomial out(variables_);
    for (const auto& [m, c] : terms_) {
        if (m[var] != k) continue;
        Monomial reduced = m;
        reduced[var] = 0;
        out.terms_.emplace(std::move(reduced), c);
    }
    return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    assert(m.size() == variables_);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Polynomial operator-(const Polynomial& a)
{
    Polynomial out(a.variables_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial out(a.variables_);
    Monomial m(a.variables_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const
{
    Polynomial out(variables_);
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

Polynomial Polynomial::pow(int n) const
{
    Polynomial result = constant(variables_, 1);
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

Polynomial Polynomial::shifted(std::size_t var, int k) const
{
    Polynomial out(variables_);
    for (const auto& [m, c] : terms_) {
        Monomial s = m;
        s[var] += k;
        out.terms_.emplace(std::move(s), c);
    }
    return out;
}

Polynomial Polynomial::monic() const
{
    if (terms_.empty()) return *this;
    return scaled(1 / leading_coefficient());
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) throw std::logic_error("polynomial division by zero");
    if (b.is_constant()) return a.scaled(1 / b.constant_value());

    const std::size_t n = a.variables();
    Polynomial quotient(n);
    Polynomial rest = a;
    const Monomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coefficient();
    Monomial q(n);
    while (!rest.is_zero()) {
        const Monomial& lr = rest.leading_monomial();
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = lr[i] - lb[i];
            if (q[i] < 0) throw std::logic_error("polynomial division is not exact");
        }
        Polynomial t(n);
        t.add_term(q, rest.leading_coefficient() / cb);
        quotient = quotient + t;
        rest = rest - t * b;
    }
    return quotient;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var)
{
    const int db = b.degree_in(var);
    const Polynomial lcb = b.coefficient_in(var, db);
    Polynomial r = a;
    while (!r.is_zero()) {
        const int dr = r.degree_in(var);
        if (dr < db) break;
        const Polynomial lcr = r.coefficient_in(var, dr);
        r = lcb * r - (lcr * b).shifted(var, dr - db);
    }
    return r;
}

namespace {

std::size_t lowest_common_variable(const Polynomial& a, const Polynomial& b)
{
    for (std::size_t v = 0; v < a.variables(); ++v) {
        if (a.depends_on(v) || b.depends_on(v)) return v;
    }
    return a.variables();
}

// Scale to integer coefficients with unit content so PRS coefficients stay small.
Polynomial integer_primitive(const Polynomial& p)
{
    using boost::multiprecision::cpp_int;
    cpp_int den = 1;
    cpp_int num = 0;
    for (const auto& [m, c] : p.terms()) {
        const cpp_int d = boost::multiprecision::denominator(c);
        den = den / boost::multiprecision::gcd(den, d) * d;
    }
    for (const auto& [m, c] : p.terms()) {
        const cpp_int n = boost::multiprecision::abs(boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c)));
        num = num == 0 ? n : boost::multiprecision::gcd(num, n);
    }
    if (num == 0) return p;
    Rational scale(den, num);
    if (p.leading_coefficient() < 0) scale = -scale;
    return p.scaled(scale);
}

Polynomial primitive_part(const Polynomial& p, std::size_t var)
{
    return divide_exact(p, content_in(p, var));
}

} // namespace

Polynomial content_in(const Polynomial& p, std::size_t var)
{
    if (p.is_zero()) return p;
    Polynomial g(p.variables());
    for (int k = p.degree_in(var); k >= 0; --k) {
        Polynomial c = p.coefficient_in(var, k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.monic();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    const std::size_t n = a.variables();
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(n, 1);

    const std::size_t v = lowest_common_variable(a, b);
    if (!a.depends_on(v)) return gcd(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd(content_in(a, v), b);

    const Polynomial ca = content_in(a, v);
    const Polynomial cb = content_in(b, v);
    const Polynomial g = gcd(ca, cb);

    Polynomial pa = integer_primitive(divide_exact(a, ca));
    Polynomial pb = integer_primitive(divide_exact(b, cb));
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

    while (!pb.is_zero()) {
        Polynomial r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            pa = Polynomial::constant(n, 1);
            break;
        }
        pb = integer_primitive(primitive_part(r, v));
    }
    return (g * primitive_part(pa, v)).monic();
}

} // namespace forge
