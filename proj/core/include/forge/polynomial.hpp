#pragma once

#include <forge/expr.hpp>

#include <cstddef>
#include <map>
#include <vector>

namespace forge {

using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in descending lexicographic order of exponent vectors,
/// variable 0 being the most significant.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, std::greater<>>;

    explicit Polynomial(std::size_t variables = 0);
    static Polynomial constant(std::size_t variables, const Rational& c);
    static Polynomial variable(std::size_t variables, std::size_t index);

    std::size_t variables() const { return variables_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term value; only meaningful when is_constant().
    Rational constant_value() const;

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    int degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    /// Coefficient of var^k, as a polynomial not involving var.
    Polynomial coefficient_in(std::size_t var, int k) const;

    void add_term(const Monomial& m, const Rational& c);

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    Polynomial scaled(const Rational& c) const;
    Polynomial pow(int n) const;
    /// Multiplies by var^k.
    Polynomial shifted(std::size_t var, int k) const;
    /// Divides every coefficient by the leading coefficient.
    Polynomial monic() const;

private:
    std::size_t variables_;
    Terms terms_;
};

/// Exact quotient a / b. Throws std::logic_error if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b viewed as univariate polynomials in var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

/// Monic greatest common divisor (primitive pseudo-remainder sequences,
/// recursive on variables).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Monic gcd of the coefficients of p viewed as a polynomial in var.
Polynomial content_in(const Polynomial& p, std::size_t var);

} // namespace forge
