#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace forge {

/// Exact rational constant used inside expressions.
using Rational = boost::multiprecision::cpp_rational;

enum class Function { Sin, Cos, Exp, Ln };

std::string_view function_name(Function f);

/// Immutable symbolic scalar expression.
///
/// Nodes are shared; copying an Expr is a reference-count bump. Trees built
/// with the arithmetic operators are only lightly folded (identities for 0
/// and 1, constant arithmetic). `simplify` produces the canonical form.
class Expr {
public:
    enum class Kind { Constant, Symbol, Sum, Product, Power, Quotient, Apply };

    Expr();
    Expr(int value);
    Expr(Rational value);

    static Expr symbol(std::string name);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, int exponent);
    static Expr quotient(Expr numerator, Expr denominator);
    static Expr apply(Function f, Expr argument);

    Kind kind() const;
    bool is_constant() const { return kind() == Kind::Constant; }
    bool is_constant(const Rational& value) const;

    /// Constant value; only valid for Kind::Constant.
    const Rational& value() const;
    /// Symbol name; only valid for Kind::Symbol.
    const std::string& name() const;
    /// Children of Sum / Product; {base} for Power; {num, den} for Quotient;
    /// {argument} for Apply.
    std::span<const Expr> operands() const;
    int exponent() const;
    Function function() const;

    /// Structural equality. Canonical forms compare equal iff they denote
    /// the same rational function of the same kernels.
    friend bool operator==(const Expr& a, const Expr& b);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);

    Expr& operator+=(const Expr& other) { return *this = *this + other; }
    Expr& operator-=(const Expr& other) { return *this = *this - other; }
    Expr& operator*=(const Expr& other) { return *this = *this * other; }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);

    std::shared_ptr<const Node> node_;
};

Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr pow(const Expr& base, int exponent);

/// Canonical text rendering; re-parseable by the DSL expression grammar.
std::string to_string(const Expr& e);
std::string to_string(const Rational& r);

/// Names of all symbols occurring in `e`.
std::set<std::string> free_symbols(const Expr& e);

/// True if symbol `name` occurs in `e`.
bool depends_on(const Expr& e, std::string_view name);

/// Replaces symbols by expressions (simultaneously). The result is not
/// simplified.
Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements);

/// Canonical form: a reduced quotient of expanded polynomials over the
/// kernels of `e` (symbols and function applications with canonical
/// arguments), monomials in lexicographic order on kernel names.
Expr simplify(const Expr& e);

/// Partial derivative, simplified.
Expr differentiate(const Expr& e, std::string_view symbol);

/// True if `e` (after simplification) contains no function applications.
bool is_rational_function(const Expr& e);

enum class ZeroVerdict { ExactlyZero, ExactlyNonzero, ProbablyZero, ProbablyNonzero };

std::string_view to_string(ZeroVerdict v);

inline bool is_zero_verdict(ZeroVerdict v)
{
    return v == ZeroVerdict::ExactlyZero || v == ZeroVerdict::ProbablyZero;
}

inline bool is_exact_verdict(ZeroVerdict v)
{
    return v == ZeroVerdict::ExactlyZero || v == ZeroVerdict::ExactlyNonzero;
}

struct ZeroTestOptions {
    std::uint64_t seed = 42;
    int samples = 32;
    int max_attempts = 128;
    double tolerance = 1e-9;
    double box = 2.0; ///< sample coordinates uniformly in [-box, box]
};

/// Zero test. Exact on rational functions through the canonical form;
/// probabilistic (random point sampling) once transcendental kernels remain.
ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options = {});

using Point = std::map<std::string, double, std::less<>>;

/// IEEE double evaluation. Throws DomainError on division by zero, ln of a
/// nonpositive argument, or a non-finite result; throws Error when a symbol
/// has no value in `pt`.
double evaluate(const Expr& e, const Point& pt);

/// Polynomial view over a fixed coordinate list: exponent vector -> coefficient.
using PolynomialTerms = std::map<std::vector<int>, Rational, std::greater<>>;

/// Returns the expanded polynomial of `e` in `coords` if `e` simplifies to a
/// polynomial with rational coefficients in those symbols only.
std::optional<PolynomialTerms> as_polynomial(const Expr& e, std::span<const std::string> coords);

Expr from_polynomial(const PolynomialTerms& terms, std::span<const std::string> coords);

} // namespace forge
