#pragma once

#include <forge/expr.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace forge {

/// Strictly increasing, zero-based basis indices (i1 < i2 < ... < ip).
using IndexTuple = std::vector<int>;

/// Skew-symmetric differential form of degree p over an ordered list of
/// coordinates: sum of coefficient * dx^{i1} ^ ... ^ dx^{ip}.
///
/// Coefficients are stored simplified and exactly-zero coefficients are
/// dropped, so a form with no terms is the zero form of its degree.
class DForm {
public:
    using Terms = std::map<IndexTuple, Expr>;

    DForm() = default;
    DForm(std::vector<std::string> coords, int degree);

    static DForm scalar(std::vector<std::string> coords, const Expr& value);
    /// dx^{index}
    static DForm basis(std::vector<std::string> coords, int index);

    int degree() const { return degree_; }
    int dimension() const { return static_cast<int>(coords_.size()); }
    const std::vector<std::string>& coords() const { return coords_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of a strictly increasing tuple (0 when absent).
    Expr coefficient(const IndexTuple& indices) const;

    /// Adds coeff * dx^{indices...}. The tuple may be unordered; it is sorted
    /// with the permutation sign absorbed into the coefficient, and dropped
    /// when an index repeats.
    void add_term(IndexTuple indices, const Expr& coeff);

    DForm& operator+=(const DForm& other);
    friend DForm operator+(DForm a, const DForm& b) { return a += b; }
    friend DForm operator-(const DForm& a, const DForm& b);
    friend DForm operator-(const DForm& a);
    friend DForm operator*(const Expr& s, const DForm& a);

    /// Every coefficient pair differs by an ExactlyZero expression.
    friend bool operator==(const DForm& a, const DForm& b);

private:
    std::vector<std::string> coords_;
    int degree_ = 0;
    Terms terms_;
};

/// Text rendering: coefficient*dx^dy terms joined by + / -.
std::string to_string(const DForm& form);

/// "dx^dy" style name of a basis element.
std::string basis_name(const std::vector<std::string>& coords, const IndexTuple& indices);

/// Sign (+1/-1) of the permutation sorting `indices`, or 0 if an index
/// repeats. Sorts `indices` in place.
int sort_with_sign(IndexTuple& indices);

/// Throws PreconditionError unless both forms share the same coordinates.
void require_same_frame(const DForm& a, const DForm& b, const char* operation);

DForm wedge(const DForm& a, const DForm& b);

DForm exterior_derivative(const DForm& a);

/// Coefficient table of d(a) keyed by (p+1)-tuples; for a 1-form the entry
/// (i, j) is K_ij = da_j/dx^i - da_i/dx^j.
std::map<IndexTuple, Expr> commutator_components(const DForm& a);

enum class Certainty { Exact, Probabilistic };

std::string_view to_string(Certainty c);

struct ClosureVerdict {
    bool closed = false;
    Certainty certainty = Certainty::Exact;
    /// Degree p+1 obstruction: components of d(a) not decided to be zero.
    DForm commutator;
    /// Set when a potential was found (which implies closed).
    bool exact = false;
    std::optional<DForm> potential;
    /// Distinct denominators of the coefficients; the verdict holds away
    /// from their zero sets.
    std::vector<Expr> singular_denominators;
};

ClosureVerdict is_closed(const DForm& a, const ZeroTestOptions& options = {});

/// Radial homotopy potential: phi with d(phi) = a for a closed form with
/// polynomial coefficients and degree >= 1. Empty when the coefficients are
/// not polynomial in the coordinates or closure is only probabilistic.
/// Throws PreconditionError (carrying the obstruction) when a is not closed.
std::optional<DForm> find_potential(const DForm& a, const ZeroTestOptions& options = {});

/// Euclidean Hodge star with orientation dx^1 ^ ... ^ dx^n.
DForm dual_form(const DForm& a);

/// Pullback of `a` along x^i = map[i](params).
DForm pullback(const DForm& a, const std::vector<std::string>& params, const std::vector<Expr>& map);

/// Closure and duality conditions of a form taken together.
struct ConjugacyReport {
    ClosureVerdict form;
    DForm dual;
    ClosureVerdict dual_verdict;
    /// n = 2, p = 1 only: both the form and its dual are closed.
    std::optional<bool> cauchy_riemann_pair;
    /// When a = d(f) with f recovered as a potential: f and its Laplacian.
    std::optional<Expr> potential;
    std::optional<Expr> laplacian;
    std::optional<bool> harmonic;
};

ConjugacyReport conjugacy_report(const DForm& a, const ZeroTestOptions& options = {});

} // namespace forge
