#pragma once

#include <forge/evolutionary.hpp>
#include <forge/expr.hpp>
#include <forge/form.hpp>

#include <random>
#include <string>
#include <vector>

namespace forge::testing {

inline std::vector<std::string> frame(int n)
{
    static const std::vector<std::string> names = {"x", "y", "z", "w"};
    return {names.begin(), names.begin() + n};
}

/// Integer-coefficient polynomial of total degree <= max_degree.
inline Expr random_polynomial(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_degree,
                              int max_terms = 4)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    Expr out(0);
    const int k = terms(rng);
    for (int t = 0; t < k; ++t) {
        Expr term(coeff(rng));
        const int d = deg(rng);
        for (int i = 0; i < d; ++i) term = term * Expr::symbol(vars[pick(rng)]);
        out = out + term;
    }
    return out;
}

inline std::vector<std::vector<int>> increasing_tuples(int n, int p)
{
    std::vector<std::vector<int>> out;
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(idx.size()) == p) {
            out.push_back(idx);
            return;
        }
        for (int i = start; i < n; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline DForm random_form(std::mt19937_64& rng, int n, int p, int max_degree = 3)
{
    const auto coords = frame(n);
    DForm out(coords, p);
    for (const auto& idx : increasing_tuples(n, p)) out.add_term(idx, random_polynomial(rng, coords, max_degree));
    return out;
}

inline Connection random_connection(std::mt19937_64& rng, int n, bool symmetric, int max_degree = 2)
{
    const auto coords = frame(n);
    Connection c(coords);
    for (int s = 0; s < n; ++s) {
        for (int a = 0; a < n; ++a) {
            for (int b = symmetric ? a : 0; b < n; ++b) {
                const Expr g = random_polynomial(rng, coords, max_degree, 2);
                c.set(s, a, b, g);
                if (symmetric) c.set(s, b, a, g);
            }
        }
    }
    return c;
}

inline bool exactly_zero(const Expr& e)
{
    return is_zero(e) == ZeroVerdict::ExactlyZero;
}

inline bool same_form(const DForm& a, const DForm& b)
{
    if (a.degree() != b.degree()) return false;
    for (const auto& idx : increasing_tuples(a.dimension(), a.degree())) {
        if (!exactly_zero(a.coefficient(idx) - b.coefficient(idx))) return false;
    }
    return true;
}

} // namespace forge::testing
