#pragma once

#include <forge/expr.hpp>

#include <span>
#include <string>
#include <vector>

namespace forge {

/// An Expr flattened to postfix code over a fixed list of input slots.
/// Used by the quadrature and ODE code, where the same expression is
/// evaluated many thousands of times. Domain checks match `evaluate`.
class CompiledExpr {
public:
    CompiledExpr() = default;
    CompiledExpr(const Expr& e, std::span<const std::string> slots);

    double operator()(std::span<const double> inputs) const;

private:
    enum class Op { Const, Load, Add, Mul, Pow, Div, Sin, Cos, Exp, Ln };
    struct Instr {
        Op op;
        int arg = 0;      // slot, operand count or exponent
        double value = 0; // constant
        int source = -1;  // index into sources_ for error messages
    };

    void emit(const Expr& e, std::span<const std::string> slots);

    std::vector<Instr> code_;
    std::vector<Expr> sources_;
    std::size_t max_stack_ = 0;
};

} // namespace forge
