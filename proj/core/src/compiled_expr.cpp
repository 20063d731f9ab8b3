#include <forge/compiled_expr.hpp>
#include <forge/error.hpp>

#include <algorithm>
#include <cmath>

namespace forge {

CompiledExpr::CompiledExpr(const Expr& e, std::span<const std::string> slots)
{
    emit(e, slots);
    std::size_t depth = 0;
    for (const Instr& in : code_) {
        switch (in.op) {
        case Op::Const:
        case Op::Load: ++depth; break;
        case Op::Add:
        case Op::Mul: depth -= static_cast<std::size_t>(in.arg) - 1; break;
        case Op::Div: --depth; break;
        default: break;
        }
        max_stack_ = std::max(max_stack_, depth);
    }
}

void CompiledExpr::emit(const Expr& e, std::span<const std::string> slots)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        code_.push_back({Op::Const, 0, e.value().convert_to<double>()});
        return;
    case Expr::Kind::Symbol: {
        auto it = std::find(slots.begin(), slots.end(), e.name());
        if (it == slots.end()) throw Error("no value for symbol '" + e.name() + "'");
        code_.push_back({Op::Load, static_cast<int>(it - slots.begin())});
        return;
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product:
        for (const Expr& c : e.operands()) emit(c, slots);
        code_.push_back({e.kind() == Expr::Kind::Sum ? Op::Add : Op::Mul, static_cast<int>(e.operands().size())});
        return;
    case Expr::Kind::Power:
        emit(e.operands()[0], slots);
        sources_.push_back(e);
        code_.push_back({Op::Pow, e.exponent(), 0, static_cast<int>(sources_.size()) - 1});
        return;
    case Expr::Kind::Quotient:
        emit(e.operands()[0], slots);
        emit(e.operands()[1], slots);
        sources_.push_back(e);
        code_.push_back({Op::Div, 0, 0, static_cast<int>(sources_.size()) - 1});
        return;
    case Expr::Kind::Apply: {
        emit(e.operands()[0], slots);
        sources_.push_back(e);
        const int src = static_cast<int>(sources_.size()) - 1;
        switch (e.function()) {
        case Function::Sin: code_.push_back({Op::Sin, 0, 0, src}); break;
        case Function::Cos: code_.push_back({Op::Cos, 0, 0, src}); break;
        case Function::Exp: code_.push_back({Op::Exp, 0, 0, src}); break;
        case Function::Ln: code_.push_back({Op::Ln, 0, 0, src}); break;
        }
        return;
    }
    }
}

double CompiledExpr::operator()(std::span<const double> inputs) const
{
    thread_local std::vector<double> stack;
    stack.resize(max_stack_ + 1);
    std::size_t top = 0;
    auto fail = [&](const char* what, int src) -> double {
        throw DomainError(what, to_string(sources_[static_cast<std::size_t>(src)]));
    };
    for (const Instr& in : code_) {
        switch (in.op) {
        case Op::Const: stack[top++] = in.value; break;
        case Op::Load: stack[top++] = inputs[static_cast<std::size_t>(in.arg)]; break;
        case Op::Add: {
            const std::size_t base = top - static_cast<std::size_t>(in.arg);
            double s = stack[base];
            for (std::size_t i = base + 1; i < top; ++i) s += stack[i];
            stack[base] = s;
            top = base + 1;
            break;
        }
        case Op::Mul: {
            const std::size_t base = top - static_cast<std::size_t>(in.arg);
            double p = stack[base];
            for (std::size_t i = base + 1; i < top; ++i) p *= stack[i];
            stack[base] = p;
            top = base + 1;
            break;
        }
        case Op::Pow: {
            double& b = stack[top - 1];
            if (in.arg < 0 && b == 0) fail("division by zero", in.source);
            b = std::pow(b, in.arg);
            if (!std::isfinite(b)) fail("non-finite value", in.source);
            break;
        }
        case Op::Div: {
            const double d = stack[--top];
            if (d == 0) fail("division by zero", in.source);
            stack[top - 1] /= d;
            if (!std::isfinite(stack[top - 1])) fail("non-finite value", in.source);
            break;
        }
        case Op::Sin: stack[top - 1] = std::sin(stack[top - 1]); break;
        case Op::Cos: stack[top - 1] = std::cos(stack[top - 1]); break;
        case Op::Exp:
            stack[top - 1] = std::exp(stack[top - 1]);
            if (!std::isfinite(stack[top - 1])) fail("non-finite value", in.source);
            break;
        case Op::Ln:
            if (stack[top - 1] <= 0) fail("ln of nonpositive value", in.source);
            stack[top - 1] = std::log(stack[top - 1]);
            break;
        }
    }
    const double result = stack[0];
    if (!std::isfinite(result)) throw DomainError("non-finite value", "<compiled>");
    return result;
}

} // namespace forge
