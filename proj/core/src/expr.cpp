#include <forge/error.hpp>
#include <forge/expr.hpp>

#include <cassert>
#include <cmath>
#include <sstream>
#include <utility>

namespace forge {

struct Expr::Node {
    Kind kind = Kind::Constant;
    Rational value;
    std::string name;
    std::vector<Expr> operands;
    int exponent = 0;
    Function function = Function::Sin;
};

std::string_view function_name(Function f)
{
    switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Ln: return "ln";
    }
    return "?";
}

Expr::Expr()
    : Expr(Rational(0))
{
}

Expr::Expr(int value)
    : Expr(Rational(value))
{
}

Expr::Expr(Rational value)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = std::move(value);
    node_ = std::move(node);
}

Expr::Expr(std::shared_ptr<const Node> node)
    : node_(std::move(node))
{
}

Expr Expr::symbol(std::string name)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Symbol;
    node->name = std::move(name);
    return Expr(std::move(node));
}

Expr Expr::sum(std::vector<Expr> terms)
{
    if (terms.empty()) return Expr(0);
    if (terms.size() == 1) return terms.front();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Sum;
    node->operands = std::move(terms);
    return Expr(std::move(node));
}

Expr Expr::product(std::vector<Expr> factors)
{
    if (factors.empty()) return Expr(1);
    if (factors.size() == 1) return factors.front();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->operands = std::move(factors);
    return Expr(std::move(node));
}

Expr Expr::power(Expr base, int exponent)
{
    if (exponent == 1) return base;
    if (exponent == 0) return Expr(1);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Power;
    node->operands = {std::move(base)};
    node->exponent = exponent;
    return Expr(std::move(node));
}

Expr Expr::quotient(Expr numerator, Expr denominator)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Quotient;
    node->operands = {std::move(numerator), std::move(denominator)};
    return Expr(std::move(node));
}

Expr Expr::apply(Function f, Expr argument)
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::Apply;
    node->function = f;
    node->operands = {std::move(argument)};
    return Expr(std::move(node));
}

Expr::Kind Expr::kind() const
{
    return node_->kind;
}

bool Expr::is_constant(const Rational& value) const
{
    return node_->kind == Kind::Constant && node_->value == value;
}

const Rational& Expr::value() const
{
    assert(node_->kind == Kind::Constant);
    return node_->value;
}

const std::string& Expr::name() const
{
    assert(node_->kind == Kind::Symbol);
    return node_->name;
}

std::span<const Expr> Expr::operands() const
{
    return node_->operands;
}

int Expr::exponent() const
{
    return node_->exponent;
}

Function Expr::function() const
{
    return node_->function;
}

bool operator==(const Expr& a, const Expr& b)
{
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
    case Expr::Kind::Constant: return x.value == y.value;
    case Expr::Kind::Symbol: return x.name == y.name;
    case Expr::Kind::Power:
        if (x.exponent != y.exponent) return false;
        break;
    case Expr::Kind::Apply:
        if (x.function != y.function) return false;
        break;
    default: break;
    }
    return x.operands == y.operands;
}

Expr operator+(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) return Expr(a.value() + b.value());
    if (a.is_constant(0)) return b;
    if (b.is_constant(0)) return a;
    std::vector<Expr> terms;
    for (const Expr* e : {&a, &b}) {
        if (e->kind() == Expr::Kind::Sum) {
            terms.insert(terms.end(), e->operands().begin(), e->operands().end());
        } else {
            terms.push_back(*e);
        }
    }
    return Expr::sum(std::move(terms));
}

Expr operator*(const Expr& a, const Expr& b)
{
    if (a.is_constant() && b.is_constant()) return Expr(a.value() * b.value());
    if (a.is_constant(0) || b.is_constant(0)) return Expr(0);
    if (a.is_constant(1)) return b;
    if (b.is_constant(1)) return a;
    std::vector<Expr> factors;
    for (const Expr* e : {&a, &b}) {
        if (e->kind() == Expr::Kind::Product) {
            factors.insert(factors.end(), e->operands().begin(), e->operands().end());
        } else {
            factors.push_back(*e);
        }
    }
    return Expr::product(std::move(factors));
}

Expr operator-(const Expr& a)
{
    if (a.is_constant()) return Expr(Rational(-a.value()));
    return Expr(-1) * a;
}

Expr operator-(const Expr& a, const Expr& b)
{
    return a + (-b);
}

Expr operator/(const Expr& a, const Expr& b)
{
    if (b.is_constant() && b.value() != 0) return a * Expr(Rational(1 / b.value()));
    if (a.is_constant(0)) return Expr(0);
    return Expr::quotient(a, b);
}

Expr sin(const Expr& e) { return Expr::apply(Function::Sin, e); }
Expr cos(const Expr& e) { return Expr::apply(Function::Cos, e); }
Expr exp(const Expr& e) { return Expr::apply(Function::Exp, e); }
Expr ln(const Expr& e) { return Expr::apply(Function::Ln, e); }

Expr pow(const Expr& base, int exponent)
{
    if (base.is_constant() && (exponent >= 0 || base.value() != 0)) {
        Rational r = 1;
        const Rational b = exponent >= 0 ? base.value() : Rational(1 / base.value());
        for (int i = 0; i < std::abs(exponent); ++i) r *= b;
        return Expr(r);
    }
    return Expr::power(base, exponent);
}

// ---------------------------------------------------------------------------
// Rendering

std::string to_string(const Rational& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

namespace {

enum Precedence { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

bool is_negative_term(const Expr& e)
{
    if (e.is_constant()) return e.value() < 0;
    if (e.kind() == Expr::Kind::Product) {
        const Expr& first = e.operands().front();
        return first.is_constant() && first.value() < 0;
    }
    if (e.kind() == Expr::Kind::Quotient) return is_negative_term(e.operands()[0]);
    return false;
}

Expr negated_term(const Expr& e)
{
    if (e.is_constant()) return Expr(Rational(-e.value()));
    if (e.kind() == Expr::Kind::Product) {
        std::vector<Expr> factors(e.operands().begin(), e.operands().end());
        factors.front() = Expr(Rational(-factors.front().value()));
        if (factors.front().is_constant(1)) factors.erase(factors.begin());
        return Expr::product(std::move(factors));
    }
    if (e.kind() == Expr::Kind::Quotient) {
        return Expr::quotient(negated_term(e.operands()[0]), e.operands()[1]);
    }
    return e;
}

int precedence(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::Constant:
        if (e.value() < 0) return kUnary;
        return denominator(e.value()) == 1 ? kAtom : kProduct;
    case Expr::Kind::Symbol:
    case Expr::Kind::Apply: return kAtom;
    case Expr::Kind::Sum: return kSum;
    case Expr::Kind::Product:
    case Expr::Kind::Quotient: return is_negative_term(e) ? kUnary : kProduct;
    case Expr::Kind::Power: return kPower;
    }
    return kAtom;
}

void render(const Expr& e, std::string& out);

void render_wrapped(const Expr& e, int min_precedence, std::string& out)
{
    if (precedence(e) < min_precedence) {
        out += '(';
        render(e, out);
        out += ')';
    } else {
        render(e, out);
    }
}

void render(const Expr& e, std::string& out)
{
    switch (e.kind()) {
    case Expr::Kind::Constant: out += to_string(e.value()); return;
    case Expr::Kind::Symbol: out += e.name(); return;
    case Expr::Kind::Apply:
        out += function_name(e.function());
        out += '(';
        render(e.operands()[0], out);
        out += ')';
        return;
    case Expr::Kind::Sum: {
        bool first = true;
        for (const Expr& term : e.operands()) {
            if (is_negative_term(term)) {
                out += first ? "-" : " - ";
                render_wrapped(negated_term(term), kProduct, out);
            } else {
                if (!first) out += " + ";
                render_wrapped(term, kProduct, out);
            }
            first = false;
        }
        return;
    }
    case Expr::Kind::Product: {
        auto factors = e.operands();
        std::size_t start = 0;
        if (factors.front().is_constant()) {
            const Rational& c = factors.front().value();
            if (c == -1) {
                out += '-';
                start = 1;
            } else if (c == 1) {
                start = 1;
            }
        }
        for (std::size_t i = start; i < factors.size(); ++i) {
            if (i > start) out += '*';
            const Expr& f = factors[i];
            if (i == 0 && f.is_constant()) {
                out += to_string(f.value());
            } else {
                render_wrapped(f, kPower, out);
            }
        }
        return;
    }
    case Expr::Kind::Power: {
        render_wrapped(e.operands()[0], kAtom, out);
        out += '^';
        if (e.exponent() < 0) {
            out += "(" + std::to_string(e.exponent()) + ")";
        } else {
            out += std::to_string(e.exponent());
        }
        return;
    }
    case Expr::Kind::Quotient: {
        render_wrapped(e.operands()[0], kProduct, out);
        out += '/';
        render_wrapped(e.operands()[1], kPower, out);
        return;
    }
    }
}

} // namespace

std::string to_string(const Expr& e)
{
    std::string out;
    render(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Structural queries

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out)
{
    if (e.kind() == Expr::Kind::Symbol) {
        out.insert(e.name());
        return;
    }
    for (const Expr& child : e.operands()) collect_symbols(child, out);
}

} // namespace

std::set<std::string> free_symbols(const Expr& e)
{
    std::set<std::string> out;
    collect_symbols(e, out);
    return out;
}

bool depends_on(const Expr& e, std::string_view name)
{
    if (e.kind() == Expr::Kind::Symbol) return e.name() == name;
    for (const Expr& child : e.operands()) {
        if (depends_on(child, name)) return true;
    }
    return false;
}

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> children)
{
    switch (e.kind()) {
    case Expr::Kind::Sum: {
        Expr acc(0);
        for (auto& c : children) acc += c;
        return acc;
    }
    case Expr::Kind::Product: {
        Expr acc(1);
        for (auto& c : children) acc *= c;
        return acc;
    }
    case Expr::Kind::Power: return pow(children[0], e.exponent());
    case Expr::Kind::Quotient: return children[0] / children[1];
    case Expr::Kind::Apply: return Expr::apply(e.function(), children[0]);
    default: return e;
    }
}

} // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements)
{
    if (e.kind() == Expr::Kind::Symbol) {
        auto it = replacements.find(e.name());
        return it == replacements.end() ? e : it->second;
    }
    if (e.operands().empty()) return e;
    std::vector<Expr> children;
    children.reserve(e.operands().size());
    for (const Expr& c : e.operands()) children.push_back(substitute(c, replacements));
    return rebuild(e, std::move(children));
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr derivative(const Expr& e, std::string_view x)
{
    switch (e.kind()) {
    case Expr::Kind::Constant: return Expr(0);
    case Expr::Kind::Symbol: return Expr(e.name() == x ? 1 : 0);
    case Expr::Kind::Sum: {
        Expr acc(0);
        for (const Expr& t : e.operands()) acc += derivative(t, x);
        return acc;
    }
    case Expr::Kind::Product: {
        auto factors = e.operands();
        Expr acc(0);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            Expr df = derivative(factors[i], x);
            if (df.is_constant(0)) continue;
            Expr term = df;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j != i) term *= factors[j];
            }
            acc += term;
        }
        return acc;
    }
    case Expr::Kind::Power: {
        const Expr& base = e.operands()[0];
        const int n = e.exponent();
        return Expr(n) * pow(base, n - 1) * derivative(base, x);
    }
    case Expr::Kind::Quotient: {
        const Expr& num = e.operands()[0];
        const Expr& den = e.operands()[1];
        return (derivative(num, x) * den - num * derivative(den, x)) / pow(den, 2);
    }
    case Expr::Kind::Apply: {
        const Expr& arg = e.operands()[0];
        Expr inner = derivative(arg, x);
        if (inner.is_constant(0)) return Expr(0);
        switch (e.function()) {
        case Function::Sin: return cos(arg) * inner;
        case Function::Cos: return -sin(arg) * inner;
        case Function::Exp: return e * inner;
        case Function::Ln: return inner / arg;
        }
        break;
    }
    }
    throw Error("differentiate: unsupported node '" + to_string(e) + "'");
}

} // namespace

Expr differentiate(const Expr& e, std::string_view symbol)
{
    return simplify(derivative(e, symbol));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const Expr& e)
{
    if (!std::isfinite(v)) throw DomainError("non-finite value", to_string(e));
    return v;
}

double eval(const Expr& e, const Point& pt)
{
    switch (e.kind()) {
    case Expr::Kind::Constant: return e.value().convert_to<double>();
    case Expr::Kind::Symbol: {
        auto it = pt.find(e.name());
        if (it == pt.end()) throw Error("no value for symbol '" + e.name() + "'");
        return it->second;
    }
    case Expr::Kind::Sum: {
        double s = 0;
        for (const Expr& t : e.operands()) s += eval(t, pt);
        return s;
    }
    case Expr::Kind::Product: {
        double p = 1;
        for (const Expr& f : e.operands()) p *= eval(f, pt);
        return p;
    }
    case Expr::Kind::Power: {
        const double b = eval(e.operands()[0], pt);
        if (e.exponent() < 0 && b == 0) throw DomainError("division by zero", to_string(e));
        return checked(std::pow(b, e.exponent()), e);
    }
    case Expr::Kind::Quotient: {
        const double n = eval(e.operands()[0], pt);
        const double d = eval(e.operands()[1], pt);
        if (d == 0) throw DomainError("division by zero", to_string(e));
        return checked(n / d, e);
    }
    case Expr::Kind::Apply: {
        const double a = eval(e.operands()[0], pt);
        switch (e.function()) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Exp: return checked(std::exp(a), e);
        case Function::Ln:
            if (a <= 0) throw DomainError("ln of nonpositive value", to_string(e));
            return std::log(a);
        }
    }
    }
    return 0;
}

} // namespace

double evaluate(const Expr& e, const Point& pt)
{
    return checked(eval(e, pt), e);
}

std::string_view to_string(ZeroVerdict v)
{
    switch (v) {
    case ZeroVerdict::ExactlyZero: return "exactly_zero";
    case ZeroVerdict::ExactlyNonzero: return "exactly_nonzero";
    case ZeroVerdict::ProbablyZero: return "probably_zero";
    case ZeroVerdict::ProbablyNonzero: return "probably_nonzero";
    }
    return "?";
}

} // namespace forge
