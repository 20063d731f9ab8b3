#include <forge/dsl/ast.hpp>

#include <sstream>

namespace forge::dsl {

namespace {

bool same_list(const std::vector<NodePtr>& a, const std::vector<NodePtr>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_structure(*a[i], *b[i])) return false;
    }
    return true;
}

int precedence(const Node& n)
{
    switch (n.kind) {
    case Node::Kind::Binary:
        if (n.text == "+" || n.text == "-") return 1;
        if (n.text == "*" || n.text == "/") return 2;
        return 4;
    case Node::Kind::Negate: return 3;
    default: return 5;
    }
}

std::string wrap(const Node& n, int min_prec)
{
    const std::string s = to_source(n);
    return precedence(n) >= min_prec ? s : "(" + s + ")";
}

std::string join(const std::vector<NodePtr>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += to_source(*xs[i]);
    }
    return out;
}

} // namespace

bool same_structure(const Node& a, const Node& b)
{
    if (a.kind != b.kind || a.text != b.text || a.params != b.params) return false;
    if (a.kind == Node::Kind::Number && a.number != b.number) return false;
    if (a.kind == Node::Kind::Name && a.name_kind != b.name_kind) return false;
    return same_list(a.bracket, b.bracket) && same_list(a.children, b.children);
}

std::string to_source(const Node& n)
{
    switch (n.kind) {
    case Node::Kind::Number:
    case Node::Kind::Name: return n.text;
    case Node::Kind::Negate: return "-" + wrap(*n.children[0], 3);
    case Node::Kind::Binary: {
        const int p = precedence(n);
        if (p == 4) return wrap(*n.children[0], 5) + "^" + wrap(*n.children[1], 3);
        const std::string op = p == 1 ? " " + n.text + " " : n.text;
        return wrap(*n.children[0], p) + op + wrap(*n.children[1], p + 1);
    }
    case Node::Kind::Call: {
        std::string out = n.text;
        if (!n.params.empty() || !n.bracket.empty()) {
            out += "[";
            for (std::size_t i = 0; i < n.params.size(); ++i) out += (i ? ", " : "") + n.params[i];
            if (!n.bracket.empty()) out += (n.params.empty() ? "" : ", ") + join(n.bracket);
            out += "]";
        }
        return out + "(" + join(n.children) + ")";
    }
    case Node::Kind::Tuple: return "(" + join(n.children) + ")";
    }
    return {};
}

bool same_structure(const Statement& a, const Statement& b)
{
    if (a.body.index() != b.body.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.body);
            if constexpr (std::is_same_v<T, CoordsDecl>) {
                return x.names == y.names;
            } else if constexpr (std::is_same_v<T, FormDecl> || std::is_same_v<T, PdeDecl>) {
                return x.name == y.name && same_structure(*x.value, *y.value);
            } else if constexpr (std::is_same_v<T, ConnectionDecl>) {
                if (x.name != y.name || x.entries.size() != y.entries.size()) return false;
                for (std::size_t i = 0; i < x.entries.size(); ++i) {
                    const auto& e = x.entries[i];
                    const auto& f = y.entries[i];
                    if (e.upper != f.upper || e.lower1 != f.lower1 || e.lower2 != f.lower2) return false;
                    if (!same_structure(*e.value, *f.value)) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, MomentumDecl>) {
                return x.name == y.name && same_list(x.components, y.components);
            } else {
                return x.name == y.name && same_list(x.args, y.args);
            }
        },
        a.body);
}

std::string to_source(const Statement& s)
{
    std::ostringstream out;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CoordsDecl>) {
                out << "coords ";
                for (std::size_t i = 0; i < x.names.size(); ++i) out << (i ? ", " : "") << x.names[i];
            } else if constexpr (std::is_same_v<T, FormDecl>) {
                out << "form " << x.name << " = " << to_source(*x.value);
            } else if constexpr (std::is_same_v<T, PdeDecl>) {
                out << "pde " << x.name << " = " << to_source(*x.value);
            } else if constexpr (std::is_same_v<T, ConnectionDecl>) {
                out << "connection " << x.name << " {";
                for (const auto& e : x.entries) {
                    out << " G[" << e.upper << "," << e.lower1 << "," << e.lower2 << "] = " << to_source(*e.value)
                        << ";";
                }
                out << " }";
            } else if constexpr (std::is_same_v<T, MomentumDecl>) {
                out << "momentum " << x.name << " = (" << join(x.components) << ")";
            } else {
                out << x.name;
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    const std::string a = to_source(*x.args[i]);
                    // a leading '-' would otherwise continue the previous argument
                    out << (i > 0 && a[0] == '-' ? ", " : " ") << a;
                }
            }
        },
        s.body);
    out << ";";
    return out.str();
}

} // namespace forge::dsl
