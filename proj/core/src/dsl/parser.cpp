#include <forge/dsl/lexer.hpp>
#include <forge/dsl/parser.hpp>
#include <forge/error.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace forge::dsl {

namespace {

using MutNode = std::shared_ptr<Node>;

// Argument classes of commands:
//   F form expression, C connection, M momentum field, P pde,
//   R region literal, L path literal, X map literal,
//   N number, T numeric tuple with one entry per coordinate.
struct Signature {
    std::string required;
    std::string optional;
};

const std::map<std::string, Signature, std::less<>>& commands()
{
    static const std::map<std::string, Signature, std::less<>> table = {
        {"d", {"F", ""}},
        {"wedge", {"FF", ""}},
        {"dual", {"F", ""}},
        {"closed", {"F", ""}},
        {"potential", {"F", ""}},
        {"commutator", {"F", ""}},
        {"conjugacy", {"F", ""}},
        {"pullback", {"FX", ""}},
        {"evo_commutator", {"FC", ""}},
        {"obstruction", {"FC", ""}},
        {"torsion", {"C", ""}},
        {"curvature", {"C", ""}},
        {"manifold", {"C", ""}},
        {"relation", {"M", ""}},
        {"closure_system", {"P", ""}},
        {"characteristics", {"P", ""}},
        {"degeneracy", {"PMR", "NN"}},
        {"cr_check", {"FF", ""}},
        {"canonical", {"F", ""}},
        {"stokes", {"FR", "NN"}},
        {"loop_integral", {"FL", "N"}},
        {"area_integral", {"FR", "N"}},
        {"fd_check", {"FT", "N"}},
        {"trace", {"PTTN", "NN"}},
    };
    return table;
}

const std::set<std::string, std::less<>>& scalar_functions()
{
    static const std::set<std::string, std::less<>> s = {"sin", "cos", "exp", "ln"};
    return s;
}

const std::set<std::string, std::less<>>& literal_builders()
{
    static const std::set<std::string, std::less<>> s = {"circle", "rect", "box", "polyline", "polygon", "curve", "map"};
    return s;
}

bool is_callable(std::string_view name)
{
    return scalar_functions().count(name) || literal_builders().count(name) || name == "d" || name == "dual"
           || name == "sqrt";
}

bool is_keyword(std::string_view name)
{
    static const std::set<std::string, std::less<>> s = {"coords", "form", "connection", "momentum", "pde", "pi"};
    return s.count(name) || commands().count(name) || is_callable(name);
}

std::string describe(const Token& t)
{
    return t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
}

Rational parse_number(const std::string& text, SourcePos pos)
{
    std::string digits;
    long scale = 0;
    std::size_t i = 0;
    bool after_dot = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            after_dot = true;
            continue;
        }
        digits += text[i];
        if (after_dot) --scale;
    }
    if (i < text.size()) {
        const long e = std::stol(text.substr(i + 1));
        if (e > 400 || e < -400) throw ParseError("number exponent out of range in '" + text + "'", pos.line, pos.column);
        scale += e;
    }
    // a leading zero would select octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{boost::multiprecision::cpp_int(digits)};
    const Rational ten{10};
    for (; scale > 0; --scale) value *= ten;
    for (; scale < 0; ++scale) value /= ten;
    return value;
}

class Parser {
public:
    explicit Parser(std::string_view src)
        : tokens_(tokenize(src))
    {
    }

    Script run()
    {
        Script script;
        while (peek().kind != Token::Kind::End) script.statements.push_back(statement());
        script.coords = coords_;
        return script;
    }

    NodePtr lone_expression()
    {
        MutNode n = expression();
        if (peek().kind != Token::Kind::End) fail("expected end of input but found " + describe(peek()), peek().pos);
        return n;
    }

private:
    struct Scope {
        bool pde = false;
        std::vector<std::string> params;
        bool params_only = false;
    };

    const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool accept(std::string_view sym)
    {
        if (peek().kind == Token::Kind::Symbol && peek().text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] static void fail(const std::string& message, SourcePos at)
    {
        throw ParseError(message, at.line, at.column);
    }

    void expect(std::string_view sym)
    {
        if (!accept(sym)) fail("expected '" + std::string(sym) + "' but found " + describe(peek()), peek().pos);
    }

    Token identifier(const char* what)
    {
        if (peek().kind != Token::Kind::Identifier) {
            fail(std::string("expected ") + what + " but found " + describe(peek()), peek().pos);
        }
        return next();
    }

    int integer()
    {
        const Token t = next();
        if (t.kind != Token::Kind::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail("expected an integer index but found " + describe(t), t.pos);
        }
        return std::stoi(t.text);
    }

    // ---- statements -------------------------------------------------------

    Statement statement()
    {
        const Token head = identifier("a declaration or command");
        Statement st;
        st.pos = head.pos;
        if (head.text == "coords") {
            st.body = coords_decl(head);
        } else if (head.text == "form") {
            const Token name = declare_name();
            expect("=");
            FormDecl f{name.text, form_expr(Scope{})};
            require_frame(head);
            declared_[name.text] = NameKind::Form;
            st.body = std::move(f);
        } else if (head.text == "pde") {
            const Token name = declare_name();
            expect("=");
            require_frame(head);
            PdeDecl p{name.text, form_expr(Scope{true, {}, false})};
            declared_[name.text] = NameKind::Pde;
            st.body = std::move(p);
        } else if (head.text == "connection") {
            st.body = connection_decl(head);
        } else if (head.text == "momentum") {
            st.body = momentum_decl(head);
        } else if (commands().count(head.text)) {
            st.body = command(head);
        } else {
            fail("unknown statement '" + head.text + "'", head.pos);
        }
        expect(";");
        std::string src = to_source(st);
        src.pop_back();
        st.echo = std::move(src);
        return st;
    }

    void require_frame(const Token& at)
    {
        if (coords_.empty()) fail("no coordinates declared before '" + at.text + "'", at.pos);
    }

    CoordsDecl coords_decl(const Token& head)
    {
        if (!coords_.empty()) fail("coordinates are already declared", head.pos);
        CoordsDecl c;
        do {
            const Token t = identifier("a coordinate name");
            if (is_keyword(t.text)) fail("'" + t.text + "' is reserved", t.pos);
            if (std::find(c.names.begin(), c.names.end(), t.text) != c.names.end()) {
                fail("duplicate coordinate " + t.text, t.pos);
            }
            c.names.push_back(t.text);
        } while (accept(","));
        for (std::size_t i = 0; i < c.names.size(); ++i) {
            const std::string& name = c.names[i];
            bool momentum = name.size() > 1 && name[0] == 'p' && name.find_first_not_of("0123456789", 1) == std::string::npos;
            if (name == "u" || momentum) fail("coordinate name '" + name + "' is reserved for pde symbols", head.pos);
            if (declared_.count(name)) fail("'" + name + "' is already declared", head.pos);
        }
        coords_ = c.names;
        return c;
    }

    Token declare_name()
    {
        const Token t = identifier("a name");
        if (is_keyword(t.text)) fail("'" + t.text + "' is reserved", t.pos);
        if (std::find(coords_.begin(), coords_.end(), t.text) != coords_.end()) {
            fail("'" + t.text + "' is a coordinate", t.pos);
        }
        if (t.text.size() > 1 && t.text[0] == 'd'
            && std::find(coords_.begin(), coords_.end(), t.text.substr(1)) != coords_.end()) {
            fail("'" + t.text + "' names a basis form", t.pos);
        }
        if (declared_.count(t.text)) fail("'" + t.text + "' is already declared", t.pos);
        return t;
    }

    ConnectionDecl connection_decl(const Token& head)
    {
        const Token name = declare_name();
        require_frame(head);
        const int n = static_cast<int>(coords_.size());
        ConnectionDecl c;
        c.name = name.text;
        expect("{");
        while (!accept("}")) {
            const Token g = identifier("'G'");
            if (g.text != "G" && g.text != name.text) fail("expected 'G' but found '" + g.text + "'", g.pos);
            expect("[");
            ConnectionEntry e;
            const SourcePos at = peek().pos;
            e.upper = integer();
            expect(",");
            e.lower1 = integer();
            expect(",");
            e.lower2 = integer();
            expect("]");
            for (int i : {e.upper, e.lower1, e.lower2}) {
                if (i < 1 || i > n) {
                    fail("dimension mismatch: connection index " + std::to_string(i) + " outside 1.." + std::to_string(n),
                         at);
                }
            }
            expect("=");
            e.value = form_expr(Scope{});
            expect(";");
            c.entries.push_back(std::move(e));
        }
        declared_[c.name] = NameKind::Connection;
        return c;
    }

    MomentumDecl momentum_decl(const Token& head)
    {
        const Token name = declare_name();
        require_frame(head);
        expect("=");
        const SourcePos at = peek().pos;
        MutNode value = expression();
        MomentumDecl m;
        m.name = name.text;
        if (value->kind == Node::Kind::Tuple) {
            for (auto& c : value->children) m.components.push_back(c);
        } else {
            m.components.push_back(value);
        }
        if (m.components.size() != coords_.size()) {
            fail("dimension mismatch: momentum field has " + std::to_string(m.components.size())
                     + " components for " + std::to_string(coords_.size()) + " coordinates",
                 at);
        }
        for (const auto& c : m.components) resolve_form(std::const_pointer_cast<Node>(c), Scope{});
        declared_[m.name] = NameKind::Momentum;
        return m;
    }

    Command command(const Token& head)
    {
        require_frame(head);
        const Signature& sig = commands().find(head.text)->second;
        Command cmd;
        cmd.name = head.text;
        const std::string kinds = sig.required + sig.optional;
        while (peek().kind != Token::Kind::End && !(peek().kind == Token::Kind::Symbol && peek().text == ";")) {
            if (!cmd.args.empty()) accept(",");
            const SourcePos at = peek().pos;
            if (cmd.args.size() == kinds.size()) {
                fail("too many arguments for " + head.text + " (at most " + std::to_string(kinds.size()) + ")", at);
            }
            MutNode arg = expression();
            check_argument(arg, kinds[cmd.args.size()], head.text);
            cmd.args.push_back(arg);
        }
        if (cmd.args.size() < sig.required.size()) {
            fail(head.text + " expects at least " + std::to_string(sig.required.size()) + " argument(s) but found "
                     + describe(peek()),
                 peek().pos);
        }
        return cmd;
    }

    void check_argument(const MutNode& arg, char kind, const std::string& cmd)
    {
        auto want_name = [&](NameKind k, const char* what) {
            if (arg->kind != Node::Kind::Name) fail(cmd + " expects " + what, arg->pos);
            auto it = declared_.find(arg->text);
            if (it == declared_.end()) fail("undeclared identifier " + arg->text, arg->pos);
            if (it->second != k) fail("'" + arg->text + "' is not " + what, arg->pos);
            arg->name_kind = k;
        };
        switch (kind) {
        case 'F': resolve_form(arg, Scope{}); break;
        case 'C': want_name(NameKind::Connection, "a connection"); break;
        case 'M': want_name(NameKind::Momentum, "a momentum field"); break;
        case 'P': want_name(NameKind::Pde, "a pde"); break;
        case 'N': resolve_numeric(arg); break;
        case 'T': {
            const std::size_t n = coords_.size();
            if (arg->kind == Node::Kind::Tuple) {
                if (arg->children.size() != n) {
                    fail("dimension mismatch: expected " + std::to_string(n) + " entries but found "
                             + std::to_string(arg->children.size()),
                         arg->pos);
                }
                for (auto& c : arg->children) resolve_numeric(std::const_pointer_cast<Node>(c));
            } else if (n == 1) {
                resolve_numeric(arg);
            } else {
                fail(cmd + " expects a tuple of " + std::to_string(n) + " numbers", arg->pos);
            }
            break;
        }
        case 'R': literal(arg, {"rect", "box"}, cmd, "a region (rect or box)"); break;
        case 'L': literal(arg, {"circle", "rect", "polyline", "polygon", "curve"}, cmd, "a path"); break;
        case 'X': literal(arg, {"map"}, cmd, "a map[...](...) literal"); break;
        }
    }

    void literal(const MutNode& arg, std::initializer_list<std::string_view> allowed, const std::string& cmd,
                 const char* what)
    {
        if (arg->kind != Node::Kind::Call
            || std::find(allowed.begin(), allowed.end(), std::string_view(arg->text)) == allowed.end()) {
            fail(cmd + " expects " + what, arg->pos);
        }
        const std::size_t count = arg->children.size();
        auto arity = [&](std::size_t k) {
            if (count != k) {
                fail(arg->text + " takes " + std::to_string(k) + " arguments but " + std::to_string(count)
                         + " were given",
                     arg->pos);
            }
        };
        const std::string& name = arg->text;
        if (name == "circle") arity(3);
        if (name == "rect") arity(4);
        if (name == "box") arity(6);
        if (name == "circle" || name == "rect" || name == "box") {
            for (auto& c : arg->children) resolve_numeric(std::const_pointer_cast<Node>(c));
        } else if (name == "polyline" || name == "polygon") {
            if (count < 2) fail(name + " needs at least two points", arg->pos);
            for (auto& c : arg->children) {
                if (c->kind != Node::Kind::Tuple) fail(name + " points are written (x, y, ...)", c->pos);
                if (c->children.size() != coords_.size()) {
                    fail("dimension mismatch: point has " + std::to_string(c->children.size()) + " entries for "
                             + std::to_string(coords_.size()) + " coordinates",
                         c->pos);
                }
                for (auto& v : c->children) resolve_numeric(std::const_pointer_cast<Node>(v));
            }
        } else if (name == "curve" || name == "map") {
            if (count != coords_.size()) {
                fail("dimension mismatch: " + name + " gives " + std::to_string(count) + " components for "
                         + std::to_string(coords_.size()) + " coordinates",
                     arg->pos);
            }
            for (auto& b : arg->bracket) resolve_numeric(std::const_pointer_cast<Node>(b));
            Scope scope;
            scope.params = arg->params;
            scope.params_only = true;
            for (auto& c : arg->children) resolve_form(std::const_pointer_cast<Node>(c), scope);
        }
    }

    // ---- expressions ------------------------------------------------------

    MutNode make(Node::Kind kind, SourcePos pos, std::string text = {})
    {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->pos = pos;
        n->text = std::move(text);
        return n;
    }

    MutNode binary(const Token& op, MutNode lhs, MutNode rhs)
    {
        auto n = make(Node::Kind::Binary, op.pos, op.text);
        n->children = {std::move(lhs), std::move(rhs)};
        return n;
    }

    MutNode expression()
    {
        MutNode lhs = term();
        while (peek().kind == Token::Kind::Symbol && (peek().text == "+" || peek().text == "-")) {
            const Token op = next();
            lhs = binary(op, lhs, term());
        }
        return lhs;
    }

    MutNode term()
    {
        MutNode lhs = unary();
        while (peek().kind == Token::Kind::Symbol && (peek().text == "*" || peek().text == "/")) {
            const Token op = next();
            lhs = binary(op, lhs, unary());
        }
        return lhs;
    }

    MutNode unary()
    {
        if (peek().kind == Token::Kind::Symbol && peek().text == "-") {
            const Token op = next();
            auto n = make(Node::Kind::Negate, op.pos);
            n->children = {unary()};
            return n;
        }
        MutNode base = primary();
        if (peek().kind == Token::Kind::Symbol && peek().text == "^") {
            const Token op = next();
            return binary(op, base, unary());
        }
        return base;
    }

    MutNode primary()
    {
        const Token t = next();
        if (t.kind == Token::Kind::Number) {
            auto n = make(Node::Kind::Number, t.pos, t.text);
            n->number = parse_number(t.text, t.pos);
            return n;
        }
        if (t.kind == Token::Kind::Identifier) {
            const bool call = is_callable(t.text) && peek().kind == Token::Kind::Symbol
                              && (peek().text == "(" || (peek().text == "[" && (t.text == "curve" || t.text == "map")));
            if (!call) return make(Node::Kind::Name, t.pos, t.text);
            auto n = make(Node::Kind::Call, t.pos, t.text);
            if (accept("[")) {
                n->params.push_back(identifier("a parameter name").text);
                if (t.text == "curve") {
                    expect(",");
                    n->bracket.push_back(expression());
                    expect(",");
                    n->bracket.push_back(expression());
                } else {
                    while (accept(",")) n->params.push_back(identifier("a parameter name").text);
                }
                expect("]");
            } else if (t.text == "curve" || t.text == "map") {
                fail(t.text + " needs its parameters in [...]", peek().pos);
            }
            expect("(");
            if (!accept(")")) {
                do n->children.push_back(expression());
                while (accept(","));
                expect(")");
            }
            return n;
        }
        if (t.kind == Token::Kind::Symbol && t.text == "(") {
            MutNode first = expression();
            if (!accept(",")) {
                expect(")");
                return first;
            }
            auto tuple = make(Node::Kind::Tuple, t.pos);
            tuple->children.push_back(first);
            do tuple->children.push_back(expression());
            while (accept(","));
            expect(")");
            return tuple;
        }
        fail("expected an expression but found " + describe(t), t.pos);
    }

    MutNode form_expr(const Scope& scope)
    {
        MutNode n = expression();
        resolve_form(n, scope);
        return n;
    }

    // ---- name resolution ----------------------------------------------------

    bool is_coord(std::string_view s) const { return std::find(coords_.begin(), coords_.end(), s) != coords_.end(); }

    bool is_pde_symbol(std::string_view s) const
    {
        if (s == "u") return true;
        if (s.size() < 2 || s[0] != 'p' || s.find_first_not_of("0123456789", 1) != std::string_view::npos) return false;
        if (s[1] == '0') return false;
        const int k = std::stoi(std::string(s.substr(1)));
        return k >= 1 && k <= static_cast<int>(coords_.size());
    }

    // Reports a misspelled basis form before any other unresolved name.
    void check_basis_names(const Node& n, const Scope& scope)
    {
        if (n.kind == Node::Kind::Name && n.text.size() > 1 && n.text[0] == 'd' && !is_coord(n.text)
            && !declared_.count(n.text)
            && std::find(scope.params.begin(), scope.params.end(), n.text) == scope.params.end()
            && !is_coord(n.text.substr(1))) {
            fail("undeclared coordinate " + n.text.substr(1), n.pos);
        }
        for (const auto& c : n.children) check_basis_names(*c, scope);
    }

    void resolve_form(const MutNode& root, const Scope& scope)
    {
        check_basis_names(*root, scope);
        resolve_form_node(root, scope);
    }

    void resolve_form_node(const MutNode& n, const Scope& scope)
    {
        switch (n->kind) {
        case Node::Kind::Number: return;
        case Node::Kind::Tuple: fail("unexpected tuple in a form expression", n->pos);
        case Node::Kind::Name: {
            const std::string& s = n->text;
            if (std::find(scope.params.begin(), scope.params.end(), s) != scope.params.end()) {
                n->name_kind = NameKind::Parameter;
                return;
            }
            if (s == "pi") fail("pi is only allowed in numeric arguments", n->pos);
            if (scope.params_only) fail("'" + s + "' is not a parameter of this map", n->pos);
            if (is_coord(s)) {
                n->name_kind = NameKind::Coordinate;
                return;
            }
            if (auto it = declared_.find(s); it != declared_.end()) {
                if (it->second != NameKind::Form) {
                    static const std::map<NameKind, const char*> what = {{NameKind::Connection, "a connection"},
                                                                         {NameKind::Momentum, "a momentum field"},
                                                                         {NameKind::Pde, "a pde"}};
                    fail("'" + s + "' is " + what.at(it->second) + ", not a form", n->pos);
                }
                n->name_kind = NameKind::Form;
                return;
            }
            if (s.size() > 1 && s[0] == 'd' && is_coord(s.substr(1))) {
                n->name_kind = NameKind::Basis;
                return;
            }
            if (scope.pde && is_pde_symbol(s)) {
                n->name_kind = NameKind::PdeSymbol;
                return;
            }
            fail("undeclared identifier " + s, n->pos);
        }
        case Node::Kind::Call: {
            if (literal_builders().count(n->text)) fail(n->text + "(...) is not a form", n->pos);
            if (n->text == "sqrt") fail("sqrt is only allowed in numeric arguments", n->pos);
            if (n->children.size() != 1) fail(n->text + " takes exactly one argument", n->pos);
            break;
        }
        default: break;
        }
        for (auto& c : n->children) resolve_form_node(std::const_pointer_cast<Node>(c), scope);
    }

    void resolve_numeric(const MutNode& n)
    {
        switch (n->kind) {
        case Node::Kind::Number: return;
        case Node::Kind::Name:
            if (n->text == "pi") {
                n->name_kind = NameKind::Constant;
                return;
            }
            fail("expected a number but found '" + n->text + "'", n->pos);
        case Node::Kind::Tuple: fail("expected a number but found a tuple", n->pos);
        case Node::Kind::Call:
            if (!scalar_functions().count(n->text) && n->text != "sqrt") {
                fail("expected a number but found " + n->text + "(...)", n->pos);
            }
            if (n->children.size() != 1) fail(n->text + " takes exactly one argument", n->pos);
            break;
        default: break;
        }
        for (auto& c : n->children) resolve_numeric(std::const_pointer_cast<Node>(c));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<std::string> coords_;
    std::map<std::string, NameKind, std::less<>> declared_;
};

Expr to_expr(const Node& n)
{
    switch (n.kind) {
    case Node::Kind::Number: return Expr(n.number);
    case Node::Kind::Name:
        if (n.text == "pi") break;
        return Expr::symbol(n.text);
    case Node::Kind::Negate: return -to_expr(*n.children[0]);
    case Node::Kind::Binary: {
        const Expr a = to_expr(*n.children[0]);
        const Expr b = to_expr(*n.children[1]);
        if (n.text == "+") return a + b;
        if (n.text == "-") return a - b;
        if (n.text == "*") return a * b;
        if (n.text == "/") return a / b;
        const Expr e = simplify(b);
        if (!e.is_constant() || denominator(e.value()) != 1 || abs(e.value()) > 1000) {
            throw ParseError("exponent must be a small integer", n.pos.line, n.pos.column);
        }
        return pow(a, static_cast<int>(numerator(e.value())));
    }
    case Node::Kind::Call:
        if (n.children.size() == 1 && n.params.empty()) {
            const Expr x = to_expr(*n.children[0]);
            if (n.text == "sin") return sin(x);
            if (n.text == "cos") return cos(x);
            if (n.text == "exp") return exp(x);
            if (n.text == "ln") return ln(x);
        }
        break;
    case Node::Kind::Tuple: break;
    }
    throw ParseError("'" + to_source(n) + "' is not a scalar expression", n.pos.line, n.pos.column);
}

} // namespace

Expr parse_expression(std::string_view text)
{
    return to_expr(*Parser(text).lone_expression());
}

Script parse(std::string_view source)
{
    return Parser(source).run();
}

} // namespace forge::dsl
