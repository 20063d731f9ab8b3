#pragma once

#include <forge/expr.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace forge::dsl {

struct SourcePos {
    int line = 1;
    int column = 1;
};

/// How a bare identifier was resolved when the script was parsed.
enum class NameKind {
    Coordinate, ///< x
    Basis,      ///< dx
    Form,
    Connection,
    Momentum,
    Pde,
    PdeSymbol, ///< u, p1..pn inside a pde declaration
    Parameter, ///< bound by curve[...] / map[...]
    Constant,  ///< pi
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Number, Name, Negate, Binary, Call, Tuple };

    Kind kind = Kind::Number;
    SourcePos pos;
    /// Number literal text, identifier, call name, or binary operator.
    std::string text;
    Rational number;
    NameKind name_kind = NameKind::Coordinate;
    /// Parameters bound by curve[...] / map[...] calls.
    std::vector<std::string> params;
    /// Further bracket arguments after the parameters (curve bounds).
    std::vector<NodePtr> bracket;
    std::vector<NodePtr> children;
};

/// Structural equality ignoring source positions.
bool same_structure(const Node& a, const Node& b);

/// Re-parseable source text.
std::string to_source(const Node& n);

struct CoordsDecl {
    std::vector<std::string> names;
};

struct FormDecl {
    std::string name;
    NodePtr value;
};

struct ConnectionEntry {
    int upper = 0; ///< one-based, as written
    int lower1 = 0;
    int lower2 = 0;
    NodePtr value;
};

struct ConnectionDecl {
    std::string name;
    std::vector<ConnectionEntry> entries;
};

struct MomentumDecl {
    std::string name;
    std::vector<NodePtr> components;
};

struct PdeDecl {
    std::string name;
    NodePtr value;
};

struct Command {
    std::string name;
    std::vector<NodePtr> args;
};

struct Statement {
    SourcePos pos;
    /// Whitespace-normalized source text without the trailing ';'.
    std::string echo;
    std::variant<CoordsDecl, FormDecl, ConnectionDecl, MomentumDecl, PdeDecl, Command> body;

    bool is_command() const { return std::holds_alternative<Command>(body); }
};

bool same_structure(const Statement& a, const Statement& b);

/// Canonical source of a statement, including the trailing ';'.
std::string to_source(const Statement& s);

struct Script {
    std::vector<std::string> coords;
    std::vector<Statement> statements;
};

} // namespace forge::dsl
