#pragma once

#include <forge/dsl/ast.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace forge::dsl {

struct Token {
    enum class Kind { Identifier, Number, Symbol, End };

    Kind kind = Kind::End;
    std::string text;
    SourcePos pos;
    std::size_t offset = 0; ///< byte offset of the first character
};

/// Splits UTF-8 source into tokens. '#' starts a comment running to the end
/// of the line. Throws ParseError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view source);

} // namespace forge::dsl
