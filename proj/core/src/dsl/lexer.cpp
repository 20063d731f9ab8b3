#include <forge/dsl/lexer.hpp>
#include <forge/error.hpp>

#include <cctype>

namespace forge::dsl {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](std::size_t k) {
        for (; k > 0 && i < src.size(); --k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col; // count code points, not continuation bytes
            }
        }
    };

    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }

        Token t;
        t.pos = {line, col};
        t.offset = i;
        std::size_t j = i;
        if (ident_start(c)) {
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Token::Kind::Identifier;
        } else if (digit(c) || (c == '.' && j + 1 < src.size() && digit(src[j + 1]))) {
            while (j < src.size() && digit(src[j])) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && digit(src[k])) {
                    while (k < src.size() && digit(src[k])) ++k;
                    j = k;
                }
            }
            if (j < src.size() && ident_start(src[j])) {
                throw ParseError("malformed number '" + std::string(src.substr(i, j - i + 1)) + "'", line, col);
            }
            t.kind = Token::Kind::Number;
        } else if (std::string_view(";,(){}[]=+-*/^").find(c) != std::string_view::npos) {
            j = i + 1;
            t.kind = Token::Kind::Symbol;
        } else {
            std::size_t len = 1;
            const auto uc = static_cast<unsigned char>(c);
            if (uc >= 0xF0) len = 4;
            else if (uc >= 0xE0) len = 3;
            else if (uc >= 0xC0) len = 2;
            throw ParseError("unexpected character '" + std::string(src.substr(i, len)) + "'", line, col);
        }
        t.text = std::string(src.substr(i, j - i));
        advance(j - i);
        out.push_back(std::move(t));
    }

    Token end;
    end.kind = Token::Kind::End;
    end.pos = {line, col};
    end.offset = src.size();
    out.push_back(end);
    return out;
}

} // namespace forge::dsl
