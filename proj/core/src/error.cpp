#include <forge/error.hpp>

namespace forge {

DomainError::DomainError(std::string what, std::string subexpression)
    : Error(what + " in '" + subexpression + "'")
    , subexpression_(std::move(subexpression))
{
}

ParseError::ParseError(std::string message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message)
    , message_(std::move(message))
    , line_(line)
    , column_(column)
{
}

} // namespace forge
