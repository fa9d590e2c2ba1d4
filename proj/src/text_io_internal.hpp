#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "objlog/text_io.hpp"

namespace objlog::detail {

struct LexResult {
    std::vector<Token> tokens;
    // Set when lexing stopped early; tokens holds everything before it.
    std::optional<ParseError> error;
    // Position just past the last consumed character.
    SourcePos end;
};

LexResult lex(std::string_view text);

}  // namespace objlog::detail
