#include <charconv>
#include <cmath>
#include <optional>

#include "objlog/text_io.hpp"
#include "text_io_internal.hpp"

namespace objlog {

const char* token_kind_name(TokenKind kind) noexcept
{
    switch (kind) {
    case TokenKind::Atom: return "atom";
    case TokenKind::QuotedAtom: return "quoted_atom";
    case TokenKind::Variable: return "variable";
    case TokenKind::Integer: return "integer";
    case TokenKind::Float: return "float";
    case TokenKind::Punct: return "punct";
    }
    return "?";
}

namespace detail {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_punct(char c) { return c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|' || c == '.'; }

// Length of the UTF-8 sequence starting with lead byte c (1 for invalid bytes).
std::size_t utf8_length(unsigned char c)
{
    if (c >= 0xF0 && c < 0xF8) return 4;
    if (c >= 0xE0) return c < 0xF0 ? 3 : 1;
    if (c >= 0xC0) return 2;
    return 1;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    LexResult run()
    {
        LexResult result;
        try {
            while (skip_blank()) {
                result.tokens.push_back(next());
            }
        } catch (const ParseError& e) {
            result.error = e;
        }
        result.end = pos_;
        return result;
    }

private:
    bool at_end() const { return pos_.offset >= src_.size(); }
    char peek(std::size_t ahead = 0) const
    {
        std::size_t i = pos_.offset + ahead;
        return i < src_.size() ? src_[i] : '\0';
    }

    void advance()
    {
        char c = src_[pos_.offset++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++pos_.column;
        }
    }

    // Skips whitespace and comments; false at end of input.
    bool skip_blank()
    {
        while (!at_end()) {
            char c = peek();
            if (is_space(c)) {
                advance();
            } else if (c == '%') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                return true;
            }
        }
        return false;
    }

    Token finish(TokenKind kind, std::string text, SourcePos start) const
    {
        return Token{kind, std::move(text), start, pos_.offset};
    }

    std::string lexeme_from(const SourcePos& start) const
    {
        return std::string(src_.substr(start.offset, pos_.offset - start.offset));
    }

    Token next()
    {
        const SourcePos start = pos_;
        const char c = peek();
        if (is_lower(c) || is_upper(c) || c == '_') {
            while (!at_end() && is_alnum(peek())) advance();
            return finish(is_lower(c) ? TokenKind::Atom : TokenKind::Variable, lexeme_from(start), start);
        }
        if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
            return number(start);
        }
        if (c == '\'') {
            return quoted(start);
        }
        if (is_punct(c)) {
            advance();
            return finish(TokenKind::Punct, std::string(1, c), start);
        }
        std::size_t len = std::min(utf8_length(static_cast<unsigned char>(c)), src_.size() - start.offset);
        throw ParseError("illegal character", start, std::string(src_.substr(start.offset, len)));
    }

    Token number(const SourcePos& start)
    {
        if (peek() == '-') advance();
        while (is_digit(peek())) advance();
        bool is_float = false;
        if (peek() == '.' && is_digit(peek(1))) {
            is_float = true;
            advance();
            while (is_digit(peek())) advance();
            char e = peek();
            if (e == 'e' || e == 'E') {
                std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
                if (is_digit(peek(1 + sign))) {
                    advance();
                    if (sign) advance();
                    while (is_digit(peek())) advance();
                }
            }
        }
        std::string text = lexeme_from(start);
        const char* first = text.data();
        const char* last = text.data() + text.size();
        if (is_float) {
            double value = 0;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
                throw ParseError("float literal out of range", start, text);
            }
        } else {
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last) {
                throw ParseError("integer overflow", start, text);
            }
        }
        return finish(is_float ? TokenKind::Float : TokenKind::Integer, std::move(text), start);
    }

    Token quoted(const SourcePos& start)
    {
        advance();
        std::string text;
        for (;;) {
            if (at_end() || peek() == '\n') {
                throw ParseError("unterminated quoted atom", start, lexeme_from(start));
            }
            char c = peek();
            if (c == '\'') {
                if (peek(1) == '\'') {
                    text.push_back('\'');
                    advance();
                    advance();
                    continue;
                }
                advance();
                break;
            }
            if (c == '\\') {
                const SourcePos esc = pos_;
                char e = peek(1);
                switch (e) {
                case '\\': text.push_back('\\'); break;
                case '\'': text.push_back('\''); break;
                case 'n': text.push_back('\n'); break;
                case 't': text.push_back('\t'); break;
                default:
                    if (e == '\0' && pos_.offset + 1 >= src_.size()) {
                        throw ParseError("unterminated quoted atom", start, lexeme_from(start));
                    }
                    throw ParseError("unsupported escape sequence", esc,
                                     std::string(src_.substr(esc.offset, std::min<std::size_t>(2, src_.size() - esc.offset))));
                }
                advance();
                advance();
                continue;
            }
            text.push_back(c);
            advance();
        }
        if (text.empty()) {
            throw ParseError("empty quoted atom", start, "''");
        }
        return finish(TokenKind::QuotedAtom, std::move(text), start);
    }

    std::string_view src_;
    SourcePos pos_;
};

}  // namespace

LexResult lex(std::string_view text) { return Lexer(text).run(); }

}  // namespace detail

std::vector<Token> tokenize(std::string_view text)
{
    detail::LexResult result = detail::lex(text);
    if (result.error) {
        throw *result.error;
    }
    return std::move(result.tokens);
}

}  // namespace objlog
