#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "objlog/error.hpp"
#include "objlog/term.hpp"

namespace objlog {

enum class TokenKind { Atom, QuotedAtom, Variable, Integer, Float, Punct };

const char* token_kind_name(TokenKind kind) noexcept;

struct Token {
    TokenKind kind;
    // Decoded text: escapes in quoted atoms are already resolved.
    std::string text;
    SourcePos pos;
    // Byte offset one past the last source character of the token.
    std::size_t end_offset = 0;
};

// Splits Prolog source into tokens, dropping whitespace and % comments.
// Throws ParseError on an illegal character, an unterminated quoted atom, an
// unsupported escape, or a numeric literal that does not fit.
std::vector<Token> tokenize(std::string_view text);

// Parses exactly one term; a single trailing '.' is permitted.
Term parse_term(std::string_view text);

// Parses a sequence of '.'-terminated clauses. Variable ids are scoped per
// clause and numbered from 0 in first-occurrence order.
std::vector<Term> parse_program(std::string_view text);

struct Clause {
    Term term;
    SourcePos pos;
};

std::vector<Clause> parse_clauses(std::string_view text);

struct RecoveredProgram {
    std::vector<Clause> clauses;
    std::vector<ParseError> errors;
};

// Like parse_clauses, but resumes after each malformed clause so that every
// problem is reported. A lexical error ends the scan.
RecoveredProgram parse_clauses_recovering(std::string_view text);

// Single-line canonical text; parse_term maps it back to an equal term as long
// as variable ids follow first-occurrence numbering.
std::string print_canonical(const Term& t);

// True when the atom must be quoted, i.e. it is not [a-z][a-zA-Z0-9_]*.
bool atom_needs_quotes(std::string_view text);

std::string format_atom(std::string_view text);

// Shortest round-tripping digits, always with a decimal point.
std::string format_float(double value);

}  // namespace objlog
