#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace objlog {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violation of a Term construction invariant (empty atom, NaN float, ...).
class TermError : public Error {
public:
    using Error::Error;
};

/// 1-based line/column plus the 0-based byte offset into the source text.
struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

class ParseError : public Error {
public:
    ParseError(std::string message, SourcePos pos, std::string lexeme);

    const std::string& message() const noexcept { return message_; }
    const SourcePos& pos() const noexcept { return pos_; }
    const std::string& lexeme() const noexcept { return lexeme_; }

private:
    std::string message_;
    SourcePos pos_;
    std::string lexeme_;
};

/// Registry construction or schema loading failure.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Object <-> term conversion failure.
class ConversionError : public Error {
public:
    using Error::Error;
};

/// Knowledge-base contract violation or persistence failure.
class KbError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public KbError {
public:
    using KbError::KbError;
};

}  // namespace objlog
