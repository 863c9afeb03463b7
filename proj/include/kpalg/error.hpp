#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kpalg {

/// Failure categories; the CLI maps each to its own exit code.
enum class ErrorKind { parse, semantic, verification, resource, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Syntax error with a 1-based position. `line` is 0 for single-line input.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t column, std::size_t line = 0)
        : Error(ErrorKind::parse, format(msg, column, line)), message_(msg), column_(column), line_(line) {}

    /// The message without the position prefix.
    const std::string& message() const noexcept { return message_; }
    std::size_t column() const noexcept { return column_; }
    std::size_t line() const noexcept { return line_; }

    /// Same error for text embedded at 0-based `offset` of line `line`.
    ParseError relocated(std::size_t offset, std::size_t line) const {
        return ParseError(message_, column_ + offset, line);
    }

private:
    static std::string format(const std::string& msg, std::size_t column, std::size_t line) {
        if (line == 0) return "parse error at column " + std::to_string(column) + ": " + msg;
        return "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
               ": " + msg;
    }

    std::string message_;
    std::size_t column_;
    std::size_t line_;
};

class SemanticError : public Error {
public:
    explicit SemanticError(const std::string& msg) : Error(ErrorKind::semantic, msg) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& msg) : Error(ErrorKind::resource, msg) {}
};

class VerificationError : public Error {
public:
    explicit VerificationError(const std::string& msg) : Error(ErrorKind::verification, msg) {}
};

/// Unreadable input or unwritable output.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

}  // namespace kpalg
