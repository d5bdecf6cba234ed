#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stocklot {

/// Broad failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
    Input,        ///< malformed or empty input data
    MissingData,  ///< required item, price or parameter is absent
    Domain,       ///< argument outside a function's mathematical domain
    Contract,     ///< caller broke a documented precondition (e.g. unsorted ranking)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Row-level ledger parse failure; line numbers are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorKind::Input, "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace detail
}  // namespace stocklot
