#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace domrecon {

// Error taxonomy shared by every module. The CLI maps these onto exit codes:
// InputError/ContractError -> 1, ResourceError -> 3.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: out-of-range ids, malformed parameters.
class InputError : public Error {
public:
    using Error::Error;
};

// Malformed serialized input. `line` is 1-based (0 when unknown), `offset`
// is a byte offset into the stream (npos when unknown).
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset = std::string::npos)
        : InputError(what), line_(line), offset_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

// A documented precondition on otherwise well-formed input does not hold
// (e.g. a set passed as dominating is not).
class ContractError : public Error {
public:
    using Error::Error;
};

// A size guard or search budget was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An internal invariant failed. Always a bug in this library.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace domrecon
