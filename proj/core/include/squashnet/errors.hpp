#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace squashnet {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold for the given input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A quantile level the activation cannot attain (bounded-range tables).
class UnattainableLevelError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

/// Malformed file or byte stream.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t byte_offset = 0)
        : Error(what), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_ = 0;
};

/// A cover target that no candidate covers.
class InfeasibleCoverError : public InvalidInputError {
public:
    InfeasibleCoverError(const std::string& what, int target_index)
        : InvalidInputError(what), target_index_(target_index) {}

    int target_index() const noexcept { return target_index_; }

private:
    int target_index_ = -1;
};

/// A constructor's own post-assembly evaluation check failed. Signals
/// tolerance breakdown rather than bad input.
class ConstructionError : public Error {
public:
    using Error::Error;
};

}  // namespace squashnet
