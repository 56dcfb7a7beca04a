#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace repfilter {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed identifier, label or parameter value.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Operation violates a graph precondition (unknown profile, self-edge, ...).
class GraphError : public Error {
public:
    using Error::Error;
};

// Serialized input (snapshot, log line, config) could not be decoded.
class ParseError : public Error {
public:
    using Error::Error;
};

// An event that cannot be processed; carries its sequence number.
class EventError : public Error {
public:
    EventError(std::uint64_t seq, const std::string& what)
        : Error("event seq " + std::to_string(seq) + ": " + what), seq_(seq) {}

    std::uint64_t seq() const noexcept { return seq_; }

private:
    std::uint64_t seq_;
};

} // namespace repfilter
