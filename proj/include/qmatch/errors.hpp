#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmatch {

// Malformed arguments: out-of-range vertices, bad partitions, odd n where even is required.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a documented size cap (exhaustive enumeration, Tutte oracle, graph6 order).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Graph outside the theorem's hypothesis (disconnected, odd order, n < 4).
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace qmatch
