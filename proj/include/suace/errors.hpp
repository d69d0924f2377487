#pragma once

#include <stdexcept>
#include <string>

namespace suace {

// Bad parameter values (non-positive sizes, out-of-range fractions, ...).
// The CLI maps this family to exit code 1.
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// Anything that went wrong talking to the filesystem or decoding bytes.
// The CLI maps this family to exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// The bytes were readable but are not a format we accept.
class FormatError : public IoError {
public:
    explicit FormatError(const std::string& what) : IoError(what) {}
};

// Valid container, but a sample depth we do not process (only 8-bit gray).
class UnsupportedDepthError : public FormatError {
public:
    explicit UnsupportedDepthError(const std::string& what) : FormatError(what) {}
};

// Header promised more payload than the file holds.
class TruncationError : public FormatError {
public:
    explicit TruncationError(const std::string& what) : FormatError(what) {}
};

} // namespace suace
