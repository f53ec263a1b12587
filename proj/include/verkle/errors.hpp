#pragma once

#include <stdexcept>

namespace verkle {

/// Invalid caller-supplied argument (empty input, out-of-range index, reserved value).
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested size exceeds what the setup or memory bound allows.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Incompatible combination of configuration and setup.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Byte input that does not parse: bad magic, version, length, or group element.
class DecodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Proof whose component lists disagree in length with its stem.
class MalformedProofError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotFoundError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

} // namespace verkle
