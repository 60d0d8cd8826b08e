#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hgoe {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed something malformed: empty label, unknown id, duplicate docId.
class InputError : public Error {
 public:
  using Error::Error;
};

// A hyperedge kind/topology combination that the model forbids.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Missing or inconsistent resources for the requested index variant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed file. offset is the byte (binary) or line (text) where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgoe
