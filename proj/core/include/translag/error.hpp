#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace translag {

// Error hierarchy. The CLI maps each family onto a process exit code:
// ConfigError -> 1, DataError (and subclasses) -> 2, IoError -> 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what, std::uint64_t records_written = 0)
      : Error(what), records_written_(records_written) {}

  std::uint64_t records_written() const noexcept { return records_written_; }

 private:
  std::uint64_t records_written_;
};

/// Malformed XML. The offset is measured in bytes of the decoded
/// (decompressed) document.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::uint64_t byte_offset)
      : DataError(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::uint64_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::uint64_t byte_offset_;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

class DomainError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace translag
