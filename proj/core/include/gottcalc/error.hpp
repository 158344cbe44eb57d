#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gottcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (degree < 1, unsupported iteration count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed space expression or group literal.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::vector<std::string> expected = {})
      : Error(std::move(message)), position_(position), expected_(std::move(expected)) {}

  /// Zero-based byte offset into the input.
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Profile document failed schema or invariant validation, or a lookup named a
/// space/map the database does not contain.
class ProfileError : public Error {
 public:
  ProfileError(std::string path, const std::string& reason)
      : Error(path.empty() ? reason : path + ": " + reason), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A theorem's hypotheses (finiteness, simple connectivity) are not asserted by the profiles.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace gottcalc
