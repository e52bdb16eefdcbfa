#pragma once

#include <stdexcept>
#include <string>

namespace zeroent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called with arguments outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A spec document failed to parse or validate; `path` is a JSON pointer.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace zeroent
