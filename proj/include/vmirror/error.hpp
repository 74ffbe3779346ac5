#pragma once

#include <stdexcept>
#include <string>

namespace vmirror {

/// Malformed or inconsistent input (CLI exit code 1).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  InputError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A metric is mathematically undefined for the given graph or data (CLI exit code 2).
class UndefinedError : public std::runtime_error {
 public:
  explicit UndefinedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vmirror
