#pragma once

#include <stdexcept>
#include <string>

namespace perctrunc {

// Bad user input or contract violation at an API boundary. CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A parameter search that cannot succeed within the given horizon. CLI exit code 3.
class UnsatisfiableError : public std::runtime_error {
public:
  explicit UnsatisfiableError(const std::string& what) : std::runtime_error(what) {}
};

// File read/write failure. CLI exit code 4.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perctrunc
