#pragma once

#include <stdexcept>
#include <string>

namespace robsel {

// Violated precondition or exceeded size guard of an operation.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: instance files, rational literals, source problems.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace robsel
