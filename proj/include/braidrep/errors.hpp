#pragma once

#include <stdexcept>
#include <string>

namespace braidrep {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The closure of the braid does not have exactly two components.
class NotTwoComponents : public std::domain_error {
 public:
  explicit NotTwoComponents(int components)
      : std::domain_error("braid closure has " + std::to_string(components) +
                          " components, expected 2"),
        components_(components) {}
  int components() const { return components_; }

 private:
  int components_;
};

// A sign vector whose product over some cycle is not -1.
class InvalidEpsilon : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotAFixedPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ReducibleInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NormalFormNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace braidrep
