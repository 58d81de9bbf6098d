#pragma once

#include <stdexcept>
#include <string>

namespace mmtsp {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data: non-finite coordinates, unknown ids, overlapping R_i.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A neighborhood primitive was asked to do something impossible, e.g.
// remove a target that is not on the tour.
class InvalidMove : public Error {
 public:
  using Error::Error;
};

// Exact solvers refuse inputs above their size caps.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace mmtsp
