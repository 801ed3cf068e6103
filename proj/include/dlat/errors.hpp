#pragma once

#include <stdexcept>
#include <string>

namespace dlat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (rationals, JSON documents, walks in files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Operation undefined for the given values, e.g. inverting a zero parameter.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotABond : public Error {
 public:
  using Error::Error;
};

class NotACircuit : public Error {
 public:
  using Error::Error;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlat
