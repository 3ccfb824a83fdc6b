#pragma once

#include <stdexcept>
#include <string>

namespace rprime {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's domain (non-prime modulus, s <= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Query beyond the range a table or enumeration was built for.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Exact count does not fit the result integer type.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Brute-force work would exceed the configured iteration budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Splitting requested at a prime that may divide the index [O_K : Z[theta]].
class IndexDivisorError : public Error {
 public:
  using Error::Error;
};

// Requested zeta accuracy needs more primes than the configured cap.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace rprime
