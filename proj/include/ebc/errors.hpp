#pragma once

#include <stdexcept>
#include <string>

namespace ebc {

// Base for every failure raised by the library. Callers that only care about
// "something went wrong in ebc" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero field element") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotInnovative : public Error {
 public:
  NotInnovative() : Error("vector is not innovative to this tracker") {}
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class TooManyForms : public Error {
 public:
  using Error::Error;
};

class EmptySupport : public Error {
 public:
  EmptySupport() : Error("support index set is empty") {}
};

class EmptyInnovativeSet : public Error {
 public:
  EmptyInnovativeSet() : Error("no innovative encoding vector exists") {}
};

class ZeroRow : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ebc
