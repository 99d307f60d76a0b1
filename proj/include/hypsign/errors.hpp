#pragma once

#include <stdexcept>
#include <string>

namespace hypsign {

/// Base class for the domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient vanishes, so the polynomial has no sign pattern.
class ZeroCoefficient : public Error {
 public:
  explicit ZeroCoefficient(int index)
      : Error("coefficient of x^" + std::to_string(index) + " is zero"), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Two roots share a modulus.
class ModulusTie : public Error {
 public:
  using Error::Error;
};

/// A padded witness did not realize the predicted sign pattern / case.
class PredictionFailed : public Error {
 public:
  using Error::Error;
};

class NotHyperbolicAtStart : public Error {
 public:
  using Error::Error;
};

class MultipleRoot : public Error {
 public:
  using Error::Error;
};

class UnknownStep : public Error {
 public:
  using Error::Error;
};

}  // namespace hypsign
