#pragma once

#include <stdexcept>
#include <string>

namespace belyi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// input is not a dessin of the supported shape
class InvalidDessin : public Error {
 public:
  using Error::Error;
};

// failures of the floating-point stages
class NumericError : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public NumericError {
 public:
  using NumericError::NumericError;
};

class SeedRejected : public NumericError {
 public:
  using NumericError::NumericError;
};

class NewtonFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class RecognitionFailure : public Error {
 public:
  using Error::Error;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class SearchLimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace belyi
