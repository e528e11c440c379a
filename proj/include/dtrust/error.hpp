#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtrust {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Random graph generation gave up after `attempts` draws.
class GenerationFailure : public Error {
 public:
  GenerationFailure(const std::string& what, std::size_t attempts)
      : Error(what), attempts_(attempts) {}
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

class UndefinedDiameter : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class BoundUndefined : public Error {
 public:
  using Error::Error;
};

class DegenerateMargin : public Error {
 public:
  using Error::Error;
};

class ConfigRejected : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtrust
