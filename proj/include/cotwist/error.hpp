#pragma once

#include <stdexcept>
#include <string>

namespace cotwist {

enum class ErrorCode {
  NotPrime,
  DegreeTooLarge,
  NoSubfieldRelation,
  ZeroElement,
  ModuliNotCoprime,
  GroupTooLarge,
  AutOrderMismatch,
  NotAnAutomorphism,
  ClosureTooLarge,
  PreconditionFailed,
  FieldTooLarge,
  ShapeMismatch,
  UnsupportedCharacteristic,
  UnsupportedCombination,
  NoSuitableT,
  InvalidInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cotwist
