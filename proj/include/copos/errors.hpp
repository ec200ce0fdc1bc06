#pragma once

#include <stdexcept>
#include <string>

namespace copos {

enum class Err {
  DimensionMismatch,
  Unsupported,
  NotInCone,
  SingularMatrix,
  NotInvertible,
  NotSemipositive,
  ExtremeRaysUnknown,
  BadInput,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::Unsupported: return "Unsupported";
    case Err::NotInCone: return "NotInCone";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::NotInvertible: return "NotInvertible";
    case Err::NotSemipositive: return "NotSemipositive";
    case Err::ExtremeRaysUnknown: return "ExtremeRaysUnknown";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace copos
