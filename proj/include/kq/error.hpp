#pragma once

#include <stdexcept>
#include <string>

namespace kq {

enum class Errc {
  InvalidArgument,
  SingularMatrix,
  Inconsistent,
  DimensionMismatch,
  InvalidPartition,
  NotContained,
  LengthMismatch,
  RankDeficient,
  InvalidRank,
  OutOfYoung,
  BadWordLength,
  BadN,
  SourceVertex,
  SingularGauge,
  NotStable,
  RelationsViolated,
  NotInImage,
  PathSpaceTooLarge,
  MalformedInput,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::NotContained: return "NotContained";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::InvalidRank: return "InvalidRank";
    case Errc::OutOfYoung: return "OutOfYoung";
    case Errc::BadWordLength: return "BadWordLength";
    case Errc::BadN: return "BadN";
    case Errc::SourceVertex: return "SourceVertex";
    case Errc::SingularGauge: return "SingularGauge";
    case Errc::NotStable: return "NotStable";
    case Errc::RelationsViolated: return "RelationsViolated";
    case Errc::NotInImage: return "NotInImage";
    case Errc::PathSpaceTooLarge: return "PathSpaceTooLarge";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers which
/// precondition or verification step failed.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kq
