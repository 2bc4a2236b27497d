#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sizebias {

/// Failure categories raised by the library. Every precondition violation
/// maps to one of these; callers can branch on `Error::code()`.
enum class Errc {
  InvalidArgument,
  InvalidDistribution,
  ZeroMean,
  AtomPresent,
  NegativeMomentAtZero,
  NoClosedForm,
  NonpositiveScale,
  AtomAtZero,
  NoSuccesses,
  TailTooHeavy,
  ZeroMeanTerm,
  SupportOverflow,
  ZeroInSupport,
  ZeroMeanComponent,
  ZeroSupportPoint,
  NonIntegerJump,
  ZeroAtOrigin,
  GapInSupport,
  GridTooCoarse,
  TruncationTooSevere,
  QuadratureFailure,
  BadSampleSize,
  ZeroDenominator,
  BadSubsetSize,
  TooLargeToEnumerate,
  HorizonTooShort,
  ConstantInput,
  NonzeroMean,
  DomainError,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace sizebias
