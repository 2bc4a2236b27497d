#include "sizebias/error.hpp"

namespace sizebias {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::ZeroMean: return "ZeroMean";
    case Errc::AtomPresent: return "AtomPresent";
    case Errc::NegativeMomentAtZero: return "NegativeMomentAtZero";
    case Errc::NoClosedForm: return "NoClosedForm";
    case Errc::NonpositiveScale: return "NonpositiveScale";
    case Errc::AtomAtZero: return "AtomAtZero";
    case Errc::NoSuccesses: return "NoSuccesses";
    case Errc::TailTooHeavy: return "TailTooHeavy";
    case Errc::ZeroMeanTerm: return "ZeroMeanTerm";
    case Errc::SupportOverflow: return "SupportOverflow";
    case Errc::ZeroInSupport: return "ZeroInSupport";
    case Errc::ZeroMeanComponent: return "ZeroMeanComponent";
    case Errc::ZeroSupportPoint: return "ZeroSupportPoint";
    case Errc::NonIntegerJump: return "NonIntegerJump";
    case Errc::ZeroAtOrigin: return "ZeroAtOrigin";
    case Errc::GapInSupport: return "GapInSupport";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::TruncationTooSevere: return "TruncationTooSevere";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::BadSampleSize: return "BadSampleSize";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::BadSubsetSize: return "BadSubsetSize";
    case Errc::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case Errc::HorizonTooShort: return "HorizonTooShort";
    case Errc::ConstantInput: return "ConstantInput";
    case Errc::NonzeroMean: return "NonzeroMean";
    case Errc::DomainError: return "DomainError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace sizebias
