#include "cunningham/error.hpp"

namespace cunningham {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_multiplier: return "InvalidMultiplier";
    case Errc::invalid_offset: return "InvalidOffset";
    case Errc::shared_map_factor: return "SharedMapFactor";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::size_guard_exceeded: return "SizeGuardExceeded";
    case Errc::zero_valuation: return "ZeroValuation";
    case Errc::not_prime: return "NotPrime";
    case Errc::no_eligible_prime: return "NoEligiblePrime";
    case Errc::shared_factor: return "SharedFactor";
    case Errc::below_threshold: return "BelowThreshold";
    case Errc::no_candidate: return "NoCandidate";
    case Errc::not_divisor_of_a: return "NotDivisorOfA";
    case Errc::all_truncated: return "RangeAllTruncated";
    case Errc::invalid_range: return "InvalidRange";
    case Errc::invalid_steps: return "InvalidSteps";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace cunningham
