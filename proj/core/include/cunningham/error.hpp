#pragma once

#include <stdexcept>
#include <string>

namespace cunningham {

/// Failure conditions raised by the library. Each condition that a caller
/// may want to branch on gets its own code; the CLI maps codes to exit
/// statuses and messages.
enum class Errc {
  invalid_multiplier,   // map coefficient a < 2
  invalid_offset,       // map coefficient b < 1
  shared_map_factor,    // gcd(a, b) > 1
  invalid_argument,     // precondition violated (z < 1, count < 1, ...)
  size_guard_exceeded,  // factorization input beyond the bit guard
  zero_valuation,       // nu(p, 0) requested
  not_prime,            // operation requires a prime input
  no_eligible_prime,    // every prime factor of z divides a
  shared_factor,        // gcd(z, b) > 1: the orbit is composite from step one
  below_threshold,      // z <= M, the s-term scan is not guaranteed
  no_candidate,         // witness scan window exhausted with no candidate
  not_divisor_of_a,     // stability trace requires p | a
  all_truncated,        // every chain in the range hit max_steps
  invalid_range,        // lo > hi
  invalid_steps,        // max_steps < min_length + 1
  parse_error,          // malformed certificate document
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace cunningham
