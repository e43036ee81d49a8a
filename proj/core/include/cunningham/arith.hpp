#pragma once

#include <utility>
#include <vector>

#include "cunningham/integer.hpp"

namespace cunningham {

/// Complete factorization of a positive integer. Primes strictly
/// increasing, exponents positive; the empty list encodes 1.
struct PrimeFactorization {
  struct Entry {
    Integer prime;
    unsigned long exponent = 0;
    bool operator==(const Entry&) const = default;
  };

  std::vector<Entry> factors;

  Integer value() const;  // product of prime^exponent
  bool operator==(const PrimeFactorization&) const = default;
};

/// Deterministic primality test. Below 2^64 this is Miller-Rabin with the
/// fixed witness set {2,3,...,37}, which is exact for the whole word range;
/// above it a strong base-2 plus strong Lucas (Baillie-PSW) combination is
/// used. No randomness anywhere: repeated runs always agree.
bool is_prime(const Integer& n);

/// Default bit bound for factorize, overridable through the
/// CUNNINGHAM_FACTOR_BITS environment variable.
unsigned long factor_bit_guard();

/// Factors n >= 1 by trial division below a small bound followed by Brent's
/// cycle method on the remaining cofactors. Throws Errc::size_guard_exceeded
/// if a composite cofactor wider than guard_bits remains unsplit.
PrimeFactorization factorize(const Integer& n);
PrimeFactorization factorize(const Integer& n, unsigned long guard_bits);

/// p-adic valuation: the largest e with p^e | x. Negative x is valued by
/// |x|. Throws Errc::zero_valuation for x = 0.
unsigned long nu(const Integer& p, const Integer& x);

/// Greatest common divisor with the gcd(0, y) = y convention.
Integer gcd(const Integer& x, const Integer& y);

/// Number of distinct primes dividing a (a >= 1).
unsigned long distinct_prime_count(const Integer& a);

/// base^exp mod m for m >= 1.
Integer power_mod(const Integer& base, const Integer& exp, const Integer& m);

/// (1 + a + a^2 + ... + a^(n-1)) mod m. Uses a modular inverse of a-1 when
/// gcd(a-1, m) = 1 and otherwise the doubling recurrence
/// S(2k) = S(k)*(1 + a^k), so no division by a-1 is ever required.
Integer geometric_series_mod(const Integer& a, const Integer& n, const Integer& m);

}  // namespace cunningham
