#pragma once

#include <optional>
#include <vector>

#include "cunningham/arith.hpp"
#include "cunningham/chain.hpp"
#include "cunningham/integer.hpp"

namespace cunningham {

/// The backward-orbit numerators attached to a map and root:
///   s_1 = z - b,   s_(n+1) = s_n - a^n*b,
/// equivalently s_n = z - b*(a^n - 1)/(a - 1). Terms are signed and
/// strictly decreasing; whenever a^n | s_n and s_n > 0, s_n / a^n is the
/// n-fold preimage of z.
struct SSequence {
  LinearMap map;
  Integer root;
  std::vector<Integer> terms;  // s_1 .. s_count
};

SSequence s_terms(const LinearMap& f, const Integer& z, unsigned long count);

/// The scan threshold M = b + a*b + ... + a^(k+1)*b, where k counts the
/// distinct primes of a. For any root z > M some term s_i with i <= k+1
/// has a prime factor that does not divide a, so an s-term witness always
/// exists above M.
Integer s_term_threshold(const LinearMap& f);

enum class SourceKind { root_divisor, s_term };
enum class FermatCase { divides_a_minus_1, coprime_a_minus_1 };

/// A compositeness certificate: the prime p divides f^n(z) at the witness
/// index n while p < f(z) <= f^n(z), so f^n(z) is composite and the chain
/// length obeys l(z) < n. Anyone can re-check it with one modular
/// evaluation; no chain iteration or primality testing of chain elements
/// is involved.
struct Certificate {
  LinearMap map;
  Integer root;              // z
  Integer prime;             // p, never a divisor of a
  SourceKind source_kind;    // where p came from
  Integer source_index;      // i with p | s_i; meaningful for s_term only
  FermatCase fermat_case;    // whether p | a - 1
  Integer witness_index;     // n with p | f^n(z)
};

/// Certificate from the smallest prime factor p of z that does not divide
/// a. The witness index is p when p | a-1 and p-1 otherwise (Fermat).
/// Requires z >= 2 and gcd(z, b) = 1 (Errc::shared_factor), and at least
/// one eligible prime factor (Errc::no_eligible_prime).
Certificate root_divisor_witness(const LinearMap& f, const Integer& z);

/// Certificate from the first term s_i (i = 1..k+1) with a prime factor
/// p that does not divide a; within a term the smallest such p is taken.
/// The witness index is the least positive residue of -i modulo p (when
/// p | a-1) or modulo p-1 (otherwise); a zero residue maps to the modulus
/// itself. Requires z > M (Errc::below_threshold, checked first) and
/// gcd(z, b) = 1 (Errc::shared_factor).
Certificate s_term_witness(const LinearMap& f, const Integer& z);

/// Enumerates every candidate certificate -- all eligible prime factors of
/// z plus all prime factors p of |s_i| over the window |s_i| in [2, z] --
/// and returns the one with the smallest witness index, tie-broken by
/// smaller prime and then smaller term index (the root divisor ranks as
/// index 0). Requires z >= 2 and gcd(z, b) = 1; throws Errc::no_candidate
/// when the window holds nothing eligible.
Certificate tighten(const LinearMap& f, const Integer& z);

/// The valuations nu_p(s_n) for a prime p | a. The first branch of the
/// valuation dichotomy pins nu_p at n*nu_p(a) forever after; stable_index
/// records the unique n with nu_p(s_(n+1)) = n*nu_p(a) when it falls inside
/// the recorded window.
struct ValuationTrace {
  LinearMap map;
  Integer root;
  Integer prime;
  std::vector<std::optional<unsigned long>> values;  // nu_p(s_n), n = 1..count; nullopt at s_n = 0
  std::optional<unsigned long> stable_index;
};

ValuationTrace stability_trace(const LinearMap& f, const Integer& z,
                               const Integer& p, unsigned long count);

enum class VerifyFailure {
  none,
  invalid_map,                 // a < 2, b < 1 or gcd(a, b) > 1
  prime_not_prime,             // p fails is_prime
  prime_divides_multiplier,    // p | a
  source_not_divisor,          // p does not divide z (resp. s_i), or i < 1
  case_mismatch,               // fermat_case disagrees with p | a-1
  witness_not_positive,        // n < 1
  residue_nonzero,             // f^n(z) mod p != 0
  prime_not_below_image,       // p >= f(z), compositeness not implied
};

const char* verify_failure_name(VerifyFailure reason) noexcept;

struct VerifyResult {
  VerifyFailure reason = VerifyFailure::none;
  bool ok() const noexcept { return reason == VerifyFailure::none; }
  explicit operator bool() const noexcept { return ok(); }
};

/// Raw certificate fields as read from a document, before any invariant is
/// trusted. verify_certificate validates the map itself, so a document with
/// a = 1 is reported invalid rather than unparseable.
struct CertificateFields {
  Integer a;
  Integer b;
  Integer z;
  Integer prime;
  SourceKind source_kind = SourceKind::root_divisor;
  std::optional<Integer> source_index;  // present iff s_term
  FermatCase fermat_case = FermatCase::coprime_a_minus_1;
  Integer witness_index;
};

CertificateFields to_fields(const Certificate& c);

/// Re-executes every check the certificate rests on: map invariants,
/// primality of p, p coprime to a, the source divisibility (s_i is tested
/// modulo p through the geometric series, so arbitrarily large indices cost
/// O(log i)), the Fermat case tag, the witness residue and p < f(z).
/// Never throws; failures come back as a reason code.
VerifyResult verify_certificate(const CertificateFields& fields);
VerifyResult verify_certificate(const Certificate& c);

}  // namespace cunningham
