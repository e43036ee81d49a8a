#pragma once

#include <optional>
#include <vector>

#include "cunningham/integer.hpp"

namespace cunningham {

/// The linear map f(z) = a*z + b. Constructor enforces a >= 2, b >= 1 and
/// gcd(a, b) = 1 with a distinct error code per violation; every function
/// in the library may therefore assume a well-formed map.
class LinearMap {
 public:
  LinearMap(Integer a, Integer b);

  const Integer& a() const noexcept { return a_; }
  const Integer& b() const noexcept { return b_; }

  bool operator==(const LinearMap&) const = default;

 private:
  Integer a_;
  Integer b_;
};

/// f(z) = a*z + b. Always exceeds z.
Integer apply(const LinearMap& f, const Integer& z);

/// n-fold application through the closed form
///   f^n(z) = a^n*z + b*(a^n - 1)/(a - 1).
/// iterate(f, z, 0) = z.
Integer iterate(const LinearMap& f, const Integer& z, unsigned long n);

/// f^n(z) mod m (m >= 2) without ever forming f^n(z); the geometric part is
/// evaluated modulo m, by inverse of a-1 when it exists and by the doubling
/// recurrence otherwise.
Integer iterate_mod(const LinearMap& f, const Integer& z, const Integer& n,
                    const Integer& m);

/// (x - b)/a when x > b and a | (x - b); nullopt otherwise. The returned
/// preimage is always a positive integer.
std::optional<Integer> inverse(const LinearMap& f, const Integer& x);

/// The orbit {f(z), ..., f^l(z)} of a root z with every element prime and
/// f^(l+1)(z) composite. The root itself is not part of the list and need
/// not be prime.
struct RootedChain {
  LinearMap map;
  Integer root;
  std::vector<Integer> elements;      // f(z) .. f^length(z), all prime
  unsigned long length = 0;           // elements.size()
  std::optional<Integer> terminator;  // first composite image; absent if truncated
  bool truncated = false;             // hit max_steps before a composite
};

/// Builds the rooted chain by forward iteration and primality tests, up to
/// max_steps elements. Roots with gcd(z, b) > 1 short-circuit to length 0
/// without a single primality test: every image is then composite.
RootedChain rooted_chain(const LinearMap& f, const Integer& z,
                         unsigned long max_steps = 64);

/// A chain of primes through p that is inextensible in both directions:
/// f^-1(head) is composite, nonpositive or not an integer, and f(last) is
/// composite.
struct CompleteChain {
  LinearMap map;
  std::vector<Integer> elements;
  unsigned long lambda = 0;  // element count
};

/// Extends p backwards while the preimage is a positive prime and forwards
/// while the image is prime. Throws Errc::not_prime if p is not prime.
CompleteChain complete_chain(const LinearMap& f, const Integer& p);

}  // namespace cunningham
