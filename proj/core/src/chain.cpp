#include "cunningham/chain.hpp"

#include "cunningham/arith.hpp"
#include "cunningham/error.hpp"

namespace cunningham {

LinearMap::LinearMap(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ < 2) {
    raise(Errc::invalid_multiplier,
          "map multiplier a must be at least 2 (got " + to_decimal(a_) + ")");
  }
  if (b_ < 1) {
    raise(Errc::invalid_offset,
          "map offset b must be at least 1 (got " + to_decimal(b_) + ")");
  }
  if (gcd(a_, b_) != 1) {
    raise(Errc::shared_map_factor,
          "map coefficients must be coprime; gcd(" + to_decimal(a_) + ", " +
              to_decimal(b_) + ") = " + to_decimal(gcd(a_, b_)));
  }
}

Integer apply(const LinearMap& f, const Integer& z) { return f.a() * z + f.b(); }

Integer iterate(const LinearMap& f, const Integer& z, unsigned long n) {
  // f^n(z) = a^n*z + b*(a^n - 1)/(a - 1); the division is exact.
  Integer an;
  mpz_pow_ui(an.get_mpz_t(), f.a().get_mpz_t(), n);
  Integer geo;
  mpz_divexact(geo.get_mpz_t(), Integer(an - 1).get_mpz_t(),
               Integer(f.a() - 1).get_mpz_t());
  return an * z + f.b() * geo;
}

Integer iterate_mod(const LinearMap& f, const Integer& z, const Integer& n,
                    const Integer& m) {
  if (m < 2) raise(Errc::invalid_argument, "iterate_mod requires modulus >= 2");
  if (n < 0) raise(Errc::invalid_argument, "iterate_mod requires n >= 0");
  Integer zm = z % m;
  if (zm < 0) zm += m;
  Integer term = power_mod(f.a(), n, m) * zm + f.b() % m * geometric_series_mod(f.a(), n, m);
  return term % m;
}

std::optional<Integer> inverse(const LinearMap& f, const Integer& x) {
  if (x <= f.b()) return std::nullopt;
  Integer diff = x - f.b();
  if (!mpz_divisible_p(diff.get_mpz_t(), f.a().get_mpz_t())) return std::nullopt;
  Integer pre;
  mpz_divexact(pre.get_mpz_t(), diff.get_mpz_t(), f.a().get_mpz_t());
  return pre;
}

RootedChain rooted_chain(const LinearMap& f, const Integer& z,
                         unsigned long max_steps) {
  if (z < 1) raise(Errc::invalid_argument, "rooted_chain requires root >= 1");
  if (max_steps < 1) raise(Errc::invalid_argument, "rooted_chain requires max_steps >= 1");

  RootedChain rc{f, z, {}, 0, std::nullopt, false};

  // A factor shared by z and b divides every image, so the chain is empty
  // and no primality test is needed.
  if (gcd(z, f.b()) > 1) {
    rc.terminator = apply(f, z);
    return rc;
  }

  Integer x = apply(f, z);
  for (;;) {
    if (!is_prime(x)) {
      rc.terminator = x;
      break;
    }
    rc.elements.push_back(x);
    if (rc.elements.size() >= max_steps) {
      rc.truncated = true;
      break;
    }
    x = apply(f, x);
  }
  rc.length = rc.elements.size();
  return rc;
}

CompleteChain complete_chain(const LinearMap& f, const Integer& p) {
  if (!is_prime(p)) {
    raise(Errc::not_prime, to_decimal(p) + " is not prime");
  }

  std::vector<Integer> backwards;
  Integer cur = p;
  for (;;) {
    auto pre = inverse(f, cur);
    if (!pre || !is_prime(*pre)) break;
    cur = *pre;
    backwards.push_back(cur);
  }

  CompleteChain cc{f, {}, 0};
  cc.elements.assign(backwards.rbegin(), backwards.rend());
  cc.elements.push_back(p);
  Integer next = apply(f, p);
  while (is_prime(next)) {
    cc.elements.push_back(next);
    next = apply(f, next);
  }
  cc.lambda = cc.elements.size();
  return cc;
}

}  // namespace cunningham
