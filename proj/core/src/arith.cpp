#include "cunningham/arith.hpp"

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

#include "cunningham/error.hpp"

namespace cunningham {

std::optional<Integer> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t start = (text[0] == '-') ? 1 : 0;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  Integer out;
  if (mpz_set_str(out.get_mpz_t(), std::string(text).c_str(), 10) != 0) {
    return std::nullopt;
  }
  return out;
}

Integer PrimeFactorization::value() const {
  Integer v = 1;
  for (const auto& [p, e] : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

namespace {

constexpr unsigned kTrialBound = 10'000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialBound, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < kTrialBound; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % m);
}

std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Strong probable-prime test for one base.
bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = pow_mod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// The first twelve primes witness every composite below 3.3*10^24, well
// past the 64-bit range, so this is exact (not probabilistic) here.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (!strong_probable_prime_u64(n, a, d, s)) return false;
  }
  return true;
}

Integer mod_nonneg(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

bool strong_probable_prime_base2(const Integer& n) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x = power_mod(2, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Strong Lucas test with the standard parameter choice: the first
// D in 5, -7, 9, -11, ... with (D/n) = -1, then P = 1, Q = (1-D)/4.
bool strong_lucas_probable_prime(const Integer& n) {
  // The scan terminates for every non-square n (the Jacobi character is
  // nontrivial then); perfect squares were rejected by the caller.
  Integer d_param;
  long mag = 5;
  int sign = 1;
  for (;;) {
    d_param = Integer(sign * mag);
    int j = mpz_jacobi(d_param.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return false;  // |D| < n here, so n shares a factor with D
    mag += 2;
    sign = -sign;
  }

  const Integer q = (1 - d_param) / 4;
  const Integer q_mod = mod_nonneg(q, n);
  const Integer d_mod = mod_nonneg(d_param, n);

  Integer d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // Halve modulo the odd n.
  auto halve = [&n](Integer v) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
    return v;
  };

  // Walk the bits of d below the leading one, maintaining (U_k, V_k, Q^k).
  Integer u = 1, v = 1, qk = q_mod;  // k = 1, P = 1
  long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
  for (long i = bits - 2; i >= 0; --i) {
    u = u * v % n;
    v = mod_nonneg(v * v - 2 * qk, n);
    qk = qk * qk % n;
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      Integer u1 = halve(mod_nonneg(u + v, n));
      Integer v1 = halve(mod_nonneg(d_mod * u + v, n));
      u = u1;
      v = v1;
      qk = qk * q_mod % n;
    }
  }

  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = mod_nonneg(v * v - 2 * qk, n);
    if (v == 0) return true;
    qk = qk * qk % n;
  }
  return false;
}

// Baillie-PSW for n past the word range: n is odd here and larger than
// every trial prime squared.
bool is_prime_mpz(const Integer& n) {
  for (std::uint32_t p : small_primes()) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (!strong_probable_prime_base2(n)) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  return strong_lucas_probable_prime(n);
}

std::uint64_t gcd_u64(std::uint64_t x, std::uint64_t y) {
  while (y) {
    std::uint64_t t = x % y;
    x = y;
    y = t;
  }
  return x;
}

// Brent's cycle-finding variant of the rho method. Returns a nontrivial
// factor, or n itself when the constant c fails (caller bumps c).
std::uint64_t brent_rho_u64(std::uint64_t n, std::uint64_t c) {
  std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
  const std::uint64_t batch = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
    for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
      ys = y;
      const std::uint64_t lim = std::min(batch, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = (mul_mod(y, y, n) + c) % n;
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = gcd_u64(q, n);
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = (mul_mod(ys, ys, n) + c) % n;
      g = gcd_u64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

Integer brent_rho_mpz(const Integer& n, unsigned long c) {
  Integer y = 2, q = 1, g = 1, x, ys;
  unsigned long r = 1;
  const unsigned long batch = 128;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
    for (unsigned long k = 0; k < r && g == 1; k += batch) {
      ys = y;
      const unsigned long lim = std::min(batch, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void split_factor(const Integer& m, unsigned long guard_bits,
                  std::map<Integer, unsigned long>& out) {
  if (m == 1) return;
  if (is_prime(m)) {
    ++out[m];
    return;
  }
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > guard_bits) {
    raise(Errc::size_guard_exceeded,
          "composite cofactor " + to_decimal(m) + " exceeds the " +
              std::to_string(guard_bits) + "-bit factorization guard");
  }
  Integer d;
  if (mpz_fits_ulong_p(m.get_mpz_t()) &&
      mpz_sizeinbase(m.get_mpz_t(), 2) <= 63) {
    std::uint64_t n64 = mpz_get_ui(m.get_mpz_t());
    std::uint64_t f = n64;
    for (std::uint64_t c = 1; f == n64; ++c) f = brent_rho_u64(n64, c);
    d = Integer(static_cast<unsigned long>(f));
  } else {
    d = m;
    for (unsigned long c = 1; d == m || d == 1; ++c) d = brent_rho_mpz(m, c);
  }
  split_factor(d, guard_bits, out);
  split_factor(m / d, guard_bits, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && mpz_fits_ulong_p(n.get_mpz_t())) {
    return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  }
  return is_prime_mpz(n);
}

unsigned long factor_bit_guard() {
  if (const char* env = std::getenv("CUNNINGHAM_FACTOR_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 8) return v;
  }
  return 512;
}

PrimeFactorization factorize(const Integer& n) {
  return factorize(n, factor_bit_guard());
}

PrimeFactorization factorize(const Integer& n, unsigned long guard_bits) {
  if (n < 1) raise(Errc::invalid_argument, "factorize requires n >= 1");
  std::map<Integer, unsigned long> acc;
  Integer m = n;
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++acc[Integer(p)];
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  split_factor(m, guard_bits, acc);
  PrimeFactorization result;
  result.factors.reserve(acc.size());
  for (const auto& [p, e] : acc) result.factors.push_back({p, e});
  return result;
}

unsigned long nu(const Integer& p, const Integer& x) {
  if (x == 0) raise(Errc::zero_valuation, "nu(p, 0) is undefined");
  if (p < 2) raise(Errc::invalid_argument, "nu requires a prime p");
  Integer reduced, ax = abs(x);
  return mpz_remove(reduced.get_mpz_t(), ax.get_mpz_t(), p.get_mpz_t());
}

Integer gcd(const Integer& x, const Integer& y) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

unsigned long distinct_prime_count(const Integer& a) {
  if (a < 1) raise(Errc::invalid_argument, "distinct_prime_count requires a >= 1");
  return factorize(a).factors.size();
}

Integer power_mod(const Integer& base, const Integer& exp, const Integer& m) {
  if (m < 1) raise(Errc::invalid_argument, "power_mod requires m >= 1");
  if (exp < 0) raise(Errc::invalid_argument, "power_mod requires exp >= 0");
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer geometric_series_mod(const Integer& a, const Integer& n, const Integer& m) {
  if (m < 1) raise(Errc::invalid_argument, "geometric_series_mod requires m >= 1");
  if (n < 0) raise(Errc::invalid_argument, "geometric_series_mod requires n >= 0");
  if (m == 1 || n == 0) return 0;
  if (a == 1) return mod_nonneg(n, m);

  if (gcd(a - 1, m) == 1) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(mod_nonneg(a - 1, m)).get_mpz_t(),
               m.get_mpz_t());
    return mod_nonneg((power_mod(a, n, m) - 1) * inv, m);
  }

  // Doubling recurrence S(2k) = S(k)*(1 + a^k); no division by a-1.
  const Integer am = mod_nonneg(a, m);
  Integer sum = 0, pow = 1;  // S(0), a^0
  long bits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (long i = bits - 1; i >= 0; --i) {
    sum = sum * (1 + pow) % m;
    pow = pow * pow % m;
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      sum = (sum + pow) % m;
      pow = pow * am % m;
    }
  }
  return sum;
}

}  // namespace cunningham
