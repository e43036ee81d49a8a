#include "cunningham/certify.hpp"

#include <stdexcept>
#include <tuple>

#include "cunningham/error.hpp"

namespace cunningham {

SSequence s_terms(const LinearMap& f, const Integer& z, unsigned long count) {
  if (count < 1) raise(Errc::invalid_argument, "s_terms requires count >= 1");
  SSequence seq{f, z, {}};
  seq.terms.reserve(count);
  Integer term = z - f.b();   // s_1
  Integer step = f.a() * f.b();  // a^n * b, starting at n = 1
  seq.terms.push_back(term);
  for (unsigned long n = 1; n < count; ++n) {
    term -= step;
    step *= f.a();
    seq.terms.push_back(term);
  }
  return seq;
}

Integer s_term_threshold(const LinearMap& f) {
  const unsigned long k = distinct_prime_count(f.a());
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), f.a().get_mpz_t(), k + 2);
  Integer geo;
  mpz_divexact(geo.get_mpz_t(), Integer(power - 1).get_mpz_t(),
               Integer(f.a() - 1).get_mpz_t());
  return f.b() * geo;
}

namespace {

// Least positive residue of -i modulo m, in 1..m: a residue of zero maps
// to m itself, never to 0.
Integer residue_of_minus(const Integer& i, const Integer& m) {
  Integer t = i % m;
  return (t == 0) ? m : Integer(m - t);
}

FermatCase fermat_case_for(const LinearMap& f, const Integer& p) {
  return ((f.a() - 1) % p == 0) ? FermatCase::divides_a_minus_1
                                : FermatCase::coprime_a_minus_1;
}

Certificate make_root_certificate(const LinearMap& f, const Integer& z,
                                  const Integer& p) {
  const FermatCase fc = fermat_case_for(f, p);
  const Integer witness = (fc == FermatCase::divides_a_minus_1) ? p : Integer(p - 1);
  return Certificate{f, z, p, SourceKind::root_divisor, 0, fc, witness};
}

Certificate make_s_term_certificate(const LinearMap& f, const Integer& z,
                                    const Integer& p, const Integer& i) {
  const FermatCase fc = fermat_case_for(f, p);
  const Integer modulus = (fc == FermatCase::divides_a_minus_1) ? p : Integer(p - 1);
  return Certificate{f, z, p, SourceKind::s_term, i, fc, residue_of_minus(i, modulus)};
}

}  // namespace

Certificate root_divisor_witness(const LinearMap& f, const Integer& z) {
  if (z < 2) raise(Errc::invalid_argument, "root_divisor_witness requires z >= 2");
  if (gcd(z, f.b()) > 1) {
    raise(Errc::shared_factor, "gcd(z, b) = " + to_decimal(gcd(z, f.b())) +
                                   " > 1: every image of " + to_decimal(z) +
                                   " is composite, length 0 needs no witness");
  }
  for (const auto& [p, e] : factorize(z).factors) {
    if (f.a() % p != 0) return make_root_certificate(f, z, p);
  }
  raise(Errc::no_eligible_prime,
        "every prime factor of " + to_decimal(z) + " divides a = " + to_decimal(f.a()));
}

Certificate s_term_witness(const LinearMap& f, const Integer& z) {
  // Threshold first: a shared factor is only reported for roots the scan
  // could otherwise handle.
  const Integer m = s_term_threshold(f);
  if (z <= m) {
    raise(Errc::below_threshold, "z = " + to_decimal(z) +
                                     " does not exceed the scan threshold M = " +
                                     to_decimal(m));
  }
  if (gcd(z, f.b()) > 1) {
    raise(Errc::shared_factor, "gcd(z, b) > 1: length 0 needs no witness");
  }

  const unsigned long k = distinct_prime_count(f.a());
  const SSequence seq = s_terms(f, z, k + 1);
  for (unsigned long idx = 0; idx < seq.terms.size(); ++idx) {
    const Integer& term = seq.terms[idx];  // positive: z > M bounds every partial sum
    if (term <= 1) continue;
    for (const auto& [p, e] : factorize(term).factors) {
      if (f.a() % p == 0) continue;
      return make_s_term_certificate(f, z, p, Integer(idx + 1));
    }
  }
  // z > M guarantees an eligible prime among s_1..s_(k+1).
  throw std::logic_error("s-term scan found no eligible prime above threshold");
}

Certificate tighten(const LinearMap& f, const Integer& z) {
  if (z < 2) raise(Errc::invalid_argument, "tighten requires z >= 2");
  if (gcd(z, f.b()) > 1) {
    raise(Errc::shared_factor, "gcd(z, b) > 1: length 0 needs no witness");
  }

  const Integer image = apply(f, z);
  std::optional<Certificate> best;
  auto consider = [&](const Certificate& cand) {
    if (!best) {
      best = cand;
      return;
    }
    auto key = [](const Certificate& c) {
      return std::tie(c.witness_index, c.prime, c.source_index);
    };
    if (key(cand) < key(*best)) best = cand;
  };

  for (const auto& [p, e] : factorize(z).factors) {
    if (f.a() % p == 0 || p >= image) continue;
    consider(make_root_certificate(f, z, p));
  }

  // Walk s_n while |s_n| stays within [2, z]; terms decrease strictly, so
  // once a term is negative and beyond z in magnitude the window is done.
  Integer term = z - f.b();
  Integer step = f.a() * f.b();
  for (Integer i = 1;; ++i) {
    const Integer mag = abs(term);
    if (term < 0 && mag > z) break;
    if (mag >= 2 && mag <= z) {
      for (const auto& [p, e] : factorize(mag).factors) {
        if (f.a() % p == 0 || p >= image) continue;
        consider(make_s_term_certificate(f, z, p, i));
      }
    }
    term -= step;
    step *= f.a();
  }

  if (!best) {
    raise(Errc::no_candidate, "no eligible root divisor or s-term prime for z = " +
                                  to_decimal(z));
  }
  return *best;
}

ValuationTrace stability_trace(const LinearMap& f, const Integer& z,
                               const Integer& p, unsigned long count) {
  if (!is_prime(p)) raise(Errc::not_prime, "stability trace requires a prime p");
  if (f.a() % p != 0) {
    raise(Errc::not_divisor_of_a,
          to_decimal(p) + " does not divide a = " + to_decimal(f.a()));
  }
  if (count < 1) raise(Errc::invalid_argument, "stability_trace requires count >= 1");

  const SSequence seq = s_terms(f, z, count);
  const unsigned long nu_a = nu(p, f.a());

  ValuationTrace trace{f, z, p, {}, std::nullopt};
  trace.values.reserve(count);
  for (const Integer& term : seq.terms) {
    if (term == 0) {
      trace.values.push_back(std::nullopt);
    } else {
      trace.values.push_back(nu(p, term));
    }
  }
  // p is n-stable when nu_p(s_(n+1)) = n*nu_p(a); at most one such n exists.
  for (unsigned long n = 1; n < count; ++n) {
    if (trace.values[n] && *trace.values[n] == n * nu_a) {
      trace.stable_index = n;
      break;
    }
  }
  return trace;
}

const char* verify_failure_name(VerifyFailure reason) noexcept {
  switch (reason) {
    case VerifyFailure::none: return "none";
    case VerifyFailure::invalid_map: return "invalid_map";
    case VerifyFailure::prime_not_prime: return "prime_not_prime";
    case VerifyFailure::prime_divides_multiplier: return "prime_divides_multiplier";
    case VerifyFailure::source_not_divisor: return "source_not_divisor";
    case VerifyFailure::case_mismatch: return "case_mismatch";
    case VerifyFailure::witness_not_positive: return "witness_not_positive";
    case VerifyFailure::residue_nonzero: return "residue_nonzero";
    case VerifyFailure::prime_not_below_image: return "prime_not_below_image";
  }
  return "unknown";
}

CertificateFields to_fields(const Certificate& c) {
  CertificateFields fields;
  fields.a = c.map.a();
  fields.b = c.map.b();
  fields.z = c.root;
  fields.prime = c.prime;
  fields.source_kind = c.source_kind;
  if (c.source_kind == SourceKind::s_term) fields.source_index = c.source_index;
  fields.fermat_case = c.fermat_case;
  fields.witness_index = c.witness_index;
  return fields;
}

VerifyResult verify_certificate(const CertificateFields& c) {
  if (c.a < 2 || c.b < 1 || gcd(c.a, c.b) != 1) {
    return {VerifyFailure::invalid_map};
  }
  if (!is_prime(c.prime)) return {VerifyFailure::prime_not_prime};
  if (c.a % c.prime == 0) return {VerifyFailure::prime_divides_multiplier};

  if (c.source_kind == SourceKind::root_divisor) {
    if (c.z % c.prime != 0) return {VerifyFailure::source_not_divisor};
  } else {
    if (!c.source_index || *c.source_index < 1) {
      return {VerifyFailure::source_not_divisor};
    }
    // s_i = z - b*(1 + a + ... + a^(i-1)); test divisibility modulo p so
    // arbitrarily large indices stay cheap.
    Integer rem = (c.z - c.b * geometric_series_mod(c.a, *c.source_index, c.prime)) % c.prime;
    if (rem != 0) return {VerifyFailure::source_not_divisor};
  }

  const bool divides = ((c.a - 1) % c.prime == 0);
  if (divides != (c.fermat_case == FermatCase::divides_a_minus_1)) {
    return {VerifyFailure::case_mismatch};
  }
  if (c.witness_index < 1) return {VerifyFailure::witness_not_positive};

  const LinearMap map(c.a, c.b);  // invariants already checked above
  if (iterate_mod(map, c.z, c.witness_index, c.prime) != 0) {
    return {VerifyFailure::residue_nonzero};
  }
  if (c.prime >= apply(map, c.z)) return {VerifyFailure::prime_not_below_image};
  return {};
}

VerifyResult verify_certificate(const Certificate& c) {
  return verify_certificate(to_fields(c));
}

}  // namespace cunningham
