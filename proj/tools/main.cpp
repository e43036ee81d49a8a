// cunningham -- chains under f(z) = a*z + b, compositeness certificates,
// valuation traces and range search, with machine-readable output.
//
// Exit codes: 0 success, 1 semantic failure (no certificate found, invalid
// certificate), 2 usage or parse errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cunningham/arith.hpp"
#include "cunningham/certificate_io.hpp"
#include "cunningham/certify.hpp"
#include "cunningham/chain.hpp"
#include "cunningham/error.hpp"
#include "cunningham/search.hpp"

namespace {

using cunningham::Errc;
using cunningham::Error;
using cunningham::Integer;
using cunningham::LinearMap;

constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Integer parse_flag(const std::string& text, const char* flag) {
  auto value = cunningham::parse_decimal(text);
  if (!value) {
    throw UsageError(std::string(flag) + " expects a decimal integer, got '" + text + "'");
  }
  return *value;
}

unsigned long parse_count_flag(const std::string& text, const char* flag) {
  const Integer v = parse_flag(text, flag);
  if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t())) {
    throw UsageError(std::string(flag) + " is out of range");
  }
  return mpz_get_ui(v.get_mpz_t());
}

std::string map_text(const LinearMap& f) {
  return "f(z) = " + cunningham::to_decimal(f.a()) + "*z + " +
         cunningham::to_decimal(f.b());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
  out << text;
  if (!out.flush()) throw UsageError("write to '" + out_path + "' failed");
}

std::string join_elements(const std::vector<Integer>& elements) {
  std::string line;
  for (const Integer& e : elements) {
    if (!line.empty()) line += ' ';
    line += cunningham::to_decimal(e);
  }
  return line;
}

nlohmann::json elements_json(const std::vector<Integer>& elements) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Integer& e : elements) arr.push_back(cunningham::to_decimal(e));
  return arr;
}

// ---- chain ---------------------------------------------------------------

int run_chain(const std::string& a, const std::string& b, const std::string& root,
              const std::string& steps, const std::string& format) {
  const LinearMap f(parse_flag(a, "--a"), parse_flag(b, "--b"));
  const Integer z = parse_flag(root, "--root");
  const unsigned long max_steps = parse_count_flag(steps, "--max-steps");
  const auto rc = cunningham::rooted_chain(f, z, max_steps);

  if (format == "json") {
    nlohmann::json doc;
    doc["a"] = cunningham::to_decimal(f.a());
    doc["b"] = cunningham::to_decimal(f.b());
    doc["root"] = cunningham::to_decimal(z);
    doc["elements"] = elements_json(rc.elements);
    doc["length"] = std::to_string(rc.length);
    if (rc.terminator) doc["terminator"] = cunningham::to_decimal(*rc.terminator);
    doc["truncated"] = rc.truncated;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "map: " << map_text(f) << "\n";
  std::cout << "root: " << cunningham::to_decimal(z) << "\n";
  std::cout << "length: " << rc.length << "\n";
  std::cout << "elements:" << (rc.elements.empty() ? " (none)" : " " + join_elements(rc.elements)) << "\n";
  if (rc.truncated) {
    std::cout << "truncated after " << rc.length << " elements; no terminator\n";
  } else {
    std::cout << "terminator: " << cunningham::to_decimal(*rc.terminator) << "\n";
  }
  return 0;
}

// ---- certify ---------------------------------------------------------------

int run_certify(const std::string& a, const std::string& b, const std::string& z_str,
                bool tight, const std::string& out_path) {
  const LinearMap f(parse_flag(a, "--a"), parse_flag(b, "--b"));
  const Integer z = parse_flag(z_str, "--z");

  cunningham::Certificate cert = [&] {
    if (tight) return cunningham::tighten(f, z);
    // Default path: root-divisor witness first, then the s-term scan.
    // A shared factor dooms both routes, so it is reported directly.
    try {
      return cunningham::root_divisor_witness(f, z);
    } catch (const Error& e) {
      if (e.code() != Errc::no_eligible_prime) throw;
      return cunningham::s_term_witness(f, z);
    }
  }();

  emit(cunningham::serialize_certificate(cert), out_path);
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::string& path) {
  const auto fields = cunningham::read_certificate_file(path);
  const auto result = cunningham::verify_certificate(fields);
  if (result.ok()) {
    std::cout << "VALID\n";
    return 0;
  }
  std::cout << "INVALID " << cunningham::verify_failure_name(result.reason) << "\n";
  return kExitSemantic;
}

// ---- stability -------------------------------------------------------------

int run_stability(const std::string& a, const std::string& b, const std::string& z_str,
                  const std::string& prime, const std::string& terms,
                  const std::string& format) {
  const LinearMap f(parse_flag(a, "--a"), parse_flag(b, "--b"));
  const Integer z = parse_flag(z_str, "--z");
  const Integer p = parse_flag(prime, "--prime");
  const unsigned long count = parse_count_flag(terms, "--terms");

  const auto trace = cunningham::stability_trace(f, z, p, count);
  const auto seq = cunningham::s_terms(f, z, count);

  if (format == "json") {
    nlohmann::json doc;
    doc["a"] = cunningham::to_decimal(f.a());
    doc["b"] = cunningham::to_decimal(f.b());
    doc["root"] = cunningham::to_decimal(z);
    doc["prime"] = cunningham::to_decimal(p);
    nlohmann::json rows = nlohmann::json::array();
    for (unsigned long n = 0; n < count; ++n) {
      nlohmann::json row;
      row["n"] = std::to_string(n + 1);
      row["s"] = cunningham::to_decimal(seq.terms[n]);
      row["nu"] = trace.values[n] ? nlohmann::json(std::to_string(*trace.values[n]))
                                  : nlohmann::json(nullptr);
      rows.push_back(row);
    }
    doc["terms"] = rows;
    doc["stable_index"] = trace.stable_index
                              ? nlohmann::json(std::to_string(*trace.stable_index))
                              : nlohmann::json(nullptr);
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "map: " << map_text(f) << "\n";
  std::cout << "root: " << cunningham::to_decimal(z)
            << "  prime: " << cunningham::to_decimal(p) << "\n";
  std::cout << "n\ts_n\tnu\n";
  for (unsigned long n = 0; n < count; ++n) {
    std::cout << (n + 1) << '\t' << cunningham::to_decimal(seq.terms[n]) << '\t';
    if (trace.values[n]) {
      std::cout << *trace.values[n];
    } else {
      std::cout << '-';
    }
    std::cout << '\n';
  }
  if (trace.stable_index) {
    std::cout << "stable at n = " << *trace.stable_index << "\n";
  } else {
    std::cout << "no stable index observed\n";
  }
  return 0;
}

// ---- search ----------------------------------------------------------------

int run_search(const std::string& a, const std::string& b, const std::string& lo,
               const std::string& hi, const std::string& min_len,
               const std::string& steps, unsigned jobs, bool progress,
               const std::string& out_path) {
  cunningham::SearchTask task{LinearMap(parse_flag(a, "--a"), parse_flag(b, "--b")),
                              parse_flag(lo, "--lo"), parse_flag(hi, "--hi"),
                              parse_count_flag(min_len, "--min-len"),
                              parse_count_flag(steps, "--max-steps")};
  cunningham::ProgressFn report = nullptr;
  if (progress) {
    report = [](unsigned long done, unsigned long total) {
      std::fprintf(stderr, "searched %lu/%lu roots\n", done, total);
    };
  }
  const auto rows = cunningham::search_range(task, jobs, report);
  emit(cunningham::to_csv(rows), out_path);
  return 0;
}

// ---- complete --------------------------------------------------------------

int run_complete(const std::string& a, const std::string& b, const std::string& p_str,
                 const std::string& format) {
  const LinearMap f(parse_flag(a, "--a"), parse_flag(b, "--b"));
  const Integer p = parse_flag(p_str, "--p");
  const auto cc = cunningham::complete_chain(f, p);

  if (format == "json") {
    nlohmann::json doc;
    doc["a"] = cunningham::to_decimal(f.a());
    doc["b"] = cunningham::to_decimal(f.b());
    doc["elements"] = elements_json(cc.elements);
    doc["lambda"] = std::to_string(cc.lambda);
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  std::cout << "map: " << map_text(f) << "\n";
  std::cout << "elements: " << join_elements(cc.elements) << "\n";
  std::cout << "lambda: " << cc.lambda << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Cunningham chains under f(z) = a*z + b: "
               "chain computation, compositeness certificates, verification, "
               "valuation traces and range search"};
  app.set_version_flag("--version", "cunningham 0.1.0");
  app.require_subcommand(1);

  std::string a = "2", b = "1", z, root, prime, path, out_path;
  std::string lo, hi, min_len = "0", terms = "8", max_steps = "64";
  std::string format = "text";
  bool tight = false, progress = false;
  unsigned jobs = 1;

  auto add_map_flags = [&](CLI::App* cmd) {
    cmd->add_option("--a", a, "map multiplier a (a >= 2)")->required();
    cmd->add_option("--b", b, "map offset b (b >= 1, coprime to a)")->required();
  };
  auto add_format_flag = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  CLI::App* chain = app.add_subcommand("chain", "rooted chain of a root z");
  add_map_flags(chain);
  chain->add_option("--root", root, "chain root z (z >= 1)")->required();
  chain->add_option("--max-steps", max_steps, "iteration cap")->capture_default_str();
  add_format_flag(chain);

  CLI::App* certify = app.add_subcommand(
      "certify", "compositeness certificate bounding the chain length of z");
  add_map_flags(certify);
  certify->add_option("--z", z, "root to certify (z >= 2)")->required();
  certify->add_flag("--tight", tight,
                    "scan all root divisors and s-terms for the smallest witness");
  certify->add_option("--out", out_path, "write the certificate to a file");

  CLI::App* verify = app.add_subcommand("verify", "check a certificate document");
  verify->add_option("path", path, "certificate file")->required();

  CLI::App* stability = app.add_subcommand(
      "stability", "p-adic valuations of the s-sequence for a prime p | a");
  add_map_flags(stability);
  stability->add_option("--z", z, "root")->required();
  stability->add_option("--prime", prime, "prime divisor of a")->required();
  stability->add_option("--terms", terms, "number of terms")->capture_default_str();
  add_format_flag(stability);

  CLI::App* search = app.add_subcommand("search", "scan a root range for long chains");
  add_map_flags(search);
  search->add_option("--lo", lo, "first root")->required();
  search->add_option("--hi", hi, "last root")->required();
  search->add_option("--min-len", min_len, "report chains at least this long")
      ->capture_default_str();
  search->add_option("--max-steps", max_steps, "iteration cap per root")
      ->capture_default_str();
  search->add_option("--jobs", jobs, "worker count")->capture_default_str();
  search->add_flag("--progress", progress, "report progress on standard error");
  search->add_option("--out", out_path, "write CSV to a file");

  CLI::App* complete = app.add_subcommand(
      "complete", "maximal chain through a prime, extended both ways");
  add_map_flags(complete);
  complete->add_option("--p", prime, "prime element")->required();
  add_format_flag(complete);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(chain)) return run_chain(a, b, root, max_steps, format);
    if (app.got_subcommand(certify)) {
      try {
        return run_certify(a, b, z, tight, out_path);
      } catch (const Error& e) {
        switch (e.code()) {
          case Errc::shared_factor:
          case Errc::below_threshold:
          case Errc::no_eligible_prime:
          case Errc::no_candidate:
          case Errc::size_guard_exceeded:
            std::cerr << "no certificate: " << errc_name(e.code()) << ": "
                      << e.what() << "\n";
            return kExitSemantic;
          default:
            throw;
        }
      }
    }
    if (app.got_subcommand(verify)) return run_verify(path);
    if (app.got_subcommand(stability))
      return run_stability(a, b, z, prime, terms, format);
    if (app.got_subcommand(search))
      return run_search(a, b, lo, hi, min_len, max_steps, jobs, progress, out_path);
    if (app.got_subcommand(complete)) return run_complete(a, b, prime, format);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
