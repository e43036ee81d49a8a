#include "cunningham/certificate_io.hpp"

#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "cunningham/error.hpp"

using cunningham::Errc;
using cunningham::Error;
using cunningham::Integer;
using cunningham::LinearMap;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a cunningham::Error");
  return Errc::invalid_argument;
}

}  // namespace

TEST_SUITE_BEGIN("certificate_io");

TEST_CASE("serialization is byte-stable") {
  const auto cert = cunningham::tighten(LinearMap(2, 3), 32);
  const std::string expected =
      "{\n"
      "  \"a\": \"2\",\n"
      "  \"b\": \"3\",\n"
      "  \"fermat_case\": \"coprime_a_minus_1\",\n"
      "  \"prime\": \"11\",\n"
      "  \"source_index\": \"3\",\n"
      "  \"source_kind\": \"s_term\",\n"
      "  \"witness_index\": \"7\",\n"
      "  \"z\": \"32\"\n"
      "}\n";
  CHECK(cunningham::serialize_certificate(cert) == expected);
  CHECK(cunningham::serialize_certificate(cert) ==
        cunningham::serialize_certificate(cert));
}

TEST_CASE("root divisor documents omit source_index") {
  const auto cert = cunningham::root_divisor_witness(LinearMap(2, 1), 9);
  const std::string text = cunningham::serialize_certificate(cert);
  CHECK(text.find("source_index") == std::string::npos);
  CHECK(text.find("\"root_divisor\"") != std::string::npos);
}

TEST_CASE("parse round-trips every field") {
  const auto cert = cunningham::tighten(LinearMap(2, 3), 32);
  const auto fields = cunningham::parse_certificate(cunningham::serialize_certificate(cert));
  CHECK(fields.a == 2);
  CHECK(fields.b == 3);
  CHECK(fields.z == 32);
  CHECK(fields.prime == 11);
  CHECK(fields.source_kind == cunningham::SourceKind::s_term);
  CHECK(fields.source_index == Integer(3));
  CHECK(fields.fermat_case == cunningham::FermatCase::coprime_a_minus_1);
  CHECK(fields.witness_index == 7);
  CHECK(cunningham::verify_certificate(fields).ok());
  CHECK(cunningham::serialize_certificate(fields) ==
        cunningham::serialize_certificate(cert));
}

TEST_CASE("parse rejects malformed documents") {
  auto reject = [](const char* text) {
    return code_of([=] { cunningham::parse_certificate(text); });
  };
  CHECK(reject("") == Errc::parse_error);
  CHECK(reject("[]") == Errc::parse_error);
  CHECK(reject("{\"a\": \"2\"}") == Errc::parse_error);  // missing everything else
  // missing b
  CHECK(reject("{\"a\":\"2\",\"z\":\"32\",\"prime\":\"11\",\"source_kind\":\"s_term\","
               "\"source_index\":\"3\",\"fermat_case\":\"coprime_a_minus_1\","
               "\"witness_index\":\"7\"}") == Errc::parse_error);
  // a as a JSON number, not a decimal string
  CHECK(reject("{\"a\":2,\"b\":\"3\",\"z\":\"32\",\"prime\":\"11\",\"source_kind\":\"s_term\","
               "\"source_index\":\"3\",\"fermat_case\":\"coprime_a_minus_1\","
               "\"witness_index\":\"7\"}") == Errc::parse_error);
  // non-decimal digits
  CHECK(reject("{\"a\":\"2x\",\"b\":\"3\",\"z\":\"32\",\"prime\":\"11\",\"source_kind\":\"s_term\","
               "\"source_index\":\"3\",\"fermat_case\":\"coprime_a_minus_1\","
               "\"witness_index\":\"7\"}") == Errc::parse_error);
  // unknown source kind
  CHECK(reject("{\"a\":\"2\",\"b\":\"3\",\"z\":\"32\",\"prime\":\"11\",\"source_kind\":\"orbit\","
               "\"source_index\":\"3\",\"fermat_case\":\"coprime_a_minus_1\","
               "\"witness_index\":\"7\"}") == Errc::parse_error);
  // source_index forbidden on root_divisor
  CHECK(reject("{\"a\":\"2\",\"b\":\"1\",\"z\":\"9\",\"prime\":\"3\",\"source_kind\":\"root_divisor\","
               "\"source_index\":\"1\",\"fermat_case\":\"coprime_a_minus_1\","
               "\"witness_index\":\"2\"}") == Errc::parse_error);
  // unknown extra field
  CHECK(reject("{\"a\":\"2\",\"b\":\"1\",\"z\":\"9\",\"prime\":\"3\",\"source_kind\":\"root_divisor\","
               "\"fermat_case\":\"coprime_a_minus_1\",\"witness_index\":\"2\","
               "\"note\":\"hi\"}") == Errc::parse_error);
}

TEST_CASE("semantic defects parse fine and fail verification instead") {
  // a = 1 is a well-formed document but an invalid map.
  const auto fields = cunningham::parse_certificate(
      "{\"a\":\"1\",\"b\":\"3\",\"z\":\"32\",\"prime\":\"11\",\"source_kind\":\"s_term\","
      "\"source_index\":\"3\",\"fermat_case\":\"coprime_a_minus_1\","
      "\"witness_index\":\"7\"}");
  CHECK(cunningham::verify_certificate(fields).reason ==
        cunningham::VerifyFailure::invalid_map);
}

TEST_CASE("file round trip") {
  const std::string path = "certificate_io_test.json";
  const auto cert = cunningham::tighten(LinearMap(2, 3), 32);
  cunningham::write_certificate_file(path, cert);
  const auto fields = cunningham::read_certificate_file(path);
  CHECK(cunningham::verify_certificate(fields).ok());
  std::remove(path.c_str());
  CHECK(code_of([&] { cunningham::read_certificate_file(path); }) == Errc::parse_error);
}

TEST_SUITE_END();
