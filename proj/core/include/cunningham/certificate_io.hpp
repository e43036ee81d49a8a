#pragma once

#include <string>
#include <string_view>

#include "cunningham/certify.hpp"

namespace cunningham {

/// Serializes a certificate as a JSON document with every integer rendered
/// as a decimal string, so the format has no magnitude ceiling. Keys are
/// emitted in sorted order and the text ends with a newline; the bytes are
/// identical across runs.
///
/// Fields: a, b, z, prime, source_kind ("root_divisor" | "s_term"),
/// source_index (present only for s_term), fermat_case ("divides_a_minus_1"
/// | "coprime_a_minus_1"), witness_index.
std::string serialize_certificate(const Certificate& c);
std::string serialize_certificate(const CertificateFields& fields);

/// Strict parse of the document above. Unknown keys, missing keys, wrong
/// types, non-decimal digits and a source_index on a root_divisor document
/// all raise Errc::parse_error. Semantic problems (a composite prime, a
/// wrong residue) are left to verify_certificate.
CertificateFields parse_certificate(std::string_view text);

/// File helpers; read failures and parse failures raise Errc::parse_error.
void write_certificate_file(const std::string& path, const Certificate& c);
CertificateFields read_certificate_file(const std::string& path);

}  // namespace cunningham
