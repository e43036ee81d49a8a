#include "cunningham/certificate_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cunningham/error.hpp"

namespace cunningham {

namespace {

const char* source_kind_name(SourceKind kind) {
  return kind == SourceKind::root_divisor ? "root_divisor" : "s_term";
}

const char* fermat_case_name(FermatCase fc) {
  return fc == FermatCase::divides_a_minus_1 ? "divides_a_minus_1"
                                             : "coprime_a_minus_1";
}

[[noreturn]] void bad_document(const std::string& why) {
  raise(Errc::parse_error, "certificate document: " + why);
}

Integer require_integer(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) bad_document(std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_string()) bad_document(std::string("field '") + key + "' must be a decimal string");
  auto parsed = parse_decimal(v.get_ref<const std::string&>());
  if (!parsed) bad_document(std::string("field '") + key + "' is not a decimal integer");
  return *parsed;
}

}  // namespace

std::string serialize_certificate(const CertificateFields& fields) {
  nlohmann::json doc;
  doc["a"] = to_decimal(fields.a);
  doc["b"] = to_decimal(fields.b);
  doc["z"] = to_decimal(fields.z);
  doc["prime"] = to_decimal(fields.prime);
  doc["source_kind"] = source_kind_name(fields.source_kind);
  if (fields.source_kind == SourceKind::s_term) {
    doc["source_index"] = to_decimal(fields.source_index.value_or(0));
  }
  doc["fermat_case"] = fermat_case_name(fields.fermat_case);
  doc["witness_index"] = to_decimal(fields.witness_index);
  return doc.dump(2) + "\n";
}

std::string serialize_certificate(const Certificate& c) {
  return serialize_certificate(to_fields(c));
}

CertificateFields parse_certificate(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    bad_document("not a JSON object");
  }

  CertificateFields fields;
  const std::string kind = [&] {
    if (!doc.contains("source_kind") || !doc.at("source_kind").is_string()) {
      bad_document("missing or non-string field 'source_kind'");
    }
    return doc.at("source_kind").get<std::string>();
  }();
  if (kind == "root_divisor") {
    fields.source_kind = SourceKind::root_divisor;
  } else if (kind == "s_term") {
    fields.source_kind = SourceKind::s_term;
  } else {
    bad_document("unknown source_kind '" + kind + "'");
  }

  const bool wants_index = fields.source_kind == SourceKind::s_term;
  for (const auto& [key, value] : doc.items()) {
    static const char* const known[] = {"a", "b", "z", "prime", "source_kind",
                                        "source_index", "fermat_case",
                                        "witness_index"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) bad_document("unknown field '" + key + "'");
  }
  if (!wants_index && doc.contains("source_index")) {
    bad_document("source_index is not allowed for a root_divisor source");
  }

  fields.a = require_integer(doc, "a");
  fields.b = require_integer(doc, "b");
  fields.z = require_integer(doc, "z");
  fields.prime = require_integer(doc, "prime");
  fields.witness_index = require_integer(doc, "witness_index");
  if (wants_index) fields.source_index = require_integer(doc, "source_index");

  if (!doc.contains("fermat_case") || !doc.at("fermat_case").is_string()) {
    bad_document("missing or non-string field 'fermat_case'");
  }
  const std::string fc = doc.at("fermat_case").get<std::string>();
  if (fc == "divides_a_minus_1") {
    fields.fermat_case = FermatCase::divides_a_minus_1;
  } else if (fc == "coprime_a_minus_1") {
    fields.fermat_case = FermatCase::coprime_a_minus_1;
  } else {
    bad_document("unknown fermat_case '" + fc + "'");
  }
  return fields;
}

void write_certificate_file(const std::string& path, const Certificate& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::parse_error, "cannot open '" + path + "' for writing");
  out << serialize_certificate(c);
  if (!out.flush()) raise(Errc::parse_error, "write to '" + path + "' failed");
}

CertificateFields read_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_certificate(buffer.str());
}

}  // namespace cunningham
