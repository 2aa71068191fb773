#include "nfdiforge/term.hpp"

#include <cctype>

#include "nfdiforge/vocab.hpp"

namespace nfdiforge {
namespace {

bool has_whitespace(const std::string& s) {
  for (unsigned char c : s) {
    if (std::isspace(c)) return true;
  }
  return false;
}

bool bcp47_shaped(const std::string& tag) {
  if (tag.empty()) return false;
  bool inFirst = true;
  std::size_t runLength = 0;
  for (char c : tag) {
    if (c == '-') {
      if (runLength == 0) return false;
      inFirst = false;
      runLength = 0;
      continue;
    }
    bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    bool digit = c >= '0' && c <= '9';
    if (inFirst ? !alpha : !(alpha || digit)) return false;
    ++runLength;
  }
  return runLength > 0;
}

std::string to_lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw StructuralError("IRI must be non-empty");
  if (has_whitespace(value_)) throw StructuralError("IRI contains whitespace: <" + value_ + ">");
  if (value_.find(':') == std::string::npos) {
    throw StructuralError("IRI lacks a scheme separator: <" + value_ + ">");
  }
}

BlankNode::BlankNode(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw StructuralError("blank node label must be non-empty");
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> language)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {}

Literal Literal::plain(std::string lexical) {
  return Literal(std::move(lexical), vocab::xsd_string(), std::nullopt);
}

Literal Literal::tagged(std::string lexical, std::string languageTag) {
  if (!bcp47_shaped(languageTag)) {
    throw StructuralError("malformed language tag: '" + languageTag + "'");
  }
  return Literal(std::move(lexical), vocab::rdf_lang_string(), to_lower(std::move(languageTag)));
}

Literal Literal::typed(std::string lexical, Iri datatype) {
  if (datatype == vocab::rdf_lang_string()) {
    throw StructuralError("rdf:langString literal requires a language tag");
  }
  return Literal(std::move(lexical), std::move(datatype), std::nullopt);
}

std::string escape_literal(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (unsigned char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          static const char* hex = "0123456789ABCDEF";
          out += "\\u00";
          out += hex[(c >> 4) & 0xF];
          out += hex[c & 0xF];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string to_ntriples(const Iri& iri) { return "<" + iri.value() + ">"; }

std::string to_ntriples(const BlankNode& node) { return "_:" + node.label(); }

std::string to_ntriples(const Literal& literal) {
  std::string out = "\"" + escape_literal(literal.lexical()) + "\"";
  if (literal.language()) {
    out += "@" + *literal.language();
  } else if (literal.datatype() != vocab::xsd_string()) {
    out += "^^" + to_ntriples(literal.datatype());
  }
  return out;
}

std::string to_ntriples(const Term& term) {
  return std::visit([](const auto& t) { return to_ntriples(t); }, term);
}

int compare_terms(const Term& a, const Term& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  // Same kind: IRIs and blank nodes order on their raw field, which matches
  // byte order of the canonical form; literals order on the canonical form.
  switch (a.index()) {
    case 0:
      return std::get<Iri>(a).value().compare(std::get<Iri>(b).value());
    case 1:
      return std::get<BlankNode>(a).label().compare(std::get<BlankNode>(b).label());
    default:
      return to_ntriples(std::get<Literal>(a)).compare(to_ntriples(std::get<Literal>(b)));
  }
}

}  // namespace nfdiforge
