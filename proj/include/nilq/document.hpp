#pragma once

// On-disk documents: JSON with rationals as strings ("3", "-1/2", "0").
//
//   {"format_version": "1", "kind": "algebra", "n": 2, "m": 1,
//    "forms": [[["0", "1"], ["-1", "0"]]], "label": "heisenberg",
//    "layout": {...}}                                   (layout: extend only)
//   {"kind": "hompair", "source": {"n", "m"}, "target": {"n", "m"}, "F", "Psi"}
//   {"kind": "element", "n", "m", "v": [...], "w": [...]}
//   {"kind": "certificate", "n", "m", "algebra_digest", "members": [...]}
//   {"kind": "report", "command", "verdict", "inputs": {name: digest}, "details"}

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

#include "nilq/decomp.hpp"
#include "nilq/extension.hpp"
#include "nilq/nilalg.hpp"

namespace nilq::doc {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

/// A malformed document. `field()` is the JSON path of the offending value.
class ParseError : public Error {
public:
    ParseError(const std::string& field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Canonical text: lowest terms, positive denominator, no "+", "/1" dropped.
std::string format_rational(const Rational& r);
/// Accepts -?digits("/"digits)? and canonicalizes; throws ParseError.
Rational parse_rational(const std::string& text, const std::string& field = {});

Json matrix_json(const RatMatrix& m);
Json vector_json(const RatVector& v);
RatMatrix parse_matrix(const Json& j, Index rows, Index cols, const std::string& field);
RatVector parse_vector(const Json& j, Index size, const std::string& field);

struct AlgebraDocument {
    AlgebraPresentation algebra;
    std::optional<ExtensionLayout> layout;
};

struct HomPairDocument {
    HomPair hom;
    Index source_n = 0, source_m = 0, target_n = 0, target_m = 0;
};

struct ElementDocument {
    Element element;
};

struct CertificateDocument {
    Index n = 0, m = 0;
    std::string algebra_digest;  // may be empty
    SingularFamily family;
};

struct ReportDocument {
    std::string command;
    std::string verdict;
    std::map<std::string, std::string> inputs;
    Json details = Json::object();
};

Json to_json(const AlgebraPresentation& algebra, const ExtensionLayout* layout = nullptr);
Json to_json(const HomPairDocument& hom);
Json to_json(const ElementDocument& element);
Json to_json(const CertificateDocument& certificate);
Json to_json(const ReportDocument& report);

HomPairDocument hompair_document(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h);

AlgebraDocument parse_algebra(const Json& j);
HomPairDocument parse_hompair(const Json& j);
ElementDocument parse_element(const Json& j);
CertificateDocument parse_certificate(const Json& j);
ReportDocument parse_report(const Json& j);

/// Kind string after checking format_version; throws ParseError.
std::string document_kind(const Json& j);

/// "sha256:" + hex digest of the compact serialization (keys sorted).
std::string digest(const Json& j);

Json read_document(const std::string& path);
void write_document(const std::string& path, const Json& j);
std::string serialize(const Json& j);

}  // namespace nilq::doc
