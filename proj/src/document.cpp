#include "nilq/document.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <regex>
#include <sstream>

namespace nilq::doc {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(at(path, key), "missing");
    return *it;
}

Index parse_dim(const Json& j, const std::string& key, const std::string& path) {
    const Json& v = require(j, key, path);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(at(path, key), "expected a non-negative integer");
    return static_cast<Index>(v.get<long long>());
}

std::string parse_string(const Json& j, const std::string& key, const std::string& path) {
    const Json& v = require(j, key, path);
    if (!v.is_string()) throw ParseError(at(path, key), "expected a string");
    return v.get<std::string>();
}

void require_kind(const Json& j, const char* kind) {
    const std::string found = document_kind(j);
    if (found != kind) throw ParseError("kind", "expected \"" + std::string(kind) + "\", found \"" + found + "\"");
}

Json header(const char* kind) { return Json{{"format_version", kFormatVersion}, {"kind", kind}}; }

std::vector<Index> parse_indices(const Json& j, const std::string& key, const std::string& path) {
    const Json& v = require(j, key, path);
    if (!v.is_array()) throw ParseError(at(path, key), "expected an array");
    std::vector<Index> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || v[i].get<long long>() < 0)
            throw ParseError(at(at(path, key), i), "expected a non-negative integer");
        out.push_back(static_cast<Index>(v[i].get<long long>()));
    }
    return out;
}

Json layout_json(const ExtensionLayout& layout) {
    return Json{{"u_indices", layout.u_indices},
                {"v_indices", layout.v_indices},
                {"t_index", layout.t_index},
                {"w_indices", layout.w_indices}};
}

/// The base algebra is read back from the extension's W-forms on the v-block.
ExtensionLayout parse_layout(const Json& j, const AlgebraPresentation& extended) {
    const std::string path = "layout";
    ExtensionLayout layout;
    layout.u_indices = parse_indices(j, "u_indices", path);
    layout.v_indices = parse_indices(j, "v_indices", path);
    layout.w_indices = parse_indices(j, "w_indices", path);
    const Json& t = require(j, "t_index", path);
    if (!t.is_number_integer() || t.get<long long>() < 0) throw ParseError(at(path, "t_index"), "expected a non-negative integer");
    layout.t_index = static_cast<Index>(t.get<long long>());

    layout.base.n = static_cast<Index>(layout.v_indices.size());
    layout.base.m = static_cast<Index>(layout.w_indices.size());
    try {
        check_layout(layout);
    } catch (const LayoutMismatch& e) {
        throw ParseError(path, e.what());
    }
    if (layout.extended_n() != extended.n || layout.extended_m() != extended.m)
        throw ParseError(path, "layout does not match the algebra's dimensions");
    for (Index w : layout.w_indices) {
        const RatMatrix& form = extended.forms[static_cast<std::size_t>(w)];
        RatMatrix base(layout.base.n, layout.base.n);
        for (Index i = 0; i < layout.base.n; ++i)
            for (Index k = 0; k < layout.base.n; ++k)
                base(i, k) = form(layout.v_indices[static_cast<std::size_t>(i)], layout.v_indices[static_cast<std::size_t>(k)]);
        layout.base.forms.push_back(std::move(base));
    }
    return layout;
}

}  // namespace

std::string format_rational(const Rational& r) { return r.str(); }

Rational parse_rational(const std::string& text, const std::string& field) {
    static const std::regex grammar("(-?[0-9]+)(?:/([0-9]+))?");
    std::smatch match;
    if (!std::regex_match(text, match, grammar)) throw ParseError(field, "invalid rational \"" + text + "\"");
    const Integer num(match[1].str());
    const Integer den(match[2].matched ? match[2].str() : std::string("1"));
    if (den == 0) throw ParseError(field, "invalid rational \"" + text + "\": zero denominator");
    return make_rational(num, den);
}

Json matrix_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_json(const RatVector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
    return out;
}

RatMatrix parse_matrix(const Json& j, Index rows, Index cols, const std::string& field) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw ParseError(field, "expected " + std::to_string(rows) + " rows");
    RatMatrix out(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        const std::string row_field = at(field, static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ParseError(row_field, "expected " + std::to_string(cols) + " entries");
        for (Index c = 0; c < cols; ++c) {
            const Json& entry = row[static_cast<std::size_t>(c)];
            const std::string entry_field = at(row_field, static_cast<std::size_t>(c));
            if (!entry.is_string()) throw ParseError(entry_field, "rationals must be strings");
            out(i, c) = parse_rational(entry.get<std::string>(), entry_field);
        }
    }
    return out;
}

RatVector parse_vector(const Json& j, Index size, const std::string& field) {
    if (!j.is_array() || static_cast<Index>(j.size()) != size)
        throw ParseError(field, "expected " + std::to_string(size) + " entries");
    RatVector out(size);
    for (Index i = 0; i < size; ++i) {
        const Json& entry = j[static_cast<std::size_t>(i)];
        const std::string entry_field = at(field, static_cast<std::size_t>(i));
        if (!entry.is_string()) throw ParseError(entry_field, "rationals must be strings");
        out(i) = parse_rational(entry.get<std::string>(), entry_field);
    }
    return out;
}

std::string document_kind(const Json& j) {
    if (!j.is_object()) throw ParseError("", "document must be a JSON object");
    const std::string version = parse_string(j, "format_version", "");
    if (version != kFormatVersion) throw ParseError("format_version", "unsupported version \"" + version + "\"");
    const std::string kind = parse_string(j, "kind", "");
    if (kind != "algebra" && kind != "hompair" && kind != "element" && kind != "certificate" && kind != "report")
        throw ParseError("kind", "unknown kind \"" + kind + "\"");
    return kind;
}

Json to_json(const AlgebraPresentation& algebra, const ExtensionLayout* layout) {
    Json j = header("algebra");
    j["n"] = algebra.n;
    j["m"] = algebra.m;
    Json forms = Json::array();
    for (const RatMatrix& f : algebra.forms) forms.push_back(matrix_json(f));
    j["forms"] = std::move(forms);
    if (!algebra.label.empty()) j["label"] = algebra.label;
    if (layout) j["layout"] = layout_json(*layout);
    return j;
}

Json to_json(const HomPairDocument& hom) {
    Json j = header("hompair");
    j["source"] = {{"n", hom.source_n}, {"m", hom.source_m}};
    j["target"] = {{"n", hom.target_n}, {"m", hom.target_m}};
    j["F"] = matrix_json(hom.hom.F);
    j["Psi"] = matrix_json(hom.hom.Psi);
    return j;
}

Json to_json(const ElementDocument& element) {
    Json j = header("element");
    j["n"] = element.element.v.size();
    j["m"] = element.element.w.size();
    j["v"] = vector_json(element.element.v);
    j["w"] = vector_json(element.element.w);
    return j;
}

Json to_json(const CertificateDocument& certificate) {
    Json j = header("certificate");
    j["n"] = certificate.n;
    j["m"] = certificate.m;
    if (!certificate.algebra_digest.empty()) j["algebra_digest"] = certificate.algebra_digest;
    Json members = Json::array();
    for (const RatMatrix& psi : certificate.family.members) members.push_back(matrix_json(psi));
    j["members"] = std::move(members);
    return j;
}

Json to_json(const ReportDocument& report) {
    Json j = header("report");
    j["command"] = report.command;
    j["verdict"] = report.verdict;
    j["inputs"] = report.inputs;
    j["details"] = report.details;
    return j;
}

HomPairDocument hompair_document(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h) {
    return {h, source.n, source.m, target.n, target.m};
}

AlgebraDocument parse_algebra(const Json& j) {
    require_kind(j, "algebra");
    AlgebraDocument out;
    out.algebra.n = parse_dim(j, "n", "");
    out.algebra.m = parse_dim(j, "m", "");
    const Json& forms = require(j, "forms", "");
    if (!forms.is_array() || static_cast<Index>(forms.size()) != out.algebra.m)
        throw ParseError("forms", "expected " + std::to_string(out.algebra.m) + " matrices");
    for (std::size_t k = 0; k < forms.size(); ++k)
        out.algebra.forms.push_back(parse_matrix(forms[k], out.algebra.n, out.algebra.n, at("forms", k)));
    if (j.contains("label")) out.algebra.label = parse_string(j, "label", "");
    if (j.contains("layout")) out.layout = parse_layout(j["layout"], out.algebra);
    return out;
}

HomPairDocument parse_hompair(const Json& j) {
    require_kind(j, "hompair");
    HomPairDocument out;
    const Json& source = require(j, "source", "");
    const Json& target = require(j, "target", "");
    out.source_n = parse_dim(source, "n", "source");
    out.source_m = parse_dim(source, "m", "source");
    out.target_n = parse_dim(target, "n", "target");
    out.target_m = parse_dim(target, "m", "target");
    out.hom.F = parse_matrix(require(j, "F", ""), out.target_n, out.source_n, "F");
    out.hom.Psi = parse_matrix(require(j, "Psi", ""), out.target_m, out.source_m, "Psi");
    return out;
}

ElementDocument parse_element(const Json& j) {
    require_kind(j, "element");
    const Index n = parse_dim(j, "n", "");
    const Index m = parse_dim(j, "m", "");
    return {{parse_vector(require(j, "v", ""), n, "v"), parse_vector(require(j, "w", ""), m, "w")}};
}

CertificateDocument parse_certificate(const Json& j) {
    require_kind(j, "certificate");
    CertificateDocument out;
    out.n = parse_dim(j, "n", "");
    out.m = parse_dim(j, "m", "");
    if (j.contains("algebra_digest")) out.algebra_digest = parse_string(j, "algebra_digest", "");
    const Json& members = require(j, "members", "");
    if (!members.is_array()) throw ParseError("members", "expected an array");
    for (std::size_t i = 0; i < members.size(); ++i)
        out.family.members.push_back(parse_matrix(members[i], out.m, out.m, at("members", i)));
    return out;
}

ReportDocument parse_report(const Json& j) {
    require_kind(j, "report");
    ReportDocument out;
    out.command = parse_string(j, "command", "");
    out.verdict = parse_string(j, "verdict", "");
    const Json& inputs = require(j, "inputs", "");
    if (!inputs.is_object()) throw ParseError("inputs", "expected an object");
    for (const auto& [name, value] : inputs.items()) {
        if (!value.is_string()) throw ParseError(at("inputs", name), "expected a string");
        out.inputs[name] = value.get<std::string>();
    }
    out.details = require(j, "details", "");
    return out;
}

std::string serialize(const Json& j) { return j.dump(); }

std::string digest(const Json& j) {
    const std::string text = serialize(j);
    unsigned char hash[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[hash[i] >> 4];
        out += hex[hash[i] & 0xf];
    }
    return out;
}

Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path, e.what());
    }
}

void write_document(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace nilq::doc
