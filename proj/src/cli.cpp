#include "nilq/cli.hpp"

#include "CLI11.hpp"

#include <sstream>

#include "nilq/decomp.hpp"
#include "nilq/document.hpp"
#include "nilq/extension.hpp"
#include "nilq/fforacle.hpp"
#include "nilq/grouplayer.hpp"
#include "nilq/random.hpp"

namespace nilq::cli {

namespace {

using doc::Json;

struct Options {
    std::string command;
    std::vector<std::string> files;
    std::string out_path;
    std::string family_path;
    std::string ideal_path;
    std::string certificate_path;
    bool use_layout = false;
    bool search = false;
    bool extension = false;
    int bound = 10;
    std::size_t samples = 100;
    std::uint64_t seed = kDefaultSeed;
    long k = 0;
    std::int64_t prime = 3;
    unsigned long long budget = kDefaultBudget;
    std::size_t max_family = 4;
    Index n = 2;
    Index m = 1;
    unsigned workers = 1;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string vector_text(const RatVector& v) {
    std::string s = "[";
    for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + doc::format_rational(v(i));
    return s + "]";
}

std::string element_text(const Element& x) { return "v = " + vector_text(x.v) + "; w = " + vector_text(x.w); }

std::string fp_matrix_text(const FpMatrix& a) {
    std::string s = "[";
    for (Index i = 0; i < a.rows(); ++i) {
        s += i ? ", [" : "[";
        for (Index j = 0; j < a.cols(); ++j) s += (j ? ", " : "") + std::to_string(a(i, j));
        s += "]";
    }
    return s + "]";
}

Json fp_matrix_json(const FpMatrix& a) {
    Json rows = Json::array();
    for (Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) { report_.command = o.command; }

    int dispatch() {
        const std::string& c = o_.command;
        if (c == "info") return info();
        if (c == "extend") return extend_cmd();
        if (c == "sum") return sum();
        if (c == "quotient") return quotient();
        if (c == "verify-hom") return verify_hom_cmd();
        if (c == "lift-iso") return lift_iso();
        if (c == "certify") return certify();
        if (c.rfind("group ", 0) == 0) return group(c.substr(6));
        if (c == "oracle iso") return oracle_iso();
        if (c == "oracle embed") return oracle_embed();
        if (c == "oracle sweep") return oracle_sweep();
        throw std::logic_error("unhandled command " + c);
    }

private:
    Json load(const std::string& name, const std::string& path) {
        Json j = doc::read_document(path);
        report_.inputs[name] = doc::digest(j);
        return j;
    }

    doc::AlgebraDocument load_algebra(const std::string& name, const std::string& path) {
        return doc::parse_algebra(load(name, path));
    }

    /// Skew forms are part of a well-formed algebra document.
    static void require_valid(const AlgebraPresentation& p, const std::string& path) {
        const ValidationReport r = validate(p);
        if (!r.ok()) throw doc::ParseError(path, r.violations.front().message);
    }

    int finish(bool verdict, const std::string& word_true = "verified", const std::string& word_false = "refuted") {
        report_.verdict = verdict ? word_true : word_false;
        if (!o_.out_path.empty()) doc::write_document(o_.out_path, doc::to_json(report_));
        return verdict ? kOk : kRefuted;
    }

    int info() {
        const doc::AlgebraDocument d = load_algebra("algebra", o_.files[0]);
        const AlgebraPresentation& p = d.algebra;
        const ValidationReport v = validate(p);
        out_ << "n: " << p.n << "\n";
        out_ << "m: " << p.m << "\n";
        if (!v.ok()) {
            out_ << "skew-symmetric: no (" << v.violations.front().message << ")\n";
            report_.details["skew"] = false;
            finish(false, "valid", "invalid");
            return kUsage;
        }
        const Index ker = ker_omega(p).cols();
        const bool nonsingular = ker == 0;
        const bool surjective = is_surjective(p);
        const bool com = satisfies_com_cond(p);
        const Index z = center(p).cols();
        out_ << "skew-symmetric: yes\n";
        out_ << "dim ker ω = " << ker << "\n";
        out_ << "nonsingular: " << yes_no(nonsingular) << "\n";
        out_ << "surjective: " << yes_no(surjective) << "\n";
        out_ << "[L,L]=Z(L): " << yes_no(com) << "\n";
        out_ << "dim Z(L) = " << z << "\n";
        report_.details = {{"n", p.n},
                           {"m", p.m},
                           {"skew", true},
                           {"dim_ker_omega", ker},
                           {"nonsingular", nonsingular},
                           {"surjective", surjective},
                           {"com_cond", com},
                           {"dim_center", z}};
        finish(true, "valid");
        return kOk;
    }

    int extend_cmd() {
        const doc::AlgebraDocument d = load_algebra("algebra", o_.files[0]);
        require_valid(d.algebra, o_.files[0]);
        const Extended e = extend(d.algebra);
        const Json result = doc::to_json(e.algebra, &e.layout);
        doc::write_document(o_.files[1], result);
        out_ << "extended: n = " << e.algebra.n << ", m = " << e.algebra.m << "\n";
        report_.details = {{"output", doc::digest(result)}};
        return finish(true, "written");
    }

    int sum() {
        const doc::AlgebraDocument a = load_algebra("left", o_.files[0]);
        const doc::AlgebraDocument b = load_algebra("right", o_.files[1]);
        require_valid(a.algebra, o_.files[0]);
        require_valid(b.algebra, o_.files[1]);
        const AlgebraPresentation s = direct_sum(a.algebra, b.algebra);
        const Json result = doc::to_json(s);
        doc::write_document(o_.files[2], result);
        out_ << "direct sum: n = " << s.n << ", m = " << s.m << "\n";
        report_.details = {{"output", doc::digest(result)}};
        return finish(true, "written");
    }

    static RatMatrix basis_columns(const Json& j, Index ambient, const std::string& field) {
        if (!j.is_array()) throw doc::ParseError(field, "expected an array of vectors");
        RatMatrix cols(ambient, static_cast<Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
            cols.col(static_cast<Index>(i)) = doc::parse_vector(j[i], ambient, field + "[" + std::to_string(i) + "]");
        return cols;
    }

    int quotient() {
        const doc::AlgebraDocument d = load_algebra("algebra", o_.files[0]);
        require_valid(d.algebra, o_.files[0]);
        RatMatrix v_basis, w_basis;
        std::string label = d.algebra.label;
        if (o_.use_layout) {
            if (!d.layout) throw doc::ParseError("layout", "missing; write the input with extend");
            v_basis = u_block_basis(*d.layout);
            w_basis = t_block_basis(*d.layout);
            if (label.size() > 3 && label.rfind("E(", 0) == 0 && label.back() == ')')
                label = label.substr(2, label.size() - 3);
        } else {
            const Json ideal = load("ideal", o_.ideal_path);
            if (!ideal.is_object()) throw doc::ParseError("", "ideal file must be a JSON object");
            v_basis = basis_columns(ideal.value("v_basis", Json::array()), d.algebra.n, "v_basis");
            w_basis = basis_columns(ideal.value("w_basis", Json::array()), d.algebra.m, "w_basis");
        }
        AlgebraPresentation q = quotient_by_graded_ideal(d.algebra, v_basis, w_basis);
        q.label = label;
        const Json result = doc::to_json(q);
        doc::write_document(o_.files[1], result);
        out_ << "quotient: n = " << q.n << ", m = " << q.m << "\n";
        report_.details = {{"output", doc::digest(result)}};
        return finish(true, "written");
    }

    struct HomInputs {
        AlgebraPresentation source, target;
        HomPair hom;
    };

    HomInputs load_hom_inputs() {
        HomInputs in;
        in.source = load_algebra("source", o_.files[0]).algebra;
        in.target = load_algebra("target", o_.files[1]).algebra;
        require_valid(in.source, o_.files[0]);
        require_valid(in.target, o_.files[1]);
        const doc::HomPairDocument h = doc::parse_hompair(load("hom", o_.files[2]));
        if (h.source_n != in.source.n || h.source_m != in.source.m || h.target_n != in.target.n ||
            h.target_m != in.target.m)
            throw DimensionMismatch("hom document dimensions do not match the algebras");
        in.hom = h.hom;
        return in;
    }

    int verify_hom_cmd() {
        const HomInputs in = load_hom_inputs();
        const HomCheck check = verify_hom(in.source, in.target, in.hom);
        const bool iso = check.holds && is_isomorphism(in.source, in.target, in.hom);
        if (check.holds) {
            out_ << "homomorphism: yes\n";
        } else {
            const auto& [k, i, j] = *check.mismatch;
            out_ << "homomorphism: no (form " << k + 1 << ", entry (" << i + 1 << ", " << j + 1 << "))\n";
            report_.details["mismatch"] = {k, i, j};
        }
        out_ << "isomorphism: " << yes_no(iso) << "\n";
        report_.details["homomorphism"] = check.holds;
        report_.details["isomorphism"] = iso;
        return finish(check.holds);
    }

    int lift_iso() {
        const HomInputs in = load_hom_inputs();
        const HomPair lifted = lift_isomorphism(in.source, in.target, in.hom);
        const Extended es = extend(in.source);
        const Extended et = extend(in.target);
        const bool ok = is_isomorphism(es.algebra, et.algebra, lifted);
        const Json result = doc::to_json(doc::hompair_document(es.algebra, et.algebra, lifted));
        doc::write_document(o_.files[3], result);
        out_ << "lifted isomorphism E(source) -> E(target): " << yes_no(ok) << "\n";
        report_.details = {{"output", doc::digest(result)}, {"isomorphism", ok}};
        return finish(ok);
    }

    void describe_certificate(const CertificateReport& r) {
        out_ << "members: " << r.family.members.size() << "\n";
        std::string dims;
        for (std::size_t i = 0; i < r.per_member_kernel_dims.size(); ++i)
            dims += (i ? ", " : "") + std::to_string(r.per_member_kernel_dims[i]);
        out_ << "member kernel dims: [" << dims << "]\n";
        out_ << "joint kernel dim: " << r.joint_kernel_dim << "\n";
        out_ << "certificate: " << (r.valid ? "valid; necessary condition for geometric decomposability holds"
                                             : "invalid (" + r.reason + ")")
             << "\n";
        report_.details["kernel_dims"] = r.per_member_kernel_dims;
        report_.details["joint_kernel_dim"] = r.joint_kernel_dim;
        report_.details["valid"] = r.valid;
        if (!r.valid) report_.details["reason"] = r.reason;
    }

    int certify() {
        const doc::AlgebraDocument d = load_algebra("algebra", o_.files[0]);
        require_valid(d.algebra, o_.files[0]);
        const AlgebraPresentation& p = d.algebra;
        const std::string algebra_digest = doc::digest(doc::to_json(p, d.layout ? &*d.layout : nullptr));

        if (!o_.family_path.empty()) {
            const doc::CertificateDocument c = doc::parse_certificate(load("certificate", o_.family_path));
            if (!c.algebra_digest.empty() && c.algebra_digest != algebra_digest) {
                out_ << "certificate: invalid (bound to a different algebra)\n";
                report_.details["reason"] = "digest mismatch";
                return finish(false, "valid", "invalid");
            }
            if (c.n != p.n || c.m != p.m) throw DimensionMismatch("certificate dimensions do not match the algebra");
            const CertificateReport r = verify_certificate(p, c.family);
            describe_certificate(r);
            return finish(r.valid, "valid", "invalid");
        }

        if (o_.search) {
            const SearchOutcome s = search_rank_one_family(p, o_.bound);
            out_ << "search: " << to_string(s.mode) << (s.complete ? " (complete for rank-one psi)" : " (inconclusive)")
                 << "\n";
            if (!s.note.empty()) out_ << "note: " << s.note << "\n";
            report_.details["mode"] = to_string(s.mode);
            report_.details["complete"] = s.complete;
            if (!s.found()) {
                out_ << "certificate: " << (s.complete ? "none exists" : "not found") << "\n";
                return finish(false, "found", "not-found");
            }
            describe_certificate(*s.certificate);
            const doc::CertificateDocument c{p.n, p.m, algebra_digest, s.certificate->family};
            report_.details["certificate"] = doc::to_json(c);
            if (!o_.certificate_path.empty()) doc::write_document(o_.certificate_path, doc::to_json(c));
            return finish(s.certificate->valid, "found", "not-found");
        }

        if (!d.layout) throw doc::ParseError("layout", "missing; --extension needs a document written by extend");
        const std::vector<RatMatrix> psis = sample_psi(*d.layout, o_.samples, o_.seed, false);
        const IndecomposabilityReport r = certify_E_indecomposable(p, *d.layout, psis);
        std::size_t t_nonzero = 0;
        for (const PsiSampleVerdict& s : r.samples) t_nonzero += s.t_image_nonzero;
        out_ << "extension structure: " << yes_no(r.structure_ok) << "\n";
        out_ << "samples: " << r.samples.size() << " (" << t_nonzero << " with psi(t) != 0)\n";
        out_ << "indecomposability check: " << (r.passed() ? "passed" : "failed") << "\n";
        report_.details = {{"structure_ok", r.structure_ok},
                           {"samples", r.samples.size()},
                           {"t_nonzero", t_nonzero},
                           {"seed", o_.seed}};
        return finish(r.passed(), "valid", "invalid");
    }

    Element load_element(const std::string& name, const std::string& path, const AlgebraPresentation& p) {
        const Element x = doc::parse_element(load(name, path)).element;
        if (x.v.size() != p.n || x.w.size() != p.m) throw DimensionMismatch(name + " does not match the algebra");
        return x;
    }

    int group(const std::string& op) {
        const AlgebraPresentation p = load_algebra("algebra", o_.files[0]).algebra;
        require_valid(p, o_.files[0]);
        const Element x = load_element("x", o_.files[1], p);
        Element result;
        if (op == "mul" || op == "comm") {
            const Element y = load_element("y", o_.files[2], p);
            result = op == "mul" ? gmul(p, x, y) : gcommutator(p, x, y);
        } else if (op == "inv") {
            result = ginv(p, x);
        } else {
            result = groot(p, x, o_.k);
            report_.details["k"] = o_.k;
        }
        out_ << op << ": " << element_text(result) << "\n";
        report_.details["result"] = doc::to_json(doc::ElementDocument{result});
        return finish(true, "computed");
    }

    std::pair<FpPresentation, FpPresentation> load_pair_mod_p() {
        require_odd_prime(o_.prime);
        const AlgebraPresentation a = load_algebra("left", o_.files[0]).algebra;
        const AlgebraPresentation b = load_algebra("right", o_.files[1]).algebra;
        require_valid(a, o_.files[0]);
        require_valid(b, o_.files[1]);
        report_.details["prime"] = o_.prime;
        report_.details["budget"] = o_.budget;
        report_.details["seed"] = o_.seed;
        return {reduce_mod_p(a, o_.prime), reduce_mod_p(b, o_.prime)};
    }

    int budget_exhausted(const BudgetExceeded& e, Budget& budget) {
        out_ << "budget exhausted after " << budget.used() << " units; " << e.remainder() << " candidates unexamined\n";
        report_.details["unexamined"] = e.remainder();
        return finish(false, "found", "budget-exceeded");
    }

    int oracle_iso() {
        const auto [q1, q2] = load_pair_mod_p();
        Budget budget(o_.budget);
        try {
            const IsoSearchResult r = ff_iso_search(q1, q2, budget);
            report_.details["work"] = budget.used();
            if (!r.witness) {
                out_ << "isomorphic mod " << o_.prime << ": no (exhaustive)\n";
                return finish(false, "found", "none-exists");
            }
            out_ << "isomorphic mod " << o_.prime << ": yes\n";
            out_ << "F = " << fp_matrix_text(r.witness->F) << "\n";
            out_ << "Psi = " << fp_matrix_text(r.witness->Psi) << "\n";
            report_.details["F"] = fp_matrix_json(r.witness->F);
            report_.details["Psi"] = fp_matrix_json(r.witness->Psi);
            return finish(true, "found");
        } catch (const BudgetExceeded& e) {
            return budget_exhausted(e, budget);
        }
    }

    int oracle_embed() {
        const auto [q1, q2] = load_pair_mod_p();
        Budget budget(o_.budget);
        try {
            const EmbeddingResult r = ff_embedding_family(q1, q2, o_.max_family, budget);
            out_ << "homomorphisms: " << r.homs_enumerated << "\n";
            out_ << "distinct kernels: " << r.distinct_kernels << "\n";
            report_.details["homs"] = r.homs_enumerated;
            report_.details["distinct_kernels"] = r.distinct_kernels;
            report_.details["work"] = budget.used();
            if (!r.family) {
                out_ << "separating family of size <= " << o_.max_family << ": none exists\n";
                return finish(false, "found", "none-exists");
            }
            out_ << "separating family: " << r.family->size() << " homomorphisms\n";
            Json family = Json::array();
            for (const FpHomPair& h : *r.family) {
                out_ << "  F = " << fp_matrix_text(h.F) << "; Psi = " << fp_matrix_text(h.Psi) << "\n";
                family.push_back({{"F", fp_matrix_json(h.F)}, {"Psi", fp_matrix_json(h.Psi)}});
            }
            report_.details["family"] = std::move(family);
            return finish(true, "found");
        } catch (const BudgetExceeded& e) {
            return budget_exhausted(e, budget);
        }
    }

    int oracle_sweep() {
        require_odd_prime(o_.prime);
        try {
            const SweepReport r = ff_theorem_sweep(o_.n, o_.m, o_.prime, o_.budget, o_.workers);
            out_ << "presentations: " << r.presentations << "\n";
            out_ << "pairs: " << r.entries.size() << "\n";
            std::size_t iso = 0;
            for (const SweepEntry& e : r.entries) iso += e.base_isomorphic;
            out_ << "isomorphic pairs: " << iso << "\n";
            out_ << r.violations.size() << " violations\n";
            if (r.violations.empty()) out_ << "no counterexample within budget\n";
            Json entries = Json::array();
            for (const SweepEntry& e : r.entries) {
                Json entry = {{"pair", e.pair_index},
                              {"left", e.left},
                              {"right", e.right},
                              {"base_isomorphic", e.base_isomorphic},
                              {"extension_isomorphic", e.extension_isomorphic},
                              {"lift_checked", e.lift_checked}};
                entry["witness"] = e.base_witness ? Json{{"F", fp_matrix_json(e.base_witness->F)},
                                                         {"Psi", fp_matrix_json(e.base_witness->Psi)}}
                                                  : Json();
                entries.push_back(std::move(entry));
            }
            report_.details = {{"n", o_.n},
                               {"m", o_.m},
                               {"prime", o_.prime},
                               {"budget", o_.budget},
                               {"seed", o_.seed},
                               {"presentations", r.presentations},
                               {"pairs", r.entries.size()},
                               {"isomorphic_pairs", iso},
                               {"violations", r.violations},
                               {"work", r.work_used},
                               {"entries", std::move(entries)}};
            return finish(r.violations.empty());
        } catch (const BudgetExceeded& e) {
            out_ << "budget exhausted; " << e.remainder() << " pairs unexamined\n";
            report_.details = {{"unexamined", e.remainder()}};
            return finish(false, "verified", "budget-exceeded");
        }
    }

    const Options& o_;
    std::ostream& out_;
    doc::ReportDocument report_;
};

void add_out(CLI::App* app, Options& o) {
    app->add_option("--out", o.out_path, "Write the machine-readable report here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact tools for class-2 nilpotent Lie algebras over Q", "nilq"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, std::string>> leaves;

    auto files = [&](CLI::App* sub, std::vector<std::string> names) {
        std::string joined;
        for (const auto& n : names) joined += (joined.empty() ? "" : " ") + n;
        sub->add_option("files", o.files, joined)->required()->expected(static_cast<int>(names.size()));
    };

    CLI::App* info = app.add_subcommand("info", "Structural report for an algebra");
    files(info, {"FILE"});
    add_out(info, o);
    leaves.push_back({info, "info"});

    CLI::App* ext = app.add_subcommand("extend", "Write E(L) with its layout block");
    files(ext, {"IN", "OUT"});
    add_out(ext, o);
    leaves.push_back({ext, "extend"});

    CLI::App* sum = app.add_subcommand("sum", "Direct sum of two algebras");
    files(sum, {"A", "B", "OUT"});
    add_out(sum, o);
    leaves.push_back({sum, "sum"});

    CLI::App* quot = app.add_subcommand("quotient", "Quotient by a graded ideal");
    files(quot, {"IN", "OUT"});
    auto* layout_flag = quot->add_flag("--layout", o.use_layout, "Quotient by the U and T blocks of an extension");
    auto* ideal_opt = quot->add_option("--ideal", o.ideal_path, "JSON file with v_basis and w_basis vector lists");
    layout_flag->excludes(ideal_opt);
    add_out(quot, o);
    leaves.push_back({quot, "quotient"});

    CLI::App* vh = app.add_subcommand("verify-hom", "Check the homomorphism condition");
    files(vh, {"SRC", "DST", "HOM"});
    add_out(vh, o);
    leaves.push_back({vh, "verify-hom"});

    CLI::App* li = app.add_subcommand("lift-iso", "Lift an isomorphism to the extensions");
    files(li, {"SRC", "DST", "HOM", "OUT"});
    add_out(li, o);
    leaves.push_back({li, "lift-iso"});

    CLI::App* cert = app.add_subcommand("certify", "Check or search for a singular family");
    files(cert, {"IN"});
    auto* fam = cert->add_option("--family", o.family_path, "Certificate document to verify");
    auto* search = cert->add_flag("--search", o.search, "Search for a rank-one family");
    auto* extension = cert->add_flag("--extension", o.extension, "Sampled check on an extension document");
    fam->excludes(search)->excludes(extension);
    search->excludes(extension);
    cert->add_option("--bound", o.bound, "Height bound for sampled search")->check(CLI::PositiveNumber);
    cert->add_option("--samples", o.samples, "Number of psi samples");
    cert->add_option("--seed", o.seed, "Sampling seed");
    cert->add_option("--write-certificate", o.certificate_path, "Write the found certificate document");
    add_out(cert, o);
    leaves.push_back({cert, "certify"});

    CLI::App* group = app.add_subcommand("group", "Group law of the associated BCH group");
    group->require_subcommand(1);
    for (const char* op : {"mul", "inv", "comm", "root"}) {
        CLI::App* sub = group->add_subcommand(op);
        const bool binary = std::string(op) == "mul" || std::string(op) == "comm";
        if (binary)
            files(sub, {"ALG", "X", "Y"});
        else
            files(sub, {"ALG", "X"});
        if (std::string(op) == "root") sub->add_option("--k", o.k, "Root order")->required();
        add_out(sub, o);
        leaves.push_back({sub, std::string("group ") + op});
    }

    CLI::App* oracle = app.add_subcommand("oracle", "Finite-field exhaustive searches");
    oracle->require_subcommand(1);
    for (const char* op : {"iso", "embed", "sweep"}) {
        CLI::App* sub = oracle->add_subcommand(op);
        if (std::string(op) != "sweep") files(sub, {"A", "B"});
        sub->add_option("--prime", o.prime, "Odd prime");
        sub->add_option("--budget", o.budget, "Work cap");
        sub->add_option("--seed", o.seed, "Recorded in the report; the searches are deterministic");
        if (std::string(op) == "embed") sub->add_option("--max-family", o.max_family, "Largest family size");
        if (std::string(op) == "sweep") {
            sub->add_option("--n", o.n, "Dimension of V");
            sub->add_option("--m", o.m, "Dimension of W");
            sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
        }
        add_out(sub, o);
        leaves.push_back({sub, std::string("oracle ") + op});
    }

    if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
        err << "unknown command: " << args.front() << "\nRun with --help for more information.\n";
        return kUsage;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (o.command.empty())
        for (const auto& [sub, name] : leaves)
            if (sub->parsed()) o.command = name;
    if (o.command == "quotient" && !o.use_layout && o.ideal_path.empty()) {
        err << "quotient: one of --layout, --ideal is required\n";
        return kUsage;
    }
    if (o.command == "certify" && o.family_path.empty() && !o.search && !o.extension) {
        err << "certify: one of --family, --search, --extension is required\n";
        return kUsage;
    }

    try {
        Runner runner(o, out);
        return runner.dispatch();
    } catch (const doc::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BadPrime& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kRefuted;
    }
}

}  // namespace nilq::cli
