#pragma once

// Golden-file cases for the command-line front end, run in-process.
// Paths in arguments use {F} for the fixtures directory and {T} for a scratch
// directory; captured stdout/stderr have the same substitutions reversed.
// Set NILQ_UPDATE_GOLDEN=1 to rewrite the golden files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nilq/cli.hpp"

namespace golden {

namespace fs = std::filesystem;

struct Case {
    std::string name;
    std::vector<std::string> args;
    int exit_code;
    std::vector<std::string> outputs;  // files under {T} compared to <name>.<file>
};

inline const std::vector<Case>& cases() {
    static const std::vector<Case> all = {
        {"info", {"info", "{F}/heisenberg.json", "--out", "{T}/info_report.json"}, 0, {"info_report.json"}},
        {"info_zero_forms", {"info", "{F}/abelian21.json"}, 0, {}},
        {"info_odd", {"info", "{F}/odd3.json"}, 0, {}},
        {"info_bad_rational", {"info", "{F}/bad_rational.json"}, 2, {}},
        {"info_not_skew", {"info", "{F}/not_skew.json"}, 2, {}},
        {"info_missing_file", {"info", "{F}/does_not_exist.json"}, 2, {}},
        {"extend", {"extend", "{F}/heisenberg.json", "{T}/eh.json"}, 0, {"eh.json"}},
        {"extend_twice", {"extend", "{T}/eh.json", "{T}/eeh.json"}, 0, {"eeh.json"}},
        {"quotient_layout", {"quotient", "{T}/eh.json", "{T}/q.json", "--layout"}, 0, {"q.json"}},
        {"quotient_no_layout", {"quotient", "{F}/heisenberg.json", "{T}/q2.json", "--layout"}, 2, {}},
        {"quotient_center", {"quotient", "{F}/heisenberg.json", "{T}/qc.json", "--ideal", "{F}/ideal_center.json"}, 0,
         {"qc.json"}},
        {"quotient_needs_mode", {"quotient", "{F}/heisenberg.json", "{T}/q3.json"}, 2, {}},
        {"sum", {"sum", "{F}/heisenberg.json", "{F}/heisenberg.json", "{T}/hh.json"}, 0, {"hh.json"}},
        {"sum_empty", {"sum", "{F}/heisenberg.json", "{F}/empty.json", "{T}/he.json"}, 0, {"he.json"}},
        {"verify_hom_identity",
         {"verify-hom", "{F}/heisenberg.json", "{F}/heisenberg.json", "{F}/hom_identity.json"}, 0, {}},
        {"verify_hom_scale",
         {"verify-hom", "{F}/heisenberg.json", "{F}/heisenberg.json", "{F}/hom_scale.json", "--out", "{T}/vh.json"}, 0,
         {"vh.json"}},
        {"verify_hom_refuted", {"verify-hom", "{F}/heisenberg.json", "{F}/heisenberg.json", "{F}/hom_bad.json"}, 1, {}},
        {"verify_hom_wrong_dims", {"verify-hom", "{F}/odd3.json", "{F}/heisenberg.json", "{F}/hom_identity.json"}, 1, {}},
        {"lift_iso",
         {"lift-iso", "{F}/heisenberg.json", "{F}/heisenberg.json", "{F}/hom_scale.json", "{T}/lift.json"}, 0,
         {"lift.json"}},
        {"lift_iso_refuted",
         {"lift-iso", "{F}/heisenberg.json", "{F}/heisenberg.json", "{F}/hom_bad.json", "{T}/lift_bad.json"}, 1, {}},
        {"certify_search_heisenberg", {"certify", "{F}/heisenberg.json", "--search"}, 1, {}},
        {"certify_search_odd", {"certify", "{F}/odd3.json", "--search", "--out", "{T}/odd_report.json"}, 0,
         {"odd_report.json"}},
        {"certify_search_sum",
         {"certify", "{T}/hh.json", "--search", "--bound", "5", "--write-certificate", "{T}/hh_cert.json"}, 0,
         {"hh_cert.json"}},
        {"certify_family", {"certify", "{T}/hh.json", "--family", "{T}/hh_cert.json"}, 0, {}},
        {"certify_family_wrong_algebra", {"certify", "{T}/he.json", "--family", "{T}/hh_cert.json"}, 1, {}},
        {"certify_extension",
         {"certify", "{T}/eh.json", "--extension", "--samples", "25", "--seed", "11", "--out", "{T}/ext_report.json"}, 0,
         {"ext_report.json"}},
        {"certify_needs_mode", {"certify", "{F}/heisenberg.json"}, 2, {}},
        {"group_mul", {"group", "mul", "{F}/heisenberg.json", "{F}/e1.json", "{F}/e2.json"}, 0, {}},
        {"group_mul_reversed", {"group", "mul", "{F}/heisenberg.json", "{F}/e2.json", "{F}/e1.json"}, 0, {}},
        {"group_inv", {"group", "inv", "{F}/heisenberg.json", "{F}/x_two.json"}, 0, {}},
        {"group_comm",
         {"group", "comm", "{F}/heisenberg.json", "{F}/e1.json", "{F}/e2.json", "--out", "{T}/comm.json"}, 0,
         {"comm.json"}},
        {"group_root", {"group", "root", "{F}/heisenberg.json", "{F}/x_two.json", "--k", "2"}, 0, {}},
        {"group_root_bad_k", {"group", "root", "{F}/heisenberg.json", "{F}/x_two.json", "--k", "0"}, 1, {}},
        {"group_wrong_element", {"group", "inv", "{F}/odd3.json", "{F}/e1.json"}, 1, {}},
        {"oracle_iso", {"oracle", "iso", "{F}/heisenberg.json", "{F}/heisenberg.json", "--prime", "3"}, 0, {}},
        {"oracle_iso_none",
         {"oracle", "iso", "{F}/heisenberg.json", "{F}/abelian21.json", "--prime", "3", "--out", "{T}/iso_none.json"},
         1, {"iso_none.json"}},
        {"oracle_iso_budget",
         {"oracle", "iso", "{F}/heisenberg.json", "{F}/abelian21.json", "--prime", "5", "--budget", "1"}, 1, {}},
        {"oracle_embed", {"oracle", "embed", "{F}/heisenberg.json", "{T}/hh.json", "--prime", "3"}, 0, {}},
        {"oracle_embed_none",
         {"oracle", "embed", "{F}/heisenberg.json", "{F}/abelian21.json", "--prime", "3", "--max-family", "3"}, 1, {}},
        {"oracle_sweep",
         {"oracle", "sweep", "--prime", "3", "--n", "2", "--m", "1", "--seed", "5", "--out", "{T}/sweep.json"}, 0,
         {"sweep.json"}},
        {"oracle_sweep_p5", {"oracle", "sweep", "--prime", "5", "--workers", "2"}, 0, {}},
        {"oracle_bad_prime", {"oracle", "sweep", "--prime", "4"}, 2, {}},
        {"usage_no_command", {}, 2, {}},
        {"usage_unknown_command", {"frobnicate"}, 2, {}},
        {"usage_unknown_flag", {"info", "{F}/heisenberg.json", "--verbose"}, 2, {}},
        {"usage_missing_argument", {"extend", "{F}/heisenberg.json"}, 2, {}},
        {"help", {"--help"}, 0, {}},
    };
    return all;
}

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    if (from.empty()) return s;
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
    return s;
}

inline std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Runs every case in order (later cases read files written by earlier ones).
inline std::vector<Outcome> run_all(const fs::path& fixtures, const fs::path& golden_dir, const fs::path& scratch) {
    const bool update = std::getenv("NILQ_UPDATE_GOLDEN") != nullptr;
    fs::remove_all(scratch);
    fs::create_directories(scratch);
    const std::string f = fixtures.string(), t = scratch.string();
    std::vector<Outcome> results;
    for (const Case& c : cases()) {
        Outcome o{c.name};
        std::vector<std::string> args;
        for (const std::string& a : c.args) args.push_back(replace_all(replace_all(a, "{F}", f), "{T}", t));
        std::ostringstream out, err;
        const int code = nilq::cli::run(args, out, err);
        auto normalize = [&](const std::string& s) { return replace_all(replace_all(s, t, "{T}"), f, "{F}"); };
        std::vector<std::pair<std::string, std::string>> produced = {{c.name + ".stdout", normalize(out.str())},
                                                                     {c.name + ".stderr", normalize(err.str())}};
        for (const std::string& file : c.outputs) produced.emplace_back(c.name + "." + file, slurp(scratch / file));
        if (code != c.exit_code) {
            o.passed = false;
            o.detail = "exit " + std::to_string(code) + ", expected " + std::to_string(c.exit_code) + "; stderr: " + err.str();
        }
        for (const auto& [file, text] : produced) {
            const fs::path path = golden_dir / file;
            if (update) {
                std::ofstream(path, std::ios::binary) << text;
                continue;
            }
            if (!fs::exists(path)) {
                o.passed = false;
                o.detail += " missing golden " + file + ";";
            } else if (slurp(path) != text) {
                o.passed = false;
                o.detail += " " + file + " differs;";
            }
        }
        results.push_back(std::move(o));
    }
    return results;
}

}  // namespace golden
