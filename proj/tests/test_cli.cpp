#include "doctest.h"

#include "golden_cases.hpp"
#include "nilq/document.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = NILQ_FIXTURES;
const fs::path kGolden = NILQ_GOLDEN;

fs::path scratch() { return fs::temp_directory_path() / "nilq_cli_tests"; }

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = nilq::cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden files") {
    const auto results = golden::run_all(kFixtures, kGolden, scratch());
    CHECK(results.size() == golden::cases().size());
    for (const auto& r : results) {
        INFO(r.name << ":" << r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("extend then quotient by U and T reproduces the input file") {
    const fs::path dir = scratch() / "roundtrip";
    fs::create_directories(dir);
    const std::string h = (kFixtures / "heisenberg.json").string();
    REQUIRE(run({"extend", h, (dir / "e.json").string()}) == 0);
    REQUIRE(run({"quotient", (dir / "e.json").string(), (dir / "q.json").string(), "--layout"}) == 0);
    CHECK(golden::slurp(dir / "q.json") == golden::slurp(h));
    REQUIRE(run({"sum", h, (kFixtures / "empty.json").string(), (dir / "s.json").string()}) == 0);
    CHECK(golden::slurp(dir / "s.json") == golden::slurp(h));
}

TEST_CASE("extending twice gives 4n and m + 2") {
    const fs::path dir = scratch() / "twice";
    fs::create_directories(dir);
    REQUIRE(run({"extend", (kFixtures / "odd3.json").string(), (dir / "e.json").string()}) == 0);
    REQUIRE(run({"extend", (dir / "e.json").string(), (dir / "ee.json").string()}) == 0);
    const auto d = nilq::doc::parse_algebra(nilq::doc::read_document((dir / "ee.json").string()));
    CHECK(d.algebra.n == 12);
    CHECK(d.algebra.m == 4);
    REQUIRE(d.layout.has_value());
    CHECK(d.layout->base.n == 6);
}

TEST_CASE("info output for Heisenberg") {
    std::string out;
    CHECK(run({"info", (kFixtures / "heisenberg.json").string()}, &out) == 0);
    CHECK(out.find("nonsingular: yes") != std::string::npos);
    CHECK(out.find("surjective: yes") != std::string::npos);
    CHECK(out.find("[L,L]=Z(L): yes") != std::string::npos);
    CHECK(run({"info", (kFixtures / "abelian21.json").string()}, &out) == 0);
    CHECK(out.find("dim ker ω = 2") != std::string::npos);
}

TEST_CASE("a malformed rational names its field") {
    std::string err;
    CHECK(run({"info", (kFixtures / "bad_rational.json").string()}, nullptr, &err) == 2);
    CHECK(err.find("forms[0][0][1]") != std::string::npos);
}

TEST_CASE("reports embed input digests") {
    const fs::path dir = scratch() / "report";
    fs::create_directories(dir);
    const std::string h = (kFixtures / "heisenberg.json").string();
    REQUIRE(run({"info", h, "--out", (dir / "r.json").string()}) == 0);
    const auto report = nilq::doc::parse_report(nilq::doc::read_document((dir / "r.json").string()));
    CHECK(report.command == "info");
    CHECK(report.verdict == "valid");
    CHECK(report.inputs.at("algebra") == nilq::doc::digest(nilq::doc::read_document(h)));
}

TEST_CASE("sweep prints zero violations") {
    std::string out;
    CHECK(run({"oracle", "sweep", "--prime", "3", "--n", "2", "--m", "1"}, &out) == 0);
    CHECK(out.find("0 violations") != std::string::npos);
}

}
