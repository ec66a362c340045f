#include "doctest.h"

#include "nilq/extension.hpp"
#include "nilq/fforacle.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace nilq;
using test::mat;

namespace {

FpMatrix fp(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    FpMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (std::int64_t e : row) out(i, j++) = e;
        ++i;
    }
    return out;
}

FpPresentation fp_heisenberg(std::int64_t p) { return reduce_mod_p(heisenberg(), p); }
FpPresentation fp_zero(Index n, Index m, std::int64_t p) { return reduce_mod_p(abelian(n, m), p); }

constexpr std::uint64_t kBudget = 50'000'000;

}  // namespace

TEST_SUITE("fforacle") {

TEST_CASE("reduce_mod_p examples") {
    const FpPresentation h = fp_heisenberg(5);
    CHECK(h.forms[0] == fp({{0, 1}, {4, 0}}));
    CHECK(reduce_matrix_mod_p(mat({{"1/2"}}), 5) == fp({{3}}));
    CHECK(reduce_matrix_mod_p(mat({{"-3/4"}}), 7) == fp({{1}}));
    CHECK_THROWS_AS(reduce_matrix_mod_p(mat({{"1/5"}}), 5), BadPrime);
    try {
        reduce_matrix_mod_p(mat({{"0", "1/5"}}), 5);
    } catch (const BadPrime& e) {
        CHECK(std::string(e.what()).find("(1, 2)") != std::string::npos);
    }
}

TEST_CASE("primes are checked") {
    CHECK_NOTHROW(require_odd_prime(3));
    CHECK_NOTHROW(require_odd_prime(2147483647));
    CHECK_THROWS_AS(require_odd_prime(2), BadPrime);
    CHECK_THROWS_AS(require_odd_prime(9), BadPrime);
    CHECK_THROWS_AS(require_odd_prime(1), BadPrime);
    Budget b(10);
    CHECK_THROWS_AS(ff_iso_search(fp_heisenberg(3), fp_heisenberg(5), b), BadPrime);
}

TEST_CASE("iso search: a presentation against itself") {
    const FpPresentation h = fp_heisenberg(3);
    Budget b(kBudget);
    const IsoSearchResult r = ff_iso_search(h, h, b);
    REQUIRE(r.witness.has_value());
    CHECK(is_iso_mod_p(h, h, *r.witness));
    CHECK(is_iso_mod_p(h, h, FpHomPair{fp({{1, 0}, {0, 1}}), fp({{1}})}));
    // first witness in search order
    CHECK(r.witness->F == fp({{0, 2}, {1, 0}}));
    CHECK(r.witness->Psi == fp({{1}}));
    CHECK(r.psi_index == 1);
    CHECK(r.psi_total == 3);
}

TEST_CASE("iso search: nonzero 2x2 forms mod 3 are all equivalent") {
    const FpPresentation a = presentation_at(2, 1, 3, 1), b = presentation_at(2, 1, 3, 2);
    CHECK(a.forms[0] == fp({{0, 1}, {2, 0}}));
    CHECK(b.forms[0] == fp({{0, 2}, {1, 0}}));
    Budget budget(kBudget);
    const IsoSearchResult r = ff_iso_search(a, b, budget);
    REQUIRE(r.witness.has_value());
    CHECK(is_iso_mod_p(a, b, *r.witness));
}

TEST_CASE("iso search: Heisenberg against the zero form") {
    Budget b(kBudget);
    CHECK_FALSE(ff_iso_search(fp_heisenberg(3), fp_zero(2, 1, 3), b).witness.has_value());
    CHECK_FALSE(ff_iso_search(fp_heisenberg(3), fp_zero(3, 1, 3), b).witness.has_value());
}

TEST_CASE("iso search: budget and resumption") {
    const FpPresentation h = fp_heisenberg(5);
    Budget tiny(1);
    try {
        ff_iso_search(h, fp_zero(2, 1, 5), tiny);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.remainder() == 4);
    }
    Budget b(kBudget);
    const IsoSearchResult first = ff_iso_search(h, h, b);
    REQUIRE(first.witness);
    const IsoSearchResult next = ff_iso_search(h, h, b, first.psi_index + 1);
    REQUIRE(next.witness);
    CHECK(next.psi_index > first.psi_index);
    CHECK(is_iso_mod_p(h, h, *next.witness));
}

TEST_CASE("iso search agrees with brute force on every (2, 1) and (2, 2) pair mod 3") {
    for (const auto& [n, m] : {std::pair<Index, Index>{2, 1}, {2, 2}}) {
        const std::uint64_t count = presentation_count(n, m, 3);
        for (std::uint64_t i = 0; i < count; ++i)
            for (std::uint64_t j = 0; j < count; ++j) {
                const FpPresentation a = presentation_at(n, m, 3, i), b = presentation_at(n, m, 3, j);
                Budget budget(kBudget);
                const IsoSearchResult r = ff_iso_search(a, b, budget);
                CHECK(r.witness.has_value() == (oracle::count_isomorphisms(a, b) > 0));
                if (r.witness) CHECK(oracle::hom_condition(a, b, r.witness->F, r.witness->Psi));
            }
    }
}

TEST_CASE("iso search agrees with brute force on sampled (3, 1) pairs mod 3") {
    Rng rng(test::seed("ff-brute-31"));
    const std::uint64_t count = presentation_count(3, 1, 3);
    CHECK(count == 27);
    for (int trial = 0; trial < 12; ++trial) {
        const FpPresentation a = presentation_at(3, 1, 3, rng() % count), b = presentation_at(3, 1, 3, rng() % count);
        Budget budget(kBudget);
        CHECK(ff_iso_search(a, b, budget).witness.has_value() == (oracle::count_isomorphisms(a, b) > 0));
    }
}

TEST_CASE("property: symmetry and witness lifting") {
    for (std::int64_t p : {3, 5}) {
        const std::uint64_t count = presentation_count(2, 2, p);
        Rng rng(test::seed("ff-symmetry") + static_cast<std::uint64_t>(p));
        for (int trial = 0; trial < 15; ++trial) {
            const FpPresentation a = presentation_at(2, 2, p, rng() % count), b = presentation_at(2, 2, p, rng() % count);
            Budget budget(kBudget);
            const IsoSearchResult ab = ff_iso_search(a, b, budget), ba = ff_iso_search(b, a, budget);
            CHECK(ab.witness.has_value() == ba.witness.has_value());
            if (ab.witness) CHECK(is_iso_mod_p(extend_mod_p(a), extend_mod_p(b), lift_mod_p(*ab.witness, p)));
        }
    }
}

TEST_CASE("property: rational isomorphisms transport mod p") {
    Rng rng(test::seed("ff-transport"));
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const AlgebraPresentation p1 = random_presentation(rng, 3, 2, 4);
        const HomPair h{random_invertible(rng, 3, 4), random_invertible(rng, 2, 4)};
        const AlgebraPresentation p2 = pushforward(p1, h.F, h.Psi);
        const std::int64_t p = 7;
        try {
            const FpPresentation q1 = reduce_mod_p(p1, p), q2 = reduce_mod_p(p2, p);
            const FpHomPair w{reduce_matrix_mod_p(h.F, p), reduce_matrix_mod_p(h.Psi, p)};
            const PrimeField field(p);
            if (rank(w.F, field) < 3 || rank(w.Psi, field) < 2) continue;
            CHECK(is_iso_mod_p(q1, q2, w));
            Budget budget(kBudget);
            CHECK(ff_iso_search(q1, q2, budget).witness.has_value());
            ++checked;
        } catch (const BadPrime&) {
        }
    }
    CHECK(checked >= 10);
}

TEST_CASE("extend_mod_p follows the rational recipe") {
    Rng rng(test::seed("ff-extend"));
    for (int trial = 0; trial < 10; ++trial) {
        const AlgebraPresentation p = random_presentation(rng, 3, 2, 3);
        try {
            const FpPresentation direct = extend_mod_p(reduce_mod_p(p, 11));
            const FpPresentation via_q = reduce_mod_p(extend(p).algebra, 11);
            CHECK(direct == via_q);
        } catch (const BadPrime&) {
        }
    }
}

TEST_CASE("embedding examples") {
    const FpPresentation h = fp_heisenberg(3);
    Budget b(kBudget);
    const EmbeddingResult self = ff_embedding_family(h, h, 3, b);
    REQUIRE(self.family.has_value());
    CHECK(self.family->size() == 1);

    const FpPresentation hh = reduce_mod_p(direct_sum(heisenberg(), heisenberg()), 3);
    const EmbeddingResult into_sum = ff_embedding_family(h, hh, 3, b);
    REQUIRE(into_sum.family.has_value());
    for (const FpHomPair& m : *into_sum.family) CHECK(is_hom_mod_p(h, hh, m));

    const FpPresentation zero = fp_zero(2, 1, 3);
    const EmbeddingResult none = ff_embedding_family(h, zero, 4, b);
    CHECK_FALSE(none.family.has_value());
    std::uint64_t brute = 0;
    oracle::for_each_hom(h, zero, [&](const FpMatrix&, const FpMatrix&) { ++brute; });
    CHECK(none.homs_enumerated == brute);
}

TEST_CASE("embedding families separate points") {
    // H into H+H does have an injective member; H+H into H needs two projections
    const FpPresentation h = fp_heisenberg(3);
    const FpPresentation hh = reduce_mod_p(direct_sum(heisenberg(), heisenberg()), 3);
    Budget b(kBudget);
    const EmbeddingResult r = ff_embedding_family(hh, h, 2, b);
    REQUIRE(r.family.has_value());
    CHECK(r.family->size() == 2);
    FpMatrix stacked(0, 6);
    for (const FpHomPair& m : *r.family) {
        CHECK(is_hom_mod_p(hh, h, m));
        FpMatrix lambda = FpMatrix::Zero(m.F.rows() + m.Psi.rows(), 6);
        lambda.topLeftCorner(m.F.rows(), 4) = m.F;
        lambda.bottomRightCorner(m.Psi.rows(), 2) = m.Psi;
        FpMatrix next(stacked.rows() + lambda.rows(), 6);
        next << stacked, lambda;
        stacked = next;
    }
    CHECK(rank(stacked, PrimeField(3)) == 6);
    const EmbeddingResult one = ff_embedding_family(hh, h, 1, b);
    CHECK_FALSE(one.family.has_value());
}

TEST_CASE("hom kernels") {
    const FpHomPair h{fp({{1, 0}, {0, 0}}), fp({{0}})};
    const FpMatrix k = hom_kernel_mod_p(h, 3);
    CHECK(k.cols() == 2);
}

TEST_CASE("presentation enumeration") {
    CHECK(presentation_count(2, 1, 3) == 3);
    CHECK(presentation_count(2, 1, 5) == 5);
    CHECK(presentation_count(3, 2, 3) == 729);
    const FpPresentation q = presentation_at(3, 1, 3, 5);  // digits 0 1 2
    CHECK(q.forms[0] == fp({{0, 0, 1}, {0, 0, 2}, {2, 1, 0}}));
}

TEST_CASE("sweep: n = 2, m = 1, p = 3") {
    const SweepReport r = ff_theorem_sweep(2, 1, 3, kBudget, 1);
    CHECK(r.presentations == 3);
    CHECK(r.entries.size() == 9);
    CHECK(r.violations.empty());
    for (const SweepEntry& e : r.entries) {
        if (e.left == e.right) {
            CHECK(e.base_isomorphic);
            CHECK(e.extension_isomorphic);
        }
        CHECK(e.base_isomorphic == ((e.left == 0) == (e.right == 0)));
    }
    for (std::size_t i = 1; i < r.entries.size(); ++i) CHECK(r.entries[i - 1].pair_index < r.entries[i].pair_index);
}

TEST_CASE("sweep: worker count does not change the report") {
    const SweepReport one = ff_theorem_sweep(2, 2, 3, kBudget, 1);
    const SweepReport four = ff_theorem_sweep(2, 2, 3, kBudget, 4);
    CHECK(one.violations.empty());
    REQUIRE(one.entries.size() == four.entries.size());
    for (std::size_t i = 0; i < one.entries.size(); ++i) {
        CHECK(one.entries[i].pair_index == four.entries[i].pair_index);
        CHECK(one.entries[i].base_isomorphic == four.entries[i].base_isomorphic);
        CHECK(one.entries[i].extension_isomorphic == four.entries[i].extension_isomorphic);
    }
}

TEST_CASE("sweep: budget exhaustion is reported") {
    CHECK_THROWS_AS(ff_theorem_sweep(2, 1, 5, 10, 1), BudgetExceeded);
}

}
