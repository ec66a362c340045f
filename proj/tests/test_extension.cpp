#include "doctest.h"

#include "nilq/decomp.hpp"
#include "nilq/extension.hpp"
#include "util.hpp"

using namespace nilq;
using test::mat;

TEST_SUITE("extension") {

TEST_CASE("extend(Heisenberg) has the block forms") {
    const Extended e = extend(heisenberg());
    CHECK(e.algebra.n == 4);
    CHECK(e.algebra.m == 2);
    CHECK(e.algebra.forms[0] ==
          mat({{"0", "0", "1", "0"}, {"0", "0", "0", "1"}, {"-1", "0", "0", "0"}, {"0", "-1", "0", "0"}}));
    CHECK(e.algebra.forms[1] ==
          mat({{"0", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "1"}, {"0", "0", "-1", "0"}}));
    CHECK(e.algebra.label == "E(heisenberg)");
    CHECK(e.layout.u_indices == std::vector<Index>{0, 1});
    CHECK(e.layout.v_indices == std::vector<Index>{2, 3});
    CHECK(e.layout.t_index == 0);
    CHECK(e.layout.w_indices == std::vector<Index>{1});
}

TEST_CASE("u and v pair to t") {
    const AlgebraPresentation h = heisenberg();
    const Extended e = extend(h);
    const AlgebraPresentation& p = e.algebra;
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
            const Element uv = bracket(p, basis_v(p, e.layout.u_indices[i]), basis_v(p, e.layout.v_indices[j]));
            CHECK(uv == (i == j ? basis_w(p, e.layout.t_index) : zero_element(p)));
            CHECK(bracket(p, basis_v(p, e.layout.u_indices[i]), basis_v(p, e.layout.u_indices[j])) == zero_element(p));
        }
}

TEST_CASE("extend of the trivial algebra") {
    const Extended e = extend(abelian(0, 0));
    CHECK(e.algebra.n == 0);
    CHECK(e.algebra.m == 1);
    REQUIRE(e.algebra.forms.size() == 1);
    CHECK(e.algebra.forms[0].size() == 0);
    CHECK(validate(e.algebra).ok());
}

TEST_CASE("center grows by one under com_cond") {
    const AlgebraPresentation h = heisenberg();
    CHECK(center(extend(h).algebra).cols() == center(h).cols() + 1);
    const AlgebraPresentation twice = extend(extend(h).algebra).algebra;
    CHECK(twice.n == 8);
    CHECK(twice.m == 3);
}

TEST_CASE("lift_isomorphism examples") {
    const AlgebraPresentation h = heisenberg();
    const Extended e = extend(h);
    const HomPair id = lift_isomorphism(h, h, identity_hom(h));
    CHECK(id.F == identity(4));
    CHECK(id.Psi == identity(2));

    const HomPair scaled = lift_isomorphism(h, h, test::hom(RatMatrix(2 * identity(2)), mat({{"4"}})));
    CHECK(scaled.F == mat({{"1/2", "0", "0", "0"}, {"0", "1/2", "0", "0"}, {"0", "0", "2", "0"}, {"0", "0", "0", "2"}}));
    CHECK(scaled.Psi == mat({{"1", "0"}, {"0", "4"}}));
    CHECK(verify_hom(e.algebra, e.algebra, scaled).holds);

    CHECK_THROWS_AS(lift_isomorphism(h, h, test::hom(RatMatrix(2 * identity(2)), mat({{"2"}}))), NotAnIsomorphism);
}

TEST_CASE("certify_E_indecomposable examples") {
    const Extended e = extend(heisenberg());
    const IndecomposabilityReport id = certify_E_indecomposable(e.algebra, e.layout, {identity(2)});
    CHECK(id.structure_ok);
    REQUIRE(id.samples.size() == 1);
    CHECK(id.samples[0].t_image_nonzero);
    CHECK(id.samples[0].kernel_dim == 0);
    CHECK(id.passed());

    // kills t, keeps w: the u-block falls into the kernel
    const IndecomposabilityReport kill = certify_E_indecomposable(e.algebra, e.layout, {mat({{"0", "0"}, {"0", "1"}})});
    CHECK_FALSE(kill.samples[0].t_image_nonzero);
    CHECK(kill.samples[0].kernel_dim == 2);
    CHECK(kill.passed());

    const IndecomposabilityReport many = certify_E_indecomposable(e.algebra, e.layout, sample_psi(e.layout, 100, 7, false));
    CHECK(many.passed());
    for (const PsiSampleVerdict& s : many.samples) {
        CHECK(s.t_image_nonzero);
        CHECK(s.kernel_dim == 0);
    }
}

TEST_CASE("certify rejects a foreign layout") {
    const Extended e = extend(heisenberg());
    const Extended other = extend(abelian(3, 1));
    CHECK_THROWS_AS(certify_E_indecomposable(e.algebra, other.layout, {}), LayoutMismatch);
    ExtensionLayout broken = e.layout;
    broken.v_indices = {1, 3};
    CHECK_THROWS_AS(check_layout(broken), LayoutMismatch);
}

TEST_CASE("the structure check fails on a non-extension") {
    const Extended e = extend(heisenberg());
    AlgebraPresentation tampered = e.algebra;
    tampered.forms[0](0, 1) = 1;
    tampered.forms[0](1, 0) = -1;
    CHECK_FALSE(certify_E_indecomposable(tampered, e.layout, {}).structure_ok);
}

TEST_CASE("the trivial algebra satisfies com_cond but its extension does not") {
    const AlgebraPresentation trivial = abelian(0, 0);
    CHECK(satisfies_com_cond(trivial));
    const Extended e = extend(trivial);
    CHECK(is_nonsingular(e.algebra));
    CHECK_FALSE(is_surjective(e.algebra));
}

TEST_CASE("property: extensions stay valid and keep com_cond") {
    Rng rng(test::seed("extension-valid"));
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = static_cast<Index>(rng() % 5), m = static_cast<Index>(rng() % 3);
        const AlgebraPresentation p = random_presentation(rng, n, m, 5);
        const Extended e = extend(p);
        CHECK(validate(e.algebra).ok());
        CHECK(e.algebra.n == 2 * n);
        CHECK(e.algebra.m == m + 1);
        if (n > 0 && satisfies_com_cond(p)) {
            CHECK(satisfies_com_cond(e.algebra));
            CHECK(center(e.algebra).cols() == center(p).cols() + 1);
        }
        CHECK(quotient_by_graded_ideal(e.algebra, u_block_basis(e.layout), t_block_basis(e.layout)) == p);
    }
}

TEST_CASE("property: lifting is functorial and transports isomorphisms") {
    Rng rng(test::seed("extension-lift"));
    for (int trial = 0; trial < 30; ++trial) {
        const auto [n, m] = test::com_cond_shape(rng, 5, 3);
        const AlgebraPresentation p1 = random_com_cond_presentation(rng, n, m, 4);
        const HomPair h1{random_invertible(rng, n, 4), random_invertible(rng, m, 4)};
        const HomPair h2{random_invertible(rng, n, 4), random_invertible(rng, m, 4)};
        const AlgebraPresentation p2 = pushforward(p1, h1.F, h1.Psi);
        const AlgebraPresentation p3 = pushforward(p2, h2.F, h2.Psi);
        const HomPair l1 = lift_isomorphism(p1, p2, h1);
        const HomPair l2 = lift_isomorphism(p2, p3, h2);
        CHECK(is_isomorphism(extend(p1).algebra, extend(p2).algebra, l1));
        const HomPair l12 = lift_isomorphism(p1, p3, compose(h2, h1));
        const HomPair composed = compose(l2, l1);
        CHECK(l12.F == composed.F);
        CHECK(l12.Psi == composed.Psi);
    }
}

TEST_CASE("property: psi(t) != 0 forces a trivial kernel, for any base") {
    Rng rng(test::seed("extension-prop3"));
    for (int trial = 0; trial < 20; ++trial) {
        const AlgebraPresentation p =
            random_presentation(rng, static_cast<Index>(rng() % 4), static_cast<Index>(rng() % 3), 5);
        const Extended e = extend(p);
        const IndecomposabilityReport r =
            certify_E_indecomposable(e.algebra, e.layout, sample_psi(e.layout, 10, rng(), false));
        CHECK(r.structure_ok);
        for (const PsiSampleVerdict& s : r.samples) CHECK(s.kernel_dim == 0);
    }
}

}
