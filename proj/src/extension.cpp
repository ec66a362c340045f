#include "nilq/extension.hpp"

#include <algorithm>
#include <numeric>

#include "nilq/decomp.hpp"
#include "nilq/random.hpp"

namespace nilq {

namespace {

bool is_permutation_of_range(std::vector<Index> indices, Index size) {
    std::sort(indices.begin(), indices.end());
    if (static_cast<Index>(indices.size()) != size) return false;
    for (Index i = 0; i < size; ++i)
        if (indices[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

void require_matches(const AlgebraPresentation& extended, const ExtensionLayout& layout) {
    check_layout(layout);
    if (extended.n != layout.extended_n() || extended.m != layout.extended_m() ||
        static_cast<Index>(extended.forms.size()) != extended.m)
        throw LayoutMismatch("layout describes a " + std::to_string(layout.extended_n()) + "/" +
                             std::to_string(layout.extended_m()) + " extension, algebra is " +
                             std::to_string(extended.n) + "/" + std::to_string(extended.m));
}

bool has_extension_structure(const AlgebraPresentation& ext, const ExtensionLayout& layout) {
    const RatMatrix& t_form = ext.forms[static_cast<std::size_t>(layout.t_index)];
    const std::size_t n = layout.u_indices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Index ui = layout.u_indices[i];
        for (std::size_t j = 0; j < n; ++j) {
            const Index uj = layout.u_indices[j];
            const Index vj = layout.v_indices[j];
            for (const RatMatrix& form : ext.forms)
                if (form(ui, uj) != 0) return false;
            if (t_form(ui, vj) != (i == j ? 1 : 0)) return false;
            for (Index w : layout.w_indices)
                if (ext.forms[static_cast<std::size_t>(w)](ui, vj) != 0) return false;
        }
    }
    return true;
}

}  // namespace

ExtensionLayout make_layout(const AlgebraPresentation& base) {
    ExtensionLayout layout;
    layout.base = base;
    for (Index i = 0; i < base.n; ++i) {
        layout.u_indices.push_back(i);
        layout.v_indices.push_back(base.n + i);
    }
    layout.t_index = 0;
    for (Index k = 0; k < base.m; ++k) layout.w_indices.push_back(k + 1);
    return layout;
}

void check_layout(const ExtensionLayout& layout) {
    if (layout.u_indices.size() != layout.v_indices.size())
        throw LayoutMismatch("u and v blocks differ in size");
    if (static_cast<Index>(layout.v_indices.size()) != layout.base.n ||
        static_cast<Index>(layout.w_indices.size()) != layout.base.m)
        throw LayoutMismatch("layout block sizes do not match the base algebra");
    std::vector<Index> v_side = layout.u_indices;
    v_side.insert(v_side.end(), layout.v_indices.begin(), layout.v_indices.end());
    if (!is_permutation_of_range(v_side, layout.extended_n()))
        throw LayoutMismatch("u and v indices do not partition the extended V");
    std::vector<Index> w_side = layout.w_indices;
    w_side.push_back(layout.t_index);
    if (!is_permutation_of_range(w_side, layout.extended_m()))
        throw LayoutMismatch("t and w indices do not partition the extended W");
}

Extended extend(const AlgebraPresentation& p) {
    Extended out;
    out.layout = make_layout(p);
    out.algebra.n = 2 * p.n;
    out.algebra.m = p.m + 1;
    out.algebra.forms = extension_forms(p.forms, p.n);
    if (!p.label.empty()) out.algebra.label = "E(" + p.label + ")";
    return out;
}

HomPair lift_isomorphism(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h) {
    if (!is_isomorphism(source, target, h)) throw NotAnIsomorphism("lift_isomorphism: (F, Psi) is not an isomorphism");
    auto [f_ext, psi_ext] = lift_pair(h.F, h.Psi);
    return {std::move(f_ext), std::move(psi_ext)};
}

RatMatrix u_block_basis(const ExtensionLayout& layout) {
    const Index n2 = layout.extended_n();
    RatMatrix basis = RatMatrix::Zero(n2, static_cast<Index>(layout.u_indices.size()));
    for (std::size_t i = 0; i < layout.u_indices.size(); ++i) basis(layout.u_indices[i], static_cast<Index>(i)) = 1;
    return basis;
}

RatMatrix t_block_basis(const ExtensionLayout& layout) {
    RatMatrix basis = RatMatrix::Zero(layout.extended_m(), 1);
    basis(layout.t_index, 0) = 1;
    return basis;
}

bool IndecomposabilityReport::passed() const {
    return structure_ok && std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.consistent; });
}

IndecomposabilityReport certify_E_indecomposable(const AlgebraPresentation& extended, const ExtensionLayout& layout,
                                                 const std::vector<RatMatrix>& psi_samples) {
    require_matches(extended, layout);
    IndecomposabilityReport report;
    report.structure_ok = has_extension_structure(extended, layout);
    for (const RatMatrix& psi : psi_samples) {
        PsiSampleVerdict verdict;
        verdict.t_image_nonzero = !is_zero_matrix<Rational>(psi.col(layout.t_index));
        verdict.kernel_dim = ker_omega(psi_omega(extended, psi)).cols();
        verdict.consistent = !(verdict.kernel_dim > 0 && verdict.t_image_nonzero);
        report.samples.push_back(verdict);
    }
    return report;
}

std::vector<RatMatrix> sample_psi(const ExtensionLayout& layout, std::size_t count, std::uint64_t seed, bool kill_t) {
    Rng rng(seed);
    const Index dim = layout.extended_m();
    std::vector<RatMatrix> out;
    while (out.size() < count) {
        RatMatrix psi = random_matrix(rng, dim, dim, 5);
        if (kill_t) psi.col(layout.t_index).setZero();
        else if (is_zero_matrix<Rational>(psi.col(layout.t_index))) continue;
        out.push_back(std::move(psi));
    }
    return out;
}

}  // namespace nilq
