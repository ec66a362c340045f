#pragma once

// E(L): V' = U + V (u-block first), W' = T + W (t first), with
//   form 0      = [[0, I_n], [-I_n, 0]]     ([u_i, v_j] = delta_ij t)
//   form 1 + k  = [[0, 0], [0, A_k]]
// Consumers address the blocks through ExtensionLayout only.

#include <cstdint>
#include <vector>

#include "nilq/nilalg.hpp"

namespace nilq {

struct ExtensionLayout {
    AlgebraPresentation base;
    std::vector<Index> u_indices;
    std::vector<Index> v_indices;
    Index t_index = 0;
    std::vector<Index> w_indices;

    Index extended_n() const { return static_cast<Index>(u_indices.size() + v_indices.size()); }
    Index extended_m() const { return static_cast<Index>(w_indices.size()) + 1; }
};

/// Layout for extending an algebra with dim V = n and dim W = m.
ExtensionLayout make_layout(const AlgebraPresentation& base);

/// Throws LayoutMismatch unless the index sets partition {0..2n-1} and {0..m}.
void check_layout(const ExtensionLayout& layout);

/// Block recipe of E(L), shared by the rational and the mod-p code paths.
template <typename Field = RationalField>
std::vector<Matrix<typename Field::Scalar>> extension_forms(const std::vector<Matrix<typename Field::Scalar>>& forms,
                                                            Index n, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const Matrix<Scalar> zero = Matrix<Scalar>::Constant(n, n, field.zero());
    const Matrix<Scalar> id = identity(n, field);
    Matrix<Scalar> neg_id = id;
    for (Index i = 0; i < n; ++i) neg_id(i, i) = field.neg(id(i, i));

    std::vector<Matrix<Scalar>> out;
    out.reserve(forms.size() + 1);
    out.push_back(block_compose<Scalar>({{zero, id}, {neg_id, zero}}));
    for (const auto& a : forms) out.push_back(block_compose<Scalar>({{zero, zero}, {zero, a}}));
    return out;
}

/// Lifts (F, Psi) to (block-diag(G, F), block-diag(1, Psi)) with G = (F^{-1})^T.
/// F must be invertible over the field.
template <typename Field = RationalField>
std::pair<Matrix<typename Field::Scalar>, Matrix<typename Field::Scalar>> lift_pair(
    const Matrix<typename Field::Scalar>& F, const Matrix<typename Field::Scalar>& Psi, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const Index n = F.rows();
    const Index m = Psi.rows();
    const Matrix<Scalar> g = inverse(F, field).transpose();
    const Matrix<Scalar> zero_n = Matrix<Scalar>::Constant(n, n, field.zero());
    Matrix<Scalar> one = Matrix<Scalar>::Constant(1, 1, field.one());
    return {block_compose<Scalar>({{g, zero_n}, {zero_n, F}}),
            block_compose<Scalar>({{one, Matrix<Scalar>::Constant(1, m, field.zero())},
                                   {Matrix<Scalar>::Constant(m, 1, field.zero()), Psi}})};
}

struct Extended {
    AlgebraPresentation algebra;
    ExtensionLayout layout;
};

Extended extend(const AlgebraPresentation& p);

/// The isomorphism E(P1) -> E(P2) induced by an isomorphism P1 -> P2.
/// Throws NotAnIsomorphism when h is not one.
HomPair lift_isomorphism(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h);

/// Basis columns of U (in V') and of T (in W'): the ideal H = U + T.
RatMatrix u_block_basis(const ExtensionLayout& layout);
RatMatrix t_block_basis(const ExtensionLayout& layout);

struct PsiSampleVerdict {
    bool t_image_nonzero = false;
    Index kernel_dim = 0;
    /// ker(psi omega) != 0 implies psi(t) = 0.
    bool consistent = true;
};

struct IndecomposabilityReport {
    /// [u_i, u_j] = 0 and [u_i, v_j] = delta_ij t hold in the presentation,
    /// which is what forces ker(psi omega) = 0 whenever psi(t) != 0.
    bool structure_ok = false;
    std::vector<PsiSampleVerdict> samples;

    bool passed() const;
};

/// Checks the E(L) indecomposability certificate on explicit W'-endomorphisms.
IndecomposabilityReport certify_E_indecomposable(const AlgebraPresentation& extended, const ExtensionLayout& layout,
                                                 const std::vector<RatMatrix>& psi_samples);

/// Seeded random W'-endomorphisms with psi(t) != 0 (or psi(t) = 0 when
/// `kill_t` is set); entries are small rationals.
std::vector<RatMatrix> sample_psi(const ExtensionLayout& layout, std::size_t count, std::uint64_t seed, bool kill_t);

}  // namespace nilq
