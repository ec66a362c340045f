#pragma once

// Class-2 nilpotent Lie algebras L = V + W given by a skew-symmetric
// bilinear map omega: V x V -> W, stored as m skew n x n matrices.
// [v_i, v_j] = sum_k forms[k](i, j) w_k, and W is central.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilq/exactla.hpp"

namespace nilq {

struct AlgebraPresentation {
    Index n = 0;
    Index m = 0;
    std::vector<RatMatrix> forms;
    std::string label;

    /// Entrywise equality of dimensions and forms; the label is ignored.
    friend bool operator==(const AlgebraPresentation& a, const AlgebraPresentation& b) {
        if (a.n != b.n || a.m != b.m || a.forms.size() != b.forms.size()) return false;
        for (std::size_t k = 0; k < a.forms.size(); ++k)
            if (a.forms[k] != b.forms[k]) return false;
        return true;
    }
};

/// An element v + w of L.
struct Element {
    RatVector v;
    RatVector w;

    friend bool operator==(const Element& a, const Element& b) { return a.v == b.v && a.w == b.w; }
};

/// lambda = phi + psi, with F the matrix of phi: V_source -> V_target and
/// Psi the matrix of psi: W_source -> W_target.
struct HomPair {
    RatMatrix F;
    RatMatrix Psi;
};

struct Violation {
    enum class Kind { FormCount, FormShape, NotSkew };
    Kind kind;
    Index k = 0;  // 0-based form index
    Index i = 0;
    Index j = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// First failing (k, i, j) of F^T B_k F = sum_l Psi(k, l) A_l, if any.
struct HomCheck {
    bool holds = false;
    std::optional<std::array<Index, 3>> mismatch;
    explicit operator bool() const { return holds; }
};

// Construction --------------------------------------------------------------

AlgebraPresentation heisenberg();
AlgebraPresentation abelian(Index n, Index m);
Element zero_element(const AlgebraPresentation& p);
Element basis_v(const AlgebraPresentation& p, Index i);
Element basis_w(const AlgebraPresentation& p, Index k);
HomPair identity_hom(const AlgebraPresentation& p);

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Rational& s, const Element& a);

// Structure ------------------------------------------------------------------

ValidationReport validate(const AlgebraPresentation& p);

/// omega(x, y) as a coordinate vector in W.
RatVector omega(const AlgebraPresentation& p, const RatVector& x, const RatVector& y);

/// [x, y]; the w-parts of the arguments are central and do not contribute.
Element bracket(const AlgebraPresentation& p, const Element& x, const Element& y);

/// The forms stacked vertically into an (m n) x n matrix.
RatMatrix stacked_forms(const AlgebraPresentation& p);

/// Basis (as columns) of ker omega, the common kernel of all forms.
RatMatrix ker_omega(const AlgebraPresentation& p);

/// Rows (a_ij^(1), ..., a_ij^(m)) over i < j; its rank is dim omega(V, V).
RatMatrix value_matrix(const AlgebraPresentation& p);

bool is_nonsingular(const AlgebraPresentation& p);
bool is_surjective(const AlgebraPresentation& p);
/// [L, L] = Z(L); equivalent to nonsingular and surjective.
bool satisfies_com_cond(const AlgebraPresentation& p);

/// Basis of Z(L) in V + W coordinates (length n + m columns): the unit vectors
/// of W followed by ker omega embedded in V.
RatMatrix center(const AlgebraPresentation& p);

// Morphisms ------------------------------------------------------------------

HomCheck verify_hom(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h);
bool is_isomorphism(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h);

/// Applies lambda = F + Psi.
Element apply(const HomPair& h, const Element& x);

/// (F2 F1, Psi2 Psi1).
HomPair compose(const HomPair& second, const HomPair& first);

/// The presentation P' for which (F, Psi) is an isomorphism P -> P':
/// B_k = F^{-T} (sum_l Psi(k, l) A_l) F^{-1}.
AlgebraPresentation pushforward(const AlgebraPresentation& p, const RatMatrix& F, const RatMatrix& Psi);

// Constructions --------------------------------------------------------------

AlgebraPresentation direct_sum(const AlgebraPresentation& a, const AlgebraPresentation& b);

/// L / I for the graded ideal I = span(v_basis) + span(w_basis), where the
/// bases are given as columns. Both bases are completed with standard unit
/// vectors (lowest index first), and the quotient is presented on those
/// complements. Throws NotAnIdeal if omega(v_basis, V) leaves span(w_basis).
AlgebraPresentation quotient_by_graded_ideal(const AlgebraPresentation& p, const RatMatrix& v_basis,
                                             const RatMatrix& w_basis);

}  // namespace nilq
