#pragma once

// Geometric decomposability: the composite forms psi . omega, and the
// singular-family certificate. A valid certificate is a necessary condition
// for decomposability only; reports never claim more than that.

#include <optional>
#include <string>
#include <vector>

#include "nilq/nilalg.hpp"

namespace nilq {

struct SingularFamily {
    std::vector<RatMatrix> members;  // each m x m
};

struct CertificateReport {
    SingularFamily family;
    std::vector<Index> per_member_kernel_dims;
    Index joint_kernel_dim = 0;
    bool valid = false;
    std::string reason;  // empty when valid
};

/// Forms C_k = sum_l psi(k, l) A_l of the composite map psi . omega.
AlgebraPresentation psi_omega(const AlgebraPresentation& p, const RatMatrix& psi);

/// Valid iff every psi_i . omega is singular and the psi_i have trivial
/// joint kernel.
CertificateReport verify_certificate(const AlgebraPresentation& p, const SingularFamily& family);

enum class SearchMode {
    Trivial,         // m = 0: the empty family already works
    OddDimension,    // n odd: every functional gives a singular form
    SingleForm,      // m = 1, n even: one Pfaffian to test
    BinaryForm,      // m = 2, n even: rational roots of Pf(x A_1 + y A_2)
    HeightSampling,  // m >= 3, n even: functionals by increasing height
};

struct SearchOutcome {
    std::optional<CertificateReport> certificate;  // nullopt means NotFound
    SearchMode mode = SearchMode::Trivial;
    /// True when NotFound is conclusive for rank-one psi.
    bool complete = false;
    std::string note;

    bool found() const { return certificate.has_value(); }
};

std::string to_string(SearchMode mode);

/// Searches rank-one members psi = c c^T; psi . omega is singular iff the
/// single form sum_l c_l A_l is. Needs m independent such functionals c.
SearchOutcome search_rank_one_family(const AlgebraPresentation& p, int denominator_bound);

/// Integer coefficients a_0..a_d of Pf(x A + y B) = sum_i a_i x^i y^(d-i),
/// scaled by a positive rational so they are coprime integers (all zero when
/// the form vanishes identically). Computed by evaluation at d + 1 points
/// and exact interpolation.
std::vector<Integer> pfaffian_binary_form(const RatMatrix& a, const RatMatrix& b);

/// Distinct rational roots of the integer polynomial sum_i coeffs[i] s^i,
/// in increasing order. Returns nullopt when a coefficient needed for the
/// rational-root candidates is too large to factor by trial division.
std::optional<std::vector<Rational>> rational_roots(const std::vector<Integer>& coeffs);

}  // namespace nilq
