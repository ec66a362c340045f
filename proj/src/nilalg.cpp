#include "nilq/nilalg.hpp"

#include <optional>
#include <string>
#include <utility>

namespace nilq {

namespace {

std::string dims(const RatMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_element(const AlgebraPresentation& p, const Element& x, const char* what) {
    if (x.v.size() != p.n || x.w.size() != p.m)
        throw DimensionMismatch(std::string(what) + ": element has shape (" + std::to_string(x.v.size()) + ", " +
                                std::to_string(x.w.size()) + "), algebra has (" + std::to_string(p.n) + ", " +
                                std::to_string(p.m) + ")");
}

void require_hom_shape(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h) {
    if (h.F.rows() != target.n || h.F.cols() != source.n)
        throw DimensionMismatch("F is " + dims(h.F) + ", expected " + std::to_string(target.n) + "x" +
                                std::to_string(source.n));
    if (h.Psi.rows() != target.m || h.Psi.cols() != source.m)
        throw DimensionMismatch("Psi is " + dims(h.Psi) + ", expected " + std::to_string(target.m) + "x" +
                                std::to_string(source.m));
}

RatMatrix combine(const AlgebraPresentation& p, const RatMatrix& coeffs, Index row) {
    RatMatrix out = RatMatrix::Zero(p.n, p.n);
    for (Index l = 0; l < p.m; ++l)
        if (coeffs(row, l) != 0) out += coeffs(row, l) * p.forms[static_cast<std::size_t>(l)];
    return out;
}

// Row-major scan of the lower triangle, diagonal included.
std::optional<std::pair<Index, Index>> first_skew_failure(const RatMatrix& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j <= i; ++j)
            if (a(i, j) + a(j, i) != 0) return std::pair{i, j};
    return std::nullopt;
}

}  // namespace

AlgebraPresentation heisenberg() {
    RatMatrix a(2, 2);
    a << 0, 1, -1, 0;
    return {2, 1, {a}, "heisenberg"};
}

AlgebraPresentation abelian(Index n, Index m) {
    return {n, m, std::vector<RatMatrix>(static_cast<std::size_t>(m), RatMatrix::Zero(n, n)), {}};
}

Element zero_element(const AlgebraPresentation& p) { return {RatVector::Zero(p.n), RatVector::Zero(p.m)}; }

Element basis_v(const AlgebraPresentation& p, Index i) {
    Element e = zero_element(p);
    e.v(i) = 1;
    return e;
}

Element basis_w(const AlgebraPresentation& p, Index k) {
    Element e = zero_element(p);
    e.w(k) = 1;
    return e;
}

HomPair identity_hom(const AlgebraPresentation& p) { return {identity(p.n), identity(p.m)}; }

Element operator+(const Element& a, const Element& b) {
    if (a.v.size() != b.v.size() || a.w.size() != b.w.size()) throw DimensionMismatch("adding elements of different shape");
    return {a.v + b.v, a.w + b.w};
}

Element operator-(const Element& a) { return {-a.v, -a.w}; }

Element operator*(const Rational& s, const Element& a) { return {s * a.v, s * a.w}; }

ValidationReport validate(const AlgebraPresentation& p) {
    ValidationReport report;
    if (p.n < 0 || p.m < 0) {
        report.violations.push_back({Violation::Kind::FormCount, 0, 0, 0, "negative dimension"});
        return report;
    }
    if (static_cast<Index>(p.forms.size()) != p.m) {
        report.violations.push_back({Violation::Kind::FormCount, 0, 0, 0,
                                     "expected " + std::to_string(p.m) + " forms, found " +
                                         std::to_string(p.forms.size())});
    }
    for (std::size_t k = 0; k < p.forms.size(); ++k) {
        const RatMatrix& a = p.forms[k];
        const Index kk = static_cast<Index>(k);
        if (a.rows() != p.n || a.cols() != p.n) {
            report.violations.push_back({Violation::Kind::FormShape, kk, 0, 0,
                                         "form " + std::to_string(k + 1) + " is " + dims(a) + ", expected " +
                                             std::to_string(p.n) + "x" + std::to_string(p.n)});
            continue;
        }
        if (const auto bad = first_skew_failure(a)) {
            const auto [i, j] = *bad;
            report.violations.push_back({Violation::Kind::NotSkew, kk, i, j,
                                         "form " + std::to_string(k + 1) + " not skew at (" + std::to_string(i + 1) +
                                             ", " + std::to_string(j + 1) + ")"});
        }
    }
    return report;
}

RatVector omega(const AlgebraPresentation& p, const RatVector& x, const RatVector& y) {
    if (x.size() != p.n || y.size() != p.n) throw DimensionMismatch("omega: V-vectors of wrong length");
    RatVector out(p.m);
    for (Index k = 0; k < p.m; ++k) out(k) = x.dot(p.forms[static_cast<std::size_t>(k)] * y);
    return out;
}

Element bracket(const AlgebraPresentation& p, const Element& x, const Element& y) {
    require_element(p, x, "bracket");
    require_element(p, y, "bracket");
    return {RatVector::Zero(p.n), omega(p, x.v, y.v)};
}

RatMatrix stacked_forms(const AlgebraPresentation& p) {
    RatMatrix stacked(p.m * p.n, p.n);
    for (Index k = 0; k < p.m; ++k) stacked.middleRows(k * p.n, p.n) = p.forms[static_cast<std::size_t>(k)];
    return stacked;
}

RatMatrix ker_omega(const AlgebraPresentation& p) { return kernel_basis(stacked_forms(p)); }

RatMatrix value_matrix(const AlgebraPresentation& p) {
    RatMatrix values(p.n * (p.n - 1) / 2, p.m);
    Index row = 0;
    for (Index i = 0; i < p.n; ++i)
        for (Index j = i + 1; j < p.n; ++j, ++row)
            for (Index k = 0; k < p.m; ++k) values(row, k) = p.forms[static_cast<std::size_t>(k)](i, j);
    return values;
}

bool is_nonsingular(const AlgebraPresentation& p) { return ker_omega(p).cols() == 0; }

bool is_surjective(const AlgebraPresentation& p) { return rank(value_matrix(p)) == p.m; }

bool satisfies_com_cond(const AlgebraPresentation& p) { return is_nonsingular(p) && is_surjective(p); }

RatMatrix center(const AlgebraPresentation& p) {
    const RatMatrix kernel = ker_omega(p);
    RatMatrix basis = RatMatrix::Zero(p.n + p.m, p.m + kernel.cols());
    for (Index k = 0; k < p.m; ++k) basis(p.n + k, k) = 1;
    basis.block(0, p.m, p.n, kernel.cols()) = kernel;
    return basis;
}

HomCheck verify_hom(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h) {
    require_hom_shape(source, target, h);
    for (Index k = 0; k < target.m; ++k) {
        const RatMatrix lhs = h.F.transpose() * target.forms[static_cast<std::size_t>(k)] * h.F;
        const RatMatrix rhs = combine(source, h.Psi, k);
        for (Index i = 0; i < source.n; ++i)
            for (Index j = 0; j < source.n; ++j)
                if (lhs(i, j) != rhs(i, j)) return {false, std::array<Index, 3>{k, i, j}};
    }
    return {true, std::nullopt};
}

bool is_isomorphism(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h) {
    if (source.n != target.n || source.m != target.m) return false;
    if (h.F.rows() != source.n || h.F.cols() != source.n) return false;
    if (h.Psi.rows() != source.m || h.Psi.cols() != source.m) return false;
    if (rank(h.F) != source.n || rank(h.Psi) != source.m) return false;
    return verify_hom(source, target, h).holds;
}

Element apply(const HomPair& h, const Element& x) {
    if (h.F.cols() != x.v.size() || h.Psi.cols() != x.w.size()) throw DimensionMismatch("apply: element shape");
    return {h.F * x.v, h.Psi * x.w};
}

HomPair compose(const HomPair& second, const HomPair& first) {
    return {matmul(second.F, first.F), matmul(second.Psi, first.Psi)};
}

AlgebraPresentation pushforward(const AlgebraPresentation& p, const RatMatrix& F, const RatMatrix& Psi) {
    if (F.rows() != p.n || F.cols() != p.n) throw DimensionMismatch("pushforward: F is " + dims(F));
    if (Psi.rows() != p.m || Psi.cols() != p.m) throw DimensionMismatch("pushforward: Psi is " + dims(Psi));
    const RatMatrix f_inv = inverse(F);
    if (rank(Psi) != p.m) throw SingularMatrix("pushforward: Psi is singular");
    AlgebraPresentation out{p.n, p.m, {}, p.label};
    out.forms.reserve(static_cast<std::size_t>(p.m));
    for (Index k = 0; k < p.m; ++k) out.forms.push_back(f_inv.transpose() * combine(p, Psi, k) * f_inv);
    return out;
}

AlgebraPresentation direct_sum(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    const Index n = a.n + b.n;
    AlgebraPresentation out{n, a.m + b.m, {}, {}};
    out.label = a.label.empty() ? b.label : b.label.empty() ? a.label : a.label + "+" + b.label;
    for (const RatMatrix& form : a.forms) {
        RatMatrix big = RatMatrix::Zero(n, n);
        big.topLeftCorner(a.n, a.n) = form;
        out.forms.push_back(std::move(big));
    }
    for (const RatMatrix& form : b.forms) {
        RatMatrix big = RatMatrix::Zero(n, n);
        big.bottomRightCorner(b.n, b.n) = form;
        out.forms.push_back(std::move(big));
    }
    return out;
}

AlgebraPresentation quotient_by_graded_ideal(const AlgebraPresentation& p, const RatMatrix& v_basis,
                                             const RatMatrix& w_basis) {
    if (v_basis.rows() != p.n) throw DimensionMismatch("quotient: V-part basis vectors must have length n");
    if (w_basis.rows() != p.m) throw DimensionMismatch("quotient: W-part basis vectors must have length m");

    const RatMatrix ideal_v = independent_columns(v_basis);
    const RatMatrix ideal_w = independent_columns(w_basis);

    for (Index a = 0; a < ideal_v.cols(); ++a) {
        for (Index j = 0; j < p.n; ++j) {
            const RatVector value = omega(p, ideal_v.col(a), RatVector::Unit(p.n, j));
            if (!in_column_span(ideal_w, value))
                throw NotAnIdeal("quotient: omega(ideal vector " + std::to_string(a + 1) + ", v_" +
                                     std::to_string(j + 1) + ") is not in the W-part of the ideal",
                                 static_cast<long>(a), static_cast<long>(j));
        }
    }

    const std::vector<Index> v_rest = complete_with_unit_vectors(ideal_v);
    const std::vector<Index> w_rest = complete_with_unit_vectors(ideal_w);
    const Index qn = static_cast<Index>(v_rest.size());
    const Index qm = static_cast<Index>(w_rest.size());

    // Coordinates in the basis [ideal_w | complement]; the quotient keeps the
    // trailing complement coordinates.
    RatMatrix w_frame(p.m, p.m);
    w_frame.leftCols(ideal_w.cols()) = ideal_w;
    for (Index c = 0; c < qm; ++c) w_frame.col(ideal_w.cols() + c) = RatVector::Unit(p.m, w_rest[static_cast<std::size_t>(c)]);
    const RatMatrix to_frame = inverse(w_frame);

    AlgebraPresentation out{qn, qm, std::vector<RatMatrix>(static_cast<std::size_t>(qm), RatMatrix::Zero(qn, qn)),
                            p.label};
    for (Index i = 0; i < qn; ++i) {
        for (Index j = 0; j < qn; ++j) {
            const RatVector value =
                to_frame * omega(p, RatVector::Unit(p.n, v_rest[static_cast<std::size_t>(i)]),
                                 RatVector::Unit(p.n, v_rest[static_cast<std::size_t>(j)]));
            for (Index k = 0; k < qm; ++k) out.forms[static_cast<std::size_t>(k)](i, j) = value(ideal_w.cols() + k);
        }
    }
    return out;
}

}  // namespace nilq
