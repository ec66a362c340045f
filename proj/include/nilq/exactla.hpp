#pragma once

// Exact dense linear algebra over Q and over prime fields.
//
// Storage is plain Eigen dense matrices; the kernels are written against a
// small field policy (RationalField, PrimeField) instead of Eigen's floating
// point decompositions, because every answer here has to be exact.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilq/errors.hpp"

namespace nilq {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Builds num/den in lowest terms with a positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(num) / Rational(den);
}

// ---------------------------------------------------------------------------
// Field policies

struct RationalField {
    using Scalar = Rational;

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    Scalar reduce(const Scalar& a) const { return a; }
    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar inv(const Scalar& a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return Scalar(1) / a;
    }
    bool is_zero(const Scalar& a) const { return a == 0; }
};

/// Z/pZ on canonical representatives 0..p-1. Products are formed in 64 bits,
/// so p must stay below 2^31.
struct PrimeField {
    using Scalar = std::int64_t;

    std::int64_t p;

    explicit PrimeField(std::int64_t prime) : p(prime) {}

    Scalar zero() const { return 0; }
    Scalar one() const { return 1 % p; }
    Scalar reduce(Scalar a) const {
        a %= p;
        return a < 0 ? a + p : a;
    }
    Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
    Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
    Scalar mul(Scalar a, Scalar b) const { return reduce(a * b); }
    Scalar neg(Scalar a) const { return reduce(-a); }
    Scalar inv(Scalar a) const {
        std::int64_t r0 = p, r1 = reduce(a), s0 = 0, s1 = 1;
        if (r1 == 0) throw std::domain_error("inverse of zero mod p");
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            r0 = std::exchange(r1, r0 - q * r1);
            s0 = std::exchange(s1, s0 - q * s1);
        }
        return reduce(s0);
    }
    bool is_zero(Scalar a) const { return reduce(a) == 0; }
};

// ---------------------------------------------------------------------------
// Small helpers

template <typename Scalar>
bool is_zero_matrix(const Matrix<Scalar>& m) {
    return (m.array() == Scalar(0)).all();
}

template <typename Field = RationalField>
Matrix<typename Field::Scalar> identity(Index n, const Field& field = Field{}) {
    Matrix<typename Field::Scalar> id = Matrix<typename Field::Scalar>::Constant(n, n, field.zero());
    for (Index i = 0; i < n; ++i) id(i, i) = field.one();
    return id;
}

template <typename Field = RationalField>
bool is_skew(const Matrix<typename Field::Scalar>& m, const Field& field = Field{}) {
    if (m.rows() != m.cols()) return false;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j <= i; ++j)
            if (!field.is_zero(field.add(m(i, j), m(j, i)))) return false;
    return true;
}

/// Reduces every entry of an integer matrix into 0..p-1.
inline Matrix<std::int64_t> mod_p(Matrix<std::int64_t> m, std::int64_t p) {
    const PrimeField field(p);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = field.reduce(m.data()[i]);
    return m;
}

inline RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    return a * b;
}

inline RatMatrix transpose(const RatMatrix& a) { return a.transpose(); }

// ---------------------------------------------------------------------------
// Row reduction

template <typename Scalar>
struct RrefResult {
    Matrix<Scalar> matrix;
    std::vector<Index> pivots;
};

/// Reduced row-echelon form. The pivot in each column is the first nonzero
/// entry at or below the current row.
template <typename Field = RationalField>
RrefResult<typename Field::Scalar> rref(Matrix<typename Field::Scalar> m, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    std::vector<Index> pivots;
    Index row = 0;
    for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Index pivot = row;
        while (pivot < m.rows() && field.is_zero(m(pivot, col))) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row) m.row(pivot).swap(m.row(row));

        const Scalar scale = field.inv(m(row, col));
        for (Index c = col; c < m.cols(); ++c) m(row, c) = field.mul(m(row, c), scale);
        for (Index r = 0; r < m.rows(); ++r) {
            if (r == row || field.is_zero(m(r, col))) continue;
            const Scalar factor = m(r, col);
            for (Index c = col; c < m.cols(); ++c)
                m(r, c) = field.sub(m(r, c), field.mul(factor, m(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <typename Field = RationalField>
Index rank(const Matrix<typename Field::Scalar>& m, const Field& field = Field{}) {
    return static_cast<Index>(rref(m, field).pivots.size());
}

/// Basis of the right null space, one basis vector per column.
template <typename Field = RationalField>
Matrix<typename Field::Scalar> kernel_basis(const Matrix<typename Field::Scalar>& m,
                                            const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const auto reduced = rref(m, field);
    const Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Index p : reduced.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    Matrix<Scalar> basis = Matrix<Scalar>::Constant(cols, cols - static_cast<Index>(reduced.pivots.size()),
                                                    field.zero());
    Index out = 0;
    for (Index free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        basis(free, out) = field.one();
        for (std::size_t r = 0; r < reduced.pivots.size(); ++r)
            basis(reduced.pivots[r], out) = field.neg(reduced.matrix(static_cast<Index>(r), free));
        ++out;
    }
    return basis;
}

template <typename Field = RationalField>
Matrix<typename Field::Scalar> inverse(const Matrix<typename Field::Scalar>& m, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const Index n = m.rows();
    if (m.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
    Matrix<Scalar> augmented(n, 2 * n);
    augmented << m, identity(n, field);
    auto reduced = rref(augmented, field);
    if (static_cast<Index>(reduced.pivots.size()) < n || (n > 0 && reduced.pivots.back() >= n))
        throw SingularMatrix("matrix is singular");
    return reduced.matrix.rightCols(n);
}

/// Determinant by row-echelon elimination, tracking row swaps.
template <typename Field = RationalField>
typename Field::Scalar determinant(Matrix<typename Field::Scalar> m, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const Index n = m.rows();
    if (m.cols() != n) throw DimensionMismatch("determinant of a non-square matrix");
    Scalar det = field.one();
    for (Index col = 0; col < n; ++col) {
        Index pivot = col;
        while (pivot < n && field.is_zero(m(pivot, col))) ++pivot;
        if (pivot == n) return field.zero();
        if (pivot != col) {
            m.row(pivot).swap(m.row(col));
            det = field.neg(det);
        }
        det = field.mul(det, m(col, col));
        const Scalar scale = field.inv(m(col, col));
        for (Index r = col + 1; r < n; ++r) {
            if (field.is_zero(m(r, col))) continue;
            const Scalar factor = field.mul(m(r, col), scale);
            for (Index c = col; c < n; ++c) m(r, c) = field.sub(m(r, c), field.mul(factor, m(col, c)));
        }
    }
    return det;
}

/// True when `v` lies in the column span of `basis`.
template <typename Field = RationalField>
bool in_column_span(const Matrix<typename Field::Scalar>& basis, const Vector<typename Field::Scalar>& v,
                    const Field& field = Field{}) {
    Matrix<typename Field::Scalar> joined(v.size(), basis.cols() + 1);
    joined << basis, v;
    return rank(joined, field) == rank(basis, field);
}

/// Extracts a maximal independent subset of the columns (first-come order).
template <typename Field = RationalField>
Matrix<typename Field::Scalar> independent_columns(const Matrix<typename Field::Scalar>& columns,
                                                   const Field& field = Field{}) {
    const auto reduced = rref(columns, field);
    Matrix<typename Field::Scalar> out(columns.rows(), static_cast<Index>(reduced.pivots.size()));
    for (std::size_t i = 0; i < reduced.pivots.size(); ++i) out.col(static_cast<Index>(i)) = columns.col(reduced.pivots[i]);
    return out;
}

/// Indices of the standard basis vectors that extend the (independent)
/// columns of `basis` to a basis of the ambient space, chosen greedily in
/// increasing index order.
template <typename Field = RationalField>
std::vector<Index> complete_with_unit_vectors(const Matrix<typename Field::Scalar>& basis,
                                              const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    const Index dim = basis.rows();
    std::vector<Index> chosen;
    Matrix<Scalar> current = basis;
    Index current_rank = rank(current, field);
    for (Index i = 0; i < dim && current_rank < dim; ++i) {
        Matrix<Scalar> trial(dim, current.cols() + 1);
        trial << current, Matrix<Scalar>::Constant(dim, 1, field.zero());
        trial(i, current.cols()) = field.one();
        const Index r = rank(trial, field);
        if (r > current_rank) {
            current = std::move(trial);
            current_rank = r;
            chosen.push_back(i);
        }
    }
    return chosen;
}

// ---------------------------------------------------------------------------
// Block assembly

template <typename Scalar>
using BlockGrid = std::vector<std::vector<Matrix<Scalar>>>;

/// Assembles a grid of blocks into one matrix. Every block in a grid row must
/// share its height and every block in a grid column its width.
template <typename Scalar>
Matrix<Scalar> block_compose(const BlockGrid<Scalar>& grid) {
    if (grid.empty()) return Matrix<Scalar>(0, 0);
    const std::size_t grid_cols = grid.front().size();
    std::vector<Index> widths(grid_cols);
    for (std::size_t c = 0; c < grid_cols; ++c) widths[c] = grid.front()[c].cols();

    Index total_rows = 0, total_cols = 0;
    for (Index w : widths) total_cols += w;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        if (grid[r].size() != grid_cols)
            throw DimensionMismatch("block_compose: grid row " + std::to_string(r) + " has " +
                                    std::to_string(grid[r].size()) + " blocks, expected " +
                                    std::to_string(grid_cols));
        const Index height = grid_cols == 0 ? 0 : grid[r].front().rows();
        for (std::size_t c = 0; c < grid_cols; ++c) {
            if (grid[r][c].rows() != height)
                throw DimensionMismatch("block_compose: height mismatch in grid row " + std::to_string(r));
            if (grid[r][c].cols() != widths[c])
                throw DimensionMismatch("block_compose: width mismatch in grid column " + std::to_string(c));
        }
        total_rows += height;
    }

    Matrix<Scalar> out(total_rows, total_cols);
    Index row = 0;
    for (const auto& line : grid) {
        Index col = 0;
        const Index height = grid_cols == 0 ? 0 : line.front().rows();
        for (std::size_t c = 0; c < grid_cols; ++c) {
            out.block(row, col, height, widths[c]) = line[c];
            col += widths[c];
        }
        row += height;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pfaffian

/// Dimension up to which `pfaffian` expands along the first row; above it,
/// skew-symmetric elimination is used.
inline constexpr Index kPfaffianExpansionLimit = 8;

namespace detail {

template <typename Field>
void require_even_skew(const Matrix<typename Field::Scalar>& m, const Field& field) {
    if (!is_skew(m, field)) throw NotSkew("pfaffian: matrix is not skew-symmetric");
    if (m.rows() % 2 != 0) throw OddDimension("pfaffian: odd dimension " + std::to_string(m.rows()));
}

template <typename Field>
typename Field::Scalar pfaffian_expand(const Matrix<typename Field::Scalar>& m, const std::vector<Index>& idx,
                                       const Field& field) {
    using Scalar = typename Field::Scalar;
    if (idx.empty()) return field.one();
    Scalar total = field.zero();
    std::vector<Index> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t j = 1; j < idx.size(); ++j) {
        const Scalar& a = m(idx[0], idx[j]);
        if (field.is_zero(a)) continue;
        rest.clear();
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (k != j) rest.push_back(idx[k]);
        const Scalar term = field.mul(a, pfaffian_expand(m, rest, field));
        total = (j % 2 == 1) ? field.add(total, term) : field.sub(total, term);
    }
    return total;
}

}  // namespace detail

template <typename Field = RationalField>
typename Field::Scalar pfaffian_by_expansion(const Matrix<typename Field::Scalar>& m, const Field& field = Field{}) {
    detail::require_even_skew(m, field);
    std::vector<Index> idx(static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) idx[static_cast<std::size_t>(i)] = i;
    return detail::pfaffian_expand(m, idx, field);
}

/// Congruence elimination: clear row k beyond k+1 with unit-triangular
/// column/row operations, so Pf = a_{k,k+1} * Pf(trailing block).
template <typename Field = RationalField>
typename Field::Scalar pfaffian_by_elimination(Matrix<typename Field::Scalar> m, const Field& field = Field{}) {
    using Scalar = typename Field::Scalar;
    detail::require_even_skew(m, field);
    const Index n = m.rows();
    Scalar result = field.one();
    for (Index k = 0; k + 1 < n; k += 2) {
        Index pivot = k + 1;
        while (pivot < n && field.is_zero(m(k, pivot))) ++pivot;
        if (pivot == n) return field.zero();
        if (pivot != k + 1) {
            m.row(pivot).swap(m.row(k + 1));
            m.col(pivot).swap(m.col(k + 1));
            result = field.neg(result);
        }
        const Scalar a = m(k, k + 1);
        result = field.mul(result, a);
        const Scalar scale = field.inv(a);
        for (Index i = k + 2; i < n; ++i) {
            if (field.is_zero(m(k, i))) continue;
            const Scalar c = field.mul(m(k, i), scale);
            for (Index r = 0; r < n; ++r) m(r, i) = field.sub(m(r, i), field.mul(c, m(r, k + 1)));
            for (Index col = 0; col < n; ++col) m(i, col) = field.sub(m(i, col), field.mul(c, m(k + 1, col)));
        }
    }
    return result;
}

template <typename Field = RationalField>
typename Field::Scalar pfaffian(const Matrix<typename Field::Scalar>& m, const Field& field = Field{}) {
    if (m.rows() <= kPfaffianExpansionLimit) return pfaffian_by_expansion(m, field);
    return pfaffian_by_elimination(m, field);
}

}  // namespace nilq
