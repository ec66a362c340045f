#include "nilq/random.hpp"

#include <stdexcept>

namespace nilq {

Rational random_rational(Rng& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, bound);
    return make_rational(num(rng), den(rng));
}

Rational random_nonzero_rational(Rng& rng, int bound) {
    for (;;) {
        Rational r = random_rational(rng, bound);
        if (r != 0) return r;
    }
}

RatMatrix random_matrix(Rng& rng, Index rows, Index cols, int bound) {
    RatMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = random_rational(rng, bound);
    return m;
}

RatMatrix random_skew(Rng& rng, Index n, int bound) {
    RatMatrix m = RatMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            m(i, j) = random_rational(rng, bound);
            m(j, i) = -m(i, j);
        }
    return m;
}

RatMatrix random_invertible(Rng& rng, Index n, int bound) {
    for (;;) {
        RatMatrix m = random_matrix(rng, n, n, bound);
        if (rank(m) == n) return m;
    }
}

RatVector random_vector(Rng& rng, Index n, int bound) {
    RatVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = random_rational(rng, bound);
    return v;
}

AlgebraPresentation random_presentation(Rng& rng, Index n, Index m, int bound) {
    AlgebraPresentation p{n, m, {}, {}};
    for (Index k = 0; k < m; ++k) p.forms.push_back(random_skew(rng, n, bound));
    return p;
}

AlgebraPresentation random_com_cond_presentation(Rng& rng, Index n, Index m, int bound) {
    // A single skew form of odd size is always singular.
    if (n < 2 || m < 1 || m > n * (n - 1) / 2 || (n % 2 == 1 && m == 1))
        throw std::invalid_argument("com_cond unattainable for these dimensions");
    for (;;) {
        AlgebraPresentation p = random_presentation(rng, n, m, bound);
        if (satisfies_com_cond(p)) return p;
    }
}

Element random_element(Rng& rng, const AlgebraPresentation& p, int bound) {
    return {random_vector(rng, p.n, bound), random_vector(rng, p.m, bound)};
}

}  // namespace nilq
