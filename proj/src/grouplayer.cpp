#include "nilq/grouplayer.hpp"

#include <stdexcept>

namespace nilq {

Element gmul(const AlgebraPresentation& p, const Element& x, const Element& y) {
    const Element b = bracket(p, x, y);
    return {x.v + y.v, x.w + y.w + Rational(1, 2) * b.w};
}

Element ginv(const AlgebraPresentation& p, const Element& x) {
    if (x.v.size() != p.n || x.w.size() != p.m) throw DimensionMismatch("ginv: element shape");
    return -x;
}

Element gcommutator(const AlgebraPresentation& p, const Element& x, const Element& y) {
    return gmul(p, ginv(p, x), gmul(p, ginv(p, y), gmul(p, x, y)));
}

Element gpow(const AlgebraPresentation& p, const Element& x, long k) {
    if (k < 0) return gpow(p, ginv(p, x), -k);
    Element acc = zero_element(p);
    for (long i = 0; i < k; ++i) acc = gmul(p, acc, x);
    return acc;
}

Element groot(const AlgebraPresentation& p, const Element& x, long k) {
    if (k < 1) throw std::invalid_argument("groot: k must be positive");
    if (x.v.size() != p.n || x.w.size() != p.m) throw DimensionMismatch("groot: element shape");
    return Rational(1, k) * x;
}

bool group_hom_check(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h,
                     const std::vector<std::pair<Element, Element>>& samples) {
    for (const auto& [x, y] : samples) {
        const Element lhs = apply(h, gmul(source, x, y));
        const Element rhs = gmul(target, apply(h, x), apply(h, y));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace nilq
