#pragma once

// The group L° on the carrier of L, with the class-2 Campbell-Hausdorff
// product x o y = x + y + 1/2 [x, y]. The series stops there, so every
// operation below is exact.

#include <utility>
#include <vector>

#include "nilq/nilalg.hpp"

namespace nilq {

Element gmul(const AlgebraPresentation& p, const Element& x, const Element& y);
Element ginv(const AlgebraPresentation& p, const Element& x);

/// x^-1 o y^-1 o x o y; equals [x, y] in class 2.
Element gcommutator(const AlgebraPresentation& p, const Element& x, const Element& y);

/// x o x o ... o x (k factors); k = 0 gives the identity.
Element gpow(const AlgebraPresentation& p, const Element& x, long k);

/// The unique k-th root, (1/k) x. Requires k >= 1.
Element groot(const AlgebraPresentation& p, const Element& x, long k);

/// Checks lambda(x o y) = lambda(x) o lambda(y) on every sample pair, with
/// lambda = F + Psi: source -> target.
bool group_hom_check(const AlgebraPresentation& source, const AlgebraPresentation& target, const HomPair& h,
                     const std::vector<std::pair<Element, Element>>& samples);

}  // namespace nilq
