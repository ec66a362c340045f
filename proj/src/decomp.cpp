#include "nilq/decomp.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace nilq {

namespace {

constexpr std::int64_t kTrialDivisionLimit = 1'000'000'000'000;  // |coefficient| bound for factoring
constexpr std::uint64_t kSamplingCandidateCap = 2'000'000;

RatMatrix pencil_member(const AlgebraPresentation& p, const RatVector& c) {
    RatMatrix out = RatMatrix::Zero(p.n, p.n);
    for (Index l = 0; l < p.m; ++l)
        if (c(l) != 0) out += c(l) * p.forms[static_cast<std::size_t>(l)];
    return out;
}

/// c scaled to a primitive integer vector with a positive leading entry.
RatVector primitive(RatVector c) {
    Integer lcm = 1;
    for (Index i = 0; i < c.size(); ++i) lcm = mp::lcm(lcm, Integer(mp::denominator(c(i))));
    c *= Rational(lcm);
    Integer g = 0;
    for (Index i = 0; i < c.size(); ++i) g = mp::gcd(g, Integer(mp::numerator(c(i))));
    if (g != 0) c /= Rational(g);
    for (Index i = 0; i < c.size(); ++i) {
        if (c(i) == 0) continue;
        if (c(i) < 0) c = -c;
        break;
    }
    return c;
}

RatMatrix outer(const RatVector& c) { return c * c.transpose(); }

CertificateReport family_from_functionals(const AlgebraPresentation& p, const std::vector<RatVector>& functionals) {
    SingularFamily family;
    for (const RatVector& c : functionals) family.members.push_back(outer(primitive(c)));
    return verify_certificate(p, family);
}

std::vector<RatVector> coordinate_functionals(Index m) {
    std::vector<RatVector> out;
    for (Index i = 0; i < m; ++i) out.push_back(RatVector::Unit(m, i));
    return out;
}

Index height(const Rational& r) {
    const Integer num = mp::abs(Integer(mp::numerator(r)));
    const Integer den = Integer(mp::denominator(r));
    return static_cast<Index>(std::max(num, den).convert_to<long long>());
}

/// All rationals of height <= bound, ordered by (height, value).
std::vector<Rational> rationals_by_height(int bound) {
    std::vector<Rational> out;
    for (int num = -bound; num <= bound; ++num)
        for (int den = 1; den <= bound; ++den)
            if (std::gcd(num, den) == 1) out.push_back(make_rational(num, den));
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
        const Index ha = height(a), hb = height(b);
        return ha != hb ? ha < hb : a < b;
    });
    return out;
}

std::optional<std::vector<std::int64_t>> positive_divisors(const Integer& value) {
    const Integer a = mp::abs(value);
    if (a > kTrialDivisionLimit) return std::nullopt;
    const auto v = a.convert_to<std::int64_t>();
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= v; ++d) {
        if (v % d != 0) continue;
        small.push_back(d);
        if (d != v / d) large.push_back(v / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Rational evaluate(const std::vector<Integer>& coeffs, const Rational& s) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + Rational(*it);
    return acc;
}

/// Greedily keeps functionals that are independent of those already kept.
void keep_if_independent(std::vector<RatVector>& kept, const RatVector& c) {
    RatMatrix joined(c.size(), static_cast<Index>(kept.size()) + 1);
    for (std::size_t i = 0; i < kept.size(); ++i) joined.col(static_cast<Index>(i)) = kept[i];
    joined.col(joined.cols() - 1) = c;
    if (rank(joined) == joined.cols()) kept.push_back(c);
}

SearchOutcome binary_form_search(const AlgebraPresentation& p, int bound) {
    SearchOutcome outcome;
    outcome.mode = SearchMode::BinaryForm;
    const std::vector<Integer> coeffs = pfaffian_binary_form(p.forms[0], p.forms[1]);
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& a) { return a == 0; })) {
        outcome.certificate = family_from_functionals(p, coordinate_functionals(2));
        outcome.complete = true;
        outcome.note = "Pfaffian form vanishes identically";
        return outcome;
    }

    std::vector<RatVector> roots;  // projective roots (x : y) as functionals
    auto finite = rational_roots(coeffs);
    outcome.complete = finite.has_value();
    if (!finite) {
        finite.emplace();
        for (const Rational& s : rationals_by_height(bound))
            if (evaluate(coeffs, s) == 0) finite->push_back(s);
        std::sort(finite->begin(), finite->end());
        outcome.note = "coefficients too large to factor; roots sampled up to height " + std::to_string(bound);
    }
    for (const Rational& s : *finite) {
        RatVector c(2);
        c << s, 1;
        roots.push_back(c);
    }
    if (coeffs.back() == 0) roots.push_back(RatVector::Unit(2, 0));  // root at y = 0

    if (roots.size() < 2) {
        if (outcome.note.empty())
            outcome.note = "Pfaffian form has " + std::to_string(roots.size()) + " rational root(s); two are needed";
        return outcome;
    }
    outcome.certificate = family_from_functionals(p, {roots[0], roots[1]});
    return outcome;
}

SearchOutcome height_sampling_search(const AlgebraPresentation& p, int bound) {
    SearchOutcome outcome;
    outcome.mode = SearchMode::HeightSampling;
    const std::vector<Rational> values = rationals_by_height(bound);
    const std::size_t m = static_cast<std::size_t>(p.m);

    std::vector<RatVector> kept;
    std::uint64_t tested = 0;
    std::size_t level_end = 0;
    for (Index h = 0; h <= bound && kept.size() < m; ++h) {
        while (level_end < values.size() && height(values[level_end]) <= h) ++level_end;
        // Odometer over values[0..level_end) in each coordinate, lexicographic.
        std::vector<std::size_t> digits(m, 0);
        for (;;) {
            bool at_level = false, nonzero = false;
            for (std::size_t i = 0; i < m; ++i) {
                at_level |= height(values[digits[i]]) == h;
                nonzero |= values[digits[i]] != 0;
            }
            if (at_level && nonzero) {
                if (++tested > kSamplingCandidateCap) {
                    outcome.note = "candidate cap reached";
                    return outcome;
                }
                RatVector c(p.m);
                for (std::size_t i = 0; i < m; ++i) c(static_cast<Index>(i)) = values[digits[i]];
                if (pfaffian(pencil_member(p, c)) == 0) {
                    keep_if_independent(kept, c);
                    if (kept.size() == m) break;
                }
            }
            bool wrapped = true;
            for (std::size_t pos = m; pos-- > 0;) {
                if (++digits[pos] < level_end) {
                    wrapped = false;
                    break;
                }
                digits[pos] = 0;
            }
            if (wrapped) break;
        }
    }
    if (kept.size() == m) {
        outcome.certificate = family_from_functionals(p, kept);
    } else if (outcome.note.empty()) {
        outcome.note = "inconclusive: " + std::to_string(kept.size()) + " independent singular functionals up to height " +
                       std::to_string(bound);
    }
    return outcome;
}

}  // namespace

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::Trivial: return "trivial";
        case SearchMode::OddDimension: return "odd-dimension";
        case SearchMode::SingleForm: return "single-form";
        case SearchMode::BinaryForm: return "binary-form";
        case SearchMode::HeightSampling: return "height-sampling";
    }
    return "unknown";
}

AlgebraPresentation psi_omega(const AlgebraPresentation& p, const RatMatrix& psi) {
    if (psi.rows() != p.m || psi.cols() != p.m)
        throw DimensionMismatch("psi_omega: psi is " + std::to_string(psi.rows()) + "x" + std::to_string(psi.cols()) +
                                ", expected " + std::to_string(p.m) + "x" + std::to_string(p.m));
    AlgebraPresentation out{p.n, p.m, {}, p.label};
    for (Index k = 0; k < p.m; ++k) out.forms.push_back(pencil_member(p, psi.row(k).transpose()));
    return out;
}

CertificateReport verify_certificate(const AlgebraPresentation& p, const SingularFamily& family) {
    CertificateReport report;
    report.family = family;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const RatMatrix& psi = family.members[i];
        if (psi.rows() != p.m || psi.cols() != p.m) {
            report.reason = "member " + std::to_string(i + 1) + " is not " + std::to_string(p.m) + "x" + std::to_string(p.m);
            report.per_member_kernel_dims.clear();
            report.joint_kernel_dim = p.m;
            return report;
        }
        report.per_member_kernel_dims.push_back(ker_omega(psi_omega(p, psi)).cols());
    }

    RatMatrix stacked(static_cast<Index>(family.members.size()) * p.m, p.m);
    for (std::size_t i = 0; i < family.members.size(); ++i)
        stacked.middleRows(static_cast<Index>(i) * p.m, p.m) = family.members[i];
    report.joint_kernel_dim = kernel_basis(stacked).cols();

    for (std::size_t i = 0; i < report.per_member_kernel_dims.size(); ++i) {
        if (report.per_member_kernel_dims[i] == 0) {
            report.reason = "member " + std::to_string(i + 1) + ": psi omega is nonsingular";
            return report;
        }
    }
    if (report.joint_kernel_dim != 0) {
        report.reason = "joint kernel of the family has dimension " + std::to_string(report.joint_kernel_dim);
        return report;
    }
    report.valid = true;
    return report;
}

std::vector<Integer> pfaffian_binary_form(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("pfaffian_binary_form: shapes differ");
    const Index d = a.rows() / 2;
    RatMatrix vandermonde(d + 1, d + 1);
    RatVector values(d + 1);
    for (Index i = 0; i <= d; ++i) {
        Rational power = 1;
        for (Index j = 0; j <= d; ++j, power *= i) vandermonde(i, j) = power;
        values(i) = pfaffian(RatMatrix(Rational(i) * a + b));
    }
    const RatVector rational_coeffs = inverse(vandermonde) * values;

    Integer lcm = 1, g = 0;
    for (Index i = 0; i <= d; ++i) lcm = mp::lcm(lcm, Integer(mp::denominator(rational_coeffs(i))));
    std::vector<Integer> coeffs;
    for (Index i = 0; i <= d; ++i) {
        const Rational scaled = rational_coeffs(i) * Rational(lcm);
        coeffs.push_back(Integer(mp::numerator(scaled)));
        g = mp::gcd(g, coeffs.back());
    }
    if (g > 1)
        for (Integer& c : coeffs) c /= g;
    return coeffs;
}

std::optional<std::vector<Rational>> rational_roots(const std::vector<Integer>& coeffs) {
    std::vector<Integer> poly = coeffs;
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    std::vector<Rational> roots;
    if (poly.empty()) return roots;

    std::size_t low = 0;
    while (poly[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(0);
        poly.erase(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(low));
    }
    if (poly.size() > 1) {
        const auto nums = positive_divisors(poly.front());
        const auto dens = positive_divisors(poly.back());
        if (!nums || !dens) return std::nullopt;
        for (std::int64_t num : *nums)
            for (std::int64_t den : *dens)
                for (int sign : {-1, 1}) {
                    const Rational s = make_rational(Integer(sign * num), Integer(den));
                    if (evaluate(poly, s) == 0) roots.push_back(s);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

SearchOutcome search_rank_one_family(const AlgebraPresentation& p, int denominator_bound) {
    if (denominator_bound < 1) throw std::invalid_argument("denominator bound must be at least 1");
    SearchOutcome outcome;

    if (p.m == 0) {
        outcome.mode = SearchMode::Trivial;
        outcome.complete = true;
        outcome.certificate = verify_certificate(p, {});
        return outcome;
    }
    if (p.n % 2 == 1) {
        outcome.mode = SearchMode::OddDimension;
        outcome.complete = true;
        outcome.certificate = family_from_functionals(p, coordinate_functionals(p.m));
        return outcome;
    }
    if (p.m == 1) {
        outcome.mode = SearchMode::SingleForm;
        outcome.complete = true;
        if (pfaffian(p.forms[0]) == 0)
            outcome.certificate = family_from_functionals(p, coordinate_functionals(1));
        else
            outcome.note = "the only form is nonsingular";
        return outcome;
    }
    if (p.m == 2) return binary_form_search(p, denominator_bound);
    return height_sampling_search(p, denominator_bound);
}

}  // namespace nilq
