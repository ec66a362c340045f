#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "nilq/document.hpp"
#include "nilq/random.hpp"

namespace test {

// Matrix from rows of rational strings.
inline nilq::RatMatrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    const auto r = static_cast<nilq::Index>(rows.size());
    const auto c = r ? static_cast<nilq::Index>(rows.begin()->size()) : 0;
    nilq::RatMatrix out(r, c);
    nilq::Index i = 0;
    for (const auto& row : rows) {
        nilq::Index j = 0;
        for (const char* e : row) out(i, j++) = nilq::doc::parse_rational(e);
        ++i;
    }
    return out;
}

inline nilq::RatVector vec(std::initializer_list<const char*> entries) {
    nilq::RatVector out(static_cast<nilq::Index>(entries.size()));
    nilq::Index i = 0;
    for (const char* e : entries) out(i++) = nilq::doc::parse_rational(e);
    return out;
}

// Per-test seed: FNV-1a of the name mixed with the default seed.
inline std::uint64_t seed(const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
    return h ^ nilq::kDefaultSeed;
}

inline nilq::HomPair hom(nilq::RatMatrix f, nilq::RatMatrix psi) { return {std::move(f), std::move(psi)}; }

}  // namespace test

namespace test {

// (n, m) with n <= max_n, m <= max_m for which com_cond is attainable.
inline std::pair<nilq::Index, nilq::Index> com_cond_shape(nilq::Rng& rng, nilq::Index max_n, nilq::Index max_m) {
    for (;;) {
        const auto n = static_cast<nilq::Index>(2 + rng() % static_cast<std::uint64_t>(max_n - 1));
        const auto m = static_cast<nilq::Index>(1 + rng() % static_cast<std::uint64_t>(max_m));
        if (m <= n * (n - 1) / 2 && !(n % 2 == 1 && m == 1)) return {n, m};
    }
}

}  // namespace test
