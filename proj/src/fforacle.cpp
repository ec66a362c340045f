#include "nilq/fforacle.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "nilq/extension.hpp"

namespace nilq {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

struct OutOfBudget {};

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (out > kSaturated / base) return kSaturated;
        out *= base;
    }
    return out;
}

/// Base-p digits of `index` into a rows x cols matrix, entry (0, 0) most
/// significant.
FpMatrix decode_matrix(std::uint64_t index, Index rows, Index cols, std::int64_t p) {
    FpMatrix out(rows, cols);
    const auto up = static_cast<std::uint64_t>(p);
    for (Index pos = rows * cols; pos-- > 0;) {
        out(pos / cols, pos % cols) = static_cast<std::int64_t>(index % up);
        index /= up;
    }
    return out;
}

FpVector decode_vector(std::uint64_t index, Index size, std::int64_t p) {
    FpVector out(size);
    const auto up = static_cast<std::uint64_t>(p);
    for (Index pos = size; pos-- > 0;) {
        out(pos) = static_cast<std::int64_t>(index % up);
        index /= up;
    }
    return out;
}

FpMatrix combine(const std::vector<FpMatrix>& forms, const FpMatrix& coeffs, Index row, Index n, const PrimeField& f) {
    FpMatrix out = FpMatrix::Zero(n, n);
    for (std::size_t l = 0; l < forms.size(); ++l) out += coeffs(row, static_cast<Index>(l)) * forms[l];
    return mod_p(out, f.p);
}

/// Walks every F (rows x cols) with f_i^T B_k f_j = C_k(i, j) for i < j.
class ColumnSearch {
public:
    ColumnSearch(const std::vector<FpMatrix>& target_forms, const std::vector<FpMatrix>& required, Index rows, Index cols,
                 bool injective, const PrimeField& field, Budget& budget)
        : target_forms_(target_forms),
          required_(required),
          rows_(rows),
          cols_(cols),
          injective_(injective),
          field_(field),
          budget_(budget),
          f_(FpMatrix::Zero(rows, cols)) {}

    /// Calls visit(F) for each solution until it returns true. Returns true
    /// if stopped early.
    template <typename Visit>
    bool run(Visit&& visit) {
        return extend(0, visit);
    }

private:
    template <typename Visit>
    bool extend(Index j, Visit& visit) {
        if (j == cols_) return visit(static_cast<const FpMatrix&>(f_));

        const Index conditions = j * static_cast<Index>(target_forms_.size());
        FpMatrix system(conditions, rows_ + 1);
        Index row = 0;
        for (Index i = 0; i < j; ++i) {
            for (std::size_t k = 0; k < target_forms_.size(); ++k, ++row) {
                system.row(row).head(rows_) = (f_.col(i).transpose() * target_forms_[k]).transpose();
                system(row, rows_) = required_[k](i, j);
            }
        }
        system = mod_p(system, field_.p);
        const auto reduced = rref(system, field_);
        if (!reduced.pivots.empty() && reduced.pivots.back() == rows_) return false;  // inconsistent

        FpVector particular = FpVector::Zero(rows_);
        std::vector<bool> is_pivot(static_cast<std::size_t>(rows_), false);
        for (std::size_t r = 0; r < reduced.pivots.size(); ++r) {
            particular(reduced.pivots[r]) = reduced.matrix(static_cast<Index>(r), rows_);
            is_pivot[static_cast<std::size_t>(reduced.pivots[r])] = true;
        }
        std::vector<Index> free_vars;
        for (Index c = 0; c < rows_; ++c)
            if (!is_pivot[static_cast<std::size_t>(c)]) free_vars.push_back(c);

        const std::uint64_t count = ipow(static_cast<std::uint64_t>(field_.p), free_vars.size());
        for (std::uint64_t t = 0; t < count; ++t) {
            if (!budget_.charge()) throw OutOfBudget{};
            const FpVector free_values = decode_vector(t, static_cast<Index>(free_vars.size()), field_.p);
            FpVector x = particular;
            for (std::size_t a = 0; a < free_vars.size(); ++a) {
                const std::int64_t value = free_values(static_cast<Index>(a));
                if (value == 0) continue;
                x(free_vars[a]) = field_.add(x(free_vars[a]), value);
                for (std::size_t r = 0; r < reduced.pivots.size(); ++r) {
                    const Index pivot = reduced.pivots[r];
                    x(pivot) = field_.sub(x(pivot), field_.mul(reduced.matrix(static_cast<Index>(r), free_vars[a]), value));
                }
            }
            f_.col(j) = x;
            if (injective_ && rank(FpMatrix(f_.leftCols(j + 1)), field_) != j + 1) continue;
            if (extend(j + 1, visit)) return true;
        }
        f_.col(j).setZero();
        return false;
    }

    const std::vector<FpMatrix>& target_forms_;
    const std::vector<FpMatrix>& required_;
    Index rows_;
    Index cols_;
    bool injective_;
    PrimeField field_;
    Budget& budget_;
    FpMatrix f_;
};

/// rank(sum_k c_k forms_k) for every functional c, indexed like decode_vector.
std::vector<Index> rank_profile(const std::vector<FpMatrix>& forms, Index n, std::int64_t p) {
    const PrimeField field(p);
    const Index m = static_cast<Index>(forms.size());
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(m));
    std::vector<Index> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const FpVector c = decode_vector(idx, m, p);
        FpMatrix combo = FpMatrix::Zero(n, n);
        for (Index k = 0; k < m; ++k) combo += c(k) * forms[static_cast<std::size_t>(k)];
        out.push_back(rank(mod_p(combo, p), field));
    }
    return out;
}

std::uint64_t encode_vector(const FpVector& v, std::int64_t p) {
    std::uint64_t idx = 0;
    for (Index i = 0; i < v.size(); ++i) idx = idx * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(v(i));
    return idx;
}

void require_same_field(const FpPresentation& a, const FpPresentation& b) {
    if (a.p != b.p) throw BadPrime("presentations over different primes");
}

/// Canonical row space of lambda = F + Psi; equal keys mean equal kernels.
std::vector<std::int64_t> kernel_key(const FpHomPair& h, std::int64_t p) {
    FpMatrix lambda = FpMatrix::Zero(h.F.rows() + h.Psi.rows(), h.F.cols() + h.Psi.cols());
    lambda.topLeftCorner(h.F.rows(), h.F.cols()) = h.F;
    lambda.bottomRightCorner(h.Psi.rows(), h.Psi.cols()) = h.Psi;
    const auto reduced = rref(lambda, PrimeField(p));
    std::vector<std::int64_t> key;
    for (std::size_t r = 0; r < reduced.pivots.size(); ++r)
        for (Index c = 0; c < lambda.cols(); ++c) key.push_back(reduced.matrix(static_cast<Index>(r), c));
    return key;
}

}  // namespace

void require_odd_prime(std::int64_t p) {
    if (p < 3 || p >= (std::int64_t{1} << 31)) throw BadPrime("prime must be odd and below 2^31, got " + std::to_string(p));
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw BadPrime(std::to_string(p) + " is not prime");
}

FpMatrix reduce_matrix_mod_p(const RatMatrix& m, std::int64_t p) {
    require_odd_prime(p);
    const PrimeField field(p);
    FpMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const Integer num = mp::numerator(m(i, j));
            const Integer den = mp::denominator(m(i, j));
            const auto den_mod = field.reduce(Integer(den % p).convert_to<std::int64_t>());
            if (den_mod == 0)
                throw BadPrime("entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") = " + m(i, j).str() +
                               " has a denominator divisible by " + std::to_string(p));
            const auto num_mod = field.reduce(Integer(num % p).convert_to<std::int64_t>());
            out(i, j) = field.mul(num_mod, field.inv(den_mod));
        }
    }
    return out;
}

FpPresentation reduce_mod_p(const AlgebraPresentation& presentation, std::int64_t p) {
    FpPresentation out{p, presentation.n, presentation.m, {}};
    for (const RatMatrix& form : presentation.forms) out.forms.push_back(reduce_matrix_mod_p(form, p));
    return out;
}

FpPresentation extend_mod_p(const FpPresentation& q) {
    return {q.p, 2 * q.n, q.m + 1, extension_forms(q.forms, q.n, PrimeField(q.p))};
}

FpHomPair lift_mod_p(const FpHomPair& h, std::int64_t p) {
    auto [f, psi] = lift_pair(h.F, h.Psi, PrimeField(p));
    return {std::move(f), std::move(psi)};
}

bool is_hom_mod_p(const FpPresentation& source, const FpPresentation& target, const FpHomPair& h) {
    require_same_field(source, target);
    if (h.F.rows() != target.n || h.F.cols() != source.n || h.Psi.rows() != target.m || h.Psi.cols() != source.m)
        return false;
    const PrimeField field(source.p);
    for (Index k = 0; k < target.m; ++k) {
        const FpMatrix lhs = mod_p(h.F.transpose() * target.forms[static_cast<std::size_t>(k)] * h.F, source.p);
        if (lhs != combine(source.forms, h.Psi, k, source.n, field)) return false;
    }
    return true;
}

bool is_iso_mod_p(const FpPresentation& source, const FpPresentation& target, const FpHomPair& h) {
    if (source.n != target.n || source.m != target.m) return false;
    const PrimeField field(source.p);
    return is_hom_mod_p(source, target, h) && rank(h.F, field) == source.n && rank(h.Psi, field) == source.m;
}

FpMatrix hom_kernel_mod_p(const FpHomPair& h, std::int64_t p) {
    FpMatrix lambda = FpMatrix::Zero(h.F.rows() + h.Psi.rows(), h.F.cols() + h.Psi.cols());
    lambda.topLeftCorner(h.F.rows(), h.F.cols()) = h.F;
    lambda.bottomRightCorner(h.Psi.rows(), h.Psi.cols()) = h.Psi;
    return kernel_basis(lambda, PrimeField(p));
}

IsoSearchResult ff_iso_search(const FpPresentation& q1, const FpPresentation& q2, Budget& budget,
                              std::uint64_t start_index) {
    require_same_field(q1, q2);
    require_odd_prime(q1.p);
    const std::int64_t p = q1.p;
    const PrimeField field(p);
    IsoSearchResult result;
    const Index m = q1.m;
    result.psi_total = ipow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(m * m));
    if (q1.n != q2.n || q1.m != q2.m) return result;

    // Necessary condition: F^T (sum c_k B_k) F = sum_l (Psi^T c)_l A_l, so the
    // two pencils must have equal ranks along Psi^T.
    const std::vector<Index> source_ranks = rank_profile(q1.forms, q1.n, p);
    const std::vector<Index> target_ranks = rank_profile(q2.forms, q2.n, p);

    for (std::uint64_t index = start_index; index < result.psi_total; ++index) {
        if (!budget.charge())
            throw BudgetExceeded("ff_iso_search: budget of " + std::to_string(budget.limit()) + " exhausted",
                                 result.psi_total - index);
        const FpMatrix psi = decode_matrix(index, m, m, p);
        if (rank(psi, field) != m) continue;

        bool profile_ok = true;
        for (std::uint64_t c = 0; c < target_ranks.size() && profile_ok; ++c) {
            const FpVector pulled = mod_p(psi.transpose() * decode_vector(c, m, p), p);
            profile_ok = target_ranks[c] == source_ranks[encode_vector(pulled, p)];
        }
        if (!profile_ok) continue;

        std::vector<FpMatrix> required;
        for (Index k = 0; k < m; ++k) required.push_back(combine(q1.forms, psi, k, q1.n, field));

        ColumnSearch search(q2.forms, required, q2.n, q1.n, true, field, budget);
        std::optional<FpMatrix> found;
        try {
            search.run([&](const FpMatrix& f) {
                found = f;
                return true;
            });
        } catch (const OutOfBudget&) {
            throw BudgetExceeded("ff_iso_search: budget of " + std::to_string(budget.limit()) + " exhausted",
                                 result.psi_total - index);
        }
        if (found) {
            result.witness = FpHomPair{*found, psi};
            result.psi_index = index;
            return result;
        }
    }
    return result;
}

EmbeddingResult ff_embedding_family(const FpPresentation& q1, const FpPresentation& q2, std::size_t max_family,
                                    Budget& budget) {
    require_same_field(q1, q2);
    require_odd_prime(q1.p);
    const std::int64_t p = q1.p;
    const PrimeField field(p);
    const Index source_dim = q1.n + q1.m;
    EmbeddingResult result;

    std::map<std::vector<std::int64_t>, FpHomPair> by_kernel;
    std::optional<FpHomPair> injective;
    const std::uint64_t psi_total = ipow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q2.m * q1.m));
    for (std::uint64_t index = 0; index < psi_total && !injective; ++index) {
        if (!budget.charge())
            throw BudgetExceeded("ff_embedding_family: budget of " + std::to_string(budget.limit()) + " exhausted",
                                 psi_total - index);
        const FpMatrix psi = decode_matrix(index, q2.m, q1.m, p);
        std::vector<FpMatrix> required;
        for (Index k = 0; k < q2.m; ++k) required.push_back(combine(q1.forms, psi, k, q1.n, field));
        ColumnSearch search(q2.forms, required, q2.n, q1.n, false, field, budget);
        try {
            search.run([&](const FpMatrix& f) {
                ++result.homs_enumerated;
                FpHomPair h{f, psi};
                auto key = kernel_key(h, p);
                const bool is_injective = static_cast<Index>(key.size()) == source_dim * source_dim;
                auto [it, inserted] = by_kernel.try_emplace(std::move(key), h);
                if (is_injective) injective = it->second;
                return is_injective;
            });
        } catch (const OutOfBudget&) {
            throw BudgetExceeded("ff_embedding_family: budget of " + std::to_string(budget.limit()) + " exhausted",
                                 psi_total - index);
        }
    }
    result.distinct_kernels = by_kernel.size();

    if (source_dim == 0) {
        result.family.emplace();
        return result;
    }
    if (injective) {
        if (max_family >= 1) result.family = std::vector<FpHomPair>{*injective};
        return result;
    }

    // Smallest subset of distinct row spaces whose stack has full column rank.
    std::vector<const FpHomPair*> reps;
    std::vector<FpMatrix> rows;
    for (const auto& [key, h] : by_kernel) {
        reps.push_back(&h);
        FpMatrix r(static_cast<Index>(key.size()) / source_dim, source_dim);
        for (Index i = 0; i < r.rows(); ++i)
            for (Index j = 0; j < source_dim; ++j) r(i, j) = key[static_cast<std::size_t>(i * source_dim + j)];
        rows.push_back(std::move(r));
    }

    std::vector<std::size_t> chosen;
    std::function<bool(std::size_t, const FpMatrix&, Index, std::size_t)> dfs =
        [&](std::size_t from, const FpMatrix& stacked, Index current_rank, std::size_t size) -> bool {
        if (current_rank == source_dim) return true;
        if (chosen.size() == size) return false;
        for (std::size_t i = from; i < rows.size(); ++i) {
            FpMatrix next(stacked.rows() + rows[i].rows(), source_dim);
            next << stacked, rows[i];
            const Index next_rank = rank(next, field);
            if (next_rank == current_rank) continue;
            chosen.push_back(i);
            if (dfs(i + 1, next, next_rank, size)) return true;
            chosen.pop_back();
        }
        return false;
    };
    for (std::size_t size = 2; size <= max_family; ++size) {
        chosen.clear();
        if (dfs(0, FpMatrix(0, source_dim), 0, size)) {
            std::vector<FpHomPair> family;
            for (std::size_t i : chosen) family.push_back(*reps[i]);
            result.family = std::move(family);
            return result;
        }
    }
    return result;
}

std::uint64_t presentation_count(Index n, Index m, std::int64_t p) {
    return ipow(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(m * n * (n - 1) / 2));
}

FpPresentation presentation_at(Index n, Index m, std::int64_t p, std::uint64_t index) {
    const Index free_entries = m * n * (n - 1) / 2;
    const FpVector digits = decode_vector(index, free_entries, p);
    const PrimeField field(p);
    FpPresentation q{p, n, m, std::vector<FpMatrix>(static_cast<std::size_t>(m), FpMatrix::Zero(n, n))};
    Index pos = 0;
    for (Index k = 0; k < m; ++k)
        for (Index i = 0; i < n; ++i)
            for (Index j = i + 1; j < n; ++j, ++pos) {
                q.forms[static_cast<std::size_t>(k)](i, j) = digits(pos);
                q.forms[static_cast<std::size_t>(k)](j, i) = field.neg(digits(pos));
            }
    return q;
}

SweepReport ff_theorem_sweep(Index n, Index m, std::int64_t p, std::uint64_t budget_limit, unsigned workers) {
    require_odd_prime(p);
    SweepReport report;
    report.n = n;
    report.m = m;
    report.p = p;
    report.presentations = presentation_count(n, m, p);
    if (report.presentations > (std::uint64_t{1} << 20))
        throw BudgetExceeded("ff_theorem_sweep: too many presentations", report.presentations);

    std::vector<FpPresentation> bases, extensions;
    for (std::uint64_t i = 0; i < report.presentations; ++i) {
        bases.push_back(presentation_at(n, m, p, i));
        extensions.push_back(extend_mod_p(bases.back()));
    }

    const std::uint64_t pair_total = report.presentations * report.presentations;
    Budget budget(budget_limit);
    workers = std::max(1u, workers);
    std::vector<std::vector<SweepEntry>> partial(workers);
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            for (std::uint64_t pair = w; pair < pair_total; pair += workers) {
                SweepEntry entry;
                entry.pair_index = pair;
                entry.left = pair / report.presentations;
                entry.right = pair % report.presentations;
                const auto& l1 = bases[entry.left];
                const auto& l2 = bases[entry.right];
                const auto base = ff_iso_search(l1, l2, budget);
                const auto ext = ff_iso_search(extensions[entry.left], extensions[entry.right], budget);
                entry.base_isomorphic = base.witness.has_value();
                entry.extension_isomorphic = ext.witness.has_value();
                entry.base_witness = base.witness;
                entry.extension_witness = ext.witness;
                if (base.witness)
                    entry.lift_checked = is_iso_mod_p(extensions[entry.left], extensions[entry.right],
                                                      lift_mod_p(*base.witness, p));
                partial[w].push_back(std::move(entry));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (auto& part : partial)
        for (auto& entry : part) report.entries.push_back(std::move(entry));
    std::sort(report.entries.begin(), report.entries.end(),
              [](const SweepEntry& a, const SweepEntry& b) { return a.pair_index < b.pair_index; });
    for (const auto& entry : report.entries)
        if (entry.violation()) report.violations.push_back(entry.pair_index);
    report.work_used = budget.used();
    return report;
}

}  // namespace nilq
