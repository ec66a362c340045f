#pragma once

// Finite-field oracle: presentations reduced mod an odd prime, decided by
// exhaustive search. Results are evidence for the finite model only.
//
// Search order. Psi runs over all m x m (or m2 x m1) matrices as base-p
// numbers, entry (0, 0) most significant, row-major, ascending. For each Psi
// the matrix F is built column by column: column j must satisfy the linear
// conditions f_i^T B_k f_j = C_k(i, j) for all earlier columns i, whose
// solution set is walked in ascending base-p order of the free coordinates.
// Every (F, Psi) that satisfies the homomorphism condition is reached, so
// NoneExists is exhaustive over the full p^(n^2 + m^2) space.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilq/nilalg.hpp"

namespace nilq {

using FpMatrix = Matrix<std::int64_t>;
using FpVector = Vector<std::int64_t>;

struct FpPresentation {
    std::int64_t p = 3;
    Index n = 0;
    Index m = 0;
    std::vector<FpMatrix> forms;

    friend bool operator==(const FpPresentation& a, const FpPresentation& b) {
        return a.p == b.p && a.n == b.n && a.m == b.m && a.forms == b.forms;
    }
};

struct FpHomPair {
    FpMatrix F;
    FpMatrix Psi;
};

/// Hard cap on search work (one unit per Psi candidate and per F column
/// candidate). Shared between threads.
class Budget {
public:
    explicit Budget(std::uint64_t limit) : limit_(limit) {}
    Budget(const Budget&) = delete;
    Budget& operator=(const Budget&) = delete;

    /// False once the cap is exceeded.
    bool charge(std::uint64_t units = 1) { return used_.fetch_add(units, std::memory_order_relaxed) + units <= limit_; }
    std::uint64_t used() const { return std::min(used_.load(std::memory_order_relaxed), limit_); }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

/// Throws BadPrime unless p is an odd prime below 2^31.
void require_odd_prime(std::int64_t p);

FpMatrix reduce_matrix_mod_p(const RatMatrix& m, std::int64_t p);
FpPresentation reduce_mod_p(const AlgebraPresentation& presentation, std::int64_t p);

/// E(Q) with the same block recipe as the rational extension.
FpPresentation extend_mod_p(const FpPresentation& q);
/// (block-diag((F^{-1})^T, F), block-diag(1, Psi)) mod p.
FpHomPair lift_mod_p(const FpHomPair& h, std::int64_t p);

bool is_hom_mod_p(const FpPresentation& source, const FpPresentation& target, const FpHomPair& h);
bool is_iso_mod_p(const FpPresentation& source, const FpPresentation& target, const FpHomPair& h);

/// Kernel of lambda = F + Psi as columns in F_p^(n + m).
FpMatrix hom_kernel_mod_p(const FpHomPair& h, std::int64_t p);

struct IsoSearchResult {
    std::optional<FpHomPair> witness;  // nullopt means NoneExists
    std::uint64_t psi_index = 0;       // enumeration index of the witness's Psi
    std::uint64_t psi_total = 0;       // p^(m^2)
};

/// First isomorphism Q1 -> Q2 in search order, or NoneExists after
/// the full space. `start_index` resumes the Psi enumeration. Throws
/// BudgetExceeded with the number of unexamined Psi candidates.
IsoSearchResult ff_iso_search(const FpPresentation& q1, const FpPresentation& q2, Budget& budget,
                              std::uint64_t start_index = 0);

struct EmbeddingResult {
    std::optional<std::vector<FpHomPair>> family;  // nullopt means NoneExists
    std::uint64_t homs_enumerated = 0;
    std::uint64_t distinct_kernels = 0;
};

/// Smallest family of at most `max_family` homomorphisms Q1 -> Q2 whose
/// kernels intersect in zero, found by enumerating the whole hom space.
EmbeddingResult ff_embedding_family(const FpPresentation& q1, const FpPresentation& q2, std::size_t max_family,
                                    Budget& budget);

/// All presentations of shape (n, m) mod p: the strictly upper entries of
/// each form, form by form and row-major, as base-p digits.
std::uint64_t presentation_count(Index n, Index m, std::int64_t p);
FpPresentation presentation_at(Index n, Index m, std::int64_t p, std::uint64_t index);

struct SweepEntry {
    std::uint64_t pair_index = 0;
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    bool base_isomorphic = false;
    bool extension_isomorphic = false;
    std::optional<FpHomPair> base_witness;
    std::optional<FpHomPair> extension_witness;
    /// The lift of the base witness is itself a witness between extensions.
    bool lift_checked = true;

    bool violation() const { return base_isomorphic != extension_isomorphic || !lift_checked; }
};

struct SweepReport {
    Index n = 0;
    Index m = 0;
    std::int64_t p = 3;
    std::uint64_t presentations = 0;
    std::vector<SweepEntry> entries;  // sorted by pair_index
    std::vector<std::uint64_t> violations;
    std::uint64_t work_used = 0;
};

/// For every ordered pair (L1, L2) of shape (n, m) mod p, checks
/// L1 ~= L2  <=>  E(L1) ~= E(L2). Pairs are split across `workers` threads;
/// the merged report does not depend on the split.
SweepReport ff_theorem_sweep(Index n, Index m, std::int64_t p, std::uint64_t budget, unsigned workers = 1);

}  // namespace nilq
