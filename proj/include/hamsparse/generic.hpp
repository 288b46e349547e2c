#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamsparse/hamiltonian.hpp"

namespace hamsparse {

struct RandomPredicateSpec {
    int arity = 2;
    int rank = 3;
    std::uint64_t seed = 0;
};

// Sum of `rank` random unit rank-one projectors; rank is verified and the
// largest eigenvalue is at most `rank`.
Matrix sample_random_psd(const RandomPredicateSpec& spec);

// Joint-kernel triviality of two lifted terms sharing a qubit, decided on the
// union qubit set: true iff the kernel of lift(M, T) + lift(M', T') on
// T union T' is trivial. Disjoint tuples are rejected (their joint kernel is
// never trivial).
bool genericity_check(const Matrix& m, const Matrix& mp, const std::vector<int>& t,
                      const std::vector<int>& tp, int n);

struct PairMatching {
    std::vector<std::pair<int, int>> pairs;  // disjoint, tuples intersect
    std::vector<int> leftover;
};

// Greedy extraction of disjoint intersecting pairs, lowest indices first;
// continues while more than n/r terms remain, which guarantees
// |pairs| >= (m - n/r) / 2.
PairMatching pair_matching(const Hamiltonian& h);

struct EigCertificate {
    double lower = 0;                 // sum of the per-pair minima
    std::vector<double> pair_minima;  // aligned with the matching's pairs
};

// Certified spectral floor: each pair's minimum eigenvalue is computed
// exactly on the union qubit set of the pair (at most 2r-1 qubits), and the
// certificate is their sum, a lower bound on the spectrum of the assembled
// operator.
EigCertificate lambda_min_certificate(const Hamiltonian& h, const PairMatching& matching);

// Keep term i with probability min(1, p_i * 100 n / eps^2) at weight
// weight_i / min(1, ...). The bounds p must dominate every term's energy
// fraction; the result is verified densely (when within cap) and resampled
// with a fresh seed on failure.
SparsifierWeights importance_sample(const Hamiltonian& h, const std::vector<double>& p, double eps,
                                    std::uint64_t seed, int max_attempts = 16);

struct GenericSparsifyStats {
    int pieces = 0;
    double certificate = 0;  // smallest per-piece certificate encountered
    bool genericity_audited = false;
};

// Pipeline for instances whose predicates have rank >= 2^{r-1}+1: identity
// below 4n terms, otherwise partite peeling, pair matching, per-pair
// eigenvalue certificates, and importance sampling per piece.
SparsifierWeights sparsify_generic(const Hamiltonian& h, double eps, std::uint64_t seed,
                                   GenericSparsifyStats* stats = nullptr);

}  // namespace hamsparse
