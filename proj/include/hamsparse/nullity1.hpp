#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hamsparse/hamiltonian.hpp"

namespace hamsparse {

// Greedy spanning forest: every qubit touched by some term is touched by a
// selected term; at most n terms are selected.
std::vector<int> spanning_forest(const Hamiltonian& h);

struct DominationResult {
    bool dominates = false;
    std::optional<StateVector> witness;  // over the restricted qubit set
};

// Whether some state gives the candidate positive energy while zeroing the
// whole family. Decided on V' = V(family) union T: every operator involved
// acts as identity elsewhere, so the restriction is exact.
DominationResult dominates(const Term& candidate, const Hamiltonian& family);

struct DominatingCover {
    std::vector<int> forest;
    std::map<int, int> boosters;  // qubit -> added term index
    std::vector<int> all;         // forest followed by boosters, ascending

    int size() const { return static_cast<int>(all.size()); }
};

// Spanning forest plus at most one dominating booster per qubit (lowest
// index wins); the cover has at most 2n members.
DominatingCover extract_dominating_cover(const Hamiltonian& h);

struct BoundednessEstimate {
    double c = 1.0;                        // lambda_max(M_i) <= c for all i
    std::map<int, double> term_scalings;   // term -> minimal s with M_T <= s * cover sum
};

// Instance-certified boundedness constant: for each term outside the cover,
// the minimal Loewner scaling against the cover's local sub-union is computed
// by whitening; c^2 dominates every scaling and c dominates every
// lambda_max. Throws when a term's kernel containment fails (the domination
// lemma would be violated).
BoundednessEstimate local_gap_constant(const Hamiltonian& h, const DominatingCover& cover);

struct Nullity1Trace {
    std::vector<int> covers_per_level;
    std::vector<double> c_per_level;
    int depth = 0;
    int base_case_size = 0;
};

// The recursion itself, at its own accuracy parameter: below the threshold
// 100 eps^-2 c^2 n^2 everything is kept at unit scale; otherwise
// 100 c^2 eps^-2 n disjoint dominating covers are extracted and kept, the
// rest is sampled at rate 1/2, and the recursion reweights by 2.
SparsifierWeights nullity1_recursion(const Hamiltonian& h, double eps_level, std::uint64_t seed,
                                     Nullity1Trace* trace = nullptr);

// Wrapper at the target accuracy: splits off full-rank terms to the uniform
// sampler, runs the recursion at eps / (200 r log2 n) on the rest, unions,
// and verifies at eps.
SparsifierWeights sparsify_nullity1(const Hamiltonian& h, double eps, std::uint64_t seed,
                                    Nullity1Trace* trace = nullptr);

// Uniform keep-probability sampler for full-rank instances:
// p = 100 kappa^2 n / (eps^2 m) with kappa the eigenvalue spread over the
// predicates; identity when p >= 1.
SparsifierWeights sparsify_fullrank(const Hamiltonian& h, double eps, std::uint64_t seed,
                                    int max_attempts = 16);

// Ground-space dimension of a covering nullity-<=1 instance; asserts the
// dimension is at most 1 and returns it.
int ground_dim_audit(const Hamiltonian& h);

int predicate_nullity(const Matrix& m);

}  // namespace hamsparse
