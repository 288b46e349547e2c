#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamsparse/hamiltonian.hpp"

namespace hamsparse {

// ---------------------------------------------------------------------------
// Non-redundancy certificates

enum class NrdVerdict { NonRedundant, Redundant };

struct NrdCertificate {
    NrdVerdict verdict = NrdVerdict::Redundant;
    int redundant_index = -1;            // first index whose removal changes nothing
    std::vector<StateVector> witnesses;  // per term, only for non-redundant instances
};

// A term is essential iff removing it strictly enlarges the ground space;
// witnesses live in that enlargement: positive energy on their own term,
// none on the others.
NrdCertificate is_non_redundant(const Hamiltonian& h);

// ---------------------------------------------------------------------------
// Tensor-product witness construction

struct TensorWitnessInstance {
    Hamiltonian hamiltonian;
    std::vector<StateVector> witnesses;  // aligned with the terms
};

// Complete r-partite instance for a predicate that factors into single-qubit
// PSD matrices, each nonzero and rank deficient. Every term gets a product
// witness: the peak eigenvector on its own tuple, kernel vectors elsewhere
// in the parts, |0> padding outside.
TensorWitnessInstance tensor_witness_instance(const std::vector<Matrix>& unary_factors,
                                              const std::vector<std::vector<int>>& parts, int n);

// ---------------------------------------------------------------------------
// Two-qubit classification

// det of the 2x2 reshape of a length-4 vector (row index = first qubit).
Complex reshape_determinant(const Vector& u);

// A span vector whose reshape is invertible, or nullopt when every span
// vector is singular. The search walks the range basis, then pairwise
// combinations over a fixed grid of mixing coefficients, then a random
// fallback; the all-singular verdict is certified through the polarization
// of the determinant form.
std::optional<Vector> nonsingular_search(const Matrix& m);

// Decomposition M = M1 (x) M2 into rank-one unary factors, when it exists.
std::optional<std::pair<Matrix, Matrix>> tensor_rank1_check(const Matrix& m);

// ---------------------------------------------------------------------------
// Automorphisms

struct QubitPermutation {
    std::vector<int> map;  // map[q] = image, 1-based; map[0] unused

    int n() const { return static_cast<int>(map.size()) - 1; }
};

QubitPermutation identity_permutation(int n);
QubitPermutation transposition(int n, int a, int b);
QubitPermutation compose(const QubitPermutation& outer, const QubitPermutation& inner);

// Permutation induced on basis labels: bit i of the input becomes bit
// map[i] of the output.
StateVector apply_permutation(const StateVector& psi, const QubitPermutation& p);

bool automorphism_applies(const StateVector& psi, const QubitPermutation& p);

enum class PairMode { TwoQubit, Generic };

struct AutCheckResult {
    bool holds = false;
    bool vacuous = false;   // empty joint ground space
    bool skipped = false;   // excluded by the classification (tensor case)
    std::string note;
};

// For two terms sharing exactly one qubit (at the same slot), checks the
// predicted permutation on an orthonormal basis of their joint ground space:
// the transposition of the free qubits in two-qubit mode, the slotwise block
// swap in generic mode.
AutCheckResult derived_automorphism_check(const Hamiltonian& h, PairMode mode);

// Ground-space dimension equality of the instance with and without the last
// listed cycle edge; true means that edge is implied by the rest.
bool bipartite_cycle_redundant_check(const Hamiltonian& h, const std::vector<int>& cycle_indices);

// ---------------------------------------------------------------------------
// Connectivity parameter

// Smallest N such that every index subset of size >= N contains an element
// alpha-dominated by the rest; m+1 when even the full set has none.
// Brute force over all subsets, so m is capped at 16.
int connectivity_parameter(const std::vector<Matrix>& lifted, double alpha);

// ---------------------------------------------------------------------------
// Classical projections

struct Relation {
    int arity = 0;
    std::vector<std::uint32_t> members;  // sorted tuples, first coordinate = MSB

    bool contains(std::uint32_t t) const;
};

Relation and_relation(int arity);

struct Literal {
    enum Kind { Zero, One, Var, NegVar } kind = Zero;
    int var = 0;  // 1-based pool variable for Var / NegVar
};

// (x_1..x_c) lies in the output iff the literal evaluations lie in R.
Relation project_relation(const Relation& r, const std::vector<Literal>& literals, int pool);

// Searches the restricted family (constants on the first r-c slots, signed
// distinct pool variables in order on the last c) for a projection equal to
// AND_c; first hit in lexicographic order.
std::optional<std::vector<Literal>> find_and_projection(const Relation& r, int pool);

// ---------------------------------------------------------------------------
// Automorphism groups

std::uint64_t aut_group_order(const std::vector<QubitPermutation>& generators, int n);

// Greedy lower-bound construction: partite tuples in seeded random order,
// kept while the certificate stays valid.
Hamiltonian greedy_nonredundant_instance(const Matrix& m, int r, int n, std::uint64_t seed);

struct GenericAuditResult {
    int accepted = 0;             // terms beyond the spanning forest
    int swaps_derived = 0;
    std::vector<std::uint64_t> group_orders;
    bool strictly_doubling = true;
};

// Replays the growth argument on a certified non-redundant instance: each
// non-forest term contributes a derived block swap, and the generated group
// must at least double at every step.
GenericAuditResult audit_automorphism_growth(const Hamiltonian& h);

}  // namespace hamsparse
