#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamsparse/hamiltonian.hpp"
#include "hamsparse/xor_sparsify.hpp"

namespace hamsparse {

enum class PauliAxis { X, Y, Z };

char axis_name(PauliAxis a);
std::optional<PauliAxis> axis_from_name(char c);
Matrix pauli_axis_matrix(PauliAxis a);

// sign * (P_1 x ... x P_r) + Id, with factors in {X, Y, Z}. Spectrum {0, 2},
// each eigenvalue with multiplicity 2^{r-1}.
struct PauliString {
    std::vector<PauliAxis> factors;
    int sign = 1;  // +1 or -1

    int arity() const { return static_cast<int>(factors.size()); }
    bool operator==(const PauliString& o) const = default;
};

Matrix pauli_matrix(const PauliString& s);

// Recovers the string type from a dense predicate by projecting onto the
// tensor-Pauli basis; nullopt when the matrix is not of that shape within
// 1e-10 per coefficient.
std::optional<PauliString> recognize_pauli_predicate(const Matrix& m, double tol = 1e-10);

struct PauliClass {
    PauliString string;
    std::vector<int> members;  // term indices, ascending
};

// Partitions the instance by string type; throws (naming the index) on a
// predicate that is not of Pauli-plus-identity shape.
std::vector<PauliClass> group_terms(const Hamiltonian& h);

// Eigenvector of the single-qubit axis operator with eigenvalue +1 or -1.
// Conventions: Z uses the computational pair, X the Hadamard pair, Y the
// circular pair with the +i amplitude on |1> for eigenvalue +1.
Vector pauli_eigenvector(PauliAxis a, int eigenvalue_sign);

// Product eigenbasis vector indexed by tau in {0,1}^n: qubit v carries the
// eigenvector of the axis assigned to its part, with eigenvalue (-1)^{tau_v}.
// tau bit of variable v is assignment_bit(tau, v).
StateVector partite_basis_vector(int n, const std::vector<int>& labels, const PauliString& string,
                                 std::uint64_t tau);

// One parity constraint per member term: variables = the tuple's qubits,
// parity 0 for sign +1 and 1 for sign -1, weight twice the term weight.
// Requires slot k of every member to sit in part k under `labels`.
XorInstance reduce_to_xor(const Hamiltonian& h, const std::vector<int>& members,
                          const PauliString& string, const std::vector<int>& labels);

struct PauliSparsifyStats {
    int classes = 0;
    int pieces = 0;
    int merged_duplicates = 0;
    int xor_attempts = 0;
};

// Full pipeline: group by string type, merge duplicate tuples within a
// class, peel each class into partite pieces, reduce each piece to an
// affine-parity CSP, sparsify it unbiasedly, and map the weights back.
// Output replaces the stored weights and preserves their total.
SparsifierWeights sparsify_pauli(const Hamiltonian& h, double eps, std::uint64_t seed,
                                 PauliSparsifyStats* stats = nullptr);

// Sparsifies an M-Hamiltonian where M = sum_j coefficients[j] *
// pauli_matrix(strings[j]): one parity sparsification of the first component
// drives all of them. All strings must share one sign (their reductions must
// agree constraint-by-constraint) and the decomposition must reproduce M
// within 1e-9.
SparsifierWeights sparsify_decomposition(const Matrix& m, const std::vector<double>& coefficients,
                                         const std::vector<PauliString>& strings,
                                         const std::vector<std::vector<int>>& tuples,
                                         const std::vector<double>& weights, int n, double eps,
                                         std::uint64_t seed);

}  // namespace hamsparse
