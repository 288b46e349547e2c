#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamsparse/linalg.hpp"

namespace hamsparse {

// One summand of a local Hamiltonian: a PSD predicate applied to an ordered
// tuple of distinct qubits, carrying a nonnegative weight.
struct Term {
    std::vector<int> tuple;  // 1-based qubit labels
    Matrix predicate;        // 2^r x 2^r, Hermitian PSD
    double weight = 1.0;

    int arity() const { return static_cast<int>(tuple.size()); }
};

struct Hamiltonian {
    int n = 0;
    std::vector<Term> terms;

    int size() const { return static_cast<int>(terms.size()); }
};

// Sparse replacement weights, term index -> positive weight. A weight map
// fully replaces the per-term weights; pipelines fold the original weights in
// before emitting one.
struct SparsifierWeights {
    std::map<int, double> entries;

    int support() const { return static_cast<int>(entries.size()); }
    double total() const {
        double s = 0;
        for (const auto& [i, w] : entries) s += w;
        return s;
    }
    double at(int i) const {
        auto it = entries.find(i);
        return it == entries.end() ? 0.0 : it->second;
    }
};

SparsifierWeights identity_weights(const Hamiltonian& h);

struct SparsifierReport {
    bool pass = false;
    double epsilon = 0;
    double lambda_min_slack = 0;  // lambda_min(A_w - (1-eps) A)
    double lambda_max_slack = 0;  // lambda_min((1+eps) A - A_w)
    int support_size = 0;
    std::string mode;  // "dense" (certified) or "sampled"
};

// Dense cap for full-operator assembly; HAMSPARSE_DENSE_CAP overrides the
// default of 14 qubits.
int dense_cap();

void validate_term(const Term& t, int n);
void validate_hamiltonian(const Hamiltonian& h);

struct StateVector {
    int n = 0;
    Vector amplitudes;  // 2^n entries, qubit 1 = most significant bit
};

StateVector basis_state(int n, std::uint64_t index);

// Pins the bits of S to z and drops those qubits: psi_z(y) = psi(z o y).
// `subset` is ascending 1-based; z's bit k corresponds to subset[k] (most
// significant first).
StateVector restrict_state(const StateVector& psi, const std::vector<int>& subset,
                           std::uint64_t z);

// <psi, M_T psi>, evaluated by summing <psi_z, M psi_z> over the assignments
// of the untouched qubits; the lifted operator is never materialized. Folds
// in the term weight.
double energy(const StateVector& psi, const Term& t, int n);

// Unweighted predicate energy of a single tuple; used by pipelines that
// manage weights themselves.
double predicate_energy(const StateVector& psi, const Matrix& m, const std::vector<int>& tuple,
                        int n);

// Sum of weight_i * lift(M_i); weights taken from `w` when provided
// (replacing the stored weights entirely), otherwise from the terms.
Matrix assemble(const Hamiltonian& h, const SparsifierWeights* w = nullptr);

// Unit-weight assembly: every term participates with weight 1 regardless of
// its stored weight. The kernel of this sum is the intersection of the term
// kernels.
Matrix assemble_unit(const Hamiltonian& h);

// Orthonormal basis (columns) of the common kernel of all lifted terms.
Matrix ground_space(const Hamiltonian& h);

// Two-sided spectral sandwich check:
//   (1-eps) A <= A_w <= (1+eps) A
// with A assembled from the stored weights and A_w from `w`. Dense when n is
// within the cap; otherwise falls back to sampled verification (all basis
// states plus 200 seeded random states) and labels the report "sampled".
SparsifierReport verify_sparsifier(const Hamiltonian& h, const SparsifierWeights& w, double eps);

// For diagonal 0/1 predicates only: exhaustive check of the reweighting over
// all 2^n classical assignments. When the dense check is also feasible the
// two verdicts are asserted to agree.
bool classical_crosscheck(const Hamiltonian& h, const SparsifierWeights& w, double eps);

bool is_classical_predicate(const Matrix& m, double tol = kHermitianTol);

}  // namespace hamsparse
