#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hamsparse/hamiltonian.hpp"

namespace hamsparse {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double weight = 1.0;
};

struct WeightedGraph {
    int n = 0;
    std::vector<WeightedEdge> edges;

    double total_weight() const {
        double s = 0;
        for (const auto& e : edges) s += e.weight;
        return s;
    }
};

// The 2-qubit cut predicate v v^dagger with v = |01> - |10>; equality with
// (Id - XX - YY - ZZ)/2 is asserted at construction to 1e-12.
Matrix maxcut_predicate();

Hamiltonian maxcut_hamiltonian(const WeightedGraph& g);

// Largest eigenvalue of the assembled operator (dense cap applies).
double opt_energy(const Hamiltonian& h);

struct ShiftedSparsifyResult {
    SparsifierWeights weights;  // replacement weights on the original terms
    int attempts = 1;
};

// Identity-shift sampler: every predicate is shifted by Id (making the total
// dominate total_weight * Id), terms are kept with probability
// min(1, lambda_max(M_e + Id) * w_e / W * 100 n / eps'^2) at weight w_e / q_e
// with eps' = eps / 10, the survivors are rescaled so their total equals W
// exactly, and the shifted sandwich is verified at eps.
ShiftedSparsifyResult sparsify_shifted(const Hamiltonian& h, double eps, std::uint64_t seed,
                                       int max_attempts = 16);

// The raw sampling pass at an explicit rate parameter (no /10 mapping, no
// verification); exposed so the streaming law can be compared against the
// batch law at matching rates.
SparsifierWeights shifted_importance_pass(const Hamiltonian& h, double eps_prime,
                                          std::uint64_t seed);

Hamiltonian shift_by_identity(const Hamiltonian& h);

// Near-optimum-preserving reweighting of a cut instance; runs the shifted
// sampler at eps / 200.
WeightedGraph maxcut_sparsify(const WeightedGraph& g, double eps, std::uint64_t seed);

// Single-pass reservoir with the same inclusion marginals as the batch
// shifted sampler at eps' = eps / 10: each edge keeps a weight-scaled key
// and survives exactly while its key stays under the common threshold, which
// tightens as the stream's total weight grows. Memory is bounded by the
// capacity ceil(400 n / eps'^2).
class StreamSparsifier {
public:
    StreamSparsifier(int n, double eps_prime, std::uint64_t seed);

    void insert(int u, int v, double weight);
    WeightedGraph finish() const;  // survivors, reweighted and rescaled

    int reservoir_size() const { return static_cast<int>(pool_.size()); }
    int capacity() const { return capacity_; }
    double total_weight() const { return total_; }

private:
    struct Entry {
        WeightedEdge edge;
        double key;
    };
    void evict();

    int n_;
    double rate_factor_;  // 100 n / eps'^2
    int capacity_;
    double total_ = 0;
    std::vector<Entry> pool_;  // max-heap on key
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

WeightedGraph stream_sparsify(const std::vector<WeightedEdge>& events, int n, double eps,
                              std::uint64_t seed);

struct TransferAudit {
    double opt_original = 0;
    double opt_sparse = 0;
    int states_tested = 0;
    bool holds = true;
};

// Direct check of the near-optimum transfer: every tested state with sparse
// energy >= (1 - eps) * OPT(sparse) must have original energy
// >= (1 - 2 eps) * OPT(original). Test states are the top eigenvectors of the
// sparse operator plus random angular perturbations of the leading one.
TransferAudit audit_near_opt_transfer(const Hamiltonian& original, const Hamiltonian& sparse,
                                      double eps, std::uint64_t seed, int top_k = 5,
                                      int perturbations = 100);

struct MaxCspResult {
    SparsifierWeights weights;
    TransferAudit certificate;
};

// General quantum MAX-CSP pipeline: the caller supplies gamma with
// OPT >= 10 m / gamma (audited densely at desk scale); the shifted sampler
// runs at eps / (200 gamma).
MaxCspResult maxcsp_sparsify(const Hamiltonian& h, double gamma, double eps, std::uint64_t seed);

}  // namespace hamsparse
