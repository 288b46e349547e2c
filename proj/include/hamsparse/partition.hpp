#pragma once

#include <vector>

#include "hamsparse/linalg.hpp"

namespace hamsparse {

// Part assignment under construction: values[q] is a part in [1, r], or 0
// while qubit q is still unassigned.
struct PartialAssignment {
    std::vector<int> values;  // index 0 unused; qubits are 1-based

    int at(int q) const { return values[q]; }
};

// One partite piece: a total part labeling of the qubits together with the
// hyperedge indices retained under it (slot k of every retained edge lands in
// part k).
struct PartitePiece {
    std::vector<int> labels;       // per qubit, 1-based; labels[0] unused
    std::vector<int> edge_indices; // indices into the input edge list
};

struct PartiteDecomposition {
    std::vector<PartitePiece> pieces;

    int piece_count() const { return static_cast<int>(pieces.size()); }
};

// Expected number of retained edges under random completion of p: each edge
// contributes the product over slots k of [1 if p(t_k) = k, 1/r if
// unassigned, 0 otherwise].
double potential(const std::vector<std::vector<int>>& edges, const PartialAssignment& p, int r,
                 int n);

// Greedy derandomization: visit qubits in ascending order, give each the part
// maximizing the potential (smallest part label on ties). The retained edge
// count is at least r^-r times the input size, exactly.
std::vector<int> find_partition_assignment(const std::vector<std::vector<int>>& edges, int r,
                                           int n);

// Edges retained by a total assignment: slot k sits in part k.
std::vector<int> retained_edges(const std::vector<std::vector<int>>& edges,
                                const std::vector<int>& labels, int r);

// Repeated extraction until no edges remain. Pieces are disjoint, exhaustive,
// and their count is at most ceil(log(2 n^r) / -log(1 - r^-r)).
PartiteDecomposition peel_partition(const std::vector<std::vector<int>>& edges, int r, int n);

int piece_count_bound(int n, int r);

}  // namespace hamsparse
