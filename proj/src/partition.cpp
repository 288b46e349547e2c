#include "hamsparse/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamsparse {

static void check_edges(const std::vector<std::vector<int>>& edges, int r, int n) {
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != r) throw std::invalid_argument("edge arity mismatch");
        for (int q : e)
            if (q < 1 || q > n) throw std::invalid_argument("edge qubit out of range");
    }
}

double potential(const std::vector<std::vector<int>>& edges, const PartialAssignment& p, int r,
                 int n) {
    check_edges(edges, r, n);
    double phi = 0;
    for (const auto& e : edges) {
        double contrib = 1.0;
        for (int k = 0; k < r && contrib != 0.0; ++k) {
            const int part = p.at(e[k]);
            if (part == 0)
                contrib /= r;
            else if (part != k + 1)
                contrib = 0.0;
        }
        phi += contrib;
    }
    return phi;
}

std::vector<int> find_partition_assignment(const std::vector<std::vector<int>>& edges, int r,
                                           int n) {
    if (edges.empty()) throw std::invalid_argument("empty edge list");
    check_edges(edges, r, n);
    PartialAssignment p{std::vector<int>(n + 1, 0)};
    for (int q = 1; q <= n; ++q) {
        int best_part = 1;
        double best_phi = -1;
        for (int a = 1; a <= r; ++a) {
            p.values[q] = a;
            const double phi = potential(edges, p, r, n);
            if (phi > best_phi + 1e-12) {  // ties go to the smallest label
                best_phi = phi;
                best_part = a;
            }
        }
        p.values[q] = best_part;
    }
    return p.values;
}

std::vector<int> retained_edges(const std::vector<std::vector<int>>& edges,
                                const std::vector<int>& labels, int r) {
    std::vector<int> kept;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        bool ok = true;
        for (int k = 0; k < r && ok; ++k) ok = labels[edges[i][k]] == k + 1;
        if (ok) kept.push_back(i);
    }
    return kept;
}

int piece_count_bound(int n, int r) {
    const double num = std::log(2.0 * std::pow(static_cast<double>(n), r));
    const double den = -std::log(1.0 - std::pow(static_cast<double>(r), -r));
    return static_cast<int>(std::ceil(num / den));
}

PartiteDecomposition peel_partition(const std::vector<std::vector<int>>& edges, int r, int n) {
    check_edges(edges, r, n);
    PartiteDecomposition out;
    std::vector<int> remaining(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) remaining[i] = static_cast<int>(i);

    while (!remaining.empty()) {
        std::vector<std::vector<int>> sub;
        sub.reserve(remaining.size());
        for (int i : remaining) sub.push_back(edges[i]);
        const std::vector<int> labels = find_partition_assignment(sub, r, n);
        const std::vector<int> kept_local = retained_edges(sub, labels, r);
        if (kept_local.empty())
            throw std::runtime_error("partition extraction retained no edges");

        PartitePiece piece;
        piece.labels = labels;
        std::vector<bool> taken(remaining.size(), false);
        for (int k : kept_local) {
            piece.edge_indices.push_back(remaining[k]);
            taken[k] = true;
        }
        out.pieces.push_back(std::move(piece));

        std::vector<int> next;
        for (std::size_t k = 0; k < remaining.size(); ++k)
            if (!taken[k]) next.push_back(remaining[k]);
        remaining = std::move(next);
    }
    if (out.piece_count() > piece_count_bound(n, r))
        throw std::runtime_error("piece count exceeds its guarantee (extraction bug)");
    return out;
}

}  // namespace hamsparse
