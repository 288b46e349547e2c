#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hamsparse/hamiltonian.hpp"
#include "hamsparse/nrd.hpp"
#include "hamsparse/qmaxcsp.hpp"

namespace hamsparse {

// Seeded instance families. Every family re-audits its defining property at
// creation (string recognition, rank, nullity, predicate identity).
struct InstanceSpec {
    std::string family;  // pauli | generic | nullity1 | fullrank | maxcut | classical
    int n = 8;
    int m = 0;
    int r = 2;
    int rank = 3;                      // generic family
    double edge_probability = 0.5;     // maxcut family
    std::uint64_t seed = 0;
    std::optional<Relation> relation;  // classical family
};

Hamiltonian generate_instance(const InstanceSpec& spec);

WeightedGraph generate_graph(int n, double edge_probability, std::uint64_t seed);

// m tuples of r distinct qubits each, seeded.
std::vector<std::vector<int>> random_tuples(int n, int m, int r, std::uint64_t seed);

}  // namespace hamsparse
