#pragma once

#include <string>

#include <json.hpp>

#include "hamsparse/generate.hpp"
#include "hamsparse/hamiltonian.hpp"
#include "hamsparse/partition.hpp"
#include "hamsparse/qmaxcsp.hpp"
#include "hamsparse/xor_sparsify.hpp"

namespace hamsparse {

using Json = nlohmann::json;

// Hamiltonian wire schema:
//   {"n": 2, "terms": [{"tuple": [1, 2],
//                       "predicate": {"dim": 4, "entries": [[re, im], ...]},
//                       "weight": 1.0}]}
// A predicate may also be given symbolically:
//   {"pauli": {"factors": ["Z", "Z"], "sign": 1}}
Json hamiltonian_to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const Json& j);

// Weights: {"0": 1.5, "7": 2.0}
Json weights_to_json(const SparsifierWeights& w);
SparsifierWeights weights_from_json(const Json& j);

// {"n": 4, "constraints": [{"vars": [1, 2], "parity": 0, "weight": 1.0}]}
Json xor_to_json(const XorInstance& inst);
XorInstance xor_from_json(const Json& j);

Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);

Json report_to_json(const SparsifierReport& rep);

Json decomposition_to_json(const PartiteDecomposition& d);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace hamsparse
