#include "hamsparse/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include "hamsparse/pauli.hpp"

namespace hamsparse {

static Json predicate_to_json(const Matrix& m) {
    Json p;
    p["dim"] = m.rows();
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    p["entries"] = std::move(entries);
    return p;
}

static Matrix predicate_from_json(const Json& p) {
    if (p.contains("pauli")) {
        const Json& sym = p["pauli"];
        PauliString s;
        s.sign = sym.at("sign").get<int>();
        for (const auto& f : sym.at("factors")) {
            const std::string name = f.get<std::string>();
            const auto axis = name.size() == 1 ? axis_from_name(name[0]) : std::nullopt;
            if (!axis) throw std::invalid_argument("unknown Pauli factor '" + name + "'");
            s.factors.push_back(*axis);
        }
        return pauli_matrix(s);
    }
    const int dim = p.at("dim").get<int>();
    const Json& entries = p.at("entries");
    if (static_cast<int>(entries.size()) != dim * dim)
        throw std::invalid_argument("predicate entry count does not match dim^2");
    Matrix m(dim, dim);
    int k = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j, ++k)
            m(i, j) = Complex(entries[k][0].get<double>(), entries[k][1].get<double>());
    return m;
}

Json hamiltonian_to_json(const Hamiltonian& h) {
    Json j;
    j["n"] = h.n;
    Json terms = Json::array();
    for (const Term& t : h.terms) {
        Json jt;
        jt["tuple"] = t.tuple;
        jt["predicate"] = predicate_to_json(t.predicate);
        jt["weight"] = t.weight;
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

Hamiltonian hamiltonian_from_json(const Json& j) {
    Hamiltonian h;
    h.n = j.at("n").get<int>();
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.tuple = jt.at("tuple").get<std::vector<int>>();
        t.predicate = predicate_from_json(jt.at("predicate"));
        t.weight = jt.value("weight", 1.0);
        h.terms.push_back(std::move(t));
    }
    validate_hamiltonian(h);
    return h;
}

Json weights_to_json(const SparsifierWeights& w) {
    Json j = Json::object();
    for (const auto& [i, wi] : w.entries) j[std::to_string(i)] = wi;
    return j;
}

SparsifierWeights weights_from_json(const Json& j) {
    SparsifierWeights w;
    for (const auto& [key, val] : j.items()) w.entries[std::stoi(key)] = val.get<double>();
    return w;
}

Json xor_to_json(const XorInstance& inst) {
    Json j;
    j["n"] = inst.n;
    Json cs = Json::array();
    for (const auto& c : inst.constraints)
        cs.push_back({{"vars", c.vars}, {"parity", c.parity}, {"weight", c.weight}});
    j["constraints"] = std::move(cs);
    return j;
}

XorInstance xor_from_json(const Json& j) {
    XorInstance inst;
    inst.n = j.at("n").get<int>();
    for (const auto& jc : j.at("constraints")) {
        XorConstraint c;
        c.vars = jc.at("vars").get<std::vector<int>>();
        c.parity = jc.value("parity", 0);
        c.weight = jc.value("weight", 1.0);
        inst.constraints.push_back(std::move(c));
    }
    return inst;
}

Json graph_to_json(const WeightedGraph& g) {
    Json j;
    j["n"] = g.n;
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}});
    j["edges"] = std::move(edges);
    return j;
}

WeightedGraph graph_from_json(const Json& j) {
    WeightedGraph g;
    g.n = j.at("n").get<int>();
    for (const auto& je : j.at("edges"))
        g.edges.push_back(WeightedEdge{je.at("u").get<int>(), je.at("v").get<int>(),
                                       je.value("weight", 1.0)});
    return g;
}

Json report_to_json(const SparsifierReport& rep) {
    return Json{{"pass", rep.pass},
                {"epsilon", rep.epsilon},
                {"lambda_min_slack", rep.lambda_min_slack},
                {"lambda_max_slack", rep.lambda_max_slack},
                {"support_size", rep.support_size},
                {"mode", rep.mode}};
}

Json decomposition_to_json(const PartiteDecomposition& d) {
    Json pieces = Json::array();
    for (const auto& piece : d.pieces) {
        Json jp;
        jp["labels"] = std::vector<int>(piece.labels.begin() + 1, piece.labels.end());
        jp["edges"] = piece.edge_indices;
        pieces.push_back(std::move(jp));
    }
    return Json{{"pieces", std::move(pieces)}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace hamsparse
