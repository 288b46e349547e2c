#include "hamsparse/generate.hpp"

#include <stdexcept>

#include "hamsparse/generic.hpp"
#include "hamsparse/nullity1.hpp"
#include "hamsparse/pauli.hpp"
#include "hamsparse/rng.hpp"

namespace hamsparse {

std::vector<std::vector<int>> random_tuples(int n, int m, int r, std::uint64_t seed) {
    if (r > n) throw std::invalid_argument("arity exceeds qubit count");
    Rng rng(split_seed(seed, "tuples"));
    std::vector<std::vector<int>> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) out.push_back(rng.distinct(n, r));
    return out;
}

WeightedGraph generate_graph(int n, double edge_probability, std::uint64_t seed) {
    Rng rng(split_seed(seed, "graph"));
    WeightedGraph g;
    g.n = n;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (rng.coin(edge_probability)) g.edges.push_back(WeightedEdge{u, v, 1.0});
    if (g.edges.empty()) g.edges.push_back(WeightedEdge{1, 2, 1.0});  // never emit an empty graph
    return g;
}

static Hamiltonian generate_pauli(const InstanceSpec& spec) {
    Rng rng(split_seed(spec.seed, "pauli-family"));
    Hamiltonian h;
    h.n = spec.n;
    const auto tuples = random_tuples(spec.n, spec.m, spec.r, split_seed(spec.seed, "pauli-tuples"));
    for (int i = 0; i < spec.m; ++i) {
        PauliString s;
        s.sign = rng.coin(0.5) ? 1 : -1;
        for (int k = 0; k < spec.r; ++k)
            s.factors.push_back(static_cast<PauliAxis>(rng.index(3)));
        h.terms.push_back(Term{tuples[i], pauli_matrix(s), 1.0});
        if (!recognize_pauli_predicate(h.terms.back().predicate))
            throw std::runtime_error("generated predicate failed string recognition");
    }
    return h;
}

static Hamiltonian generate_rank_family(const InstanceSpec& spec, int rank) {
    Hamiltonian h;
    h.n = spec.n;
    const auto tuples = random_tuples(spec.n, spec.m, spec.r, split_seed(spec.seed, "rank-tuples"));
    for (int i = 0; i < spec.m; ++i) {
        const Matrix m = sample_random_psd(RandomPredicateSpec{
                spec.r, rank, split_seed(spec.seed, "rank-pred", static_cast<std::uint64_t>(i))});
        h.terms.push_back(Term{tuples[i], m, 1.0});
    }
    return h;
}

static Hamiltonian generate_classical(const InstanceSpec& spec) {
    if (!spec.relation) throw std::invalid_argument("classical family needs a relation");
    const Relation& rel = *spec.relation;
    if (rel.arity != spec.r) throw std::invalid_argument("relation arity must match r");
    const int dim = 1 << rel.arity;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::uint32_t t : rel.members) m(t, t) = 1.0;
    if (!is_classical_predicate(m)) throw std::runtime_error("relation predicate audit failed");

    Hamiltonian h;
    h.n = spec.n;
    const auto tuples =
            random_tuples(spec.n, spec.m, spec.r, split_seed(spec.seed, "classical-tuples"));
    for (int i = 0; i < spec.m; ++i) h.terms.push_back(Term{tuples[i], m, 1.0});
    return h;
}

Hamiltonian generate_instance(const InstanceSpec& spec) {
    if (spec.family == "pauli") return generate_pauli(spec);
    if (spec.family == "generic") {
        if (spec.rank < (1 << (spec.r - 1)) + 1)
            throw std::invalid_argument("generic family requires rank >= 2^{r-1}+1");
        return generate_rank_family(spec, spec.rank);
    }
    if (spec.family == "nullity1") {
        Hamiltonian h = generate_rank_family(spec, (1 << spec.r) - 1);
        for (int i = 0; i < h.size(); ++i)
            if (predicate_nullity(h.terms[i].predicate) != 1)
                throw std::runtime_error("nullity audit failed on generated term");
        return h;
    }
    if (spec.family == "fullrank") {
        Hamiltonian h = generate_rank_family(spec, 1 << spec.r);
        for (int i = 0; i < h.size(); ++i)
            if (predicate_nullity(h.terms[i].predicate) != 0)
                throw std::runtime_error("full-rank audit failed on generated term");
        return h;
    }
    if (spec.family == "maxcut")
        return maxcut_hamiltonian(generate_graph(spec.n, spec.edge_probability, spec.seed));
    if (spec.family == "classical") return generate_classical(spec);
    throw std::invalid_argument("unknown instance family: " + spec.family);
}

}  // namespace hamsparse
