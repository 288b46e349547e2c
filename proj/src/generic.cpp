#include "hamsparse/generic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <limits>
#include <string>

#include "hamsparse/partition.hpp"
#include "hamsparse/rng.hpp"

namespace hamsparse {

Matrix sample_random_psd(const RandomPredicateSpec& spec) {
    if (spec.rank < 1 || spec.rank > (1 << spec.arity))
        throw std::invalid_argument("rank must lie in [1, 2^r]");
    Rng rng(split_seed(spec.seed, "random-psd"));
    const int dim = 1 << spec.arity;
    Matrix m = Matrix::Zero(dim, dim);
    for (int j = 0; j < spec.rank; ++j) {
        const Vector v = rng.unit_vector(dim);
        m += v * v.adjoint();
    }
    if (numerical_rank(m) != spec.rank)
        throw std::runtime_error("sampled predicate does not have the requested rank");
    return m;
}

// Map the tuples onto the union qubit set, preserving tuple order.
static std::vector<int> union_positions(const std::vector<int>& tuple,
                                        const std::vector<int>& sorted_union) {
    std::vector<int> out;
    out.reserve(tuple.size());
    for (int q : tuple) {
        const auto it = std::lower_bound(sorted_union.begin(), sorted_union.end(), q);
        out.push_back(static_cast<int>(it - sorted_union.begin()) + 1);
    }
    return out;
}

static std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    return {u.begin(), u.end()};
}

static bool tuples_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    for (int q : a)
        if (std::find(b.begin(), b.end(), q) != b.end()) return true;
    return false;
}

bool genericity_check(const Matrix& m, const Matrix& mp, const std::vector<int>& t,
                      const std::vector<int>& tp, int n) {
    for (int q : t)
        if (q < 1 || q > n) throw std::invalid_argument("tuple qubit out of range");
    for (int q : tp)
        if (q < 1 || q > n) throw std::invalid_argument("tuple qubit out of range");
    if (!tuples_intersect(t, tp))
        throw std::invalid_argument(
                "disjoint tuples always share a nontrivial joint kernel; genericity is decided "
                "only for intersecting pairs");
    const std::vector<int> u = sorted_union(t, tp);
    const int nu = static_cast<int>(u.size());
    Matrix sum = Matrix::Zero(1LL << nu, 1LL << nu);
    accumulate_lift(sum, m, union_positions(t, u), nu, 1.0);
    accumulate_lift(sum, mp, union_positions(tp, u), nu, 1.0);
    return kernel_basis(sum).cols() == 0;
}

PairMatching pair_matching(const Hamiltonian& h) {
    validate_hamiltonian(h);
    const int m = h.size();
    std::vector<bool> used(m, false);
    PairMatching out;
    // Extract until the survivors are pairwise disjoint; more than n/r
    // survivors always contain an intersecting pair, so the matching ends
    // with at least (m - n/r) / 2 pairs.
    for (;;) {
        int a = -1, b = -1;
        for (int i = 0; i < m && a < 0; ++i) {
            if (used[i]) continue;
            for (int j = i + 1; j < m; ++j) {
                if (used[j]) continue;
                if (tuples_intersect(h.terms[i].tuple, h.terms[j].tuple)) {
                    a = i;
                    b = j;
                    break;
                }
            }
        }
        if (a < 0) break;
        used[a] = used[b] = true;
        out.pairs.emplace_back(a, b);
    }
    for (int i = 0; i < m; ++i)
        if (!used[i]) out.leftover.push_back(i);
    return out;
}

EigCertificate lambda_min_certificate(const Hamiltonian& h, const PairMatching& matching) {
    EigCertificate cert;
    for (const auto& [a, b] : matching.pairs) {
        const Term& ta = h.terms[a];
        const Term& tb = h.terms[b];
        const std::vector<int> u = sorted_union(ta.tuple, tb.tuple);
        const int nu = static_cast<int>(u.size());
        Matrix sum = Matrix::Zero(1LL << nu, 1LL << nu);
        accumulate_lift(sum, ta.predicate, union_positions(ta.tuple, u), nu, ta.weight);
        accumulate_lift(sum, tb.predicate, union_positions(tb.tuple, u), nu, tb.weight);
        const double lo = lambda_min(sum);
        cert.pair_minima.push_back(lo);
        cert.lower += lo;
    }
    return cert;
}

SparsifierWeights importance_sample(const Hamiltonian& h, const std::vector<double>& p, double eps,
                                    std::uint64_t seed, int max_attempts) {
    if (static_cast<int>(p.size()) != h.size())
        throw std::invalid_argument("one importance bound per term required");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const double factor = 100.0 * h.n / (eps * eps);

    std::vector<double> keep(h.size());
    bool all_kept = true;
    for (int i = 0; i < h.size(); ++i) {
        if (!(p[i] > 0)) throw std::invalid_argument("importance bounds must be positive");
        keep[i] = std::min(1.0, p[i] * factor);
        all_kept = all_kept && keep[i] >= 1.0;
    }
    if (all_kept) return identity_weights(h);

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Rng rng(split_seed(seed, "importance-sample", static_cast<std::uint64_t>(attempt)));
        SparsifierWeights w;
        for (int i = 0; i < h.size(); ++i) {
            if (h.terms[i].weight <= 0) continue;
            if (keep[i] >= 1.0 || rng.coin(keep[i])) w.entries[i] = h.terms[i].weight / keep[i];
        }
        if (w.entries.empty()) continue;
        const SparsifierReport rep = verify_sparsifier(h, w, eps);
        if (rep.pass) return w;
    }
    throw std::runtime_error("importance sampling failed verification after " +
                             std::to_string(max_attempts) + " reseeds");
}

SparsifierWeights sparsify_generic(const Hamiltonian& h, double eps, std::uint64_t seed,
                                   GenericSparsifyStats* stats) {
    validate_hamiltonian(h);
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (h.terms.empty()) return {};
    const int r = h.terms[0].arity();
    for (int i = 0; i < h.size(); ++i) {
        if (h.terms[i].arity() != r) throw std::invalid_argument("mixed arities are not supported");
        const int rank = numerical_rank(h.terms[i].predicate);
        if (rank < (1 << (r - 1)) + 1)
            throw std::invalid_argument("term " + std::to_string(i) + " has rank " +
                                        std::to_string(rank) + " below 2^{r-1}+1");
    }

    GenericSparsifyStats st;
    st.certificate = std::numeric_limits<double>::infinity();
    if (h.size() <= 4 * h.n) {
        if (stats) {
            st.certificate = 0;
            *stats = st;
        }
        return identity_weights(h);
    }

    std::vector<std::vector<int>> edges;
    edges.reserve(h.terms.size());
    for (const Term& t : h.terms) edges.push_back(t.tuple);
    const PartiteDecomposition decomp = peel_partition(edges, r, h.n);
    st.pieces = decomp.piece_count();

    SparsifierWeights out;
    for (std::size_t pi = 0; pi < decomp.pieces.size(); ++pi) {
        const std::vector<int>& members = decomp.pieces[pi].edge_indices;
        Hamiltonian sub;
        sub.n = h.n;
        for (int i : members) sub.terms.push_back(h.terms[i]);

        const PairMatching matching = pair_matching(sub);
        if (matching.pairs.empty()) {
            for (int i : members)
                if (h.terms[i].weight > 0) out.entries[i] = h.terms[i].weight;
            continue;
        }

        if (!st.genericity_audited) {
            const auto& [a, b] = matching.pairs.front();
            if (!genericity_check(sub.terms[a].predicate, sub.terms[b].predicate,
                                  sub.terms[a].tuple, sub.terms[b].tuple, h.n))
                throw std::runtime_error("genericity audit failed: intersecting pair (" +
                                         std::to_string(members[a]) + ", " +
                                         std::to_string(members[b]) +
                                         ") shares a nontrivial kernel");
            st.genericity_audited = true;
        }

        const EigCertificate cert = lambda_min_certificate(sub, matching);
        for (std::size_t k = 0; k < cert.pair_minima.size(); ++k) {
            if (cert.pair_minima[k] <= kKernelTol)
                throw std::runtime_error(
                        "degenerate pair (" + std::to_string(members[matching.pairs[k].first]) +
                        ", " + std::to_string(members[matching.pairs[k].second]) +
                        ") has a vanishing joint spectral floor");
        }
        st.certificate = std::min(st.certificate, cert.lower);

        std::vector<double> p(sub.size());
        for (int j = 0; j < sub.size(); ++j)
            p[j] = sub.terms[j].weight * lambda_max(sub.terms[j].predicate) / cert.lower;

        const SparsifierWeights piece_w =
                importance_sample(sub, p, eps, split_seed(seed, "generic-piece", pi));
        for (const auto& [j, wj] : piece_w.entries) out.entries[members[j]] = wj;
    }

    if (h.n <= dense_cap()) {
        const SparsifierReport rep = verify_sparsifier(h, out, eps);
        if (!rep.pass)
            throw std::runtime_error("generic sparsifier output failed dense verification");
    }
    if (stats) *stats = st;
    return out;
}

}  // namespace hamsparse
