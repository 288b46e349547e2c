// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hamsparse/generate.hpp"
#include "hamsparse/generic.hpp"
#include "hamsparse/hamiltonian.hpp"
#include "hamsparse/nrd.hpp"
#include "hamsparse/nullity1.hpp"
#include "hamsparse/partition.hpp"
#include "hamsparse/pauli.hpp"
#include "hamsparse/qmaxcsp.hpp"
#include "hamsparse/rng.hpp"
#include "hamsparse/xor_sparsify.hpp"

using namespace hamsparse;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

// ---------------------------------------------------------------------------
// 1. Pauli end-to-end on twenty seeded instances.
void criterion_pauli() {
    const auto start = std::chrono::steady_clock::now();
    int passes = 0, shrunk = 0;
    bool totals_ok = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        InstanceSpec spec;
        spec.family = "pauli";
        spec.n = 8;
        spec.m = 120;
        spec.r = 2;
        spec.seed = seed;
        const Hamiltonian h = generate_instance(spec);
        const double eps = 0.25;
        const SparsifierWeights w = sparsify_pauli(h, eps, seed);
        const SparsifierReport rep = verify_sparsifier(h, w, eps);
        const bool slacks_ok = rep.lambda_min_slack >= -1e-8 && rep.lambda_max_slack >= -1e-8;
        if (rep.pass && slacks_ok) ++passes;
        double total = 0;
        for (const Term& t : h.terms) total += t.weight;
        if (std::abs(w.total() - total) > 1e-9 * total) totals_ok = false;
        if (w.support() < h.size()) ++shrunk;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "(dense pass %d/20, totals preserved %s, support<m on %d/20, %.1fs)", passes,
                  totals_ok ? "yes" : "no", shrunk, secs);
    report(1, passes == 20 && totals_ok && shrunk >= 18 && secs <= 60.0, buf);
}

// ---------------------------------------------------------------------------
// 2. Classical equivalence on diagonal instances, valid and corrupted maps.
void criterion_classical() {
    int agreements = 0, cases = 0;
    Rng rng(split_seed(2024, "classical-acceptance"));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Relation rel;
        rel.arity = 2;
        for (std::uint32_t t = 0; t < 4; ++t)
            if (rng.coin(0.5)) rel.members.push_back(t);
        if (rel.members.empty()) rel.members.push_back(3);

        InstanceSpec spec;
        spec.family = "classical";
        spec.n = 8;
        spec.m = 24;
        spec.r = 2;
        spec.seed = seed;
        spec.relation = rel;
        const Hamiltonian h = generate_instance(spec);
        const double eps = 0.3;

        std::vector<SparsifierWeights> candidates;
        candidates.push_back(identity_weights(h));  // valid
        SparsifierWeights inflated;                 // valid at eps
        for (int i = 0; i < h.size(); ++i) inflated.entries[i] = 1 + eps / 2;
        candidates.push_back(inflated);
        SparsifierWeights dropped = identity_weights(h);  // corrupted
        dropped.entries.erase(rng.index(h.size()));
        candidates.push_back(dropped);
        SparsifierWeights spiked = identity_weights(h);  // corrupted
        spiked.entries[rng.index(h.size())] = 5.0;
        candidates.push_back(spiked);

        for (const SparsifierWeights& w : candidates) {
            ++cases;
            try {
                // classical_crosscheck throws if the exhaustive classical
                // verdict disagrees with the dense spectral one.
                classical_crosscheck(h, w, eps);
                ++agreements;
            } catch (const std::exception&) {
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(verdicts agree on %d/%d weight maps)", agreements, cases);
    report(2, agreements == cases, buf);
}

// ---------------------------------------------------------------------------
// 3. Partition guarantees on fifty random hypergraphs.
void criterion_partition() {
    bool first_exact = true, monotone = true, bounded = true;
    Rng rng(split_seed(3, "partition-acceptance"));
    for (int trial = 0; trial < 50; ++trial) {
        const int r = trial % 2 == 0 ? 2 : 3;
        const int n = 12;
        const int m = 40 + rng.index(80);
        const auto edges = random_tuples(n, m, r, rng.next_u64());

        // Greedy sweep replay with the per-step potential audit.
        PartialAssignment p{std::vector<int>(n + 1, 0)};
        double phi = potential(edges, p, r, n);
        for (int q = 1; q <= n; ++q) {
            int best_part = 1;
            double best_phi = -1;
            for (int a = 1; a <= r; ++a) {
                p.values[q] = a;
                const double cand = potential(edges, p, r, n);
                if (cand > best_phi + 1e-12) {
                    best_phi = cand;
                    best_part = a;
                }
            }
            p.values[q] = best_part;
            if (best_phi < phi - 1e-12) monotone = false;
            phi = best_phi;
        }
        const auto labels = find_partition_assignment(edges, r, n);
        if (labels != p.values) monotone = false;
        if (static_cast<double>(retained_edges(edges, labels, r).size()) <
            std::pow(r, -r) * m - 1e-12)
            first_exact = false;

        const PartiteDecomposition d = peel_partition(edges, r, n);
        if (d.piece_count() > piece_count_bound(n, r)) bounded = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "(first extraction exact %s, potential monotone %s, bound %s)",
                  first_exact ? "yes" : "no", monotone ? "yes" : "no", bounded ? "yes" : "no");
    report(3, first_exact && monotone && bounded, buf);
}

// ---------------------------------------------------------------------------
// 4. Genericity of intersecting pairs, and matching yields.
void criterion_genericity() {
    int trivial = 0, total = 0;
    for (int r : {2, 3}) {
        const int rank = (1 << (r - 1)) + 1;
        std::vector<int> t(r), tp(r);
        for (int k = 0; k < r; ++k) {
            t[k] = k + 1;                      // 1..r
            tp[k] = k == 0 ? 1 : r + k;        // share qubit 1 only
        }
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Matrix a = sample_random_psd({r, rank, split_seed(seed, "gen-acc-a", r)});
            const Matrix b = sample_random_psd({r, rank, split_seed(seed, "gen-acc-b", r)});
            ++total;
            if (genericity_check(a, b, t, tp, 2 * r - 1)) ++trivial;
        }
    }

    bool matching_ok = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        InstanceSpec spec;
        spec.family = "generic";
        spec.n = 8;
        spec.m = 64;  // >= 4n
        spec.r = 2;
        spec.rank = 3;
        spec.seed = seed;
        const Hamiltonian h = generate_instance(spec);
        const PairMatching pm = pair_matching(h);
        if (4 * pm.pairs.size() < static_cast<std::size_t>(h.size())) matching_ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(trivial joint kernels %d/%d, matching >= m/4 %s)", trivial,
                  total, matching_ok ? "yes" : "no");
    report(4, trivial == total && matching_ok, buf);
}

// ---------------------------------------------------------------------------
// 5. Generic sparsification with certificate soundness.
void criterion_generic() {
    int passes = 0, sound = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        InstanceSpec spec;
        spec.family = "generic";
        spec.n = 8;
        spec.m = 120;
        spec.r = 2;
        spec.rank = 3;
        spec.seed = seed;
        const Hamiltonian h = generate_instance(spec);
        const double eps = 0.35;
        const SparsifierWeights w = sparsify_generic(h, eps, seed);
        if (verify_sparsifier(h, w, eps).pass) ++passes;

        const EigCertificate cert = lambda_min_certificate(h, pair_matching(h));
        if (cert.lower <= lambda_min(assemble(h)) + 1e-8) ++sound;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "(dense pass %d/20, certificate sound %d/20)", passes, sound);
    report(5, passes == 20 && sound == 20, buf);
}

// ---------------------------------------------------------------------------
// 6. Nullity-1 machinery.
void criterion_nullity1() {
    int dims_ok = 0;
    Rng rng(split_seed(6, "nullity-acceptance"));
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6 + (trial % 3);  // 6..8
        Hamiltonian h{n, {}};
        for (int q = 1; q < n; ++q)
            h.terms.push_back(Term{{q, q + 1},
                                   sample_random_psd({2, 3, rng.next_u64()}), 1.0});
        for (int extra = 0; extra < 6; ++extra)
            h.terms.push_back(Term{rng.distinct(n, 2),
                                   sample_random_psd({2, 3, rng.next_u64()}), 1.0});
        try {
            if (ground_dim_audit(h) <= 1) ++dims_ok;
        } catch (const std::exception&) {
        }
    }

    bool lemma_ok = true;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int n = 6;
        Hamiltonian h{n, {}};
        Rng gen(split_seed(seed, "lemma-inst"));
        for (int q = 1; q < n; ++q)
            h.terms.push_back(Term{{q, q + 1}, sample_random_psd({2, 3, gen.next_u64()}), 1.0});
        for (int extra = 0; extra < 20; ++extra)
            h.terms.push_back(Term{gen.distinct(n, 2),
                                   sample_random_psd({2, 3, gen.next_u64()}), 1.0});
        const DominatingCover cover = extract_dominating_cover(h);
        const BoundednessEstimate est = local_gap_constant(h, cover);
        Hamiltonian cover_h{n, {}};
        for (int i : cover.all) cover_h.terms.push_back(h.terms[i]);
        const Matrix cover_sum = assemble_unit(cover_h);
        std::set<int> in_cover(cover.all.begin(), cover.all.end());
        for (int i = 0; i < h.size(); ++i) {
            if (in_cover.count(i)) continue;
            const Matrix lifted = kron_lift(h.terms[i].predicate, h.terms[i].tuple, n);
            if (!loewner_leq(lifted, est.c * est.c * cover_sum)) lemma_ok = false;
        }
    }

    int sparsify_passes = 0;
    bool depth_ok = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 6;
        Hamiltonian h{n, {}};
        Rng gen(split_seed(seed, "sparsify-inst"));
        for (int q = 1; q < n; ++q)
            h.terms.push_back(Term{{q, q + 1}, sample_random_psd({2, 3, gen.next_u64()}), 1.0});
        for (int extra = 0; extra < 25; ++extra)
            h.terms.push_back(Term{gen.distinct(n, 2),
                                   sample_random_psd({2, 3, gen.next_u64()}), 1.0});
        Nullity1Trace trace;
        const SparsifierWeights w = sparsify_nullity1(h, 0.4, seed, &trace);
        if (verify_sparsifier(h, w, 0.4).pass) ++sparsify_passes;
        if (trace.depth > std::ceil(20.0 * 2 * std::log2(n))) depth_ok = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "(ground dim <= 1 on %d/100, lemma audit %s, pass %d/10, depth %s)",
                  dims_ok, lemma_ok ? "yes" : "no", sparsify_passes, depth_ok ? "ok" : "exceeded");
    report(6, dims_ok == 100 && lemma_ok && sparsify_passes == 10 && depth_ok, buf);
}

// ---------------------------------------------------------------------------
// 7. Quantum MAX-CUT: optimum floor, transfer, streaming law.
void criterion_maxcut() {
    bool floor_ok = true;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = generate_graph(8, 0.5, split_seed(seed, "floor"));
        if (opt_energy(maxcut_hamiltonian(g)) < g.total_weight() / 16.0 - 1e-9) floor_ok = false;
    }

    int transfer_ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const WeightedGraph g = generate_graph(8, 0.75, split_seed(seed, "transfer"));
        const double eps = 0.3;
        const WeightedGraph sparse = maxcut_sparsify(g, eps, seed);
        const TransferAudit audit = audit_near_opt_transfer(
                maxcut_hamiltonian(g), maxcut_hamiltonian(sparse), eps, seed);
        if (audit.holds && audit.states_tested >= 1) ++transfer_ok;
    }

    // Streaming vs batch inclusion frequencies over 500 trials, at a rate
    // where the keep probabilities are strictly inside (0, 1).
    Rng edge_rng(split_seed(21, "stream-acceptance"));
    Hamiltonian h{8, {}};
    std::vector<WeightedEdge> events;
    const Matrix m = maxcut_predicate();
    for (int i = 0; i < 10000; ++i) {
        const auto t = edge_rng.distinct(8, 2);
        events.push_back({std::min(t[0], t[1]), std::max(t[0], t[1]), 1.0});
        h.terms.push_back(Term{{events.back().u, events.back().v}, m, 1.0});
    }
    std::map<std::pair<int, int>, int> copies;
    for (const auto& e : events) ++copies[{e.u, e.v}];

    const double eps_prime = 3.0;  // keep probability 3 * 800 / 9 / 10000 = 0.0267
    const int trials = 500;
    std::map<std::pair<int, int>, long> batch_count, stream_count;
    for (int t = 0; t < trials; ++t) {
        const SparsifierWeights w =
                shifted_importance_pass(h, eps_prime, split_seed(3, "batch-trial", t));
        for (const auto& [i, wi] : w.entries)
            ++batch_count[{h.terms[i].tuple[0], h.terms[i].tuple[1]}];
        StreamSparsifier s(8, eps_prime, split_seed(1003, "stream-trial", t));
        for (const auto& e : events) s.insert(e.u, e.v, e.weight);
        for (const auto& e : s.finish().edges) ++stream_count[{e.u, e.v}];
    }
    // Every inserted copy is one Bernoulli inclusion; per-class totals over
    // trials x copies draws must agree between the two implementations.
    bool stream_ok = true;
    for (const auto& [edge, n_copies] : copies) {
        const double draws = static_cast<double>(trials) * n_copies;
        const double b = static_cast<double>(batch_count[edge]);
        const double s = static_cast<double>(stream_count[edge]);
        const double q = (b + s) / (2.0 * draws);
        const double sigma = std::sqrt(std::max(1e-12, 2.0 * draws * q * (1 - q)));
        if (std::abs(b - s) > 3.0 * sigma) stream_ok = false;
    }

    char buf[128];
    std::snprintf(buf, sizeof buf, "(optimum floor %s, transfer %d/20, stream-batch 3-sigma %s)",
                  floor_ok ? "yes" : "no", transfer_ok, stream_ok ? "yes" : "no");
    report(7, floor_ok && transfer_ok == 20 && stream_ok, buf);
}

// ---------------------------------------------------------------------------
// 8. Non-redundancy theory.
void criterion_nrd() {
    Matrix unary = Matrix::Zero(2, 2);
    unary(1, 1) = 1.0;
    const auto tensor = tensor_witness_instance({unary, unary}, {{1, 2, 3}, {4, 5, 6}}, 6);
    const bool tensor_ok = tensor.hamiltonian.size() == 9 &&
                           is_non_redundant(tensor.hamiltonian).verdict ==
                                   NrdVerdict::NonRedundant;

    const Matrix cut = maxcut_predicate();
    Hamiltonian cycle{4, {Term{{1, 3}, cut, 1.0}, Term{{1, 4}, cut, 1.0},
                          Term{{2, 4}, cut, 1.0}, Term{{2, 3}, cut, 1.0}}};
    const bool cycle_ok = bipartite_cycle_redundant_check(cycle, {0, 1, 2, 3});

    int swaps_ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Matrix m = sample_random_psd({3, 3, split_seed(seed, "swap-acc")});
        Hamiltonian pair{5, {Term{{1, 2, 3}, m, 1.0}, Term{{1, 4, 5}, m, 1.0}}};
        if (derived_automorphism_check(pair, PairMode::Generic).holds) ++swaps_ok;
    }

    bool doubling = true;
    int audited_steps = 0;
    for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
        const Matrix m = sample_random_psd({3, 3, split_seed(seed, "growth-acc")});
        const Hamiltonian inst = greedy_nonredundant_instance(m, 3, 8, seed);
        const GenericAuditResult audit = audit_automorphism_growth(inst);
        audited_steps += audit.swaps_derived;
        if (!audit.strictly_doubling) doubling = false;
    }

    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "(tensor 9 terms %s, 4-cycle redundant %s, block swaps %d/50, doubling %s over %d steps)",
                  tensor_ok ? "yes" : "no", cycle_ok ? "yes" : "no", swaps_ok,
                  doubling ? "yes" : "no", audited_steps);
    report(8, tensor_ok && cycle_ok && swaps_ok == 50 && doubling, buf);
}

// ---------------------------------------------------------------------------
// 9. Projection search.
void criterion_projection() {
    Relation r;
    r.arity = 3;
    r.members = {0b001, 0b101, 0b111};
    const Relation p1 =
            project_relation(r, {{Literal::Var, 1}, {Literal::Var, 2}, {Literal::One, 0}}, 2);
    const Relation p2 = project_relation(
            r, {{Literal::Var, 1}, {Literal::NegVar, 1}, {Literal::Var, 2}}, 2);
    const bool examples_ok = p1.members == std::vector<std::uint32_t>{0b00, 0b10, 0b11} &&
                             p2.members == std::vector<std::uint32_t>{0b11};

    // Empirical conjunction-projection rate for random relations of
    // cardinality 2^5 + 1 at arity 6.
    const int arity = 6;
    const int cardinality = 33;
    const int pool = std::max(0, static_cast<int>(std::ceil(std::log2(6.0) - 3.0)));
    int hits = 0;
    const int seeds = 500;
    Rng rng(split_seed(9, "projection-acceptance"));
    for (int trial = 0; trial < seeds; ++trial) {
        Relation rel;
        rel.arity = arity;
        std::vector<std::uint32_t> pool_tuples(1 << arity);
        for (std::uint32_t t = 0; t < (1u << arity); ++t) pool_tuples[t] = t;
        for (int k = 0; k < cardinality; ++k) {
            const int j = k + rng.index((1 << arity) - k);
            std::swap(pool_tuples[k], pool_tuples[j]);
        }
        rel.members.assign(pool_tuples.begin(), pool_tuples.begin() + cardinality);
        std::sort(rel.members.begin(), rel.members.end());
        if (find_and_projection(rel, pool).has_value()) ++hits;
    }
    const double rate = static_cast<double>(hits) / seeds;
    const double bound = 1.0 - std::pow(2.0, (arity + 1) / 2.0) * std::exp(-std::pow(2.0, arity / 2.0));

    char buf[128];
    std::snprintf(buf, sizeof buf, "(worked examples %s, hit rate %.4f >= %.4f at pool %d)",
                  examples_ok ? "exact" : "wrong", rate, bound, pool);
    report(9, examples_ok && rate >= bound, buf);
}

}  // namespace

int main() {
    criterion_pauli();
    criterion_classical();
    criterion_partition();
    criterion_genericity();
    criterion_generic();
    criterion_nullity1();
    criterion_maxcut();
    criterion_nrd();
    criterion_projection();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
