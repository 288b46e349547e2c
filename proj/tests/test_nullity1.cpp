#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "hamsparse/generate.hpp"
#include "hamsparse/generic.hpp"
#include "hamsparse/nullity1.hpp"
#include "hamsparse/rng.hpp"

using namespace hamsparse;

namespace {

Matrix diag4(double a, double b, double c, double d) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

Hamiltonian covering_nullity1(int n, int m, std::uint64_t seed) {
    // Chain tuples first so every qubit is covered, then random extras.
    Hamiltonian h{n, {}};
    for (int q = 1; q < n; ++q) {
        const Matrix pred = sample_random_psd({2, 3, split_seed(seed, "cover-pred", q)});
        h.terms.push_back(Term{{q, q + 1}, pred, 1.0});
    }
    Rng rng(split_seed(seed, "cover-extra"));
    while (h.size() < m) {
        const Matrix pred =
                sample_random_psd({2, 3, split_seed(seed, "extra-pred", h.size())});
        h.terms.push_back(Term{rng.distinct(n, 2), pred, 1.0});
    }
    return h;
}

}  // namespace

TEST_CASE("spanning forest basics") {
    const Matrix m = diag4(0, 1, 1, 1);
    Hamiltonian disjoint{6, {Term{{1, 2}, m, 1.0}, Term{{3, 4}, m, 1.0}, Term{{5, 6}, m, 1.0}}};
    CHECK(spanning_forest(disjoint) == std::vector<int>{0, 1, 2});

    Hamiltonian repeated{2, {}};
    for (int i = 0; i < 5; ++i) repeated.terms.push_back(Term{{1, 2}, m, 1.0});
    CHECK(spanning_forest(repeated) == std::vector<int>{0});
}

TEST_CASE("spanning forest covers every touched qubit with at most n terms") {
    InstanceSpec spec;
    spec.family = "nullity1";
    spec.n = 8;
    spec.m = 40;
    spec.r = 2;
    spec.seed = 5;
    const Hamiltonian h = generate_instance(spec);
    const std::vector<int> f = spanning_forest(h);
    CHECK(static_cast<int>(f.size()) <= h.n);
    std::set<int> covered;
    for (int i : f) covered.insert(h.terms[i].tuple.begin(), h.terms[i].tuple.end());
    for (const Term& t : h.terms)
        for (int q : t.tuple) CHECK(covered.count(q) == 1);
}

TEST_CASE("domination is a ground-space energy question") {
    const Matrix m = diag4(0, 1, 1, 1);
    Hamiltonian family{3, {Term{{1, 2}, m, 1.0}}};

    const DominationResult yes = dominates(Term{{1, 3}, m, 1.0}, family);
    CHECK(yes.dominates);
    REQUIRE(yes.witness.has_value());
    // The witness lives on {1,2,3}, zeroes the family, and feeds the candidate.
    const StateVector& w = *yes.witness;
    CHECK(predicate_energy(w, m, {1, 2}, 3) <= 1e-9);
    CHECK(predicate_energy(w, m, {1, 3}, 3) > 1e-9);

    // A duplicate of a family member never dominates.
    CHECK_FALSE(dominates(Term{{1, 2}, m, 1.0}, family).dominates);

    // Trivial ground space dominates nothing.
    Hamiltonian tight{2, {Term{{1, 2}, Matrix::Identity(4, 4), 1.0}}};
    CHECK_FALSE(dominates(Term{{1, 2}, m, 1.0}, tight).dominates);
}

TEST_CASE("forest-only instances need no boosters") {
    const Matrix m = diag4(0, 1, 1, 1);
    Hamiltonian h{4, {Term{{1, 2}, m, 1.0}, Term{{3, 4}, m, 1.0}}};
    const DominatingCover cover = extract_dominating_cover(h);
    CHECK(cover.forest == std::vector<int>{0, 1});
    CHECK(cover.boosters.empty());
}

TEST_CASE("a booster appears where a leftover term dominates the forest") {
    const Matrix ma = diag4(0, 1, 1, 1);  // kernel |00>
    const Matrix mb = diag4(1, 1, 1, 0);  // kernel |11>
    Hamiltonian h{4, {Term{{1, 2}, ma, 1.0}, Term{{3, 4}, ma, 1.0}, Term{{3, 4}, mb, 1.0}}};
    const DominatingCover cover = extract_dominating_cover(h);
    CHECK(cover.forest == std::vector<int>{0, 1});
    REQUIRE(cover.boosters.size() == 1);
    CHECK(cover.boosters.begin()->first == 3);
    CHECK(cover.boosters.begin()->second == 2);
    CHECK(cover.size() <= 2 * h.n);
}

TEST_CASE("boundedness constants on degenerate configurations") {
    const Matrix ma = diag4(0, 1, 1, 1);
    Hamiltonian all_cover{4, {Term{{1, 2}, ma, 1.0}, Term{{3, 4}, ma, 1.0}}};
    const DominatingCover cover = extract_dominating_cover(all_cover);
    const BoundednessEstimate vacuous = local_gap_constant(all_cover, cover);
    CHECK(vacuous.c == doctest::Approx(1.0));  // only the top eigenvalue contributes
    CHECK(vacuous.term_scalings.empty());

    Hamiltonian with_dup{4, {Term{{1, 2}, ma, 1.0}, Term{{3, 4}, ma, 1.0},
                             Term{{1, 2}, ma, 1.0}}};
    const DominatingCover cover2 = extract_dominating_cover(with_dup);
    const BoundednessEstimate est = local_gap_constant(with_dup, cover2);
    REQUIRE(est.term_scalings.count(2) == 1);
    CHECK(est.term_scalings.at(2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("domination lemma audit on random instances") {
    const Hamiltonian h = covering_nullity1(6, 30, 8);
    const DominatingCover cover = extract_dominating_cover(h);
    CHECK(cover.size() <= 2 * h.n);
    const BoundednessEstimate est = local_gap_constant(h, cover);

    Hamiltonian cover_h{h.n, {}};
    for (int i : cover.all) cover_h.terms.push_back(h.terms[i]);
    const Matrix cover_sum = assemble_unit(cover_h);
    const double c2 = est.c * est.c;
    std::set<int> in_cover(cover.all.begin(), cover.all.end());
    for (int i = 0; i < h.size(); ++i) {
        if (in_cover.count(i)) continue;
        const Matrix lifted = kron_lift(h.terms[i].predicate, h.terms[i].tuple, h.n);
        CHECK(loewner_leq(lifted, c2 * cover_sum));
    }
}

TEST_CASE("recursion keeps everything below the threshold") {
    const Hamiltonian h = covering_nullity1(6, 25, 3);
    Nullity1Trace trace;
    const SparsifierWeights w = nullity1_recursion(h, 0.5, 7, &trace);
    CHECK(trace.depth == 0);
    CHECK(w.support() == h.size());
    CHECK(verify_sparsifier(h, w, 0.5).pass);
}

TEST_CASE("duplicated instances trigger one recursion level and still verify") {
    const Matrix ma = diag4(0, 1, 1, 1);
    Hamiltonian h{6, {}};
    for (int i = 0; i < 800; ++i) h.terms.push_back(Term{{1, 2}, ma, 1.0});

    Nullity1Trace trace;
    const SparsifierWeights w = nullity1_recursion(h, 3.0, 11, &trace);
    CHECK(trace.depth == 1);
    CHECK(w.support() < h.size());
    // Unit covers plus weight-2 survivors of the half-rate sample.
    for (const auto& [i, wi] : w.entries) CHECK((wi == 1.0 || wi == 2.0));
    CHECK(verify_sparsifier(h, w, 0.4).pass);
}

TEST_CASE("wrapper routes by nullity and verifies at the target accuracy") {
    const Hamiltonian h = covering_nullity1(6, 30, 13);
    Nullity1Trace trace;
    const SparsifierWeights w = sparsify_nullity1(h, 0.4, 13, &trace);
    CHECK(verify_sparsifier(h, w, 0.4).pass);
    const int depth_cap = static_cast<int>(std::ceil(20.0 * 2 * std::log2(6)));
    CHECK(trace.depth <= depth_cap);

    // Identity weights at desk scale: the base threshold dwarfs the size.
    CHECK(w.support() == h.size());
}

TEST_CASE("full-rank terms ride the uniform sampler") {
    InstanceSpec spec;
    spec.family = "fullrank";
    spec.n = 6;
    spec.m = 20;
    spec.r = 2;
    spec.seed = 10;
    const Hamiltonian h = generate_instance(spec);
    const SparsifierWeights w = sparsify_nullity1(h, 0.4, 10);
    CHECK(verify_sparsifier(h, w, 0.4).pass);
}

TEST_CASE("mixed nullity instances are split and reunited") {
    Hamiltonian h = covering_nullity1(6, 10, 17);
    InstanceSpec spec;
    spec.family = "fullrank";
    spec.n = 6;
    spec.m = 5;
    spec.r = 2;
    spec.seed = 18;
    for (const Term& t : generate_instance(spec).terms) h.terms.push_back(t);
    const SparsifierWeights w = sparsify_nullity1(h, 0.4, 19);
    CHECK(verify_sparsifier(h, w, 0.4).pass);

    Matrix too_null = Matrix::Zero(4, 4);
    too_null(0, 0) = 1.0;
    Hamiltonian bad{4, {Term{{1, 2}, too_null, 1.0}}};
    CHECK_THROWS(sparsify_nullity1(bad, 0.4, 0));
}

TEST_CASE("uniform full-rank sampling") {
    Matrix id2 = Matrix::Identity(2, 2);

    Hamiltonian small{6, {}};
    for (int i = 0; i < 200; ++i) small.terms.push_back(Term{{1 + i % 6}, id2, 1.0});
    const SparsifierWeights keep_all = sparsify_fullrank(small, 0.3, 1);
    CHECK(keep_all.support() == 200);
    CHECK(verify_sparsifier(small, keep_all, 0.3).pass);

    Hamiltonian large{6, {}};
    for (int i = 0; i < 8000; ++i) large.terms.push_back(Term{{1 + i % 6}, id2, 1.0});
    const SparsifierWeights sampled = sparsify_fullrank(large, 0.3, 2);
    CHECK(sampled.support() < 8000);
    CHECK(verify_sparsifier(large, sampled, 0.3).pass);

    const Matrix rank_deficient = diag4(0, 1, 1, 1);
    Hamiltonian bad{4, {Term{{1, 2}, rank_deficient, 1.0}}};
    CHECK_THROWS(sparsify_fullrank(bad, 0.3, 0));
}

TEST_CASE("ground dimension audit") {
    const Matrix ma = diag4(0, 1, 1, 1);
    Hamiltonian chain{4, {Term{{1, 2}, ma, 1.0}, Term{{2, 3}, ma, 1.0}, Term{{3, 4}, ma, 1.0}}};
    CHECK(ground_dim_audit(chain) == 1);

    for (std::uint64_t seed = 0; seed < 10; ++seed)
        CHECK(ground_dim_audit(covering_nullity1(6, 12, seed)) <= 1);

    Hamiltonian partial{4, {Term{{1, 2}, ma, 1.0}}};
    CHECK_THROWS(ground_dim_audit(partial));
}
