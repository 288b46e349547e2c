#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamsparse/generate.hpp"
#include "hamsparse/partition.hpp"
#include "hamsparse/pauli.hpp"
#include "hamsparse/qmaxcsp.hpp"
#include "hamsparse/rng.hpp"

using namespace hamsparse;

namespace {

PauliString zz(int sign) { return PauliString{{PauliAxis::Z, PauliAxis::Z}, sign}; }

}  // namespace

TEST_CASE("string predicates have the {0, 2} spectrum") {
    const Matrix pzz = pauli_matrix(zz(1));
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 2;
    CHECK((pzz - expect).norm() < 1e-12);

    const Matrix mz = pauli_matrix(PauliString{{PauliAxis::Z}, -1});
    CHECK(mz(0, 0).real() == doctest::Approx(0));
    CHECK(mz(1, 1).real() == doctest::Approx(2));

    const Matrix xy = pauli_matrix(PauliString{{PauliAxis::X, PauliAxis::Y}, 1});
    const Eigen::VectorXd ev = hermitian_eigenvalues(xy);
    CHECK(ev(0) == doctest::Approx(0));
    CHECK(ev(1) == doctest::Approx(0));
    CHECK(ev(2) == doctest::Approx(2));
    CHECK(ev(3) == doctest::Approx(2));
}

TEST_CASE("spectrum property over random strings") {
    Rng rng(split_seed(2, "pauli-spectrum"));
    for (int trial = 0; trial < 10; ++trial) {
        const int r = 1 + rng.index(3);
        PauliString s;
        s.sign = rng.coin(0.5) ? 1 : -1;
        for (int k = 0; k < r; ++k) s.factors.push_back(static_cast<PauliAxis>(rng.index(3)));
        const Eigen::VectorXd ev = hermitian_eigenvalues(pauli_matrix(s));
        const int half = 1 << (r - 1);
        for (int i = 0; i < half; ++i) CHECK(ev(i) == doctest::Approx(0));
        for (int i = half; i < 2 * half; ++i) CHECK(ev(i) == doctest::Approx(2));
    }
}

TEST_CASE("recognition inverts construction") {
    Rng rng(split_seed(6, "recognize"));
    for (int trial = 0; trial < 20; ++trial) {
        PauliString s;
        s.sign = rng.coin(0.5) ? 1 : -1;
        const int r = 1 + rng.index(3);
        for (int k = 0; k < r; ++k) s.factors.push_back(static_cast<PauliAxis>(rng.index(3)));
        const auto back = recognize_pauli_predicate(pauli_matrix(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK_FALSE(recognize_pauli_predicate(Matrix::Identity(4, 4)).has_value());
    CHECK_FALSE(recognize_pauli_predicate(maxcut_predicate()).has_value());
}

TEST_CASE("grouping partitions the instance by string type") {
    Hamiltonian all_same{4, {}};
    for (int i = 0; i < 3; ++i)
        all_same.terms.push_back(Term{{i + 1, i + 2}, pauli_matrix(zz(1)), 1.0});
    CHECK(group_terms(all_same).size() == 1);

    Hamiltonian mixed{4, {}};
    mixed.terms.push_back(Term{{1, 2}, pauli_matrix(zz(1)), 1.0});
    mixed.terms.push_back(Term{{2, 3}, pauli_matrix(zz(-1)), 1.0});
    CHECK(group_terms(mixed).size() == 2);

    // Five known string types, forty terms, sizes must add back up.
    const std::vector<PauliString> types{
            zz(1), zz(-1), PauliString{{PauliAxis::X, PauliAxis::Y}, 1},
            PauliString{{PauliAxis::Y, PauliAxis::Z}, -1}, PauliString{{PauliAxis::X, PauliAxis::X}, 1}};
    Rng rng(split_seed(3, "five-types"));
    Hamiltonian h{8, {}};
    std::vector<int> expected_sizes(5, 0);
    for (int i = 0; i < 40; ++i) {
        const int k = rng.index(5);
        ++expected_sizes[k];
        h.terms.push_back(Term{rng.distinct(8, 2), pauli_matrix(types[k]), 1.0});
    }
    const auto classes = group_terms(h);
    CHECK(classes.size() == 5);
    int total = 0;
    for (const auto& cls : classes) total += static_cast<int>(cls.members.size());
    CHECK(total == 40);

    Hamiltonian bad{2, {Term{{1, 2}, maxcut_predicate(), 1.0}}};
    CHECK_THROWS_WITH_AS(group_terms(bad),
                         "term 0 is not a Pauli-plus-identity predicate", std::invalid_argument);
}

TEST_CASE("reduction emits one parity constraint per term") {
    Hamiltonian h{2, {Term{{1, 2}, pauli_matrix(zz(1)), 1.0}}};
    std::vector<int> labels{0, 1, 2};  // qubit 1 -> part 1, qubit 2 -> part 2
    const XorInstance inst = reduce_to_xor(h, {0}, zz(1), labels);
    REQUIRE(inst.size() == 1);
    CHECK(inst.constraints[0].vars == std::vector<int>{1, 2});
    CHECK(inst.constraints[0].parity == 0);
    CHECK(inst.constraints[0].weight == doctest::Approx(2.0));

    Hamiltonian hneg{2, {Term{{1, 2}, pauli_matrix(zz(-1)), 1.0}}};
    CHECK(reduce_to_xor(hneg, {0}, zz(-1), labels).constraints[0].parity == 1);

    std::vector<int> misaligned{0, 2, 1};
    CHECK_THROWS(reduce_to_xor(h, {0}, zz(1), misaligned));
}

TEST_CASE("energies on the partite eigenbasis match the parity instance exactly") {
    Rng rng(split_seed(8, "eigenbasis"));
    for (const PauliString& s :
         {zz(1), PauliString{{PauliAxis::X, PauliAxis::Y}, -1},
          PauliString{{PauliAxis::Y, PauliAxis::X}, 1}}) {
        const int n = 5;
        Hamiltonian h{n, {}};
        for (int i = 0; i < 8; ++i) {
            // Partite tuples: slot 1 from {1,2,3}, slot 2 from {4,5}.
            const int a = 1 + rng.index(3);
            const int b = 4 + rng.index(2);
            h.terms.push_back(Term{{a, b}, pauli_matrix(s), rng.uniform(0.5, 1.5)});
        }
        std::vector<int> labels{0, 1, 1, 1, 2, 2};
        std::vector<int> members(h.size());
        for (int i = 0; i < h.size(); ++i) members[i] = i;
        const XorInstance inst = reduce_to_xor(h, members, s, labels);

        for (std::uint64_t tau = 0; tau < (1ULL << n); ++tau) {
            const StateVector basis = partite_basis_vector(n, labels, s, tau);
            double total = 0;
            for (const Term& t : h.terms) total += energy(basis, t, n);
            CHECK(total == doctest::Approx(eval_xor(tau, inst)).epsilon(1e-10));
        }
    }
}

TEST_CASE("eigenbasis correspondence at eight qubits") {
    const PauliString s{{PauliAxis::Y, PauliAxis::Z}, -1};
    Rng rng(split_seed(12, "eigenbasis-8"));
    const int n = 8;
    Hamiltonian h{n, {}};
    for (int i = 0; i < 10; ++i) {
        const int a = 1 + rng.index(4);       // part 1 = {1..4}
        const int b = 5 + rng.index(4);       // part 2 = {5..8}
        h.terms.push_back(Term{{a, b}, pauli_matrix(s), rng.uniform(0.5, 2.0)});
    }
    std::vector<int> labels(n + 1, 1);
    for (int q = 5; q <= n; ++q) labels[q] = 2;
    std::vector<int> members(h.size());
    for (int i = 0; i < h.size(); ++i) members[i] = i;
    const XorInstance inst = reduce_to_xor(h, members, s, labels);
    for (std::uint64_t tau = 0; tau < (1ULL << n); ++tau) {
        const StateVector basis = partite_basis_vector(n, labels, s, tau);
        double total = 0;
        for (const Term& t : h.terms) total += energy(basis, t, n);
        REQUIRE(total == doctest::Approx(eval_xor(tau, inst)).epsilon(1e-10));
    }
}

TEST_CASE("terms of one class sharing a qubit commute inside a partite piece") {
    const PauliString s{{PauliAxis::X, PauliAxis::Y}, 1};
    const Matrix m = pauli_matrix(s);
    const Matrix a = kron_lift(m, {1, 3}, 3);
    const Matrix b = kron_lift(m, {2, 3}, 3);
    CHECK((a * b - b * a).norm() < 1e-10);
}

TEST_CASE("single-term pipelines return identity weights") {
    Hamiltonian h{3, {Term{{1, 3}, pauli_matrix(zz(-1)), 1.5}}};
    const SparsifierWeights w = sparsify_pauli(h, 0.3, 11);
    REQUIRE(w.support() == 1);
    CHECK(w.at(0) == doctest::Approx(1.5));
}

TEST_CASE("diagonal string instances pass both dense and classical verification") {
    Rng rng(split_seed(1, "zz-instance"));
    Hamiltonian h{8, {}};
    for (int i = 0; i < 60; ++i)
        h.terms.push_back(Term{rng.distinct(8, 2), pauli_matrix(zz(rng.coin(0.5) ? 1 : -1)), 1.0});
    const double eps = 0.25;
    const SparsifierWeights w = sparsify_pauli(h, eps, 1);
    CHECK(verify_sparsifier(h, w, eps).pass);
    CHECK(w.total() == doctest::Approx(60.0).epsilon(1e-9));

    // The 0/2-valued diagonals become 0/1 relations after halving; doubling
    // all weights keeps every energy, so the classical route applies.
    Hamiltonian classical = h;
    SparsifierWeights doubled;
    for (int i = 0; i < h.size(); ++i) {
        classical.terms[i].predicate = 0.5 * h.terms[i].predicate;
        classical.terms[i].weight = 2.0 * h.terms[i].weight;
        if (w.at(i) > 0) doubled.entries[i] = 2.0 * w.at(i);
    }
    CHECK(classical_crosscheck(classical, doubled, eps));
}

TEST_CASE("mixed-basis instances pass dense verification") {
    InstanceSpec spec;
    spec.family = "pauli";
    spec.n = 8;
    spec.m = 60;
    spec.r = 2;
    spec.seed = 2;
    const Hamiltonian h = generate_instance(spec);
    const double eps = 0.25;
    const SparsifierWeights w = sparsify_pauli(h, eps, 2);
    CHECK(verify_sparsifier(h, w, eps).pass);
    CHECK(w.total() == doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("duplicate tuples are merged onto one representative") {
    Hamiltonian h{4, {}};
    for (int i = 0; i < 6; ++i) h.terms.push_back(Term{{1, 2}, pauli_matrix(zz(1)), 1.0});
    PauliSparsifyStats stats;
    const SparsifierWeights w = sparsify_pauli(h, 0.3, 5, &stats);
    CHECK(stats.merged_duplicates == 5);
    CHECK(w.support() == 1);
    CHECK(w.at(0) == doctest::Approx(6.0));
    CHECK(verify_sparsifier(h, w, 0.3).pass);
}

TEST_CASE("decompositions ride on a single parity sparsification") {
    // One component: identical to the plain pipeline.
    Rng rng(split_seed(14, "decomp"));
    std::vector<std::vector<int>> tuples;
    std::vector<double> weights;
    for (int i = 0; i < 20; ++i) {
        tuples.push_back(rng.distinct(6, 2));
        weights.push_back(1.0);
    }
    const Matrix mzz = pauli_matrix(zz(1));
    const SparsifierWeights lhs =
            sparsify_decomposition(mzz, {1.0}, {zz(1)}, tuples, weights, 6, 0.3, 9);
    Hamiltonian plain{6, {}};
    for (std::size_t i = 0; i < tuples.size(); ++i)
        plain.terms.push_back(Term{tuples[i], mzz, weights[i]});
    const SparsifierWeights rhs = sparsify_pauli(plain, 0.3, 9);
    REQUIRE(lhs.entries.size() == rhs.entries.size());
    for (const auto& [i, wi] : lhs.entries) CHECK(wi == doctest::Approx(rhs.at(i)));

    // Scalar covariance: the decomposition weights are the inner component
    // run's weights divided by the leading coefficient, and the total is
    // still the original weight mass.
    const SparsifierWeights scaled =
            sparsify_decomposition(2.0 * mzz, {2.0}, {zz(1)}, tuples, weights, 6, 0.3, 9);
    Hamiltonian inner{6, {}};
    for (std::size_t i = 0; i < tuples.size(); ++i)
        inner.terms.push_back(Term{tuples[i], mzz, 2.0 * weights[i]});
    const SparsifierWeights inner_w = sparsify_pauli(inner, 0.3, 9);
    REQUIRE(scaled.entries.size() == inner_w.entries.size());
    for (const auto& [i, wi] : scaled.entries) CHECK(wi == doctest::Approx(0.5 * inner_w.at(i)));
    CHECK(scaled.total() == doctest::Approx(20.0).epsilon(1e-9));
    Hamiltonian scaled_h{6, {}};
    for (std::size_t i = 0; i < tuples.size(); ++i)
        scaled_h.terms.push_back(Term{tuples[i], 2.0 * mzz, weights[i]});
    CHECK(verify_sparsifier(scaled_h, scaled, 0.3).pass);
}

TEST_CASE("the shifted cut predicate decomposes into same-sign strings") {
    const Matrix shifted = maxcut_predicate() + Matrix::Identity(4, 4);
    const std::vector<PauliString> strings{
            PauliString{{PauliAxis::X, PauliAxis::X}, -1},
            PauliString{{PauliAxis::Y, PauliAxis::Y}, -1},
            PauliString{{PauliAxis::Z, PauliAxis::Z}, -1}};
    const std::vector<double> coeff{0.5, 0.5, 0.5};

    Rng rng(split_seed(77, "maxcut-decomp"));
    std::vector<std::vector<int>> tuples;
    std::vector<double> weights;
    for (int i = 0; i < 40; ++i) {
        tuples.push_back(rng.distinct(8, 2));
        weights.push_back(1.0);
    }
    const SparsifierWeights w =
            sparsify_decomposition(shifted, coeff, strings, tuples, weights, 8, 0.3, 4);
    Hamiltonian full{8, {}};
    for (std::size_t i = 0; i < tuples.size(); ++i)
        full.terms.push_back(Term{tuples[i], shifted, weights[i]});
    CHECK(verify_sparsifier(full, w, 0.3).pass);
    CHECK(w.total() == doctest::Approx(40.0).epsilon(1e-9));
}

TEST_CASE("mixed-sign decompositions are rejected") {
    const Matrix m = pauli_matrix(zz(1)) + pauli_matrix(zz(-1));  // = 2 Id
    CHECK_THROWS(sparsify_decomposition(m, {1.0, 1.0}, {zz(1), zz(-1)}, {{1, 2}}, {1.0}, 2, 0.3, 0));
}

TEST_CASE("decomposition residual is enforced") {
    const Matrix wrong = pauli_matrix(zz(1)) + 0.01 * Matrix::Identity(4, 4);
    CHECK_THROWS(sparsify_decomposition(wrong, {1.0}, {zz(1)}, {{1, 2}}, {1.0}, 2, 0.3, 0));
}
