// Runs with a lowered dense cap so the sampled verification fallback and the
// capacity errors fire at a testable size.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>

#include "hamsparse/generate.hpp"
#include "hamsparse/hamiltonian.hpp"

using namespace hamsparse;

int main(int argc, char** argv) {
    setenv("HAMSPARSE_DENSE_CAP", "4", 1);
    return doctest::Context(argc, argv).run();
}

TEST_CASE("the cap override is picked up") { CHECK(dense_cap() == 4); }

TEST_CASE("above the cap, verification falls back to sampling and says so") {
    InstanceSpec spec;
    spec.family = "generic";
    spec.n = 6;
    spec.m = 12;
    spec.r = 2;
    spec.rank = 3;
    spec.seed = 2;
    const Hamiltonian h = generate_instance(spec);

    const SparsifierReport good = verify_sparsifier(h, identity_weights(h), 0.3);
    CHECK(good.mode == "sampled");
    CHECK(good.pass);

    SparsifierWeights broken = identity_weights(h);
    broken.entries[0] = 25.0;
    const SparsifierReport bad = verify_sparsifier(h, broken, 0.3);
    CHECK(bad.mode == "sampled");
    CHECK_FALSE(bad.pass);
}

TEST_CASE("assembly above the cap raises a capacity error") {
    InstanceSpec spec;
    spec.family = "generic";
    spec.n = 6;
    spec.m = 4;
    spec.r = 2;
    spec.rank = 3;
    spec.seed = 3;
    const Hamiltonian h = generate_instance(spec);
    CHECK_THROWS_AS(assemble(h), CapacityError);
    CHECK_THROWS_AS(ground_space(h), CapacityError);
}
