#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hamsparse {

// Affine-parity constraint: satisfied by x iff the parity of x over `vars`
// equals `parity`.
struct XorConstraint {
    std::vector<int> vars;  // nonempty subset of [1, n]
    int parity = 0;         // 0 or 1
    double weight = 0;
};

struct XorInstance {
    int n = 0;
    std::vector<XorConstraint> constraints;

    int size() const { return static_cast<int>(constraints.size()); }
    double total_weight() const {
        double s = 0;
        for (const auto& c : constraints) s += c.weight;
        return s;
    }
};

// Validates and drops zero-weight constraints; keeps the original order.
XorInstance normalize_xor(const XorInstance& inst);

// Bit of variable v (1-based) in assignment x.
inline int assignment_bit(std::uint64_t x, int v) { return static_cast<int>((x >> (v - 1)) & 1ULL); }

inline int constraint_satisfied(const XorConstraint& c, std::uint64_t x) {
    int parity = 0;
    for (int v : c.vars) parity ^= assignment_bit(x, v);
    return parity == c.parity ? 1 : 0;
}

// Weighted satisfied mass of assignment x.
double eval_xor(std::uint64_t x, const XorInstance& inst);

// F2 generator with two affine columns: column n+1 carries the parity
// complement of each constraint, column n+2 is all ones. The codeword at
// (x, 1, 0) lists the satisfaction bits of x; the codeword at (0, ..., 0, 1)
// is all ones, which pins the total weight.
struct GeneratorMatrix {
    int n = 0;                       // variable count; rows have n+2 columns
    std::vector<std::uint32_t> rows; // bit j-1 = column j

    int codeword_bit(int row, std::uint32_t extended_assignment) const;
};

GeneratorMatrix build_generator(const XorInstance& inst);

struct XorWeights {
    std::map<int, double> entries;  // constraint index -> positive weight

    int support() const { return static_cast<int>(entries.size()); }
    double total() const {
        double s = 0;
        for (const auto& [i, w] : entries) s += w;
        return s;
    }
    double at(int i) const {
        auto it = entries.find(i);
        return it == entries.end() ? 0.0 : it->second;
    }
};

// Exhaustive check over all 2^n assignments that the reweighted satisfied
// mass stays within [1-eps, 1+eps] of the original.
bool verify_xor(const XorInstance& inst, const XorWeights& w, double eps);

struct XorSparsifyResult {
    XorWeights weights;
    int attempts = 1;
    double importance_scale = 0;  // the sampling factor used on the last attempt
};

// Importance sampling with exact per-constraint importances (computed by
// enumeration), unbiased total weight, and exhaustive verification before
// returning. Reseeds on verification failure, doubling the sampling factor
// each retry; throws after `max_attempts` failures.
XorSparsifyResult sparsify_xor_unbiased(const XorInstance& inst, double eps, std::uint64_t seed,
                                        int max_attempts = 64);

}  // namespace hamsparse
