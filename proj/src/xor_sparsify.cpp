#include "hamsparse/xor_sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hamsparse/rng.hpp"

namespace hamsparse {

static void validate_xor(const XorInstance& inst) {
    if (inst.n < 1 || inst.n > 20)
        throw std::invalid_argument("variable count must lie in [1, 20] for enumeration");
    for (const auto& c : inst.constraints) {
        if (c.vars.empty()) throw std::invalid_argument("constraint has empty variable set");
        if (c.parity != 0 && c.parity != 1) throw std::invalid_argument("parity must be 0 or 1");
        if (c.weight < 0) throw std::invalid_argument("negative constraint weight");
        for (int v : c.vars)
            if (v < 1 || v > inst.n) throw std::invalid_argument("constraint variable out of range");
    }
}

XorInstance normalize_xor(const XorInstance& inst) {
    validate_xor(inst);
    XorInstance out;
    out.n = inst.n;
    for (const auto& c : inst.constraints)
        if (c.weight > 0) out.constraints.push_back(c);
    return out;
}

double eval_xor(std::uint64_t x, const XorInstance& inst) {
    double mass = 0;
    for (const auto& c : inst.constraints)
        if (constraint_satisfied(c, x)) mass += c.weight;
    return mass;
}

int GeneratorMatrix::codeword_bit(int row, std::uint32_t extended_assignment) const {
    return __builtin_popcount(rows[row] & extended_assignment) & 1;
}

GeneratorMatrix build_generator(const XorInstance& inst) {
    validate_xor(inst);
    GeneratorMatrix g;
    g.n = inst.n;
    g.rows.reserve(inst.constraints.size());
    for (const auto& c : inst.constraints) {
        std::uint32_t row = 0;
        for (int v : c.vars) row |= 1u << (v - 1);
        row |= static_cast<std::uint32_t>(c.parity ^ 1) << inst.n;  // column n+1
        row |= 1u << (inst.n + 1);                                  // column n+2
        g.rows.push_back(row);
    }
    return g;
}

bool verify_xor(const XorInstance& inst, const XorWeights& w, double eps) {
    validate_xor(inst);
    const double tol = 1e-9;
    for (std::uint64_t x = 0; x < (1ULL << inst.n); ++x) {
        double orig = 0, sparse = 0;
        for (int i = 0; i < inst.size(); ++i) {
            if (!constraint_satisfied(inst.constraints[i], x)) continue;
            orig += inst.constraints[i].weight;
            sparse += w.at(i);
        }
        const double scale = std::max(1.0, orig);
        if (sparse < (1 - eps) * orig - tol * scale) return false;
        if (sparse > (1 + eps) * orig + tol * scale) return false;
    }
    return true;
}

// Exact importance of constraint i: the largest fraction of the total
// satisfied mass it accounts for, over all assignments with positive mass.
static std::vector<double> exact_importances(const XorInstance& inst) {
    const int m = inst.size();
    std::vector<double> p(m, 0.0);
    std::vector<char> sat(m);
    for (std::uint64_t x = 0; x < (1ULL << inst.n); ++x) {
        double total = 0;
        for (int i = 0; i < m; ++i) {
            sat[i] = static_cast<char>(constraint_satisfied(inst.constraints[i], x));
            if (sat[i]) total += inst.constraints[i].weight;
        }
        if (total <= 0) continue;
        for (int i = 0; i < m; ++i)
            if (sat[i]) p[i] = std::max(p[i], inst.constraints[i].weight / total);
    }
    return p;
}

XorSparsifyResult sparsify_xor_unbiased(const XorInstance& inst, double eps, std::uint64_t seed,
                                        int max_attempts) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    validate_xor(inst);

    // Zero-weight constraints are dropped here; `live` maps positions in the
    // working set back to the caller's indices.
    std::vector<int> live;
    for (int i = 0; i < inst.size(); ++i)
        if (inst.constraints[i].weight > 0) live.push_back(i);

    XorSparsifyResult result;
    if (live.empty()) return result;

    const std::vector<double> importance = exact_importances(inst);
    const double total = inst.total_weight();
    const double base_factor = 8.0 * (inst.n + 2) * std::log(2.0) / (eps * eps);

    double boost = 1.0;
    for (int attempt = 1; attempt <= max_attempts; ++attempt, boost *= 2.0) {
        result.attempts = attempt;
        result.importance_scale = base_factor * boost;

        std::vector<double> keep_prob(live.size());
        bool all_kept = true;
        for (std::size_t k = 0; k < live.size(); ++k) {
            keep_prob[k] = std::min(1.0, importance[live[k]] * result.importance_scale);
            all_kept = all_kept && keep_prob[k] >= 1.0;
        }

        XorWeights w;
        if (all_kept) {
            // Below the sampling threshold the instance passes through
            // unchanged; no rescaling noise is introduced.
            for (int i : live) w.entries[i] = inst.constraints[i].weight;
            result.weights = w;
            return result;
        }

        Rng rng(split_seed(seed, "xor-sample", static_cast<std::uint64_t>(attempt)));
        for (std::size_t k = 0; k < live.size(); ++k) {
            if (keep_prob[k] >= 1.0 || rng.coin(keep_prob[k]))
                w.entries[live[k]] = inst.constraints[live[k]].weight / keep_prob[k];
        }
        const double sampled_total = w.total();
        if (sampled_total <= 0) continue;
        const double rescale = total / sampled_total;
        for (auto& [i, wi] : w.entries) wi *= rescale;

        if (verify_xor(inst, w, eps)) {
            result.weights = std::move(w);
            return result;
        }
    }
    throw std::runtime_error("parity sparsifier failed verification after " +
                             std::to_string(max_attempts) + " reseeds");
}

}  // namespace hamsparse
