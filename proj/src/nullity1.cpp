#include "hamsparse/nullity1.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <limits>
#include <string>

#include "hamsparse/rng.hpp"

namespace hamsparse {

int predicate_nullity(const Matrix& m) { return static_cast<int>(kernel_basis(m).cols()); }

std::vector<int> spanning_forest(const Hamiltonian& h) {
    validate_hamiltonian(h);
    std::vector<bool> covered(h.n + 1, false);
    std::vector<int> forest;
    for (int i = 0; i < h.size(); ++i) {
        bool fresh = false;
        for (int q : h.terms[i].tuple) fresh = fresh || !covered[q];
        if (!fresh) continue;
        forest.push_back(i);
        for (int q : h.terms[i].tuple) covered[q] = true;
    }
    return forest;
}

static std::vector<int> qubit_support(const Hamiltonian& h) {
    std::set<int> s;
    for (const Term& t : h.terms) s.insert(t.tuple.begin(), t.tuple.end());
    return {s.begin(), s.end()};
}

static std::vector<int> positions_in(const std::vector<int>& tuple,
                                     const std::vector<int>& sorted_qubits) {
    std::vector<int> out;
    out.reserve(tuple.size());
    for (int q : tuple) {
        const auto it = std::lower_bound(sorted_qubits.begin(), sorted_qubits.end(), q);
        out.push_back(static_cast<int>(it - sorted_qubits.begin()) + 1);
    }
    return out;
}

DominationResult dominates(const Term& candidate, const Hamiltonian& family) {
    std::set<int> support(candidate.tuple.begin(), candidate.tuple.end());
    for (const Term& t : family.terms) support.insert(t.tuple.begin(), t.tuple.end());
    const std::vector<int> qubits(support.begin(), support.end());
    const int nv = static_cast<int>(qubits.size());
    if (nv > dense_cap())
        throw CapacityError("domination test over " + std::to_string(nv) +
                            " qubits exceeds the dense cap");

    Matrix family_sum = Matrix::Zero(1LL << nv, 1LL << nv);
    for (const Term& t : family.terms)
        accumulate_lift(family_sum, t.predicate, positions_in(t.tuple, qubits), nv, 1.0);
    const Matrix kernel = kernel_basis(family_sum);

    DominationResult res;
    if (kernel.cols() == 0) return res;  // trivial ground space dominates nothing

    Matrix lifted = Matrix::Zero(1LL << nv, 1LL << nv);
    accumulate_lift(lifted, candidate.predicate, positions_in(candidate.tuple, qubits), nv, 1.0);

    double best = 0;
    Eigen::Index best_col = -1;
    double trace = 0;
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
        const double e = std::real(kernel.col(c).dot(lifted * kernel.col(c)));
        trace += e;
        if (e > best) {
            best = e;
            best_col = c;
        }
    }
    if (trace > 1e-9) {
        res.dominates = true;
        res.witness = StateVector{nv, kernel.col(best_col)};
    }
    return res;
}

// Incremental domination tests against a growing family: the family ground
// space is recomputed only when the family changes, and each candidate is
// charged the ground space of the family tensored with the free qubits it
// brings in (the family acts as identity there, so the restriction is exact).
class DominationScanner {
public:
    explicit DominationScanner(int n) : n_(n) { family_.n = n; }

    void add(const Term& t) {
        family_.terms.push_back(t);
        dirty_ = true;
    }

    bool test(const Term& candidate) {
        refresh();
        if (family_.terms.empty()) {
            return lambda_max(candidate.predicate) > 1e-9;  // everything dominates nothing
        }
        if (kernel_.cols() == 0) return false;

        std::vector<int> extra;
        for (int q : candidate.tuple)
            if (!std::binary_search(qubits_.begin(), qubits_.end(), q)) extra.push_back(q);
        std::sort(extra.begin(), extra.end());

        std::vector<int> vprime = qubits_;
        vprime.insert(vprime.end(), extra.begin(), extra.end());
        std::sort(vprime.begin(), vprime.end());
        const int nv = static_cast<int>(vprime.size());
        if (nv > dense_cap())
            throw CapacityError("domination test exceeds the dense cap");
        const std::vector<int> cand_pos = positions_in(candidate.tuple, vprime);
        const std::vector<int> fam_pos = positions_in(qubits_, vprime);
        const std::vector<int> extra_pos = positions_in(extra, vprime);

        double trace = 0;
        StateVector psi{nv, Vector::Zero(1LL << nv)};
        for (Eigen::Index c = 0; c < kernel_.cols(); ++c) {
            for (std::uint64_t b = 0; b < (1ULL << extra.size()); ++b) {
                psi.amplitudes.setZero();
                std::uint64_t base = 0;
                for (std::size_t k = 0; k < extra.size(); ++k) {
                    const std::uint64_t bit = (b >> (extra.size() - 1 - k)) & 1ULL;
                    base |= bit << (nv - extra_pos[k]);
                }
                for (std::uint64_t y = 0; y < (1ULL << qubits_.size()); ++y) {
                    std::uint64_t idx = base;
                    for (std::size_t k = 0; k < qubits_.size(); ++k) {
                        const std::uint64_t bit = (y >> (qubits_.size() - 1 - k)) & 1ULL;
                        idx |= bit << (nv - fam_pos[k]);
                    }
                    psi.amplitudes(static_cast<Eigen::Index>(idx)) =
                            kernel_(static_cast<Eigen::Index>(y), c);
                }
                trace += predicate_energy(psi, candidate.predicate, cand_pos, nv);
                if (trace > 1e-9) return true;
            }
        }
        return false;
    }

    bool exhausted() {
        refresh();
        return !family_.terms.empty() && kernel_.cols() == 0;
    }

private:
    void refresh() {
        if (!dirty_) return;
        dirty_ = false;
        qubits_ = qubit_support(family_);
        if (family_.terms.empty()) return;
        const int nv = static_cast<int>(qubits_.size());
        Matrix sum = Matrix::Zero(1LL << nv, 1LL << nv);
        for (const Term& t : family_.terms)
            accumulate_lift(sum, t.predicate, positions_in(t.tuple, qubits_), nv, 1.0);
        kernel_ = kernel_basis(sum);
    }

    int n_;
    Hamiltonian family_;
    std::vector<int> qubits_;
    Matrix kernel_;
    bool dirty_ = true;
};

DominatingCover extract_dominating_cover(const Hamiltonian& h) {
    DominatingCover cover;
    cover.forest = spanning_forest(h);

    std::set<int> selected(cover.forest.begin(), cover.forest.end());
    DominationScanner scanner(h.n);
    for (int i : cover.forest) scanner.add(h.terms[i]);

    for (int v : qubit_support(h)) {
        if (scanner.exhausted()) break;  // trivial ground space dominates nothing
        int chosen = -1;
        for (int i = 0; i < h.size() && chosen < 0; ++i) {
            if (selected.count(i)) continue;
            const Term& t = h.terms[i];
            if (std::find(t.tuple.begin(), t.tuple.end(), v) == t.tuple.end()) continue;
            if (scanner.test(t)) chosen = i;
        }
        if (chosen >= 0) {
            cover.boosters[v] = chosen;
            selected.insert(chosen);
            scanner.add(h.terms[chosen]);
        }
    }
    cover.all.assign(selected.begin(), selected.end());
    return cover;
}

// Minimal s with M <= s * A, both PSD on the same space, provided
// ker(A) is contained in ker(M): the top eigenvalue of the whitened operator
// A^{+1/2} M A^{+1/2}. Returns nothing when the containment fails.
static std::optional<double> loewner_scaling(const Matrix& m, const Matrix& a) {
    const EigenDecomposition d = hermitian_eig(a);
    const double top = d.eigenvalues(d.eigenvalues.size() - 1);
    const double cutoff = kKernelTol * std::max(1.0, top);
    Eigen::VectorXd inv_sqrt(d.eigenvalues.size());
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
        if (d.eigenvalues(i) < cutoff) {
            const double leak = std::real(
                    d.eigenvectors.col(i).dot(m * d.eigenvectors.col(i)));
            if (leak > 1e-9) return std::nullopt;
            inv_sqrt(i) = 0;
        } else {
            inv_sqrt(i) = 1.0 / std::sqrt(d.eigenvalues(i));
        }
    }
    const Matrix w = d.eigenvectors * inv_sqrt.asDiagonal() * d.eigenvectors.adjoint();
    return std::max(0.0, lambda_max(w * m * w));
}

static std::optional<double> scaling_against(const Hamiltonian& h, const Term& t,
                                             const std::set<int>& members) {
    std::set<int> support(t.tuple.begin(), t.tuple.end());
    for (int j : members) support.insert(h.terms[j].tuple.begin(), h.terms[j].tuple.end());
    const std::vector<int> qubits(support.begin(), support.end());
    const int nv = static_cast<int>(qubits.size());
    if (nv > dense_cap()) throw CapacityError("Loewner scaling exceeds the dense cap");

    Matrix cover_sum = Matrix::Zero(1LL << nv, 1LL << nv);
    for (int j : members)
        accumulate_lift(cover_sum, h.terms[j].predicate, positions_in(h.terms[j].tuple, qubits),
                        nv, 1.0);
    Matrix lifted = Matrix::Zero(1LL << nv, 1LL << nv);
    accumulate_lift(lifted, t.predicate, positions_in(t.tuple, qubits), nv, 1.0);
    return loewner_scaling(lifted, cover_sum);
}

BoundednessEstimate local_gap_constant(const Hamiltonian& h, const DominatingCover& cover) {
    BoundednessEstimate est;
    for (const Term& t : h.terms) est.c = std::max(est.c, lambda_max(t.predicate));

    const std::set<int> full_cover(cover.all.begin(), cover.all.end());
    double max_scaling = 0;
    for (int i = 0; i < h.size(); ++i) {
        if (full_cover.count(i)) continue;
        const Term& t = h.terms[i];

        // Fast path: one forest term per qubit of the tuple, plus the
        // boosters at those qubits. Its kernel can exceed the full cover's,
        // in which case the whole cover settles the question.
        std::set<int> local;
        for (int q : t.tuple) {
            for (int f : cover.forest) {
                const auto& ft = h.terms[f].tuple;
                if (std::find(ft.begin(), ft.end(), q) != ft.end()) {
                    local.insert(f);
                    break;
                }
            }
            const auto b = cover.boosters.find(q);
            if (b != cover.boosters.end()) local.insert(b->second);
        }
        std::optional<double> s = scaling_against(h, t, local);
        if (!s) s = scaling_against(h, t, full_cover);
        if (!s)
            throw std::runtime_error(
                    "kernel containment violated: the cover does not dominate term " +
                    std::to_string(i) + " (domination lemma breach; check the input nullities)");
        est.term_scalings[i] = *s;
        max_scaling = std::max(max_scaling, *s);
    }
    est.c = std::max(est.c, std::sqrt(max_scaling));
    return est;
}

SparsifierWeights nullity1_recursion(const Hamiltonian& h, double eps_level, std::uint64_t seed,
                                     Nullity1Trace* trace) {
    validate_hamiltonian(h);
    if (!(eps_level > 0)) throw std::invalid_argument("accuracy parameter must be positive");
    Nullity1Trace local_trace;
    const int depth_cap = static_cast<int>(
            std::ceil(20.0 * (h.terms.empty() ? 1 : h.terms[0].arity()) *
                      std::log2(std::max(2, h.n))));

    SparsifierWeights out;
    Hamiltonian current = h;
    std::vector<int> index_map(h.size());
    for (int i = 0; i < h.size(); ++i) index_map[i] = i;
    double level_weight = 1.0;
    double c_running = 1.0;

    for (int depth = 0;; ++depth) {
        if (depth > depth_cap)
            throw std::runtime_error("recursion depth exceeded the 20 r log2 n cap");
        local_trace.depth = depth;

        if (current.terms.empty()) break;

        // The boundedness constant is recomputed per level against a fresh
        // cover; the threshold uses the max across levels seen so far.
        const DominatingCover probe = extract_dominating_cover(current);
        const BoundednessEstimate est = local_gap_constant(current, probe);
        local_trace.c_per_level.push_back(est.c);
        c_running = std::max(c_running, est.c);
        const double c2 = c_running * c_running;

        const double threshold = 100.0 * c2 * current.n * current.n / (eps_level * eps_level);
        if (current.size() <= threshold) {
            local_trace.base_case_size = current.size();
            for (int j = 0; j < current.size(); ++j)
                if (current.terms[j].weight > 0)
                    out.entries[index_map[j]] = level_weight * current.terms[j].weight;
            break;
        }

        const int cover_target =
                static_cast<int>(std::ceil(100.0 * c2 * current.n / (eps_level * eps_level)));
        std::set<int> removed;
        int covers = 0;
        for (int k = 0; k < cover_target; ++k) {
            Hamiltonian residual;
            residual.n = current.n;
            std::vector<int> residual_map;
            for (int j = 0; j < current.size(); ++j) {
                if (removed.count(j)) continue;
                residual.terms.push_back(current.terms[j]);
                residual_map.push_back(j);
            }
            if (residual.terms.empty()) break;
            const DominatingCover cover = extract_dominating_cover(residual);
            for (int idx : cover.all) removed.insert(residual_map[idx]);
            ++covers;
        }
        local_trace.covers_per_level.push_back(covers);
        for (int j : removed)
            if (current.terms[j].weight > 0)
                out.entries[index_map[j]] = level_weight * current.terms[j].weight;

        Rng rng(split_seed(seed, "nullity1-sample", static_cast<std::uint64_t>(depth)));
        Hamiltonian next;
        next.n = current.n;
        std::vector<int> next_map;
        for (int j = 0; j < current.size(); ++j) {
            if (removed.count(j)) continue;
            if (rng.coin(0.5)) {
                next.terms.push_back(current.terms[j]);
                next_map.push_back(index_map[j]);
            }
        }
        current = std::move(next);
        index_map = std::move(next_map);
        level_weight *= 2.0;
    }

    if (trace) *trace = local_trace;
    return out;
}

SparsifierWeights sparsify_fullrank(const Hamiltonian& h, double eps, std::uint64_t seed,
                                    int max_attempts) {
    validate_hamiltonian(h);
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (h.terms.empty()) return {};

    double sup_max = 0, inf_min = std::numeric_limits<double>::infinity();
    for (const Term& t : h.terms) {
        const Eigen::VectorXd ev = hermitian_eigenvalues(t.predicate);
        if (ev(0) <= kKernelTol * std::max(1.0, ev(ev.size() - 1)))
            throw std::invalid_argument("predicate is not full rank");
        sup_max = std::max(sup_max, ev(ev.size() - 1));
        inf_min = std::min(inf_min, ev(0));
    }
    const double kappa = sup_max / inf_min;
    const double p = 100.0 * kappa * kappa * h.n / (eps * eps * h.size());
    if (p >= 1.0) return identity_weights(h);

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Rng rng(split_seed(seed, "fullrank-sample", static_cast<std::uint64_t>(attempt)));
        SparsifierWeights w;
        for (int i = 0; i < h.size(); ++i)
            if (h.terms[i].weight > 0 && rng.coin(p)) w.entries[i] = h.terms[i].weight / p;
        if (w.entries.empty()) continue;
        if (verify_sparsifier(h, w, eps).pass) return w;
    }
    throw std::runtime_error("full-rank sampler failed verification after " +
                             std::to_string(max_attempts) + " reseeds");
}

SparsifierWeights sparsify_nullity1(const Hamiltonian& h, double eps, std::uint64_t seed,
                                    Nullity1Trace* trace) {
    validate_hamiltonian(h);
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");

    // Full-rank terms take the uniform sampling path; everything else must
    // have nullity exactly 1.
    std::vector<int> fullrank_idx, nullity1_idx;
    for (int i = 0; i < h.size(); ++i) {
        const int nullity = predicate_nullity(h.terms[i].predicate);
        if (nullity == 0)
            fullrank_idx.push_back(i);
        else if (nullity == 1)
            nullity1_idx.push_back(i);
        else
            throw std::invalid_argument("term " + std::to_string(i) + " has nullity " +
                                        std::to_string(nullity) + " > 1");
    }

    const int max_attempts = 8;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const std::uint64_t attempt_seed = split_seed(seed, "nullity1-attempt", attempt);
        SparsifierWeights out;
        if (!fullrank_idx.empty()) {
            Hamiltonian sub;
            sub.n = h.n;
            for (int i : fullrank_idx) sub.terms.push_back(h.terms[i]);
            const SparsifierWeights w =
                    sparsify_fullrank(sub, eps, split_seed(attempt_seed, "nullity1-fullrank"));
            for (const auto& [j, wj] : w.entries) out.entries[fullrank_idx[j]] = wj;
        }
        if (!nullity1_idx.empty()) {
            Hamiltonian sub;
            sub.n = h.n;
            for (int i : nullity1_idx) sub.terms.push_back(h.terms[i]);
            const int r = sub.terms[0].arity();
            const double eps_level = eps / (200.0 * r * std::log2(std::max(2, h.n)));
            const SparsifierWeights w = nullity1_recursion(
                    sub, eps_level, split_seed(attempt_seed, "nullity1-core"), trace);
            for (const auto& [j, wj] : w.entries) out.entries[nullity1_idx[j]] = wj;
        }

        if (h.n > dense_cap()) return out;
        if (verify_sparsifier(h, out, eps).pass) return out;
    }
    throw std::runtime_error("nullity-1 sparsifier failed verification after " +
                             std::to_string(max_attempts) + " reseeds");
}

int ground_dim_audit(const Hamiltonian& h) {
    validate_hamiltonian(h);
    std::vector<bool> covered(h.n + 1, false);
    for (const Term& t : h.terms)
        for (int q : t.tuple) covered[q] = true;
    for (int q = 1; q <= h.n; ++q)
        if (!covered[q])
            throw std::invalid_argument("instance does not cover qubit " + std::to_string(q));
    for (int i = 0; i < h.size(); ++i)
        if (predicate_nullity(h.terms[i].predicate) > 1)
            throw std::invalid_argument("term " + std::to_string(i) + " has nullity > 1");

    const int dim = static_cast<int>(ground_space(h).cols());
    if (dim > 1)
        throw std::runtime_error("ground-space dimension " + std::to_string(dim) +
                                 " exceeds 1 on a covering nullity-1 instance (tolerance or "
                                 "input-validation bug)");
    return dim;
}

}  // namespace hamsparse
