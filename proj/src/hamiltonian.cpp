#include "hamsparse/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "hamsparse/rng.hpp"

namespace hamsparse {

int dense_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("HAMSPARSE_DENSE_CAP")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 14;
    }();
    return cap;
}

SparsifierWeights identity_weights(const Hamiltonian& h) {
    SparsifierWeights w;
    for (int i = 0; i < h.size(); ++i)
        if (h.terms[i].weight > 0) w.entries[i] = h.terms[i].weight;
    return w;
}

void validate_term(const Term& t, int n) {
    if (t.tuple.empty()) throw std::invalid_argument("term has empty tuple");
    if (t.weight < 0) throw std::invalid_argument("negative term weight");
    validate_hermitian(t.predicate);
    if (t.predicate.rows() != (1LL << t.arity()))
        throw DimensionError("predicate dimension does not match tuple arity");
    std::vector<int> sorted = t.tuple;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > n)
            throw std::invalid_argument("tuple qubit out of range");
        if (i + 1 < sorted.size() && sorted[i] == sorted[i + 1])
            throw std::invalid_argument("tuple has a repeated qubit");
    }
}

void validate_hamiltonian(const Hamiltonian& h) {
    if (h.n < 1) throw std::invalid_argument("qubit count must be positive");
    for (const Term& t : h.terms) validate_term(t, h.n);
}

StateVector basis_state(int n, std::uint64_t index) {
    StateVector psi{n, Vector::Zero(1LL << n)};
    psi.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

StateVector restrict_state(const StateVector& psi, const std::vector<int>& subset,
                           std::uint64_t z) {
    const int n = psi.n;
    const int s = static_cast<int>(subset.size());
    if (z >= (1ULL << s)) throw std::invalid_argument("pinned bits exceed subset size");
    std::vector<bool> pinned(n + 1, false);
    for (int k = 0; k < s; ++k) {
        const int q = subset[k];
        if (q < 1 || q > n) throw std::invalid_argument("subset qubit out of range");
        if (k > 0 && subset[k - 1] >= q)
            throw std::invalid_argument("subset must be strictly ascending");
        pinned[q] = true;
    }
    std::vector<int> rest;
    for (int q = 1; q <= n; ++q)
        if (!pinned[q]) rest.push_back(q);

    std::uint64_t base = 0;
    for (int k = 0; k < s; ++k) {
        const std::uint64_t bit = (z >> (s - 1 - k)) & 1ULL;
        base |= bit << (n - subset[k]);
    }
    StateVector out{n - s, Vector(1LL << rest.size())};
    for (std::uint64_t y = 0; y < (1ULL << rest.size()); ++y) {
        std::uint64_t idx = base;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const std::uint64_t bit = (y >> (rest.size() - 1 - k)) & 1ULL;
            idx |= bit << (n - rest[k]);
        }
        out.amplitudes(static_cast<Eigen::Index>(y)) =
                psi.amplitudes(static_cast<Eigen::Index>(idx));
    }
    return out;
}

double predicate_energy(const StateVector& psi, const Matrix& m, const std::vector<int>& tuple,
                        int n) {
    if (psi.n != n) throw DimensionError("state qubit count mismatch");
    const int r = static_cast<int>(tuple.size());
    const int local_dim = 1 << r;
    if (m.rows() != local_dim) throw DimensionError("predicate dimension mismatch");

    std::vector<bool> in_tuple(n + 1, false);
    for (int q : tuple) {
        if (q < 1 || q > n) throw std::invalid_argument("tuple qubit out of range");
        if (in_tuple[q]) throw std::invalid_argument("tuple has a repeated qubit");
        in_tuple[q] = true;
    }
    std::vector<int> rest;
    for (int q = 1; q <= n; ++q)
        if (!in_tuple[q]) rest.push_back(q);

    Vector local(local_dim);
    double acc = 0;
    for (std::uint64_t z = 0; z < (1ULL << rest.size()); ++z) {
        std::uint64_t base = 0;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const std::uint64_t bit = (z >> (rest.size() - 1 - k)) & 1ULL;
            base |= bit << (n - rest[k]);
        }
        for (int y = 0; y < local_dim; ++y) {
            const std::uint64_t idx = deposit_bits(base, static_cast<std::uint64_t>(y), tuple, n);
            local(y) = psi.amplitudes(static_cast<Eigen::Index>(idx));
        }
        acc += std::real(local.dot(m * local));
    }
    return acc;
}

double energy(const StateVector& psi, const Term& t, int n) {
    return t.weight * predicate_energy(psi, t.predicate, t.tuple, n);
}

Matrix assemble_impl(const Hamiltonian& h, const SparsifierWeights* w, bool unit) {
    validate_hamiltonian(h);
    if (h.n > dense_cap())
        throw CapacityError("dense assembly of " + std::to_string(h.n) +
                            " qubits exceeds the cap of " + std::to_string(dense_cap()));
    Matrix acc = Matrix::Zero(1LL << h.n, 1LL << h.n);
    for (int i = 0; i < h.size(); ++i) {
        const double wi = unit ? 1.0 : (w ? w->at(i) : h.terms[i].weight);
        if (wi == 0.0) continue;
        accumulate_lift(acc, h.terms[i].predicate, h.terms[i].tuple, h.n, wi);
    }
    return acc;
}

Matrix assemble(const Hamiltonian& h, const SparsifierWeights* w) {
    return assemble_impl(h, w, false);
}

Matrix assemble_unit(const Hamiltonian& h) { return assemble_impl(h, nullptr, true); }

Matrix ground_space(const Hamiltonian& h) { return kernel_basis(assemble_unit(h)); }

static SparsifierReport verify_sampled(const Hamiltonian& h, const SparsifierWeights& w,
                                       double eps) {
    // Not a certificate: checks the sandwich on every computational basis
    // state and on 200 seeded random states.
    SparsifierReport rep;
    rep.epsilon = eps;
    rep.support_size = w.support();
    rep.mode = "sampled";
    rep.pass = true;
    double min_lo = 0, min_hi = 0;

    auto check_state = [&](const StateVector& psi) {
        double orig = 0, sparse = 0;
        for (int i = 0; i < h.size(); ++i) {
            const double e = predicate_energy(psi, h.terms[i].predicate, h.terms[i].tuple, h.n);
            orig += h.terms[i].weight * e;
            sparse += w.at(i) * e;
        }
        const double scale = std::max(1.0, orig);
        const double lo = sparse - (1 - eps) * orig;
        const double hi = (1 + eps) * orig - sparse;
        min_lo = std::min(min_lo, lo / scale);
        min_hi = std::min(min_hi, hi / scale);
        if (lo < -kLoewnerTol * scale || hi < -kLoewnerTol * scale) rep.pass = false;
    };

    for (std::uint64_t x = 0; x < (1ULL << h.n); ++x) check_state(basis_state(h.n, x));
    Rng rng(split_seed(0x5eedULL, "verify-sampled"));
    for (int k = 0; k < 200; ++k) {
        StateVector psi{h.n, rng.unit_vector(1 << h.n)};
        check_state(psi);
    }
    rep.lambda_min_slack = min_lo;
    rep.lambda_max_slack = min_hi;
    return rep;
}

SparsifierReport verify_sparsifier(const Hamiltonian& h, const SparsifierWeights& w, double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    for (const auto& [i, wi] : w.entries) {
        if (i < 0 || i >= h.size()) throw std::invalid_argument("weight index out of range");
        if (!(wi > 0)) throw std::invalid_argument("weights must be positive");
    }
    if (h.n > dense_cap()) return verify_sampled(h, w, eps);

    const Matrix a = assemble(h);
    const Matrix aw = assemble(h, &w);
    SparsifierReport rep;
    rep.epsilon = eps;
    rep.support_size = w.support();
    rep.mode = "dense";
    rep.lambda_min_slack = lambda_min(aw - (1 - eps) * a);
    rep.lambda_max_slack = lambda_min((1 + eps) * a - aw);
    const double scale = std::max({1.0, operator_norm(a), operator_norm(aw)});
    rep.pass = rep.lambda_min_slack >= -kLoewnerTol * scale &&
               rep.lambda_max_slack >= -kLoewnerTol * scale;
    return rep;
}

bool is_classical_predicate(const Matrix& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Complex v = m(i, j);
            if (i != j) {
                if (std::abs(v) > tol) return false;
            } else if (std::abs(v) > tol && std::abs(v - 1.0) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool classical_crosscheck(const Hamiltonian& h, const SparsifierWeights& w, double eps) {
    validate_hamiltonian(h);
    if (h.n > 20) throw CapacityError("classical enumeration capped at 20 variables");
    for (int i = 0; i < h.size(); ++i)
        if (!is_classical_predicate(h.terms[i].predicate))
            throw std::invalid_argument("term " + std::to_string(i) +
                                        " is not a diagonal 0/1 predicate");

    // Precompute per-term satisfied local index sets.
    const int m = h.size();
    std::vector<std::vector<bool>> sat(m);
    for (int i = 0; i < m; ++i) {
        const Matrix& p = h.terms[i].predicate;
        sat[i].resize(p.rows());
        for (Eigen::Index d = 0; d < p.rows(); ++d) sat[i][d] = std::abs(p(d, d) - 1.0) < 0.5;
    }

    bool pass = true;
    for (std::uint64_t x = 0; x < (1ULL << h.n) && pass; ++x) {
        double orig = 0, sparse = 0;
        for (int i = 0; i < m; ++i) {
            if (!sat[i][extract_bits(x, h.terms[i].tuple, h.n)]) continue;
            orig += h.terms[i].weight;
            sparse += w.at(i);
        }
        const double scale = std::max(1.0, orig);
        if (sparse - (1 - eps) * orig < -kLoewnerTol * scale ||
            (1 + eps) * orig - sparse < -kLoewnerTol * scale)
            pass = false;
    }

    if (h.n <= dense_cap()) {
        const SparsifierReport dense = verify_sparsifier(h, w, eps);
        if (dense.pass != pass)
            throw std::runtime_error("classical and dense verification verdicts disagree");
    }
    return pass;
}

}  // namespace hamsparse
