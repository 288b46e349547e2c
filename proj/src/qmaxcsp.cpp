#include "hamsparse/qmaxcsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hamsparse/pauli.hpp"
#include "hamsparse/rng.hpp"

namespace hamsparse {

Matrix maxcut_predicate() {
    Vector v(4);
    v << 0, 1, -1, 0;
    const Matrix m = 0.5 * (v * v.adjoint());

    static bool checked = false;
    if (!checked) {
        Matrix pauli_form = Matrix::Identity(4, 4);
        for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
            const Matrix p = pauli_axis_matrix(a);
            Matrix pp(4, 4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) pp.block(i * 2, j * 2, 2, 2) = p(i, j) * p;
            pauli_form -= pp;
        }
        pauli_form *= 0.5;
        if ((pauli_form - 2.0 * m).cwiseAbs().maxCoeff() > 1e-12)
            throw std::runtime_error("cut predicate forms disagree");
        checked = true;
    }
    // Spectrum {2, 0, 0, 0}: the singlet direction carries all the weight.
    return 2.0 * m;
}

Hamiltonian maxcut_hamiltonian(const WeightedGraph& g) {
    Hamiltonian h;
    h.n = g.n;
    const Matrix m = maxcut_predicate();
    for (const auto& e : g.edges) {
        if (e.u == e.v) throw std::invalid_argument("self-loop in cut instance");
        if (!(e.weight > 0)) throw std::invalid_argument("edge weights must be positive");
        h.terms.push_back(Term{{e.u, e.v}, m, e.weight});
    }
    validate_hamiltonian(h);
    return h;
}

double opt_energy(const Hamiltonian& h) { return lambda_max(assemble(h)); }

Hamiltonian shift_by_identity(const Hamiltonian& h) {
    Hamiltonian out = h;
    for (Term& t : out.terms)
        t.predicate += Matrix::Identity(t.predicate.rows(), t.predicate.cols());
    return out;
}

SparsifierWeights shifted_importance_pass(const Hamiltonian& h, double eps_prime,
                                          std::uint64_t seed) {
    const double total = [&] {
        double s = 0;
        for (const Term& t : h.terms) s += t.weight;
        return s;
    }();
    if (!(total > 0)) throw std::invalid_argument("instance has no weight");
    const double factor = 100.0 * h.n / (eps_prime * eps_prime);

    Rng rng(split_seed(seed, "shifted-pass"));
    SparsifierWeights w;
    for (int i = 0; i < h.size(); ++i) {
        const Term& t = h.terms[i];
        if (!(t.weight > 0)) continue;
        const double shifted_top = lambda_max(t.predicate) + 1.0;
        const double q = std::min(1.0, shifted_top * t.weight / total * factor);
        if (q >= 1.0 || rng.coin(q)) w.entries[i] = t.weight / q;
    }
    if (!w.entries.empty()) {
        const double rescale = total / w.total();
        for (auto& [i, wi] : w.entries) wi *= rescale;
    }
    return w;
}

ShiftedSparsifyResult sparsify_shifted(const Hamiltonian& h, double eps, std::uint64_t seed,
                                       int max_attempts) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    validate_hamiltonian(h);
    const Hamiltonian shifted = shift_by_identity(h);

    ShiftedSparsifyResult res;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        res.attempts = attempt;
        const SparsifierWeights w = shifted_importance_pass(
                h, eps / 10.0, split_seed(seed, "shifted-attempt", attempt));
        if (w.entries.empty()) continue;
        if (verify_sparsifier(shifted, w, eps).pass) {
            res.weights = w;
            return res;
        }
    }
    throw std::runtime_error("shifted sampler failed verification after " +
                             std::to_string(max_attempts) + " reseeds");
}

WeightedGraph maxcut_sparsify(const WeightedGraph& g, double eps, std::uint64_t seed) {
    const Hamiltonian h = maxcut_hamiltonian(g);
    const ShiftedSparsifyResult res = sparsify_shifted(h, eps / 200.0, seed);
    WeightedGraph out;
    out.n = g.n;
    for (const auto& [i, wi] : res.weights.entries)
        out.edges.push_back(WeightedEdge{g.edges[i].u, g.edges[i].v, wi});
    return out;
}

StreamSparsifier::StreamSparsifier(int n, double eps_prime, std::uint64_t seed)
    : n_(n),
      rate_factor_(100.0 * n / (eps_prime * eps_prime)),
      capacity_(static_cast<int>(std::ceil(400.0 * n / (eps_prime * eps_prime)))),
      seed_(seed) {}

void StreamSparsifier::insert(int u, int v, double weight) {
    if (!(weight > 0)) throw std::invalid_argument("edge weights must be positive");
    total_ += weight;

    // Inclusion condition: key <= rate_factor / total, with
    // key = u01 / (lambda_max(M+Id) * w). A fixed draw per edge makes
    // membership monotone as the total grows, so a single pass suffices.
    Rng rng(split_seed(seed_, "stream-edge", counter_++));
    const double shifted_top = 3.0;  // cut predicate spectrum {2,0,0,0} + 1
    const double key = rng.uniform() / (shifted_top * weight);
    if (key <= rate_factor_ / total_) {
        pool_.push_back(Entry{WeightedEdge{u, v, weight}, key});
        std::push_heap(pool_.begin(), pool_.end(),
                       [](const Entry& a, const Entry& b) { return a.key < b.key; });
    }
    evict();
}

void StreamSparsifier::evict() {
    const auto cmp = [](const Entry& a, const Entry& b) { return a.key < b.key; };
    const double threshold = rate_factor_ / total_;
    while (!pool_.empty() &&
           (pool_.front().key > threshold || static_cast<int>(pool_.size()) > capacity_)) {
        std::pop_heap(pool_.begin(), pool_.end(), cmp);
        pool_.pop_back();
    }
}

WeightedGraph StreamSparsifier::finish() const {
    WeightedGraph out;
    out.n = n_;
    if (pool_.empty()) return out;
    double kept_total = 0;
    for (const Entry& e : pool_) {
        const double q = std::min(1.0, 3.0 * e.edge.weight / total_ * rate_factor_);
        out.edges.push_back(WeightedEdge{e.edge.u, e.edge.v, e.edge.weight / q});
        kept_total += e.edge.weight / q;
    }
    const double rescale = total_ / kept_total;
    for (auto& e : out.edges) e.weight *= rescale;
    return out;
}

WeightedGraph stream_sparsify(const std::vector<WeightedEdge>& events, int n, double eps,
                              std::uint64_t seed) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    StreamSparsifier s(n, eps / 10.0, seed);
    for (const auto& e : events) s.insert(e.u, e.v, e.weight);
    return s.finish();
}

TransferAudit audit_near_opt_transfer(const Hamiltonian& original, const Hamiltonian& sparse,
                                      double eps, std::uint64_t seed, int top_k,
                                      int perturbations) {
    TransferAudit audit;
    const Matrix a = assemble(original);
    const Matrix as = assemble(sparse);
    audit.opt_original = lambda_max(a);
    audit.opt_sparse = lambda_max(as);

    const EigenDecomposition d = hermitian_eig(as);
    const Eigen::Index dim = d.eigenvalues.size();
    std::vector<Vector> states;
    for (int k = 0; k < top_k && k < dim; ++k) states.push_back(d.eigenvectors.col(dim - 1 - k));

    Rng rng(split_seed(seed, "transfer-audit"));
    const Vector top = d.eigenvectors.col(dim - 1);
    for (int k = 0; k < perturbations; ++k) {
        Vector g = rng.unit_vector(static_cast<int>(dim));
        g -= top * top.dot(g);
        const double gn = g.norm();
        if (gn < 1e-12) continue;
        const double angle = eps * rng.uniform();
        states.push_back(std::cos(angle) * top + (std::sin(angle) / gn) * g);
    }

    for (const Vector& psi : states) {
        const double e_sparse = std::real(psi.dot(as * psi));
        if (e_sparse < (1 - eps) * audit.opt_sparse) continue;  // not near-max
        ++audit.states_tested;
        const double e_orig = std::real(psi.dot(a * psi));
        if (e_orig < (1 - 2 * eps) * audit.opt_original - 1e-9) audit.holds = false;
    }
    return audit;
}

MaxCspResult maxcsp_sparsify(const Hamiltonian& h, double gamma, double eps, std::uint64_t seed) {
    if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
    validate_hamiltonian(h);
    double total = 0;
    for (const Term& t : h.terms) total += t.weight;

    if (h.n <= dense_cap()) {
        const double opt = opt_energy(h);
        if (opt < 10.0 * total / gamma - 1e-9)
            throw std::invalid_argument("gamma audit failed: OPT = " + std::to_string(opt) +
                                        " < 10 m / gamma = " + std::to_string(10.0 * total / gamma));
    }

    MaxCspResult out;
    const ShiftedSparsifyResult res = sparsify_shifted(h, eps / (200.0 * gamma), seed);
    out.weights = res.weights;

    if (h.n <= dense_cap()) {
        Hamiltonian sparse;
        sparse.n = h.n;
        for (const auto& [i, wi] : res.weights.entries) {
            Term t = h.terms[i];
            t.weight = wi;
            sparse.terms.push_back(t);
        }
        out.certificate = audit_near_opt_transfer(h, sparse, eps, seed);
    }
    return out;
}

}  // namespace hamsparse
