#include "hamsparse/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hamsparse/partition.hpp"
#include "hamsparse/rng.hpp"

namespace hamsparse {

char axis_name(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        default: return 'Z';
    }
}

std::optional<PauliAxis> axis_from_name(char c) {
    switch (c) {
        case 'X': case 'x': return PauliAxis::X;
        case 'Y': case 'y': return PauliAxis::Y;
        case 'Z': case 'z': return PauliAxis::Z;
        default: return std::nullopt;
    }
}

Matrix pauli_axis_matrix(PauliAxis a) {
    Matrix m(2, 2);
    const Complex i{0, 1};
    switch (a) {
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, -i, i, 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// A (x) B with A's index as the most significant block.
static Matrix kron2(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

static Matrix tensor_string(const std::vector<PauliAxis>& factors) {
    Matrix acc = Matrix::Identity(1, 1);
    for (PauliAxis a : factors) acc = kron2(acc, pauli_axis_matrix(a));
    return acc;
}

Matrix pauli_matrix(const PauliString& s) {
    if (s.factors.empty()) throw std::invalid_argument("empty Pauli string");
    if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const Matrix t = tensor_string(s.factors);
    return static_cast<double>(s.sign) * t + Matrix::Identity(t.rows(), t.cols());
}

std::optional<PauliString> recognize_pauli_predicate(const Matrix& m, double tol) {
    const int dim = static_cast<int>(m.rows());
    if (!is_power_of_two(dim) || m.cols() != dim) return std::nullopt;
    const int r = log2_exact(dim);
    if (r < 1) return std::nullopt;

    // Coefficients over the tensor-Pauli basis: c_Q = tr(Q M) / 2^r. A
    // recognizable predicate has c_Id = 1, one coefficient +-1 on a string
    // with no identity slot, and zero elsewhere.
    std::optional<PauliString> found;
    const double norm = 1.0 / dim;
    std::vector<int> code(r, 0);  // 0 = Id, 1..3 = X, Y, Z
    const int total = 1 << (2 * r);
    for (int idx = 0; idx < total; ++idx) {
        int rem = idx;
        bool has_identity = false;
        std::vector<PauliAxis> factors(r);
        for (int k = 0; k < r; ++k) {
            code[k] = rem & 3;
            rem >>= 2;
            if (code[k] == 0)
                has_identity = true;
            else
                factors[k] = static_cast<PauliAxis>(code[k] - 1);
        }
        Matrix q = Matrix::Identity(1, 1);
        for (int k = 0; k < r; ++k) {
            const Matrix p = code[k] == 0 ? Matrix::Identity(2, 2).eval()
                                          : pauli_axis_matrix(factors[k]);
            q = kron2(q, p);
        }
        const Complex c = (q * m).trace() * norm;
        if (std::abs(c.imag()) > tol) return std::nullopt;
        const double re = c.real();
        const bool is_identity_slot = idx == 0;
        if (is_identity_slot) {
            if (std::abs(re - 1.0) > tol) return std::nullopt;
        } else if (std::abs(re) > tol) {
            if (has_identity) return std::nullopt;
            if (std::abs(std::abs(re) - 1.0) > tol) return std::nullopt;
            if (found) return std::nullopt;  // more than one non-identity component
            found = PauliString{factors, re > 0 ? 1 : -1};
        }
    }
    return found;
}

std::vector<PauliClass> group_terms(const Hamiltonian& h) {
    validate_hamiltonian(h);
    std::map<std::pair<std::string, int>, PauliClass> classes;
    for (int i = 0; i < h.size(); ++i) {
        const auto s = recognize_pauli_predicate(h.terms[i].predicate);
        if (!s)
            throw std::invalid_argument("term " + std::to_string(i) +
                                        " is not a Pauli-plus-identity predicate");
        std::string key;
        for (PauliAxis a : s->factors) key.push_back(axis_name(a));
        auto& cls = classes[{key, s->sign}];
        cls.string = *s;
        cls.members.push_back(i);
    }
    std::vector<PauliClass> out;
    out.reserve(classes.size());
    for (auto& [key, cls] : classes) out.push_back(std::move(cls));
    return out;
}

Vector pauli_eigenvector(PauliAxis a, int eigenvalue_sign) {
    if (eigenvalue_sign != 1 && eigenvalue_sign != -1)
        throw std::invalid_argument("eigenvalue sign must be +1 or -1");
    Vector v(2);
    const double isq = 1.0 / std::sqrt(2.0);
    const Complex i{0, 1};
    switch (a) {
        case PauliAxis::Z:
            v << (eigenvalue_sign == 1 ? 1.0 : 0.0), (eigenvalue_sign == 1 ? 0.0 : 1.0);
            break;
        case PauliAxis::X:
            v << isq, eigenvalue_sign * isq;
            break;
        case PauliAxis::Y:
            v << isq, Complex(eigenvalue_sign) * i * isq;
            break;
    }
    return v;
}

StateVector partite_basis_vector(int n, const std::vector<int>& labels, const PauliString& string,
                                 std::uint64_t tau) {
    const int r = string.arity();
    StateVector psi{n, Vector(1LL << n)};
    std::vector<Vector> site(n + 1);
    for (int v = 1; v <= n; ++v) {
        const int part = labels[v];
        if (part < 1 || part > r) throw std::invalid_argument("part label out of range");
        const int sign = assignment_bit(tau, v) == 0 ? 1 : -1;
        site[v] = pauli_eigenvector(string.factors[part - 1], sign);
    }
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        Complex amp = 1.0;
        for (int v = 1; v <= n; ++v) amp *= site[v](qubit_bit(x, v, n));
        psi.amplitudes(static_cast<Eigen::Index>(x)) = amp;
    }
    return psi;
}

XorInstance reduce_to_xor(const Hamiltonian& h, const std::vector<int>& members,
                          const PauliString& string, const std::vector<int>& labels) {
    XorInstance inst;
    inst.n = h.n;
    for (int i : members) {
        const Term& t = h.terms[i];
        if (t.arity() != string.arity())
            throw std::invalid_argument("member arity does not match the class string");
        for (int k = 0; k < t.arity(); ++k)
            if (labels[t.tuple[k]] != k + 1)
                throw std::invalid_argument("member " + std::to_string(i) +
                                            " is not aligned with the partite labels");
        XorConstraint c;
        c.vars = t.tuple;
        std::sort(c.vars.begin(), c.vars.end());
        c.parity = string.sign == 1 ? 0 : 1;
        c.weight = 2.0 * t.weight;
        inst.constraints.push_back(std::move(c));
    }
    return inst;
}

SparsifierWeights sparsify_pauli(const Hamiltonian& h, double eps, std::uint64_t seed,
                                 PauliSparsifyStats* stats) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const std::vector<PauliClass> classes = group_terms(h);
    SparsifierWeights out;
    PauliSparsifyStats st;
    st.classes = static_cast<int>(classes.size());

    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const PauliClass& cls = classes[ci];
        const int r = cls.string.arity();

        // Duplicate tuples within a class are the same operator; merge them by
        // summing weights onto the lowest member index.
        std::map<std::vector<int>, std::pair<int, double>> merged;
        for (int i : cls.members) {
            auto [it, inserted] =
                    merged.try_emplace(h.terms[i].tuple, i, h.terms[i].weight);
            if (!inserted) {
                it->second.second += h.terms[i].weight;
                ++st.merged_duplicates;
            }
        }
        std::vector<int> reps;
        std::vector<double> rep_weight;
        std::vector<std::vector<int>> edges;
        for (const auto& [tuple, rw] : merged) {
            reps.push_back(rw.first);
            rep_weight.push_back(rw.second);
            edges.push_back(tuple);
        }

        const PartiteDecomposition decomp = peel_partition(edges, r, h.n);
        st.pieces += decomp.piece_count();
        for (std::size_t pi = 0; pi < decomp.pieces.size(); ++pi) {
            const PartitePiece& piece = decomp.pieces[pi];
            XorInstance inst;
            inst.n = h.n;
            for (int e : piece.edge_indices) {
                XorConstraint c;
                c.vars = edges[e];
                std::sort(c.vars.begin(), c.vars.end());
                c.parity = cls.string.sign == 1 ? 0 : 1;
                c.weight = 2.0 * rep_weight[e];
                inst.constraints.push_back(std::move(c));
            }
            const std::uint64_t piece_seed =
                    split_seed(seed, "pauli-piece", (ci << 16) ^ pi);
            const XorSparsifyResult res = sparsify_xor_unbiased(inst, eps, piece_seed);
            st.xor_attempts += res.attempts;
            for (const auto& [k, wk] : res.weights.entries)
                out.entries[reps[piece.edge_indices[k]]] = wk / 2.0;
        }
    }

    if (h.n <= dense_cap()) {
        const SparsifierReport rep = verify_sparsifier(h, out, eps);
        if (!rep.pass)
            throw std::runtime_error("pauli sparsifier output failed dense verification");
    }
    if (stats) *stats = st;
    return out;
}

SparsifierWeights sparsify_decomposition(const Matrix& m, const std::vector<double>& coefficients,
                                         const std::vector<PauliString>& strings,
                                         const std::vector<std::vector<int>>& tuples,
                                         const std::vector<double>& weights, int n, double eps,
                                         std::uint64_t seed) {
    if (strings.empty() || coefficients.size() != strings.size())
        throw std::invalid_argument("decomposition needs matching coefficients and strings");
    if (tuples.size() != weights.size())
        throw std::invalid_argument("tuple and weight counts differ");
    const int r = strings.front().arity();
    for (const PauliString& s : strings) {
        if (s.arity() != r) throw std::invalid_argument("decomposition strings have mixed arity");
        if (s.sign != strings.front().sign)
            throw std::invalid_argument(
                    "decomposition strings must share one sign to reduce to a common parity "
                    "instance");
    }
    for (double c : coefficients)
        if (!(c > 0)) throw std::invalid_argument("decomposition coefficients must be positive");

    Matrix recon = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t j = 0; j < strings.size(); ++j)
        recon += coefficients[j] * pauli_matrix(strings[j]);
    const double residual = (recon - m).norm();
    if (residual > 1e-9 * std::max(1.0, m.norm()))
        throw std::invalid_argument("decomposition residual " + std::to_string(residual) +
                                    " too large");

    // One parity sparsification of the first component drives every
    // component: scale the instance by coefficients[0], sparsify, divide out.
    Hamiltonian scaled;
    scaled.n = n;
    const Matrix first = pauli_matrix(strings.front());
    for (std::size_t i = 0; i < tuples.size(); ++i)
        scaled.terms.push_back(Term{tuples[i], first, coefficients.front() * weights[i]});

    const SparsifierWeights inner = sparsify_pauli(scaled, eps, seed);
    SparsifierWeights out;
    for (const auto& [i, wi] : inner.entries) out.entries[i] = wi / coefficients.front();

    if (n <= dense_cap()) {
        Hamiltonian full;
        full.n = n;
        for (std::size_t i = 0; i < tuples.size(); ++i)
            full.terms.push_back(Term{tuples[i], m, weights[i]});
        const SparsifierReport rep = verify_sparsifier(full, out, eps);
        if (!rep.pass)
            throw std::runtime_error("decomposition sparsifier failed dense verification");
    }
    return out;
}

}  // namespace hamsparse
