#include "hamsparse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hamsparse {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_exact(int x) {
    int k = 0;
    while ((1 << k) < x) ++k;
    return k;
}

void validate_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw DimensionError("matrix is not square");
    if (!is_power_of_two(static_cast<int>(a.rows())))
        throw DimensionError("dimension " + std::to_string(a.rows()) + " is not a power of two");
    if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (dev > tol * scale)
        throw SymmetryError("symmetry violation: max |A - A^dagger| = " + std::to_string(dev));
}

EigenDecomposition hermitian_eig(const Matrix& a) {
    validate_hermitian(a);
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
    EigenDecomposition d{solver.eigenvalues(), solver.eigenvectors()};
    const double residual = (a - d.eigenvectors * d.eigenvalues.asDiagonal() *
                                     d.eigenvectors.adjoint())
                                .norm();
    const double scale = std::max(1.0, a.norm());
    if (residual > kEigResidualTol * scale)
        throw std::runtime_error("eigendecomposition residual " + std::to_string(residual) +
                                 " exceeds tolerance");
    return d;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
    validate_hermitian(a);
    const Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
    return solver.eigenvalues();
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    const Eigen::VectorXd ev = hermitian_eigenvalues(a);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double lambda_min(const Matrix& a) { return hermitian_eigenvalues(a)(0); }

double lambda_max(const Matrix& a) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(a);
    return ev(ev.size() - 1);
}

Matrix kernel_basis(const Matrix& a, double tol) {
    const EigenDecomposition d = hermitian_eig(a);
    const double top = d.eigenvalues(d.eigenvalues.size() - 1);
    const double cutoff = tol * std::max(1.0, top);
    if (d.eigenvalues(0) < -cutoff)
        throw PsdError("PSD violation: lambda_min = " + std::to_string(d.eigenvalues(0)));
    int count = 0;
    while (count < d.eigenvalues.size() && d.eigenvalues(count) < cutoff) ++count;
    return d.eigenvectors.leftCols(count);
}

int numerical_rank(const Matrix& a, double tol) {
    return static_cast<int>(a.rows() - kernel_basis(a, tol).cols());
}

double loewner_slack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("Loewner comparison of mismatched dimensions");
    return lambda_min(b - a);
}

bool loewner_leq(const Matrix& a, const Matrix& b, double tol) {
    const double slack = loewner_slack(a, b);
    const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
    return slack >= -tol * scale;
}

static void check_tuple(const std::vector<int>& tuple, int n, int r) {
    if (static_cast<int>(tuple.size()) != r)
        throw DimensionError("tuple arity does not match operator dimension");
    std::vector<int> seen = tuple;
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] < 1 || seen[i] > n)
            throw std::invalid_argument("qubit " + std::to_string(seen[i]) + " out of range [1," +
                                        std::to_string(n) + "]");
        if (i + 1 < seen.size() && seen[i] == seen[i + 1])
            throw std::invalid_argument("repeated qubit " + std::to_string(seen[i]) + " in tuple");
    }
}

void accumulate_lift(Matrix& acc, const Matrix& m, const std::vector<int>& tuple, int n,
                     double weight) {
    const int local_dim = static_cast<int>(m.rows());
    const int r = log2_exact(local_dim);
    if ((1 << r) != local_dim) throw DimensionError("operator dimension is not a power of two");
    check_tuple(tuple, n, r);
    const std::uint64_t full = 1ULL << n;
    if (acc.rows() != static_cast<Eigen::Index>(full))
        throw DimensionError("accumulator dimension mismatch");

    // Iterate over assignments of the untouched qubits; each assignment
    // contributes one dense local block.
    std::vector<int> rest;
    rest.reserve(n - r);
    std::vector<bool> in_tuple(n + 1, false);
    for (int q : tuple) in_tuple[q] = true;
    for (int q = 1; q <= n; ++q)
        if (!in_tuple[q]) rest.push_back(q);

    const std::uint64_t blocks = 1ULL << rest.size();
    for (std::uint64_t z = 0; z < blocks; ++z) {
        std::uint64_t base = 0;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            const std::uint64_t bit = (z >> (rest.size() - 1 - k)) & 1ULL;
            base |= bit << (n - rest[k]);
        }
        for (int row = 0; row < local_dim; ++row) {
            const std::uint64_t gr = deposit_bits(base, static_cast<std::uint64_t>(row), tuple, n);
            for (int col = 0; col < local_dim; ++col) {
                const std::uint64_t gc =
                        deposit_bits(base, static_cast<std::uint64_t>(col), tuple, n);
                acc(static_cast<Eigen::Index>(gr), static_cast<Eigen::Index>(gc)) +=
                        weight * m(row, col);
            }
        }
    }
}

Matrix kron_lift(const Matrix& m, const std::vector<int>& tuple, int n) {
    validate_hermitian(m);
    Matrix out = Matrix::Zero(1LL << n, 1LL << n);
    accumulate_lift(out, m, tuple, n, 1.0);
    return out;
}

Matrix rank1_sum(int dim, std::span<const Vector> vectors) {
    Matrix out = Matrix::Zero(dim, dim);
    for (const Vector& v : vectors) {
        if (v.size() != dim) throw DimensionError("rank-one summand has wrong length");
        out += v * v.adjoint();
    }
    return out;
}

Matrix rank1_sum(std::span<const Vector> vectors) {
    if (vectors.empty())
        throw std::invalid_argument("empty vector list: supply the dimension explicitly");
    return rank1_sum(static_cast<int>(vectors.front().size()), vectors);
}

}  // namespace hamsparse
