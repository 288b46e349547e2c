#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace hamsparse {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared across the toolkit. Hermitian symmetrization is checked
// at 1e-10, eigen reconstruction at 1e-8, kernel membership at 1e-9 relative
// to max(1, lambda_max).
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigResidualTol = 1e-8;
inline constexpr double kKernelTol = 1e-9;
inline constexpr double kLoewnerTol = 1e-8;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SymmetryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_power_of_two(int x);
int log2_exact(int x);

// Throws SymmetryError when A deviates from A^dagger beyond tol, or
// DimensionError for non-square / non-power-of-two shapes.
void validate_hermitian(const Matrix& a, double tol = kHermitianTol);

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // orthonormal columns, same order
};

// Full Hermitian spectrum, ascending, with a reconstruction residual check.
EigenDecomposition hermitian_eig(const Matrix& a);

// Eigenvalues only (ascending); skips the eigenvector work.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

double operator_norm(const Matrix& a);
double lambda_min(const Matrix& a);
double lambda_max(const Matrix& a);

// Orthonormal basis of the span of eigenvectors with eigenvalue below
// tol * max(1, lambda_max). Rejects inputs with an eigenvalue below
// -tol * max(1, lambda_max) (not PSD). Empty matrix (dim x 0) when trivial.
Matrix kernel_basis(const Matrix& a, double tol = kKernelTol);

int numerical_rank(const Matrix& a, double tol = kKernelTol);

// True iff lambda_min(B - A) >= -tol * max(1, ||A||_op, ||B||_op).
bool loewner_leq(const Matrix& a, const Matrix& b, double tol = kLoewnerTol);

// lambda_min(B - A); the slack reported by Loewner comparisons.
double loewner_slack(const Matrix& a, const Matrix& b);

// Embeds an r-qubit operator into n qubits: the operator acts on the ordered
// qubit tuple `tuple` (1-based labels, qubit 1 = most significant bit) and as
// identity elsewhere. Entry convention: (M_T)_{x,y} = M_{x|_T, y|_T} when x
// and y agree off T, else 0, where x|_T reads the bits of x at the tuple
// positions in tuple order.
Matrix kron_lift(const Matrix& m, const std::vector<int>& tuple, int n);

// Adds weight * lift(M, tuple) into `acc` (dim 2^n) without materializing the
// lifted matrix.
void accumulate_lift(Matrix& acc, const Matrix& m, const std::vector<int>& tuple, int n,
                     double weight);

// Sum of v v^dagger over the given vectors; `dim` disambiguates the empty
// list (returns the dim x dim zero matrix).
Matrix rank1_sum(int dim, std::span<const Vector> vectors);
Matrix rank1_sum(std::span<const Vector> vectors);

// Bit of qubit q (1-based) in basis index x for an n-qubit register.
inline int qubit_bit(std::uint64_t x, int q, int n) {
    return static_cast<int>((x >> (n - q)) & 1ULL);
}

// Local index obtained by reading the bits of x at the tuple positions, in
// tuple order (first tuple entry is the most significant local bit).
inline std::uint64_t extract_bits(std::uint64_t x, const std::vector<int>& tuple, int n) {
    std::uint64_t out = 0;
    for (int q : tuple) out = (out << 1) | static_cast<std::uint64_t>(qubit_bit(x, q, n));
    return out;
}

// Inverse of extract_bits: overwrite the tuple positions of x with the bits
// of the local index.
inline std::uint64_t deposit_bits(std::uint64_t x, std::uint64_t local, const std::vector<int>& tuple,
                                  int n) {
    const int r = static_cast<int>(tuple.size());
    for (int k = 0; k < r; ++k) {
        const int q = tuple[k];
        const std::uint64_t bit = (local >> (r - 1 - k)) & 1ULL;
        const std::uint64_t mask = 1ULL << (n - q);
        x = (x & ~mask) | (bit << (n - q));
    }
    return x;
}

}  // namespace hamsparse
