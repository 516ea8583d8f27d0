#pragma once

// Clock-matrix algebra, site embeddings, commutators and the residual policy
// shared by every check in the library.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>
#include <functional>
#include <cmath>

#include <Eigen/Dense>

namespace chiralpotts {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double PI = 3.14159265358979323846;
const cplx I_UNIT{0.0, 1.0};

// Dense operators are refused above this dimension; callers needing more go
// through the matrix-free appliers in spectra.hpp.
constexpr int DENSE_DIM_LIMIT = 4096;

// Default pass threshold for relative residuals in double precision.
constexpr double DEFAULT_TOLERANCE = 1e-10;

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ladder_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct extraction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline cplx primitive_root(int N) {
    return std::exp(cplx(0.0, 2.0 * PI / N));
}

// X: cyclic shift (X e_k = e_{k+1} mod N, i.e. ones on the subdiagonal plus
// the upper-right corner).  Z: diag(1, w, w^2, ...).  Z X = w X Z.
struct ClockPair {
    int N = 0;
    cplx omega;
    Matrix X;
    Matrix Z;
};

inline ClockPair clock_pair(int N) {
    if (N < 2) throw std::invalid_argument("clock_pair: order N must be >= 2");
    ClockPair cp;
    cp.N = N;
    cp.omega = primitive_root(N);
    cp.X = Matrix::Zero(N, N);
    for (int k = 0; k < N; ++k) cp.X((k + 1) % N, k) = 1.0;
    cp.Z = Matrix::Zero(N, N);
    for (int k = 0; k < N; ++k) cp.Z(k, k) = std::pow(cp.omega, k);
    return cp;
}

inline Matrix matrix_power(const Matrix& A, int n) {
    Matrix out = Matrix::Identity(A.rows(), A.cols());
    for (int i = 0; i < n; ++i) out = out * A;
    return out;
}

inline long long ipow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// A labelled dense operator on the N^L chain space.  Sites are numbered
// 1..L; site 1 owns the slowest-varying index (leftmost Kronecker factor).
struct SpinChainOperator {
    int L = 0;
    int N = 0;
    std::string label;
    Matrix mat;

    long long dim() const { return mat.rows(); }
};

inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

// identity (x) ... (x) op at site j (x) ... (x) identity
inline SpinChainOperator embed_at_site(const Matrix& op, int j, int L, bool allow_large = false) {
    const int N = static_cast<int>(op.rows());
    if (op.rows() != op.cols()) throw std::invalid_argument("embed_at_site: op must be square");
    if (j < 1 || j > L) throw std::out_of_range("embed_at_site: site index out of 1..L");
    const long long dim = ipow(N, L);
    if (!allow_large && dim > DENSE_DIM_LIMIT)
        throw capacity_error("embed_at_site: N^L exceeds dense limit " + std::to_string(DENSE_DIM_LIMIT));
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 1; s <= L; ++s)
        out = kron(out, s == j ? op : Matrix::Identity(N, N));
    return SpinChainOperator{L, N, "site" + std::to_string(j), std::move(out)};
}

inline Matrix commutator(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("commutator: dimension mismatch");
    return A * B - B * A;
}

// [A,B]_q = AB - q BA
inline Matrix q_commutator(const Matrix& A, const Matrix& B, cplx q) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("q_commutator: dimension mismatch");
    return A * B - q * (B * A);
}

// ||lhs - rhs||_F / max(||lhs||_F, ||rhs||_F, 1).  Every check in the library
// reports through this (or the zero-target variant below), so tolerances mean
// the same thing everywhere.
inline double rel_residual(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw std::invalid_argument("rel_residual: dimension mismatch");
    const double scale = std::max({lhs.norm(), rhs.norm(), 1.0});
    return (lhs - rhs).norm() / scale;
}

inline double rel_residual(cplx lhs, cplx rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return std::abs(lhs - rhs) / scale;
}

// Residual of "sum == 0" scaled by the largest constituent term, for
// relations whose natural right-hand side is the zero operator.
inline double zero_residual(const Matrix& sum, const std::vector<const Matrix*>& terms) {
    double scale = 1.0;
    for (const Matrix* t : terms) scale = std::max(scale, t->norm());
    return sum.norm() / scale;
}

// ---------------------------------------------------------------------------
// Seeded randomness.  One root seed per run; every trial draws from its own
// substream so results do not depend on evaluation order.

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc908ULL) {
        // warm up so that small seeds do not produce correlated leading draws
        for (int i = 0; i < 4; ++i) splitmix64(state_);
    }

    static Rng substream(uint64_t seed, uint64_t trial) {
        uint64_t s = seed;
        uint64_t h = splitmix64(s);
        s = h ^ (trial * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
        return Rng(splitmix64(s));
    }

    uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }

    // uniform modulus in [0.5, 1.5], uniform phase
    cplx annulus() {
        const double r = uniform(0.5, 1.5);
        const double th = uniform(0.0, 2.0 * PI);
        return std::polar(r, th);
    }

private:
    uint64_t state_;
};

}  // namespace chiralpotts
