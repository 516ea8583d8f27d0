#pragma once

// Exact diagonalization at desk scale: Z_N charge sectors of the global spin
// shift, degeneracy census, a matrix-free applier with a small Lanczos for
// chains past the dense limit, and the finite-size order-parameter
// experiment on the superintegrable chain.

#include <algorithm>

#include "alphas.hpp"
#include "core.hpp"
#include "spin_chain.hpp"
#include "transfer.hpp"

namespace chiralpotts {

// Spectral projectors of prod_j X_j onto its w^Q eigenspaces.
inline std::vector<Matrix> charge_projectors(int N, int L) {
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("charge_projectors: capacity");
    const cplx om = primitive_root(N);
    SpinChainOperator shift = global_shift(N, L);
    std::vector<Matrix> P(N, Matrix::Zero(dim, dim));
    Matrix power = Matrix::Identity(dim, dim);
    for (int s = 0; s < N; ++s) {
        for (int Q = 0; Q < N; ++Q) P[Q] += std::pow(om, -Q * s) * power;
        power = power * shift.mat;
    }
    for (int Q = 0; Q < N; ++Q) P[Q] /= static_cast<double>(N);
    return P;
}

// Orthonormal basis of the shift sector Q: one vector per orbit of the
// global +1 spin shift (all orbits have length exactly N).
inline std::vector<Vector> shift_sector_basis(int N, int L, int Q) {
    const long long dim = ipow(N, L);
    const cplx om = primitive_root(N);
    std::vector<Vector> basis;
    std::vector<char> seen(dim, 0);
    for (long long i = 0; i < dim; ++i) {
        if (seen[i]) continue;
        // orbit of i under adding 1 to every digit
        std::vector<long long> orbit(N);
        long long cur = i;
        for (int s = 0; s < N; ++s) {
            orbit[s] = cur;
            seen[cur] = 1;
            long long next = 0;
            for (int j = 1; j <= L; ++j)
                next = next * N + (spin_digit(cur, j, L, N) + 1) % N;
            cur = next;
        }
        Vector v = Vector::Zero(dim);
        for (int s = 0; s < N; ++s) v(orbit[s]) += std::pow(om, -Q * s);
        v /= std::sqrt(static_cast<double>(N));
        basis.push_back(std::move(v));
    }
    return basis;
}

struct SectorSpectrum {
    int N = 0, L = 0, Q = 0;
    std::vector<cplx> eigenvalues;                      // sorted by real part
    std::vector<std::pair<cplx, int>> degeneracy;       // (value, multiplicity)
    bool hermitian = false;
};

inline SectorSpectrum sector_spectrum(const SpinChainOperator& H, int Q, int k_lowest = -1) {
    const int N = H.N, L = H.L;
    const auto basis = shift_sector_basis(N, L, Q);
    const long long sd = static_cast<long long>(basis.size());
    Matrix B(H.dim(), sd);
    for (long long c = 0; c < sd; ++c) B.col(c) = basis[c];
    const Matrix Hs = B.adjoint() * (H.mat * B);
    SectorSpectrum out;
    out.N = N;
    out.L = L;
    out.Q = Q;
    out.hermitian = is_hermitian(Hs, 1e-10);
    if (out.hermitian) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((Hs + Hs.adjoint()) / 2.0);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.eigenvalues.push_back(es.eigenvalues()(i));
    } else {
        Eigen::ComplexEigenSolver<Matrix> es(Hs);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            out.eigenvalues.push_back(es.eigenvalues()(i));
        std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
                  [](cplx a, cplx b) { return a.real() < b.real(); });
    }
    if (k_lowest > 0 && static_cast<long long>(out.eigenvalues.size()) > k_lowest)
        out.eigenvalues.resize(k_lowest);
    // degeneracy classes at 1e-8 * ||H||
    const double tol = 1e-8 * H.mat.norm();
    for (const cplx& ev : out.eigenvalues) {
        if (!out.degeneracy.empty() && std::abs(out.degeneracy.back().first - ev) < tol)
            out.degeneracy.back().second += 1;
        else
            out.degeneracy.emplace_back(ev, 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix-free application of the chain Hamiltonian, for chains past the
// dense limit; used with the Lanczos below.

struct HamiltonianApplier {
    int N = 0, L = 0;
    ChiralAlphas a;
    std::vector<cplx> bond;  // bond(m) = sum_n alpha_n w^{n m}
    Boundary boundary = Boundary::Periodic;

    HamiltonianApplier(const ChiralAlphas& alph, int L_, Boundary b = Boundary::Periodic)
        : N(alph.N), L(L_), a(alph), boundary(b) {
        const cplx om = primitive_root(N);
        bond.assign(N, 0.0);
        for (int m = 0; m < N; ++m)
            for (int n = 1; n < N; ++n) bond[m] += a.alpha[n] * std::pow(om, n * m);
    }

    long long dim() const { return ipow(N, L); }

    void apply(const Vector& x, Vector& y) const {
        const long long d = dim();
        y.setZero(d);
        // diagonal bond part
        for (long long i = 0; i < d; ++i) {
            cplx acc = 0.0;
            for (int j = 1; j <= L; ++j) {
                if (boundary == Boundary::Open && j == L) continue;
                const int aj = spin_digit(i, j, L, N);
                const int aj1 = spin_digit(i, j == L ? 1 : j + 1, L, N);
                acc += bond[((aj - aj1) % N + N) % N];
            }
            y(i) += acc * x(i);
        }
        // field part: X_j^n sends digit a_j -> a_j + n
        for (int j = 1; j <= L; ++j) {
            const long long stride = ipow(N, L - j);
            for (long long i = 0; i < d; ++i) {
                const int aj = spin_digit(i, j, L, N);
                for (int n = 1; n < N; ++n) {
                    const int to = (aj + n) % N;
                    const long long target = i + static_cast<long long>(to - aj) * stride;
                    y(target) += a.alphabar[n] * x(i);
                }
            }
        }
    }
};

// Plain Lanczos with full reorthogonalization for Hermitian appliers,
// started from a seeded vector projected onto the shift sector.
struct LanczosResult {
    std::vector<double> eigenvalues;
    std::vector<Vector> vectors;
};

template <typename ApplyFn>
LanczosResult lanczos_lowest(const ApplyFn& apply, long long dim, int k, uint64_t seed,
                             const std::vector<Vector>* project_basis = nullptr,
                             int max_iter = 220, double tol = 1e-12) {
    Rng rng = Rng::substream(seed, 0x1A2B3C);
    Vector v = Vector::Zero(dim);
    for (long long i = 0; i < dim; ++i) v(i) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    if (project_basis) {
        Vector proj = Vector::Zero(dim);
        for (const Vector& b : *project_basis) proj += b * (b.adjoint() * v)(0, 0);
        v = proj;
    }
    v.normalize();
    std::vector<Vector> Q{v};
    std::vector<double> alpha, beta;
    Vector w(dim);
    for (int it = 0; it < max_iter; ++it) {
        apply(Q.back(), w);
        cplx a = (Q.back().adjoint() * w)(0, 0);
        alpha.push_back(a.real());
        w -= a * Q.back();
        if (Q.size() > 1) w -= beta.back() * Q[Q.size() - 2];
        for (const Vector& qv : Q) w -= qv * (qv.adjoint() * w)(0, 0);  // full reorthogonalization
        const double nb = w.norm();
        if (nb < tol) break;
        beta.push_back(nb);
        Q.push_back(w / nb);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    LanczosResult out;
    for (int i = 0; i < std::min(k, m); ++i) {
        out.eigenvalues.push_back(es.eigenvalues()(i));
        Vector vec = Vector::Zero(dim);
        for (int j = 0; j < m; ++j) vec += es.eigenvectors()(j, i) * Q[j];
        vec.normalize();
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-size order-parameter experiment on the superintegrable chain:
// H = -(1/N) * H(phi = phibar = pi/2, lambda), ground states of the shift
// sectors 0 and k, surrogate m_L = |<gs_0| Z_1^k |gs_k>|, extrapolated
// linearly in 1/L from the two largest lengths.

struct OrderParameterResult {
    int N = 0, k = 0;
    double lambda = 0.0;
    std::vector<int> lengths;
    std::vector<double> values;     // m_L
    double estimate = 0.0;          // Richardson in 1/L
    double target = 0.0;            // (1 - lambda^2)^{k(N-k)/(2N^2)}
    bool monotone = false;          // |m_L - target| strictly decreasing
    bool degenerate_flag = false;   // a sector ground state was degenerate
    std::vector<double> alt_values; // second pairing when flagged
};

inline OrderParameterResult order_parameter_experiment(int N, double lambda, int k,
                                                       const std::vector<int>& lengths) {
    if (lambda <= 0.0 || lambda >= 1.0)
        throw std::invalid_argument("order_parameter_experiment: need 0 < lambda < 1");
    if (k < 1 || k >= N) throw std::invalid_argument("order_parameter_experiment: k in 1..N-1");
    OrderParameterResult out;
    out.N = N;
    out.k = k;
    out.lambda = lambda;
    out.lengths = lengths;
    out.target = std::pow(1.0 - lambda * lambda,
                          static_cast<double>(k) * (N - k) / (2.0 * N * N));
    ChiralAlphas a = alphas(N, PI / 2.0, PI / 2.0, cplx(lambda, 0.0));
    for (int L : lengths) {
        const long long dim = ipow(N, L);
        Vector gs0, gsk;
        double gap0 = 1.0, gapk = 1.0;
        if (dim <= DENSE_DIM_LIMIT) {
            SpinChainOperator H = hamiltonian(a, L);
            H.mat *= -1.0 / static_cast<double>(N);
            for (int Q : {0, k}) {
                const auto basis = shift_sector_basis(N, L, Q);
                Matrix B(dim, static_cast<long long>(basis.size()));
                for (size_t c = 0; c < basis.size(); ++c) B.col(c) = basis[c];
                Matrix Hs = B.adjoint() * (H.mat * B);
                Eigen::SelfAdjointEigenSolver<Matrix> es((Hs + Hs.adjoint()) / 2.0);
                Vector v = B * es.eigenvectors().col(0);
                const double gap =
                    es.eigenvalues().size() > 1
                        ? (es.eigenvalues()(1) - es.eigenvalues()(0)) / std::max(1.0, H.mat.norm())
                        : 1.0;
                if (Q == 0) { gs0 = v; gap0 = gap; }
                else { gsk = v; gapk = gap; }
            }
        } else {
            HamiltonianApplier ap(a, L);
            auto apply = [&](const Vector& x, Vector& y) {
                ap.apply(x, y);
                y *= -1.0 / static_cast<double>(N);
            };
            for (int Q : {0, k}) {
                const auto basis = shift_sector_basis(N, L, Q);
                LanczosResult lr = lanczos_lowest(apply, dim, 2, 97 + Q, &basis);
                if (Q == 0) { gs0 = lr.vectors[0]; gap0 = lr.eigenvalues[1] - lr.eigenvalues[0]; }
                else { gsk = lr.vectors[0]; gapk = lr.eigenvalues[1] - lr.eigenvalues[0]; }
            }
        }
        if (gap0 < 1e-8 || gapk < 1e-8) out.degenerate_flag = true;
        // Z_1^k is diagonal: <gs0| Z_1^k |gsk> without forming the matrix
        const cplx om = primitive_root(N);
        cplx m = 0.0;
        for (long long i = 0; i < dim; ++i)
            m += std::conj(gs0(i)) * std::pow(om, k * spin_digit(i, 1, L, N)) * gsk(i);
        out.values.push_back(std::abs(m));
    }
    const size_t n = out.values.size();
    if (n >= 2) {
        const double L2 = out.lengths[n - 1], L1 = out.lengths[n - 2];
        out.estimate = (L2 * out.values[n - 1] - L1 * out.values[n - 2]) / (L2 - L1);
    } else {
        out.estimate = out.values.back();
    }
    out.monotone = true;
    for (size_t i = 0; i + 1 < n; ++i)
        if (std::abs(out.values[i + 1] - out.target) >= std::abs(out.values[i] - out.target))
            out.monotone = false;
    return out;
}

}  // namespace chiralpotts
