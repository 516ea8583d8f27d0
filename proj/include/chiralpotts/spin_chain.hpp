#pragma once

// Chain Hamiltonian in the coupling family, the superintegrable Onsager pair,
// Dolan-Grady proportionality, the Onsager ladder, and the Ising Clifford
// spinors.

#include "alphas.hpp"
#include "core.hpp"

#include <map>

namespace chiralpotts {

enum class Boundary { Periodic, Open };

// H = sum_j ( sum_n alphabar_n X_j^n + sum_n alpha_n Z_j^n Z_{j+1}^{-n} ),
// periodic closure Z_{L+1} = Z_1 (boundary choice recorded as an option).
inline SpinChainOperator hamiltonian(const ChiralAlphas& a, int L,
                                     Boundary boundary = Boundary::Periodic) {
    const int N = a.N;
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT)
        throw capacity_error("hamiltonian: N^L exceeds dense limit");
    ClockPair cp = clock_pair(N);
    Matrix H = Matrix::Zero(dim, dim);
    for (int n = 1; n < N; ++n) {
        const Matrix Xn = matrix_power(cp.X, n);
        const Matrix Zn = matrix_power(cp.Z, n);
        const Matrix Zmn = matrix_power(cp.Z, N - n);
        for (int j = 1; j <= L; ++j) {
            H += a.alphabar[n] * embed_at_site(Xn, j, L).mat;
            if (boundary == Boundary::Open && j == L) continue;
            const int jn = j == L ? 1 : j + 1;
            H += a.alpha[n] * (embed_at_site(Zn, j, L).mat * embed_at_site(Zmn, jn, L).mat);
        }
    }
    return SpinChainOperator{L, N, "H", std::move(H)};
}

inline bool is_hermitian(const Matrix& H, double tol = 1e-10) {
    return (H - H.adjoint()).norm() <= tol * std::max(1.0, H.norm());
}

// Global Z_N spin shift prod_j X_j.
inline SpinChainOperator global_shift(int N, int L) {
    ClockPair cp = clock_pair(N);
    const long long dim = ipow(N, L);
    Matrix S = Matrix::Identity(dim, dim);
    for (int j = 1; j <= L; ++j) S = S * embed_at_site(cp.X, j, L).mat;
    return SpinChainOperator{L, N, "shift", std::move(S)};
}

struct DolanGradyResult {
    cplx constant;    // least-squares c with [A0,[A0,[A0,A1]]] ~ c [A0,A1]
    double residual;  // relative norm of the unexplained remainder
};

inline DolanGradyResult dolan_grady_check(const Matrix& A0, const Matrix& A1) {
    if (A0.rows() != A1.rows()) throw std::invalid_argument("dolan_grady_check: dimension mismatch");
    const Matrix C = commutator(A0, A1);
    const Matrix T = commutator(A0, commutator(A0, C));
    const double cn = C.squaredNorm();
    if (cn < 1e-250) throw degenerate_error("dolan_grady_check: [A0,A1] = 0");
    DolanGradyResult out;
    out.constant = (C.conjugate().cwiseProduct(T)).sum() / cn;
    out.residual = (T - out.constant * C).norm() / T.norm();
    return out;
}

struct SuperintegrableSplit {
    SpinChainOperator A0;  // bond part, rescaled
    SpinChainOperator A1;  // field part, rescaled
    double scale;          // s applied to both; H = s^{-1} (A0 + lambda A1)
    DolanGradyResult dg;   // after rescaling: constant == 16
};

// phi = phibar = pi/2 locus.  The normalization s = 4/sqrt|c_raw| fixes the
// Dolan-Grady constant to 16 (the relation is cubic vs linear, so scaling
// both generators by s scales the extracted constant by s^2).
inline SuperintegrableSplit superintegrable_split(const ChiralAlphas& a, int L) {
    if (std::abs(a.phi - PI / 2.0) > 1e-10 || std::abs(a.phibar - PI / 2.0) > 1e-10)
        throw std::invalid_argument("superintegrable_split: requires phi = phibar = pi/2");
    const int N = a.N;
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("superintegrable_split: capacity");
    ClockPair cp = clock_pair(N);
    Matrix A0 = Matrix::Zero(dim, dim), A1 = Matrix::Zero(dim, dim);
    for (int n = 1; n < N; ++n) {
        const Matrix Xn = matrix_power(cp.X, n);
        const Matrix Zn = matrix_power(cp.Z, n);
        const Matrix Zmn = matrix_power(cp.Z, N - n);
        for (int j = 1; j <= L; ++j) {
            const int jn = j == L ? 1 : j + 1;
            A1 += (a.alphabar[n] / a.lambda) * embed_at_site(Xn, j, L).mat;
            A0 += a.alpha[n] * (embed_at_site(Zn, j, L).mat * embed_at_site(Zmn, jn, L).mat);
        }
    }
    DolanGradyResult raw = dolan_grady_check(A0, A1);
    const double s = 4.0 / std::sqrt(std::abs(raw.constant));
    A0 *= s;
    A1 *= s;
    SuperintegrableSplit out{SpinChainOperator{L, N, "A0", std::move(A0)},
                             SpinChainOperator{L, N, "A1", std::move(A1)}, s,
                             DolanGradyResult{}};
    out.dg = dolan_grady_check(out.A0.mat, out.A1.mat);
    return out;
}

// Onsager ladder built from the seed pair:
//   G_1 = [A_1, A_0]/4,   A_{l+1} = A_{l-1} + [G_1, A_l]/2  (and backward),
//   G_m = [A_m, A_0]/4.
// All defining relations are re-verified on the constructed set.
struct OnsagerLadder {
    std::map<int, Matrix> A;
    std::map<int, Matrix> G;
    int depth = 0;
    double max_relation_residual = 0.0;
};

inline OnsagerLadder onsager_ladder(const Matrix& A0, const Matrix& A1, int depth,
                                    double tol = 1e-6) {
    OnsagerLadder lad;
    lad.depth = depth;
    lad.A[0] = A0;
    lad.A[1] = A1;
    const Matrix G1 = commutator(A1, A0) / 4.0;
    lad.G[1] = G1;
    lad.G[0] = Matrix::Zero(A0.rows(), A0.cols());
    for (int l = 1; l < depth; ++l)
        lad.A[l + 1] = lad.A[l - 1] + commutator(G1, lad.A[l]) / 2.0;
    for (int l = 0; l > -depth; --l)
        lad.A[l - 1] = lad.A[l + 1] - commutator(G1, lad.A[l]) / 2.0;
    for (int m = 2; m <= depth; ++m) {
        lad.G[m] = commutator(lad.A[m], A0) / 4.0;
        lad.G[-m] = -lad.G[m];
    }
    lad.G[-1] = -G1;

    auto track = [&](double r, const char* what) {
        lad.max_relation_residual = std::max(lad.max_relation_residual, r);
        if (r > tol)
            throw ladder_error(std::string("onsager_ladder: relation ") + what +
                               " residual " + std::to_string(r));
    };
    const double scA = std::max(A0.norm(), A1.norm());
    // [A_j, A_k] = 4 G_{j-k}
    for (auto& [j, Aj] : lad.A)
        for (auto& [k, Ak] : lad.A) {
            if (!lad.G.count(j - k)) continue;
            const Matrix lhs = commutator(Aj, Ak);
            const Matrix rhs = 4.0 * lad.G.at(j - k);
            track((lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), scA * scA}), "[A_j,A_k]=4G");
        }
    // [G_m, A_l] = 2 A_{l+m} - 2 A_{l-m}
    for (auto& [m, Gm] : lad.G)
        for (auto& [l, Al] : lad.A) {
            if (!lad.A.count(l + m) || !lad.A.count(l - m)) continue;
            const Matrix lhs = commutator(Gm, Al);
            const Matrix rhs = 2.0 * lad.A.at(l + m) - 2.0 * lad.A.at(l - m);
            track((lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), scA * scA}), "[G_m,A_l]");
        }
    // [G_j, G_k] = 0
    for (auto& [j, Gj] : lad.G)
        for (auto& [k, Gk] : lad.G) {
            const Matrix lhs = commutator(Gj, Gk);
            track(lhs.norm() / std::max(Gj.norm() * Gk.norm(), 1.0), "[G_j,G_k]=0");
        }
    return lad;
}

// Kaufman spinors for the N=2 chain:
//   Gamma_{2j-1} = X_1...X_{j-1} Z_j,  Gamma_{2j} = i X_1...X_j Z_j,
// with Gamma_m Gamma_n + Gamma_n Gamma_m = 2 delta_mn.
inline std::vector<SpinChainOperator> clifford_spinors(int L) {
    const int N = 2;
    ClockPair cp = clock_pair(N);
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("clifford_spinors: capacity");
    std::vector<SpinChainOperator> gam;
    Matrix prefix = Matrix::Identity(dim, dim);  // X_1 ... X_{j-1}
    for (int j = 1; j <= L; ++j) {
        const Matrix Zj = embed_at_site(cp.Z, j, L).mat;
        const Matrix Xj = embed_at_site(cp.X, j, L).mat;
        gam.push_back({L, N, "G" + std::to_string(2 * j - 1), prefix * Zj});
        gam.push_back({L, N, "G" + std::to_string(2 * j), I_UNIT * prefix * Xj * Zj});
        prefix = prefix * Xj;
    }
    const Matrix id2 = 2.0 * Matrix::Identity(dim, dim);
    for (size_t m = 0; m < gam.size(); ++m)
        for (size_t n = m; n < gam.size(); ++n) {
            const Matrix anti = gam[m].mat * gam[n].mat + gam[n].mat * gam[m].mat;
            const Matrix expect = m == n ? id2 : Matrix::Zero(dim, dim);
            if (rel_residual(anti, expect) > 1e-12)
                throw std::runtime_error("clifford_spinors: anticommutation failed at (" +
                                         std::to_string(m + 1) + "," + std::to_string(n + 1) + ")");
        }
    return gam;
}

}  // namespace chiralpotts
