#pragma once

// Diagonal-to-diagonal transfer matrices, the commuting-family check, and the
// numerical Hamiltonian extraction at the shift point.
//
// Row convention (fixed by requiring T(p,p) = translation and the family to
// commute; the transposed assignment is kept in the test suite as a negative
// control):
//   T(q)[a, a'] = prod_j  W_pq(a_j - a'_j) Wbar_pq(a_j - a'_{j+1}),
// indices mod L, site 1 on the slowest Kronecker digit.

#include "alphas.hpp"
#include "core.hpp"
#include "curve.hpp"
#include "spin_chain.hpp"
#include "weights.hpp"

namespace chiralpotts {

inline int spin_digit(long long index, int j, int L, int N) {
    // site 1 = slowest digit
    long long p = ipow(N, L - j);
    return static_cast<int>((index / p) % N);
}

struct TransferMatrix {
    int L = 0;
    int N = 0;
    RapidityPoint p, q;
    SpinChainOperator data;
};

enum class RowConvention { Standard, Transposed };

inline Matrix transfer_from_tables(const WeightTable& wt, int L,
                                   RowConvention conv = RowConvention::Standard) {
    const int N = wt.N;
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("transfer_matrix: capacity");
    Matrix T(dim, dim);
    for (long long ai = 0; ai < dim; ++ai) {
        for (long long bi = 0; bi < dim; ++bi) {
            cplx val = 1.0;
            for (int j = 1; j <= L; ++j) {
                const int aj = spin_digit(ai, j, L, N);
                const int bj = spin_digit(bi, j, L, N);
                const int bj1 = spin_digit(bi, j == L ? 1 : j + 1, L, N);
                if (conv == RowConvention::Standard)
                    val *= wt.Wm(aj - bj) * wt.Wbarm(aj - bj1);
                else
                    val *= wt.Wbarm(aj - bj) * wt.Wm(aj - bj1);
            }
            T(ai, bi) = val;
        }
    }
    return T;
}

inline TransferMatrix transfer_matrix(const RapidityPoint& p, const RapidityPoint& q, int L,
                                      RowConvention conv = RowConvention::Standard) {
    WeightTable wt = chiral_weights(p, q);
    TransferMatrix tm{L, p.params.N, p, q, {}};
    tm.data = SpinChainOperator{L, p.params.N, "T", transfer_from_tables(wt, L, conv)};
    return tm;
}

// one-site translation: T(p,p)[a, a'] nonzero iff a'_{j+1} = a_j for all j
inline Matrix translation_operator(int N, int L) {
    const long long dim = ipow(N, L);
    Matrix S = Matrix::Zero(dim, dim);
    for (long long ai = 0; ai < dim; ++ai) {
        long long bi = 0;
        for (int j = 1; j <= L; ++j)
            bi = bi * N + spin_digit(ai, j == 1 ? L : j - 1, L, N);  // a'_j = a_{j-1}
        S(ai, bi) = 1.0;
    }
    return S;
}

inline double commuting_family_check(const RapidityPoint& p, const RapidityPoint& q1,
                                     const RapidityPoint& q2, int L) {
    const Matrix T1 = transfer_matrix(p, q1, L).data.mat;
    const Matrix T2 = transfer_matrix(p, q2, L).data.mat;
    return commutator(T1, T2).norm() / (T1.norm() * T2.norm());
}

// ---------------------------------------------------------------------------
// Shift-point derivative.  The path q(u) moves Re(a_q) from a_p and re-solves
// b, c with branch continuity (nearest root to the reference point).

inline RapidityPoint path_point(const RapidityPoint& p, double u) {
    const int N = p.params.N;
    const cplx k = p.params.k, kp = p.params.kprime;
    const cplx om = primitive_root(N);
    RapidityPoint q;
    q.params = p.params;
    q.d = 1.0;
    q.a = p.a + u;
    const cplx bN = (k - std::pow(q.a, N)) / kp;
    const cplx b0 = std::pow(bN, 1.0 / N);
    double best = 1e300;
    for (int j = 0; j < N; ++j) {
        const cplx cand = b0 * std::pow(om, j);
        if (std::abs(cand - p.b) < best) {
            best = std::abs(cand - p.b);
            q.b = cand;
        }
    }
    const cplx cN = (kp * std::pow(q.a, N) + std::pow(q.b, N)) / k;
    const cplx c0 = std::pow(cN, 1.0 / N);
    best = 1e300;
    for (int j = 0; j < N; ++j) {
        const cplx cand = c0 * std::pow(om, j);
        if (std::abs(cand - p.c) < best) {
            best = std::abs(cand - p.c);
            q.c = cand;
        }
    }
    if (curve_residual(q) > 1e-8)
        throw branch_error("path_point: branch continuation left the curve");
    return q;
}

struct DerivativeHamiltonian {
    SpinChainOperator H;            // T(0)^{-1} dT/du
    std::vector<cplx> alpha_raw;    // fitted coefficients of Z_j^n Z_{j+1}^{-n}
    std::vector<cplx> alphabar_raw; // fitted coefficients of X_j^n
    cplx const_coeff;               // identity component
    double fit_residual;            // relative norm outside the operator basis
    ChiralAlphas alpha_fit;         // pattern-normalized couplings
    AlphaPatternFit pattern_alpha, pattern_alphabar;
};

inline DerivativeHamiltonian derivative_hamiltonian(const RapidityPoint& p, int L,
                                                    double step = 1e-4) {
    const int N = p.params.N;
    const long long dim = ipow(N, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("derivative_hamiltonian: capacity");
    auto T_at = [&](double u) {
        return transfer_from_tables(chiral_weights(p, path_point(p, u)), L);
    };
    const Matrix T0 = T_at(0.0);
    const Matrix D1 = (T_at(step) - T_at(-step)) / (2.0 * step);
    const Matrix D2 = (T_at(step / 2) - T_at(-step / 2)) / step;
    const Matrix Dext = (4.0 * D2 - D1) / 3.0;  // Richardson, two step sizes
    Eigen::PartialPivLU<Matrix> lu(T0);
    Matrix H = lu.solve(Dext);

    // project onto { 1, sum_j X_j^n, sum_j Z_j^n Z_{j+1}^{-n} }
    ClockPair cp = clock_pair(N);
    std::vector<Matrix> basis;
    basis.push_back(Matrix::Identity(dim, dim));
    for (int n = 1; n < N; ++n) {
        Matrix B = Matrix::Zero(dim, dim);
        const Matrix Xn = matrix_power(cp.X, n);
        for (int j = 1; j <= L; ++j) B += embed_at_site(Xn, j, L).mat;
        basis.push_back(std::move(B));
    }
    for (int n = 1; n < N; ++n) {
        Matrix B = Matrix::Zero(dim, dim);
        const Matrix Zn = matrix_power(cp.Z, n);
        const Matrix Zmn = matrix_power(cp.Z, N - n);
        for (int j = 1; j <= L; ++j) {
            const int jn = j == L ? 1 : j + 1;
            B += embed_at_site(Zn, j, L).mat * embed_at_site(Zmn, jn, L).mat;
        }
        basis.push_back(std::move(B));
    }
    const int nb = static_cast<int>(basis.size());
    Matrix G(nb, nb);
    Vector v(nb);
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j)
            G(i, j) = (basis[i].conjugate().cwiseProduct(basis[j])).sum();
        v(i) = (basis[i].conjugate().cwiseProduct(H)).sum();
    }
    Vector coef = G.fullPivLu().solve(v);
    Matrix Hfit = Matrix::Zero(dim, dim);
    for (int i = 0; i < nb; ++i) Hfit += coef(i) * basis[i];

    DerivativeHamiltonian out;
    out.H = SpinChainOperator{L, N, "dlogT", std::move(H)};
    out.fit_residual = (out.H.mat - Hfit).norm() / out.H.mat.norm();
    if (out.fit_residual > 1e-6)
        throw extraction_error("derivative_hamiltonian: remainder outside the operator basis: " +
                               std::to_string(out.fit_residual));
    out.const_coeff = coef(0);
    out.alphabar_raw.assign(N, 0.0);
    out.alpha_raw.assign(N, 0.0);
    for (int n = 1; n < N; ++n) {
        out.alphabar_raw[n] = coef(n);
        out.alpha_raw[n] = coef(N - 1 + n);
    }
    out.pattern_alpha = fit_alpha_pattern(N, out.alpha_raw);
    out.pattern_alphabar = fit_alpha_pattern(N, out.alphabar_raw);
    out.alpha_fit.N = N;
    out.alpha_fit.phi = out.pattern_alpha.phi;
    out.alpha_fit.phibar = out.pattern_alphabar.phi;
    out.alpha_fit.lambda = out.pattern_alphabar.rho / out.pattern_alpha.rho;
    if (N == 2) {
        // the exponent (2n-N) vanishes at N=2, leaving the phases free; pick
        // the representative that satisfies cos(phi) = lambda cos(phibar)
        out.alpha_fit.phibar = 0.0;
        out.alpha_fit.phi = std::acos(out.alpha_fit.lambda);
    }
    out.alpha_fit.alpha.assign(N, 0.0);
    out.alpha_fit.alphabar.assign(N, 0.0);
    for (int n = 1; n < N; ++n) {
        out.alpha_fit.alpha[n] = out.alpha_raw[n] / out.pattern_alpha.rho;
        out.alpha_fit.alphabar[n] = out.alphabar_raw[n] / out.pattern_alpha.rho;
    }
    return out;
}

// Close the loop: couplings extracted at the shift point of p must satisfy
// the alpha-equation systems with the Fourier data of any family member.
inline double feed_alpha_consistency(const RapidityPoint& p, int L, uint64_t seed = 17) {
    DerivativeHamiltonian dh = derivative_hamiltonian(p, L);
    ChiralAlphas raw;
    raw.N = p.params.N;
    raw.phi = dh.pattern_alpha.phi;
    raw.phibar = dh.pattern_alphabar.phi;
    raw.lambda = dh.alpha_fit.lambda;
    raw.alpha = dh.alpha_raw;
    raw.alphabar = dh.alphabar_raw;
    RapidityPoint q = sample_point(p.params, seed);
    FourierData fd = fourier_data(chiral_weights(p, q));
    return alpha_equation_residual(raw, fd).max();
}

}  // namespace chiralpotts
