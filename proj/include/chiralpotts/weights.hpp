#pragma once

// Product-form Boltzmann weights, their Fourier data, and the consistency /
// alpha-equation machinery that characterizes commuting families.
//
// Orientation conventions (fixed once, used consistently everywhere):
//  * l_n = sum_j w^{-jn} W(j) / sum_j W(j),  lbar_n = Wbar(n)/Wbar(0).
//  * The Fourier duals S, Sbar are taken with the w^{-mk} kernel, which is
//    the sign that makes the S-form equation system hold verbatim for the
//    same coupling vector as the l-form system.
//  * Hamiltonian couplings relate to the family expansion by
//    alpha^{H}_n = d l_{N-n}/du, alphabar^{H}_n = d lbar_n/du; the
//    alpha-equation systems below absorb that index reflection internally,
//    so callers always pass Hamiltonian-orientation ChiralAlphas.

#include <optional>

#include "alphas.hpp"
#include "core.hpp"
#include "curve.hpp"

namespace chiralpotts {

struct WeightProvenance {
    cplx k;
    uint64_t seed = 0;
    std::vector<cplx> point_p;  // (a,b,c,d)
    std::vector<cplx> point_q;
};

struct WeightTable {
    int N = 0;
    std::vector<cplx> W;     // W[0..N-1], W[0] = 1
    std::vector<cplx> Wbar;  // same layout
    double periodicity_residual = 0.0;  // |full-cycle product - 1|, both tables
    std::optional<WeightProvenance> provenance;

    cplx Wm(int n) const { return W[((n % N) + N) % N]; }
    cplx Wbarm(int n) const { return Wbar[((n % N) + N) % N]; }
};

// W_pq(n)/W_pq(0)    = prod_{j=1..n} (d_p b_q - a_p c_q w^j)/(b_p d_q - c_p a_q w^j)
// Wbar_pq(n)/Wbar(0) = prod_{j=1..n} (w a_p d_q - d_p a_q w^j)/(c_p b_q - b_p c_q w^j)
inline WeightTable chiral_weights(const RapidityPoint& p, const RapidityPoint& q) {
    if (p.params.N != q.params.N)
        throw std::invalid_argument("chiral_weights: mismatched curve order");
    const int N = p.params.N;
    const cplx om = primitive_root(N);
    WeightTable wt;
    wt.N = N;
    wt.W.assign(N, 1.0);
    wt.Wbar.assign(N, 1.0);
    cplx cycleW = 1.0, cycleWbar = 1.0;
    for (int j = 1; j <= N; ++j) {
        const cplx omj = std::pow(om, j);
        const cplx numW = p.d * q.b - p.a * q.c * omj;
        const cplx denW = p.b * q.d - p.c * q.a * omj;
        const cplx numWb = om * p.a * q.d - p.d * q.a * omj;
        const cplx denWb = p.c * q.b - p.b * q.c * omj;
        if (std::abs(denW) < 1e-300)
            throw pole_error("chiral_weights: W denominator factor vanishes at j=" + std::to_string(j));
        if (std::abs(denWb) < 1e-300)
            throw pole_error("chiral_weights: Wbar denominator factor vanishes at j=" + std::to_string(j));
        cycleW *= numW / denW;
        cycleWbar *= numWb / denWb;
        if (j < N) {
            wt.W[j] = wt.W[j - 1] * numW / denW;
            wt.Wbar[j] = wt.Wbar[j - 1] * numWb / denWb;
        }
    }
    // Periodicity mod N of the defining product == full-cycle product is 1.
    // Recorded, not enforced: off-curve tables are used as negative controls.
    wt.periodicity_residual = std::max(std::abs(cycleW - 1.0), std::abs(cycleWbar - 1.0));
    return wt;
}

struct FourierData {
    int N = 0;
    std::vector<cplx> l;     // l[0] = 1
    std::vector<cplx> lbar;  // lbar[0] = 1
    std::vector<cplx> S;     // S_m = sum_k w^{-mk} l_k
    std::vector<cplx> Sbar;  // Sbar_m = sum_k w^{-mk} lbar_k

    cplx lm(int n) const { return l[((n % N) + N) % N]; }
    cplx lbarm(int n) const { return lbar[((n % N) + N) % N]; }
    cplx Sm(int n) const { return S[((n % N) + N) % N]; }
    cplx Sbarm(int n) const { return Sbar[((n % N) + N) % N]; }
};

inline FourierData fourier_data(const WeightTable& wt) {
    const int N = wt.N;
    const cplx om = primitive_root(N);
    cplx total = 0.0;
    for (int j = 0; j < N; ++j) total += wt.W[j];
    if (std::abs(total) < 1e-12)
        throw degenerate_error("fourier_data: sum of W(j) vanishes");
    FourierData fd;
    fd.N = N;
    fd.l.assign(N, 0.0);
    fd.lbar.assign(N, 0.0);
    for (int n = 0; n < N; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < N; ++j) acc += std::pow(om, -j * n) * wt.W[j];
        fd.l[n] = acc / total;
        fd.lbar[n] = wt.Wbar[n] / wt.Wbar[0];
    }
    fd.S.assign(N, 0.0);
    fd.Sbar.assign(N, 0.0);
    for (int m = 0; m < N; ++m) {
        for (int k = 0; k < N; ++k) {
            fd.S[m] += std::pow(om, -m * k) * fd.l[k];
            fd.Sbar[m] += std::pow(om, -m * k) * fd.lbar[k];
        }
    }
    return fd;
}

// Inverse of fourier_data on the l-channel: builds the table whose Fourier
// data reproduces (l, lbar).  Used by the self-dual constructor.
inline WeightTable table_from_l(int N, const std::vector<cplx>& l, const std::vector<cplx>& lbar) {
    const cplx om = primitive_root(N);
    WeightTable wt;
    wt.N = N;
    wt.W.assign(N, 0.0);
    wt.Wbar.assign(N, 0.0);
    for (int m = 0; m < N; ++m) {
        cplx acc = 0.0;
        for (int k = 0; k < N; ++k) acc += std::pow(om, m * k) * l[k];
        wt.W[m] = acc;
    }
    if (std::abs(wt.W[0]) < 1e-300) throw degenerate_error("table_from_l: W(0) vanishes");
    for (int m = N - 1; m >= 0; --m) wt.W[m] /= wt.W[0];
    for (int n = 0; n < N; ++n) wt.Wbar[n] = lbar[n] / lbar[0];
    wt.periodicity_residual = 0.0;
    return wt;
}

// Self-dual product form on the twisted Fermat curve:
//   l_n / l_0 = b^{2n} prod_{k=1..n} (w^{-(k-1)/2} y - w^{(k-1)/2} z)
//                                  / (w^{-(N-k)/2} x - w^{(N-k)/2} z),
// lbar_n = l_n, with the half-integer powers fixed as exp(+-i pi m / N).
inline std::vector<cplx> selfdual_l(const SelfDualParams& sd) {
    const int N = sd.N;
    std::vector<cplx> l(N, 1.0);
    const cplx b2 = sd.b_twist * sd.b_twist;
    auto halfpow = [&](double m) { return std::exp(I_UNIT * PI * m / static_cast<double>(N)); };
    for (int n = 1; n < N; ++n) {
        const cplx num = halfpow(-(n - 1)) * sd.y - halfpow(n - 1) * sd.z;
        const cplx den = halfpow(-(N - n)) * sd.x - halfpow(N - n) * sd.z;
        if (std::abs(den) < 1e-300)
            throw pole_error("selfdual_l: denominator factor vanishes at k=" + std::to_string(n));
        l[n] = l[n - 1] * b2 * num / den;
    }
    return l;
}

// W(m) = S_m of lbar (= l), Wbar(n) = l_n.  The S-kernel (not the
// fourier_data inverse) is what makes two same-twist tables pass the
// consistency equations.
inline WeightTable selfdual_weights(const SelfDualParams& sd) {
    const int N = sd.N;
    const cplx om = primitive_root(N);
    const auto l = selfdual_l(sd);
    WeightTable wt;
    wt.N = N;
    wt.W.assign(N, 0.0);
    wt.Wbar = l;  // lbar = l: self-duality
    for (int m = 0; m < N; ++m) {
        cplx acc = 0.0;
        for (int k = 0; k < N; ++k) acc += std::pow(om, -m * k) * l[k];
        wt.W[m] = acc;
    }
    if (std::abs(wt.W[0]) < 1e-300) throw degenerate_error("selfdual_weights: W(0) vanishes");
    for (int m = N - 1; m >= 0; --m) wt.W[m] /= wt.W[0];
    wt.periodicity_residual = 0.0;
    return wt;
}

// ---------------------------------------------------------------------------
// Consistency equations between a weight table (W, Wbar) and a primed one:
//   V_ab V_00 / (V_0b V_a0) = Vbar_ba Vbar_00 / (Vbar_0a Vbar_b0),
// with
//   V_ab    = sum_k w^{bk} W(a+k)  Wbar'(-k),
//   Vbar_ab = sum_k w^{ak} Wbar(-k) W'(b+k).
// Small on-manifold, O(1) otherwise.  Also solves the transformed
// star-triangle system for X_a, Xbar_a (scalar factor absorbed into Xbar).

struct ConsistencyResult {
    double max_residual = 0.0;
    Matrix V, Vbar;            // N x N
    std::vector<cplx> X, Xbar; // solved up to one overall scale
};

inline ConsistencyResult consistency_check(const WeightTable& w, const WeightTable& wp) {
    if (w.N != wp.N) throw std::invalid_argument("consistency_check: mismatched N");
    const int N = w.N;
    const cplx om = primitive_root(N);
    ConsistencyResult out;
    out.V = Matrix::Zero(N, N);
    out.Vbar = Matrix::Zero(N, N);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            for (int k = 0; k < N; ++k) {
                out.V(a, b) += std::pow(om, b * k) * w.Wm(a + k) * wp.Wbarm(-k);
                out.Vbar(a, b) += std::pow(om, a * k) * w.Wbarm(-k) * wp.Wm(b + k);
            }
        }
    }
    for (int a = 1; a < N; ++a) {
        if (std::abs(out.V(a, 0)) < 1e-250 || std::abs(out.V(0, a)) < 1e-250 ||
            std::abs(out.Vbar(a, 0)) < 1e-250 || std::abs(out.Vbar(0, a)) < 1e-250)
            throw degenerate_error("consistency_check: V_a0 or V_0b vanishes");
    }
    for (int a = 1; a < N; ++a) {
        for (int b = 1; b < N; ++b) {
            const cplx lhs = out.V(a, b) * out.V(0, 0) / (out.V(0, b) * out.V(a, 0));
            const cplx rhs = out.Vbar(b, a) * out.Vbar(0, 0) / (out.Vbar(0, a) * out.Vbar(b, 0));
            out.max_residual =
                std::max(out.max_residual, std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs)));
        }
    }
    out.X.assign(N, 0.0);
    out.Xbar.assign(N, 0.0);
    out.X[0] = out.V(0, 0);
    out.Xbar[0] = out.Vbar(0, 0);
    for (int a = 1; a < N; ++a) {
        out.X[a] = out.V(a, 0) * out.Vbar(0, 0) / out.Vbar(0, a);
        out.Xbar[a] = out.Vbar(a, 0) * out.V(0, 0) / out.V(0, a);
    }
    return out;
}

inline double consistency_residual(const WeightTable& w, const WeightTable& wp) {
    return consistency_check(w, wp).max_residual;
}

// ---------------------------------------------------------------------------
// The three equivalent coupling-equation systems for one family member.

struct AlphaEquationResult {
    double eql = 0.0;   // max relative residual of the l-form system
    double eqS = 0.0;   // of the S-form system
    double eql2 = 0.0;  // of the double-Fourier form (see below)
    double max() const { return std::max({eql, eqS, eql2}); }
};

namespace detail {
// effective couplings in the l-expansion orientation
inline void eql_orientation(const ChiralAlphas& a, std::vector<cplx>& al, std::vector<cplx>& ab) {
    const int N = a.N;
    al.assign(N, 0.0);
    ab.assign(N, 0.0);
    for (int n = 1; n < N; ++n) {
        al[n] = a.alpha[N - n];
        ab[n] = a.alphabar[n];
    }
}
}  // namespace detail

inline AlphaEquationResult alpha_equation_residual(const ChiralAlphas& a, const FourierData& fd) {
    if (a.N != fd.N) throw std::invalid_argument("alpha_equation_residual: mismatched N");
    const int N = a.N;
    const cplx om = primitive_root(N);
    for (int k = 0; k < N; ++k) {
        if (std::abs(fd.l[k]) < 1e-250 || std::abs(fd.lbar[k]) < 1e-250 ||
            std::abs(fd.S[k]) < 1e-250 || std::abs(fd.Sbar[k]) < 1e-250)
            throw degenerate_error("alpha_equation_residual: vanishing l_k or S_k");
    }
    std::vector<cplx> al, ab;
    detail::eql_orientation(a, al, ab);
    AlphaEquationResult res;

    // l-form: al_m sum_k (l_{k-m}/l_k) w^{nk} = ab_n sum_k (lbar_{k-n}/lbar_k) w^{mk}
    for (int m = 1; m < N; ++m) {
        for (int n = 1; n < N; ++n) {
            cplx L = 0.0, R = 0.0;
            for (int k = 0; k < N; ++k) {
                L += (fd.lm(k - m) / fd.l[k]) * std::pow(om, n * k);
                R += (fd.lbarm(k - n) / fd.lbar[k]) * std::pow(om, m * k);
            }
            L *= al[m];
            R *= ab[n];
            res.eql = std::max(res.eql, std::abs(L - R) / (std::abs(L) + std::abs(R)));
        }
    }

    // S-form: al_m sum_k (Sbar_{k+m}/Sbar_k) w^{nk} = ab_n sum_k (S_{k+n}/S_k) w^{mk}
    for (int m = 1; m < N; ++m) {
        for (int n = 1; n < N; ++n) {
            cplx L = 0.0, R = 0.0;
            for (int k = 0; k < N; ++k) {
                L += (fd.Sbarm(k + m) / fd.Sbar[k]) * std::pow(om, n * k);
                R += (fd.Sm(k + n) / fd.S[k]) * std::pow(om, m * k);
            }
            L *= al[m];
            R *= ab[n];
            res.eqS = std::max(res.eqS, std::abs(L - R) / (std::abs(L) + std::abs(R)));
        }
    }

    // Double-Fourier form over 0 <= p,q < N (alpha_0 = alphabar_0 = 0):
    //   E(p,q) = sum_m al_m (l_{q-m}/l_q) w^{-mp} - sum_n ab_n (lbar_{p-n}/lbar_p) w^{-nq}.
    // On-manifold E is additively separable, E(p,q) = G(p) - Gbar(q); the
    // border rows carry exactly that separable part (this is the subtraction
    // freedom of the (0,0) row).  The residual is therefore the
    // double-centered remainder, scaled by the largest entry magnitude.
    Matrix E = Matrix::Zero(N, N);
    double scale = 0.0;
    for (int p = 0; p < N; ++p) {
        for (int qq = 0; qq < N; ++qq) {
            cplx L = 0.0, R = 0.0;
            for (int m = 1; m < N; ++m) L += al[m] * (fd.lm(qq - m) / fd.l[qq]) * std::pow(om, -m * p);
            for (int n = 1; n < N; ++n) R += ab[n] * (fd.lbarm(p - n) / fd.lbar[p]) * std::pow(om, -n * qq);
            E(p, qq) = L - R;
            scale = std::max(scale, std::abs(L) + std::abs(R));
        }
    }
    Vector rowmean = E.rowwise().mean();
    Eigen::RowVectorXcd colmean = E.colwise().mean();
    cplx total = E.mean();
    double worst = 0.0;
    for (int p = 0; p < N; ++p)
        for (int qq = 0; qq < N; ++qq)
            worst = std::max(worst, std::abs(E(p, qq) - rowmean(p) - colmean(qq) + total));
    res.eql2 = worst / std::max(scale, 1e-300);
    return res;
}

// ---------------------------------------------------------------------------
// The l-form system is linear and homogeneous in the couplings; on a
// commuting family its coefficient matrix has a one-dimensional null space.
// The null vector is the coupling vector itself (exact to rounding), and
// sigma_min/sigma_max measures the determinant-vanishing claim.

struct SolvedAlphas {
    std::vector<cplx> alpha;     // Hamiltonian orientation
    std::vector<cplx> alphabar;
    double sigma_ratio = 0.0;  // smallest/largest singular value
};

inline SolvedAlphas solve_alphas(const FourierData& fd) {
    const int N = fd.N;
    const cplx om = primitive_root(N);
    const int rows = (N - 1) * (N - 1);
    Matrix M = Matrix::Zero(rows, 2 * (N - 1));
    int r = 0;
    for (int m = 1; m < N; ++m) {
        for (int n = 1; n < N; ++n, ++r) {
            cplx L = 0.0, R = 0.0;
            for (int k = 0; k < N; ++k) {
                L += (fd.lm(k - m) / fd.l[k]) * std::pow(om, n * k);
                R += (fd.lbarm(k - n) / fd.lbar[k]) * std::pow(om, m * k);
            }
            M(r, m - 1) = L;
            M(r, (N - 1) + (n - 1)) = -R;
        }
    }
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    SolvedAlphas out;
    out.sigma_ratio = sv(sv.size() - 1) / sv(0);
    Vector null = svd.matrixV().col(2 * (N - 1) - 1);
    out.alpha.assign(N, 0.0);
    out.alphabar.assign(N, 0.0);
    for (int n = 1; n < N; ++n) {
        out.alpha[n] = null(N - n - 1);          // reflect back to Hamiltonian orientation
        out.alphabar[n] = null((N - 1) + n - 1);
    }
    return out;
}

// Package a solved coupling vector as ChiralAlphas via the pattern fit.
inline ChiralAlphas alphas_from_fourier(const FourierData& fd) {
    SolvedAlphas sol = solve_alphas(fd);
    AlphaPatternFit fa = fit_alpha_pattern(fd.N, sol.alpha);
    AlphaPatternFit fb = fit_alpha_pattern(fd.N, sol.alphabar);
    ChiralAlphas a;
    a.N = fd.N;
    a.phi = fa.phi;
    a.phibar = fb.phi;
    a.lambda = fb.rho / fa.rho;
    if (fd.N == 2) {  // phases are free at N=2; fix the constraint branch
        a.phibar = 0.0;
        a.phi = std::acos(a.lambda);
    }
    a.alpha.assign(fd.N, 0.0);
    a.alphabar.assign(fd.N, 0.0);
    for (int n = 1; n < fd.N; ++n) {
        a.alpha[n] = sol.alpha[n] / fa.rho;
        a.alphabar[n] = sol.alphabar[n] / fa.rho;
    }
    return a;
}

}  // namespace chiralpotts
