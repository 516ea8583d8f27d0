#pragma once

// Rapidity curves: sampling points of a^N + k' b^N = k d^N,
// k' a^N + b^N = k c^N (k^2 + k'^2 = 1), the twisted Fermat curve of the
// self-dual family, and the N=3 genus-10 relation between the Fourier
// variables (l1, l2) and the chain couplings.

#include "alphas.hpp"
#include "core.hpp"

namespace chiralpotts {

struct CurveParams {
    int N = 0;
    cplx k;
    cplx kprime;
    bool degenerate = false;  // k in {0, +-1}: branch solves divide by k or k'
};

inline CurveParams curve_params(int N, cplx k) {
    if (N < 2) throw std::invalid_argument("curve_params: N must be >= 2");
    CurveParams cp;
    cp.N = N;
    cp.k = k;
    cp.kprime = std::sqrt(cplx(1.0, 0.0) - k * k);
    cp.degenerate = std::abs(k) < 1e-12 || std::abs(k - 1.0) < 1e-12 || std::abs(k + 1.0) < 1e-12;
    return cp;
}

struct RapidityPoint {
    CurveParams params;
    cplx a, b, c, d;

    cplx x() const { return a / d; }
    cplx y() const { return b / c; }
    cplx mu() const { return d / c; }
};

// max of the two curve-equation residuals, relative to |k d^N| resp. |k c^N|
inline double curve_residual(const RapidityPoint& p) {
    const int N = p.params.N;
    const cplx k = p.params.k, kp = p.params.kprime;
    const cplx aN = std::pow(p.a, N), bN = std::pow(p.b, N);
    const cplx cN = std::pow(p.c, N), dN = std::pow(p.d, N);
    const double r1 = std::abs(aN + kp * bN - k * dN) / std::max(std::abs(k * dN), 1e-300);
    const double r2 = std::abs(kp * aN + bN - k * cN) / std::max(std::abs(k * cN), 1e-300);
    return std::max(r1, r2);
}

// d = 1, a drawn on the annulus 0.5 <= |a| <= 1.5, then b^N and c^N are
// forced by the curve equations; the N-th roots are picked by a seeded
// uniform branch choice (all N^2 branch pairs are valid rapidities).
inline RapidityPoint sample_point(const CurveParams& params, uint64_t seed) {
    Rng rng = Rng::substream(seed, 0xC0FFEE);
    const int N = params.N;
    const cplx k = params.k, kp = params.kprime;
    if (std::abs(kp) < 1e-12 || std::abs(k) < 1e-12)
        throw branch_error("sample_point: k or k' vanishes; generic branch solve impossible");
    RapidityPoint p;
    p.params = params;
    p.d = 1.0;
    p.a = rng.annulus();
    const cplx bN = (k - std::pow(p.a, N)) / kp;
    p.b = std::pow(bN, 1.0 / N) * std::pow(primitive_root(N), rng.uniform_int(N));
    const cplx cN = (kp * std::pow(p.a, N) + std::pow(p.b, N)) / k;
    p.c = std::pow(cN, 1.0 / N) * std::pow(primitive_root(N), rng.uniform_int(N));
    return p;
}

// Rebuild a point from affine coordinates (x, y, mu); c = 1.
inline RapidityPoint point_from_xymu(const CurveParams& params, cplx x, cplx y, cplx mu) {
    RapidityPoint p;
    p.params = params;
    p.c = 1.0;
    p.d = mu;
    p.a = x * mu;
    p.b = y;
    return p;
}

// Self-dual family: point (x, y, z) on the twisted Fermat curve
// b^-N (x^N - z^N) = b^N (y^N - z^N), b = exp(i phi / N).
struct SelfDualParams {
    int N = 0;
    cplx phi;
    cplx b_twist;
    cplx x, y, z;
};

inline double fermat_residual(const SelfDualParams& sd) {
    const int N = sd.N;
    const cplx lhs = std::pow(sd.b_twist, -N) * (std::pow(sd.x, N) - std::pow(sd.z, N));
    const cplx rhs = std::pow(sd.b_twist, N) * (std::pow(sd.y, N) - std::pow(sd.z, N));
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

inline SelfDualParams fermat_selfdual_point(int N, cplx phi, uint64_t seed) {
    if (N < 2) throw std::invalid_argument("fermat_selfdual_point: N must be >= 2");
    Rng rng = Rng::substream(seed, 0xFE12A7);
    SelfDualParams sd;
    sd.N = N;
    sd.phi = phi;
    sd.b_twist = std::exp(I_UNIT * phi / static_cast<double>(N));
    sd.z = 1.0;
    sd.x = rng.annulus();
    const cplx yN = std::pow(sd.z, N) +
                    std::pow(sd.b_twist, -2 * N) * (std::pow(sd.x, N) - std::pow(sd.z, N));
    sd.y = std::pow(yN, 1.0 / N) * std::pow(primitive_root(N), rng.uniform_int(N));
    return sd;
}

// Genus of the twisted Fermat curve for generic twist.
inline int fermat_genus(int N) { return (N - 1) * (N - 2) / 2; }

// N=3 curve in the Fourier variables (l1, l2) of one member of a commuting
// family with couplings `alpha`:
//
//   (ab1^3-ab2^3)/(a1^3-a2^3) * (a1 a2)/(ab1 ab2) * 3 sqrt(3) i
//       * (l1^3+l2^3-l1 l2-l1^2 l2^2) l1 l2 (1-l1 l2)
//   = (1+l1^3+l2^3-3 l1 l2)(l1^3+l2^3+l1^3 l2^3-3 l1^2 l2^2)
//   + (a1^3+a2^3)/(a1^3-a2^3) * (l1^3-l2^3)(1+l1^3 l2^3-l1^3-l2^3)
//
// Returns |LHS - RHS| over the largest term magnitude.
inline double genus10_residual(cplx l1, cplx l2, const ChiralAlphas& alpha) {
    if (alpha.N != 3) throw std::invalid_argument("genus10_residual: requires N = 3 couplings");
    const cplx a1 = alpha.alpha[1], a2 = alpha.alpha[2];
    const cplx ab1 = alpha.alphabar[1], ab2 = alpha.alphabar[2];
    const cplx a13 = a1 * a1 * a1, a23 = a2 * a2 * a2;
    const cplx ab13 = ab1 * ab1 * ab1, ab23 = ab2 * ab2 * ab2;
    const cplx l13 = l1 * l1 * l1, l23 = l2 * l2 * l2;
    const cplx t1 = ((ab13 - ab23) / (a13 - a23)) * ((a1 * a2) / (ab1 * ab2)) * 3.0 *
                    std::sqrt(3.0) * I_UNIT * (l13 + l23 - l1 * l2 - l1 * l1 * l2 * l2) * l1 * l2 *
                    (1.0 - l1 * l2);
    const cplx t2 = (1.0 + l13 + l23 - 3.0 * l1 * l2) *
                    (l13 + l23 + l13 * l23 - 3.0 * l1 * l1 * l2 * l2);
    const cplx t3 = ((a13 + a23) / (a13 - a23)) * (l13 - l23) * (1.0 + l13 * l23 - l13 - l23);
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
    return std::abs(t1 - t2 - t3) / scale;
}

}  // namespace chiralpotts
