#pragma once

// The two-parameter coupling family of the chain Hamiltonian,
//   alpha_n    = e^{i(2n-N) phi / N} / sin(pi n / N),
//   alphabar_n = lambda e^{i(2n-N) phibar / N} / sin(pi n / N),
// subject to cos(phi) = lambda cos(phibar).  Index convention follows the
// Hamiltonian: alpha_n multiplies Z_j^n Z_{j+1}^{-n}, alphabar_n multiplies
// X_j^n.

#include <optional>

#include "core.hpp"

namespace chiralpotts {

struct ChiralAlphas {
    int N = 0;
    cplx phi, phibar, lambda;
    std::vector<cplx> alpha;     // alpha[0] unused, alpha[1..N-1]
    std::vector<cplx> alphabar;  // same layout
};

inline cplx alpha_pattern(int N, int n, cplx phi) {
    return std::exp(I_UNIT * static_cast<double>(2 * n - N) * phi / static_cast<double>(N)) /
           std::sin(PI * n / N);
}

inline ChiralAlphas alphas(int N, cplx phi, cplx phibar,
                           std::optional<cplx> lambda_in = std::nullopt) {
    if (N < 2) throw std::invalid_argument("alphas: N must be >= 2");
    ChiralAlphas a;
    a.N = N;
    a.phi = phi;
    a.phibar = phibar;
    if (lambda_in) {
        a.lambda = *lambda_in;
        if (std::abs(std::cos(phi) - a.lambda * std::cos(phibar)) > 1e-10)
            throw std::invalid_argument("alphas: cos(phi) = lambda cos(phibar) violated");
    } else {
        if (std::abs(std::cos(phibar)) < 1e-12)
            throw std::invalid_argument("alphas: lambda underdetermined, cos(phibar) = 0");
        a.lambda = std::cos(phi) / std::cos(phibar);
    }
    a.alpha.assign(N, 0.0);
    a.alphabar.assign(N, 0.0);
    for (int n = 1; n < N; ++n) {
        a.alpha[n] = alpha_pattern(N, n, phi);
        a.alphabar[n] = a.lambda * alpha_pattern(N, n, phibar);
    }
    return a;
}

// Residual of the N=3 coupling condition
// (a1^3 + a2^3)/(a1 a2) = (ab1^3 + ab2^3)/(ab1 ab2).
inline double alpha_condition_residual(const ChiralAlphas& a) {
    if (a.N != 3) throw std::invalid_argument("alpha_condition_residual: defined for N = 3");
    const cplx lhs = (std::pow(a.alpha[1], 3) + std::pow(a.alpha[2], 3)) / (a.alpha[1] * a.alpha[2]);
    const cplx rhs =
        (std::pow(a.alphabar[1], 3) + std::pow(a.alphabar[2], 3)) / (a.alphabar[1] * a.alphabar[2]);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

// Fit (rho, phi) so that values[n] ~ rho e^{i(2n-N) phi/N} / sin(pi n/N),
// n = 1..N-1.  Successive ratios of values[n] sin(pi n/N) all equal
// e^{2 i phi/N}, which turns the nonlinear model into one closed-form solve.
struct AlphaPatternFit {
    cplx rho;
    cplx phi;
    double rel_error;  // of the reconstructed array vs input
};

inline AlphaPatternFit fit_alpha_pattern(int N, const std::vector<cplx>& values) {
    AlphaPatternFit fit{};
    std::vector<cplx> g(N);
    for (int n = 1; n < N; ++n) g[n] = values[n] * std::sin(PI * n / N);
    if (N == 2) {
        fit.rho = g[1];
        fit.phi = 0.0;  // unconstrained at N=2: the exponent (2n-N) vanishes
        fit.rel_error = 0.0;
        return fit;
    }
    cplx t = 0.0;
    for (int n = 1; n < N - 1; ++n) t += g[n + 1] / g[n];
    t /= static_cast<double>(N - 2);
    fit.phi = std::log(t) * static_cast<double>(N) / (2.0 * I_UNIT);
    cplx rho = 0.0;
    for (int n = 1; n < N; ++n)
        rho += g[n] / std::exp(I_UNIT * static_cast<double>(2 * n - N) * fit.phi /
                               static_cast<double>(N));
    fit.rho = rho / static_cast<double>(N - 1);
    double num = 0.0, den = 0.0;
    for (int n = 1; n < N; ++n) {
        const cplx pred = fit.rho *
                          std::exp(I_UNIT * static_cast<double>(2 * n - N) * fit.phi /
                                   static_cast<double>(N)) /
                          std::sin(PI * n / N);
        num += std::norm(pred - values[n]);
        den += std::norm(values[n]);
    }
    fit.rel_error = std::sqrt(num / den);
    return fit;
}

}  // namespace chiralpotts
