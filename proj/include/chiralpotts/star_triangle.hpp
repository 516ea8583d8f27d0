#pragma once

// Direct star-triangle verification over seeded rapidity triples:
//   sum_e Wbar_qr(b-e) W_pr(a-e) Wbar_pq(e-c)
//     = R_pqr  W_pq(a-b) Wbar_pr(b-c) W_qr(a-c).
// The scalar factor R is emergent: extracted from one reference component
// and required to be the same across all components.

#include "core.hpp"
#include "curve.hpp"
#include "weights.hpp"

namespace chiralpotts {

// The two checkerboard colorings of the relation.  Reversed negates every
// spin argument; it must hold with the same scalar factor.
enum class StrOrientation { Standard, Reversed };

struct StrCheckResult {
    cplx R;
    double residual;  // max |lhs - R rhs| over max |lhs|, all N^2 components
};

inline StrCheckResult str_check_tables(const WeightTable& wpq, const WeightTable& wpr,
                                       const WeightTable& wqr,
                                       StrOrientation orient = StrOrientation::Standard) {
    const int N = wpq.N;
    const int sgn = orient == StrOrientation::Standard ? 1 : -1;
    // spin c is fixed to 0: the relation depends on differences only
    Matrix lhs(N, N), rhs(N, N);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            cplx s = 0.0;
            for (int e = 0; e < N; ++e)
                s += wqr.Wbarm(sgn * (b - e)) * wpr.Wm(sgn * (a - e)) * wpq.Wbarm(sgn * e);
            lhs(a, b) = s;
            rhs(a, b) = wpq.Wm(sgn * (a - b)) * wpr.Wbarm(sgn * b) * wqr.Wm(sgn * a);
        }
    }
    const double mlhs = lhs.cwiseAbs().maxCoeff();
    const double mrhs = rhs.cwiseAbs().maxCoeff();
    // reference component: first with a non-negligible right-hand side
    StrCheckResult out{};
    bool found = false;
    for (int a = 0; a < N && !found; ++a)
        for (int b = 0; b < N && !found; ++b)
            if (std::abs(rhs(a, b)) > 1e-8 * mrhs) {
                out.R = lhs(a, b) / rhs(a, b);
                found = true;
            }
    if (!found) throw degenerate_error("str_check: all reference components vanish");
    out.residual = (lhs - out.R * rhs).cwiseAbs().maxCoeff() / std::max(mlhs, 1e-300);
    return out;
}

inline StrCheckResult str_check(const RapidityPoint& p, const RapidityPoint& q,
                                const RapidityPoint& r,
                                StrOrientation orient = StrOrientation::Standard) {
    return str_check_tables(chiral_weights(p, q), chiral_weights(p, r), chiral_weights(q, r),
                            orient);
}

struct StrReport {
    int N = 0;
    int trials = 0;
    double max_residual = 0.0;
    std::vector<cplx> R_factors;
    std::vector<uint64_t> seeds;
};

inline StrReport str_sweep(const CurveParams& params, int trials, uint64_t seed,
                           StrOrientation orient = StrOrientation::Standard) {
    if (trials < 1) throw std::invalid_argument("str_sweep: trials must be >= 1");
    StrReport rep;
    rep.N = params.N;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const uint64_t s0 = seed + 1000003ULL * static_cast<uint64_t>(t);
        try {
            RapidityPoint p = sample_point(params, s0);
            RapidityPoint q = sample_point(params, s0 + 1);
            RapidityPoint r = sample_point(params, s0 + 2);
            StrCheckResult res = str_check(p, q, r, orient);
            rep.max_residual = std::max(rep.max_residual, res.residual);
            rep.R_factors.push_back(res.R);
            rep.seeds.push_back(s0);
        } catch (const std::exception& e) {
            throw std::runtime_error("str_sweep trial " + std::to_string(t) + ": " + e.what());
        }
    }
    return rep;
}

}  // namespace chiralpotts
