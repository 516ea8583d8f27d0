#include <doctest.h>

#include "chiralpotts/qgroup.hpp"

using namespace chiralpotts;

TEST_CASE("q-integers, factorials, brackets") {
    CHECK(std::abs(q_int(3, 2.0) - 7.0) < 1e-14);            // 1 + 2 + 4
    CHECK(std::abs(q_int(4, cplx(0.0, 1.0))) < 1e-14);       // (N)_w = 0 at N=4, w=i
    CHECK(std::abs(q_bracket(2, 1.0) - 2.0) < 1e-14);        // limit at q=1
    CHECK(std::abs(q_factorial(3, 2.0) - 21.0) < 1e-13);     // 7 * 3 * 1
}

TEST_CASE("truncated representation") {
    SUBCASE("entries and relation residuals over random q") {
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            const cplx q(rng.uniform(0.5, 1.8), rng.uniform(-0.5, 0.5));
            TruncatedRep tr = truncated_rep(q, 8);
            CHECK(std::abs(tr.eq(0, 1) - 1.0) < 1e-15);  // (1)_q = 1
            CHECK(truncated_rep_residual(tr) < 1e-14);
        }
    }
    SUBCASE("root-of-unity block decoupling") {
        const int N = 3;
        TruncatedRep tr = truncated_rep(primitive_root(N), 9);
        Tau2Rep fin = tau2_rep_finite(N);
        // couplings out of the first block vanish
        CHECK(std::abs(tr.eq(N - 1, N)) < 1e-14);
        CHECK(std::abs(tr.fq(N, N - 1)) < 1e-14);
        CHECK(std::abs(tr.eq(2 * N - 1, 2 * N)) < 1e-14);
        // first block is the finite clock representation
        CHECK((tr.eq.topLeftCorner(N, N) - fin.e).norm() < 1e-14);
        CHECK((tr.fq.topLeftCorner(N, N) - fin.f).norm() < 1e-14);
        CHECK((tr.Zq.topLeftCorner(N, N) - fin.Z).norm() < 1e-14);
    }
    SUBCASE("M < 4 is rejected") {
        CHECK_THROWS_AS(truncated_rep(1.3, 3), std::invalid_argument);
    }
}

TEST_CASE("quantum-group generators") {
    SUBCASE("finite representations at both square roots, N = 2..5") {
        for (int N = 2; N <= 5; ++N) {
            for (int sign : {+1, -1}) {
                QGroupRep g = generators_finite(N, cplx(0.77, 0.31), sign);
                CHECK(qgroup_relation_residuals(g).max_residual < 1e-11);
            }
        }
    }
    SUBCASE("both signs give identical residual tables") {
        QGroupRep gp = generators_finite(3, cplx(0.77, 0.31), +1);
        QGroupRep gm = generators_finite(3, cplx(0.77, 0.31), -1);
        auto rp = qgroup_relation_residuals(gp), rm = qgroup_relation_residuals(gm);
        for (size_t i = 0; i < rp.residuals.size(); ++i)
            CHECK(std::abs(rp.residuals[i].second - rm.residuals[i].second) < 1e-11);
    }
    SUBCASE("truncated representation at generic q") {
        QGroupRep g = generators_truncated(cplx(1.3, 0.0), cplx(0.5, 0.2), 12);
        QGroupRelationReport rr = qgroup_relation_residuals(g);
        CHECK(rr.max_residual < 1e-11);
        for (auto& [name, r] : rr.residuals)
            INFO(name, " -> ", r);
    }
    SUBCASE("lambda covariance is exact") {
        QGroupRep g1 = generators_truncated(cplx(1.3, 0.0), cplx(0.5, 0.2), 8);
        QGroupRep g2 = generators_truncated(cplx(1.3, 0.0), cplx(1.0, 0.4), 8);  // lambda doubled
        CHECK((g2.e1 - g1.e1 / 2.0).norm() < 1e-14);
        CHECK((g2.f1 - 2.0 * g1.f1).norm() < 1e-14);
    }
    SUBCASE("degenerate q is rejected") {
        CHECK_THROWS_AS(generators(1.0, 0.5, RepKind::Truncated, 8), std::invalid_argument);
        CHECK_THROWS_AS(generators(-1.0, 0.5, RepKind::Truncated, 8), std::invalid_argument);
    }
    SUBCASE("divided powers of e0 stay finite at roots of unity (Laurent property)") {
        // e0^n / [n]_q! has a finite limit as q -> the root; probe the
        // symmetric deformation at N = 3, n = 3 on a truncated space
        const int N = 3, n = 3, M = 9;
        const cplx root = std::exp(I_UNIT * PI / static_cast<double>(N));  // w^{1/2}
        auto efam = [&](cplx q) {
            QGroupRep g = generators(q, cplx(0.5, 0.2), RepKind::Truncated, M);
            Matrix num = Matrix::Identity(M, M);
            for (int i = 0; i < n; ++i) num = num * g.e0;
            cplx fact = 1.0;
            for (int j = 1; j <= n; ++j) fact *= q_bracket(j, q);
            return Matrix(num / fact);
        };
        std::vector<Matrix> vals;
        std::vector<double> lad{1e-2, 5e-3, 2.5e-3};
        for (double e : lad)
            vals.push_back(0.5 * (efam(root * std::exp(cplx(e, 0.0))) +
                                  efam(root * std::exp(cplx(-e, 0.0)))));
        const Matrix lim = detail::extrapolate_eps2(vals, lad);
        CHECK(std::isfinite(lim.norm()));
        CHECK(lim.topLeftCorner(M - 4, M - 4).norm() > 1e-10);
        CHECK((vals[2] - lim).topLeftCorner(M - 4, M - 4).norm() /
                  lim.topLeftCorner(M - 4, M - 4).norm() <
              1e-3);
    }
}

TEST_CASE("coproducts") {
    QGroupRep g = generators_finite(3, cplx(0.9, -0.4));
    SUBCASE("group-like Cartan images") {
        QGroupRep d = coproduct(g, g);
        CHECK((d.k0 - kron(g.k0, g.k0)).norm() < 1e-14);
        CHECK((d.k1 - kron(g.k1, g.k1)).norm() < 1e-14);
    }
    SUBCASE("tensor representation satisfies every relation") {
        CHECK(qgroup_relation_residuals(coproduct(g, g)).max_residual < 1e-11);
    }
    SUBCASE("coassociativity with three finite factors") {
        CHECK(coassociativity_residual(g) < 1e-11);
    }
    SUBCASE("truncated factors compose too") {
        QGroupRep gt = generators_truncated(cplx(1.25, 0.1), cplx(0.7, 0.0), 8);
        CHECK(qgroup_relation_residuals(coproduct(gt, gt)).max_residual < 1e-11);
    }
    SUBCASE("mismatched deformation parameters are rejected") {
        QGroupRep a = generators_truncated(cplx(1.3, 0.0), 0.5, 8);
        QGroupRep b = generators_truncated(cplx(1.4, 0.0), 0.5, 8);
        CHECK_THROWS_AS(coproduct(a, b), std::invalid_argument);
    }
}

TEST_CASE("monodromy coefficients are iterated coproducts") {
    CHECK(monodromy_coproduct_check(1, 3) < 1e-14);
    CHECK(monodromy_coproduct_check(2, 3) < 1e-12);
    CHECK(monodromy_coproduct_check(3, 3) < 1e-12);
    CHECK(monodromy_coproduct_check(2, 4) < 1e-12);
}

TEST_CASE("divided powers at the root of unity") {
    const int N = 3, L = 2, M = 6;
    const cplx omega = primitive_root(N);
    auto B1fam = [&](cplx q) { return deformed_B1(q, M, L); };
    SUBCASE("below the order the evaluation is direct") {
        DividedPower dp = divided_power(B1fam, 2, omega);
        CHECK(!dp.used_limit);
        Matrix B = B1fam(omega);
        CHECK(rel_residual(dp.op, Matrix(B * B / q_factorial(2, omega))) < 1e-14);
    }
    SUBCASE("at the order, the power vanishes but the divided power does not") {
        Matrix B = B1fam(omega);
        Matrix BN = Matrix::Identity(B.rows(), B.cols());
        for (int i = 0; i < N; ++i) BN = BN * B;
        CHECK(BN.norm() < 1e-12);  // nilpotency
        DividedPower dp = divided_power(B1fam, N, omega);
        CHECK(dp.used_limit);
        CHECK(dp.op.norm() > 1.0);
        CHECK(dp.error_estimate < 1e-6);  // halving the ladder barely moves it
    }
    SUBCASE("convergence is quadratic in the deformation") {
        DividedPower dp = divided_power(B1fam, N, omega);
        // measure the slope of |f(eps) - limit| on the default ladder
        std::vector<double> lad{1e-2, 5e-3, 2.5e-3}, errs;
        for (double e : lad) {
            auto sym = 0.5 * (B1fam(omega * std::exp(cplx(e, 0.0))) +
                              B1fam(omega * std::exp(cplx(-e, 0.0))));
            Matrix num = Matrix::Identity(sym.rows(), sym.cols());
            // evaluate the full divided power symmetrically
            auto f = [&](double eps) {
                const cplx q = omega * std::exp(cplx(eps, 0.0));
                Matrix B = B1fam(q);
                Matrix nn = Matrix::Identity(B.rows(), B.cols());
                for (int i = 0; i < N; ++i) nn = nn * B;
                return Matrix(nn / q_factorial(N, q));
            };
            errs.push_back((0.5 * (f(e) + f(-e)) - dp.op).norm());
        }
        const double slope = std::log(errs[0] / errs[2]) / std::log(lad[0] / lad[2]);
        CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
    }
}

TEST_CASE("sector operators and the Serre relations") {
    SUBCASE("clock-charge sectors partition the chain space") {
        size_t total = 0;
        for (int Q = 0; Q < 3; ++Q) total += clock_charge_indices(3, 3, Q).size();
        CHECK(total == 27);
    }
    SUBCASE("Q = 0 at L = 2") {
        SectorOperators so = sector_operators(2, 3, 0);
        CHECK(so.serre_plus < 1e-5);
        CHECK(so.serre_minus < 1e-5);
        CHECK(so.extrapolation_error < 1e-5);
    }
    SUBCASE("all charges at N = 3, L = 3") {
        for (int Q = 0; Q < 3; ++Q) {
            SectorOperators so = sector_operators(3, 3, Q);
            CHECK(so.serre_plus < 1e-5);
            CHECK(so.serre_minus < 1e-5);
            CHECK(so.xplus.norm() > 1e-8);  // nontrivial operators
        }
    }
    SUBCASE("invalid charge is rejected") {
        CHECK_THROWS_AS(sector_operators(2, 3, 3), std::invalid_argument);
    }
}
