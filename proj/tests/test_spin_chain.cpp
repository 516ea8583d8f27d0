#include <doctest.h>

#include "chiralpotts/spin_chain.hpp"

using namespace chiralpotts;

TEST_CASE("coupling family construction") {
    SUBCASE("N=2 has alpha_1 = 1 for every phi") {
        for (double phi : {0.2, 0.9, 1.4}) {
            ChiralAlphas a = alphas(2, phi, 0.0, std::optional<cplx>(std::cos(cplx(phi))));
            CHECK(std::abs(a.alpha[1] - 1.0) < 1e-14);
        }
    }
    SUBCASE("superintegrable point") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.6, 0.0));
        for (int n = 1; n < 3; ++n)
            CHECK(std::abs(a.alphabar[n] - a.lambda * a.alpha[n]) < 1e-14);
    }
    SUBCASE("N=3 coupling condition holds identically on the constraint surface") {
        Rng rng(5);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const cplx phi(rng.uniform(-1.2, 1.2), rng.uniform(-0.4, 0.4));
            const cplx phibar(rng.uniform(-1.2, 1.2), rng.uniform(-0.4, 0.4));
            worst = std::max(worst, alpha_condition_residual(alphas(3, phi, phibar)));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("lambda bookkeeping errors") {
        CHECK_THROWS_AS(alphas(3, 0.3, PI / 2), std::invalid_argument);  // underdetermined
        CHECK_THROWS_AS(alphas(3, 0.3, 0.4, std::optional<cplx>(cplx(5.0, 0.0))),
                        std::invalid_argument);  // constraint violated
    }
}

TEST_CASE("chain Hamiltonian") {
    SUBCASE("N=2 is the transverse-field Ising chain") {
        const cplx J(-0.8, 0.0), B(-0.45, 0.0);
        ChiralAlphas a;
        a.N = 2;
        a.alpha = {0.0, -J};
        a.alphabar = {0.0, -B};
        const int L = 4;
        SpinChainOperator H = hamiltonian(a, L);
        ClockPair cp = clock_pair(2);
        Matrix ising = Matrix::Zero(16, 16);
        for (int j = 1; j <= L; ++j) {
            const int jn = j == L ? 1 : j + 1;
            ising -= J * embed_at_site(cp.Z, j, L).mat * embed_at_site(cp.Z, jn, L).mat;
            ising -= B * embed_at_site(cp.X, j, L).mat;
        }
        CHECK(rel_residual(H.mat, ising) < 1e-14);
        CHECK(is_hermitian(H.mat));
    }
    SUBCASE("single open site has no bond term") {
        ChiralAlphas a = alphas(3, 0.4, 0.3);
        SpinChainOperator H = hamiltonian(a, 1, Boundary::Open);
        ClockPair cp = clock_pair(3);
        Matrix expect = Matrix::Zero(3, 3);
        for (int n = 1; n < 3; ++n) expect += a.alphabar[n] * matrix_power(cp.X, n);
        CHECK(rel_residual(H.mat, expect) < 1e-14);
    }
    SUBCASE("commutes with the global spin shift") {
        ChiralAlphas a = alphas(3, 0.4, 0.3);
        SpinChainOperator H = hamiltonian(a, 3);
        SpinChainOperator S = global_shift(3, 3);
        CHECK(commutator(H.mat, S.mat).norm() / (H.mat.norm() * S.mat.norm()) < 1e-14);
    }
    SUBCASE("capacity is enforced") {
        ChiralAlphas a = alphas(3, 0.4, 0.3);
        CHECK_THROWS_AS(hamiltonian(a, 9), capacity_error);
    }
}

TEST_CASE("Dolan-Grady and the superintegrable split") {
    SUBCASE("Ising pair at N=2, L=4") {
        ChiralAlphas a = alphas(2, PI / 2, PI / 2, cplx(0.5, 0.0));
        SuperintegrableSplit sp = superintegrable_split(a, 4);
        CHECK(sp.dg.residual < 1e-11);
        CHECK(std::abs(sp.dg.constant - 16.0) < 1e-9);
        DolanGradyResult dual = dolan_grady_check(sp.A1.mat, sp.A0.mat);
        CHECK(dual.residual < 1e-11);
        CHECK(std::abs(dual.constant - 16.0) < 1e-9);
    }
    SUBCASE("N=3 and N=4 superintegrable chains") {
        for (int N : {3, 4}) {
            ChiralAlphas a = alphas(N, PI / 2, PI / 2, cplx(0.5, 0.0));
            const int L = N == 3 ? 3 : 3;
            SuperintegrableSplit sp = superintegrable_split(a, L);
            CHECK(sp.dg.residual < 1e-10);
            CHECK(std::abs(sp.dg.constant - 16.0) < 1e-9);
            CHECK(sp.dg.constant.real() > 0.0);
        }
    }
    SUBCASE("random pairs fail the proportionality") {
        Rng rng(8);
        Matrix A0 = Matrix::Random(16, 16), A1 = Matrix::Random(16, 16);
        DolanGradyResult dg = dolan_grady_check(A0, A1);
        CHECK(dg.residual > 0.1);
        (void)rng;
    }
    SUBCASE("vanishing commutator is rejected") {
        Matrix A = Matrix::Random(8, 8);
        CHECK_THROWS_AS(dolan_grady_check(A, A), degenerate_error);
    }
    SUBCASE("non-superintegrable parameters are rejected") {
        ChiralAlphas a = alphas(3, 0.4, 0.3);
        CHECK_THROWS_AS(superintegrable_split(a, 3), std::invalid_argument);
    }
}

TEST_CASE("Onsager ladder") {
    SUBCASE("relations hold at depth 2") {
        // N=2 up to L=6 and N=3 up to L=4
        for (auto [N, L] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {3, 3}, {3, 4}}) {
            ChiralAlphas a = alphas(N, PI / 2, PI / 2, cplx(0.5, 0.0));
            SuperintegrableSplit sp = superintegrable_split(a, L);
            OnsagerLadder lad = onsager_ladder(sp.A0.mat, sp.A1.mat, 2, 1e-9);
            CHECK(lad.max_relation_residual < 1e-9);
        }
    }
    SUBCASE("G_0 = 0 by antisymmetry") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
        SuperintegrableSplit sp = superintegrable_split(a, 3);
        OnsagerLadder lad = onsager_ladder(sp.A0.mat, sp.A1.mat, 2);
        CHECK(lad.G.at(0).norm() == 0.0);
    }
    SUBCASE("cross-route consistency [A_2, A_0] = 4 G_2") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
        SuperintegrableSplit sp = superintegrable_split(a, 3);
        OnsagerLadder lad = onsager_ladder(sp.A0.mat, sp.A1.mat, 2);
        const Matrix lhs = commutator(lad.A.at(2), lad.A.at(0));
        CHECK(rel_residual(lhs, Matrix(4.0 * lad.G.at(2))) < 1e-9);
    }
    SUBCASE("non-integrable seeds break the ladder") {
        Matrix A0 = Matrix::Random(9, 9), A1 = Matrix::Random(9, 9);
        CHECK_THROWS_AS(onsager_ladder(A0, A1, 2, 1e-9), ladder_error);
    }
}

TEST_CASE("Clifford spinors at N=2") {
    auto gam = clifford_spinors(3);
    CHECK(gam.size() == 6);
    ClockPair cp = clock_pair(2);
    SUBCASE("Gamma_1 = Z_1") {
        CHECK((gam[0].mat - embed_at_site(cp.Z, 1, 3).mat).norm() < 1e-15);
    }
    SUBCASE("squares are the identity") {
        for (const auto& g : gam)
            CHECK(rel_residual(Matrix(g.mat * g.mat), Matrix::Identity(8, 8)) < 1e-14);
    }
    SUBCASE("anticommutation at L=2 is exact") {
        auto g2 = clifford_spinors(2);
        const Matrix anti = g2[0].mat * g2[1].mat + g2[1].mat * g2[0].mat;
        CHECK(anti.norm() == 0.0);
    }
}
