#include <doctest.h>

#include <set>

#include "chiralpotts/spectra.hpp"

using namespace chiralpotts;

TEST_CASE("charge projectors") {
    auto P = charge_projectors(3, 2);
    SUBCASE("resolution of the identity and orthogonality") {
        Matrix sum = P[0] + P[1] + P[2];
        CHECK(rel_residual(sum, Matrix::Identity(9, 9)) < 1e-14);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const Matrix prod = P[a] * P[b];
                if (a == b)
                    CHECK(rel_residual(prod, P[a]) < 1e-14);
                else
                    CHECK(prod.norm() < 1e-14);
            }
    }
    SUBCASE("sector dimension against a brute-force orbit count") {
        // count shift-invariant combinations directly: each orbit of the
        // global +1 shift contributes one state per charge
        int orbits = 0;
        std::set<long long> seen;
        for (long long i = 0; i < 9; ++i) {
            if (seen.count(i)) continue;
            long long cur = i;
            for (int s = 0; s < 3; ++s) {
                seen.insert(cur);
                long long next = 0;
                for (int j = 1; j <= 2; ++j)
                    next = next * 3 + (spin_digit(cur, j, 2, 3) + 1) % 3;
                cur = next;
            }
            ++orbits;
        }
        CHECK(orbits == 3);
        CHECK(static_cast<int>(std::round(P[0].trace().real())) == orbits);
    }
}

TEST_CASE("sector spectra") {
    SUBCASE("decoupled chain at lambda = 0 has bond-sum eigenvalues") {
        // alphabar = lambda alpha vanishes, leaving the classical bond term;
        // open boundary, L = 4: three bonds worth +-1 each
        ChiralAlphas a = alphas(2, PI / 2, PI / 2, cplx(0.0, 0.0));
        SpinChainOperator H = hamiltonian(a, 4, Boundary::Open);
        Eigen::SelfAdjointEigenSolver<Matrix> es((H.mat + H.mat.adjoint()) / 2.0);
        std::set<int> values;
        for (int i = 0; i < 16; ++i)
            values.insert(static_cast<int>(std::round(es.eigenvalues()(i))));
        CHECK(values == std::set<int>{-3, -1, 1, 3});
    }
    SUBCASE("sector reassembly reproduces the full spectrum") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
        SpinChainOperator H = hamiltonian(a, 3);
        H.mat *= -1.0 / 3.0;
        std::vector<double> assembled;
        for (int Q = 0; Q < 3; ++Q) {
            SectorSpectrum s = sector_spectrum(H, Q);
            CHECK(s.hermitian);
            int mult = 0;
            for (auto& [v, m] : s.degeneracy) mult += m;
            CHECK(mult == static_cast<int>(s.eigenvalues.size()));
            for (cplx ev : s.eigenvalues) assembled.push_back(ev.real());
        }
        std::sort(assembled.begin(), assembled.end());
        Eigen::SelfAdjointEigenSolver<Matrix> es((H.mat + H.mat.adjoint()) / 2.0);
        double worst = 0.0;
        for (int i = 0; i < 27; ++i)
            worst = std::max(worst, std::abs(assembled[i] - es.eigenvalues()(i)));
        CHECK(worst / H.mat.norm() < 1e-10);
    }
    SUBCASE("diagonalization is reproducible") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
        SpinChainOperator H = hamiltonian(a, 3);
        SectorSpectrum s1 = sector_spectrum(H, 1);
        SectorSpectrum s2 = sector_spectrum(H, 1);
        for (size_t i = 0; i < s1.eigenvalues.size(); ++i)
            CHECK(std::abs(s1.eigenvalues[i] - s2.eigenvalues[i]) < 1e-10);
    }
    SUBCASE("superintegrable degeneracy census: power-of-two multiplicities") {
        ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
        SpinChainOperator H = hamiltonian(a, 3);
        H.mat *= -1.0 / 3.0;
        // census over the full chain: multiplicities within the combined
        // spectrum come out as powers of two (loop-algebra structure)
        std::vector<double> all;
        for (int Q = 0; Q < 3; ++Q)
            for (cplx ev : sector_spectrum(H, Q).eigenvalues) all.push_back(ev.real());
        std::sort(all.begin(), all.end());
        const double tol = 1e-8 * H.mat.norm();
        std::vector<int> mult{1};
        double anchor = all[0];
        for (size_t i = 1; i < all.size(); ++i) {
            if (std::abs(all[i] - anchor) < tol) {
                mult.back() += 1;
            } else {
                anchor = all[i];
                mult.push_back(1);
            }
        }
        for (int m : mult) {
            const bool pow2 = m == 1 || m == 2 || m == 4 || m == 8 || m == 16;
            CHECK(pow2);
        }
    }
}

TEST_CASE("matrix-free applier matches the dense Hamiltonian") {
    ChiralAlphas a = alphas(3, 0.4, 0.3);
    SpinChainOperator H = hamiltonian(a, 4);
    HamiltonianApplier ap(a, 4);
    Rng rng(9);
    Vector x(81);
    for (int i = 0; i < 81; ++i) x(i) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    Vector y;
    ap.apply(x, y);
    CHECK((y - H.mat * x).norm() / (H.mat.norm() * x.norm()) < 1e-13);
}

TEST_CASE("Lanczos agrees with dense diagonalization in a sector") {
    ChiralAlphas a = alphas(3, PI / 2, PI / 2, cplx(0.5, 0.0));
    const int L = 5;
    SpinChainOperator H = hamiltonian(a, L);
    H.mat *= -1.0 / 3.0;
    SectorSpectrum dense = sector_spectrum(H, 0);
    HamiltonianApplier ap(a, L);
    auto apply = [&](const Vector& x, Vector& y) {
        ap.apply(x, y);
        y *= -1.0 / 3.0;
    };
    const auto basis = shift_sector_basis(3, L, 0);
    LanczosResult lr = lanczos_lowest(apply, ipow(3, L), 3, 4, &basis);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(lr.eigenvalues[i] - dense.eigenvalues[i].real()) < 1e-9);
}

TEST_CASE("finite-size order parameter") {
    SUBCASE("conjectured exponents") {
        OrderParameterResult r3 = order_parameter_experiment(3, 0.5, 1, {3, 4});
        CHECK(r3.target == doctest::Approx(std::pow(0.75, 1.0 / 9.0)).epsilon(1e-12));
        OrderParameterResult r4 = order_parameter_experiment(4, 0.5, 2, {3, 4});
        CHECK(r4.target == doctest::Approx(std::pow(0.75, 1.0 / 8.0)).epsilon(1e-12));
    }
    SUBCASE("monotone approach and closeness at N=3, k=1") {
        OrderParameterResult r = order_parameter_experiment(3, 0.5, 1, {4, 5, 6});
        CHECK(r.monotone);
        CHECK(std::abs(r.estimate - r.target) / r.target < 0.05);
        CHECK(!r.degenerate_flag);
    }
    SUBCASE("weak coupling sits near full order") {
        OrderParameterResult r = order_parameter_experiment(3, 0.1, 1, {4, 5});
        CHECK(r.values.back() > 0.99);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(order_parameter_experiment(3, 1.5, 1, {4}), std::invalid_argument);
        CHECK_THROWS_AS(order_parameter_experiment(3, 0.5, 3, {4}), std::invalid_argument);
    }
}
