#include <doctest.h>

#include "chiralpotts/tau2.hpp"

using namespace chiralpotts;

TEST_CASE("six-vertex R in the asymmetric gauge") {
    const cplx x(0.4, 0.3), y(-0.8, 0.2), q(1.3, 0.4);
    SixVertexR R = six_vertex_R(x, y, q);
    SUBCASE("entry (2,3) reads (x/y)(1 - 1/q)") {
        CHECK(std::abs(R.matrix(1, 2) - (x / y) * (1.0 - 1.0 / q)) < 1e-15);
    }
    SUBCASE("coincident points give the middle swap") {
        SixVertexR Rd = six_vertex_R(x, x, q);
        Eigen::Matrix4cd perm = Eigen::Matrix4cd::Zero();
        perm(0, 0) = perm(3, 3) = 1.0;
        perm(1, 2) = perm(2, 1) = 1.0;
        CHECK((Rd.matrix - (1.0 - 1.0 / q) * perm).norm() < 1e-14);
    }
    SUBCASE("q -> 1 kills the off-diagonal entries") {
        SixVertexR R1 = six_vertex_R(x, y, 1.0 + 1e-13);
        CHECK(std::abs(R1.matrix(2, 1)) < 1e-12);
        CHECK(std::abs(R1.matrix(1, 2)) < 1e-12);
    }
    SUBCASE("y = 0 is rejected") {
        CHECK_THROWS_AS(six_vertex_R(x, 0.0, q), std::invalid_argument);
    }
}

TEST_CASE("tau2 L-operator blocks") {
    Tau2Rep rep = tau2_rep_finite(3);
    SUBCASE("x = 0 is block lower-triangular") {
        Tau2L U = tau2_L(0.0, rep);
        CHECK(U.U01.norm() == 0.0);
        CHECK(rel_residual(U.U00, Matrix::Identity(3, 3)) < 1e-15);
        CHECK(rel_residual(U.U11, Matrix(rep.q * rep.Z)) < 1e-15);
        // U10 = X^{-1}(1-Z) = (1-w) e
        CHECK(rel_residual(U.U10, Matrix((1.0 - rep.q) * rep.e)) < 1e-15);
    }
    SUBCASE("one-dimensional degenerate rep gives scalars") {
        Tau2Rep one;
        one.finite = true;
        one.dim = 1;
        one.q = cplx(0.37, 0.2);  // placeholder root; blocks stay scalar
        one.window = 0;
        one.e = Matrix::Zero(1, 1);
        one.f = Matrix::Zero(1, 1);
        one.Z = Matrix::Identity(1, 1);
        const cplx x(0.5, -0.1);
        Tau2L U = tau2_L(x, one);
        CHECK(std::abs(U.U00(0, 0) - (1.0 - one.q * x)) < 1e-15);
        CHECK(std::abs(U.U11(0, 0) - one.q * (1.0 - x)) < 1e-15);
        CHECK(std::abs(U.U01(0, 0)) < 1e-15);
        CHECK(std::abs(U.U10(0, 0)) < 1e-15);
    }
}

TEST_CASE("Yang-Baxter with the six-vertex R") {
    Rng rng(17);
    SUBCASE("finite representations") {
        for (int N : {2, 3, 4}) {
            Tau2Rep rep = tau2_rep_finite(N);
            for (int L = 1; L <= 3; ++L) {
                YbeResult yb = ybe_check(rng.annulus(), rng.annulus(), L, rep);
                CHECK(yb.full_residual < 1e-11);
                CHECK(yb.max_component < 1e-11);
                CHECK(std::abs(yb.full_residual - yb.max_component) < 1e-12);
            }
        }
    }
    SUBCASE("N=2 single site is the direct 8x8 contraction") {
        Tau2Rep rep = tau2_rep_finite(2);
        YbeResult yb = ybe_check(cplx(0.3, 0.7), cplx(-0.6, 0.2), 1, rep);
        CHECK(yb.full_residual < 1e-13);
    }
    SUBCASE("truncated representation on the guarded window") {
        Tau2Rep rep = tau2_rep_truncated(cplx(1.7, 0.0), 12);
        for (int L : {1, 2}) {
            YbeResult yb = ybe_check(rng.annulus(), rng.annulus(), L, rep);
            CHECK(yb.full_residual < 1e-11);
            CHECK(yb.max_component < 1e-11);
        }
    }
    SUBCASE("x = y trivializes") {
        Tau2Rep rep = tau2_rep_finite(3);
        const cplx x(0.4, 0.1);
        YbeResult yb = ybe_check(x, x, 2, rep);
        CHECK(yb.full_residual < 1e-14);
    }
}

TEST_CASE("the A<->C, B<->D relabeling symmetry maps the relation set onto itself") {
    Tau2Rep rep = tau2_rep_finite(3);
    const cplx x(0.43, 0.9), y(-0.77, 0.31);
    MonodromyBlocks mx = monodromy(x, 2, rep), my = monodromy(y, 2, rep);
    const auto base = sixteen_relations(mx, my, x, y);
    MonodromyBlocks sx = mx, sy = my;
    std::swap(sx.A, sx.C);
    std::swap(sx.B, sx.D);
    std::swap(sy.A, sy.C);
    std::swap(sy.B, sy.D);
    const auto swapped = sixteen_relations(sx, sy, x, y);
    // indices: 4 trivial, AB pair = 4,5 <-> CD pair = 10,11; AC = 6,7 <-> BD = 8,9
    CHECK(std::abs(swapped[4] - base[10]) < 1e-12);
    CHECK(std::abs(swapped[5] - base[11]) < 1e-12);
    CHECK(std::abs(swapped[6] - base[8]) < 1e-12);
    CHECK(std::abs(swapped[7] - base[9]) < 1e-12);
    CHECK(std::abs(swapped[10] - base[4]) < 1e-12);
    CHECK(std::abs(swapped[11] - base[5]) < 1e-12);
}

TEST_CASE("monodromy polynomial structure") {
    Tau2Rep rep = tau2_rep_finite(3);
    SUBCASE("single site equals the L-operator") {
        MonodromyBlocks mb = monodromy(cplx(0.3, 0.2), 1, rep);
        Tau2L U = tau2_L(cplx(0.3, 0.2), rep);
        CHECK((mb.A - U.U00).norm() < 1e-15);
        CHECK((mb.B - U.U01).norm() < 1e-15);
        CHECK((mb.C - U.U10).norm() < 1e-15);
        CHECK((mb.D - U.U11).norm() < 1e-15);
    }
    SUBCASE("degrees and explicit coefficients") {
        for (int L = 1; L <= 3; ++L) {
            MonodromyPoly mp = expand_monodromy(L, rep);
            CHECK(mp.method_agreement < 1e-12);
            CHECK(coefficient_identities_check(mp) < 1e-12);
            CHECK(coefficient_commutativity(mp) < 1e-12);
            CHECK(mp.A[L].norm() > 0.5);  // degree exactly L
        }
    }
    SUBCASE("L=1 has Bbar_L = Bbar_1 = f") {
        MonodromyPoly mp = expand_monodromy(1, rep);
        CHECK(rel_residual(Matrix(mp.B[1] / (1.0 - rep.q)), rep.f) < 1e-14);
    }
    SUBCASE("coefficients reconstruct the monodromy at a fresh node") {
        const int L = 3;
        MonodromyPoly mp = expand_monodromy(L, rep);
        const cplx xf(0.62, -0.35);       // fresh evaluation point
        const cplx u = -rep.q * xf;       // expansion variable
        MonodromyBlocks direct = monodromy(xf, L, rep);
        Matrix A = Matrix::Zero(27, 27);
        for (int d = 0; d <= L; ++d) A += std::pow(u, d) * mp.A[d];
        CHECK(rel_residual(A, direct.A) < 1e-11);
        Matrix B = Matrix::Zero(27, 27);
        for (int d = 0; d <= L; ++d) B += std::pow(u, d) * mp.B[d];
        CHECK(rel_residual(B, direct.B) < 1e-11);
    }
}

TEST_CASE("the ten commutator and six q-commutator relations") {
    Rng rng(23);
    Tau2Rep rep = tau2_rep_finite(3);
    SUBCASE("20 random spectral pairs at L=2") {
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            CommutatorRelations cr = commutator_relations_check(2, rep, rng.annulus(), rng.annulus());
            worst = std::max(worst, cr.max_residual);
            CHECK(cr.residuals.size() == 16);
        }
        CHECK(worst < 1e-11);
    }
    SUBCASE("x = y trivializes every relation") {
        const cplx x(0.7, 0.4);
        CommutatorRelations cr = commutator_relations_check(2, rep, x, x);
        CHECK(cr.max_residual < 1e-14);
    }
    SUBCASE("truncated representation on the window") {
        Tau2Rep rt = tau2_rep_truncated(cplx(1.7, 0.0), 12);
        CommutatorRelations cr = commutator_relations_check(1, rt, rng.annulus(), rng.annulus());
        CHECK(cr.max_residual < 1e-11);
    }
}

TEST_CASE("star-square triangularity ties the weights to the tau2 block") {
    CurveParams cp = curve_params(3, 0.8);
    SUBCASE("the q' partner lies on the curve") {
        RapidityPoint q = sample_point(cp, 2);
        CHECK(curve_residual(triangular_partner(q)) < 1e-12);
    }
    SUBCASE("vanishing window with the triangular partner") {
        for (uint64_t s = 1; s <= 5; ++s) {
            RapidityPoint p = sample_point(cp, s), pp = sample_point(cp, s + 40),
                          q = sample_point(cp, s + 80);
            CHECK(star_square_triangularity(star_square_U(p, pp, q)) < 1e-12);
        }
    }
    SUBCASE("a generic fourth rapidity shows no window") {
        RapidityPoint p = sample_point(cp, 1), pp = sample_point(cp, 41), q = sample_point(cp, 81);
        // replace the partner by an unrelated sample: build the sum by hand
        RapidityPoint qp = sample_point(cp, 121);
        const int N = 3;
        const WeightTable w_pq = chiral_weights(p, q), w_ppq = chiral_weights(pp, q);
        const WeightTable w_ppqp = chiral_weights(pp, qp), w_pqp = chiral_weights(p, qp);
        StarSquare ss;
        ss.N = N;
        ss.U.assign(81, 0.0);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b)
                for (int c = 0; c < N; ++c)
                    for (int d = 0; d < N; ++d) {
                        cplx tot = 0.0;
                        for (int e = 0; e < N; ++e)
                            tot += w_pq.Wm(a - e) * w_ppq.Wbarm(b - e) * w_ppqp.Wm(e - c) *
                                   w_pqp.Wbarm(e - d);
                        ss.U[((static_cast<size_t>(a) * N + b) * N + c) * N + d] = tot;
                    }
        CHECK(star_square_triangularity(ss) > 1e-2);
    }
}
