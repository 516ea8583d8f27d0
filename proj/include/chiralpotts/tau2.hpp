#pragma once

// Six-vertex R-matrix in the asymmetric gauge, the tau2 L-operator, L-site
// monodromy matrices, the Yang-Baxter check (full tensor and the sixteen
// component equations), polynomial coefficient extraction, and the
// star-square construction tying the Boltzmann weights to the tau2 block.

#include <array>

#include "core.hpp"
#include "curve.hpp"
#include "weights.hpp"

namespace chiralpotts {

// R(x,y), basis order (00, 01, 10, 11): every entry is a linear combination
// of 1, x/y, 1/q and (x/y)/q only.
struct SixVertexR {
    cplx x, y, q;
    Eigen::Matrix4cd matrix;
};

inline SixVertexR six_vertex_R(cplx x, cplx y, cplx q) {
    if (std::abs(y) < 1e-300) throw std::invalid_argument("six_vertex_R: y = 0");
    const cplx r = x / y;
    const cplx qi = 1.0 / q;
    SixVertexR R{x, y, q, Eigen::Matrix4cd::Zero()};
    R.matrix(0, 0) = 1.0 - r * qi;
    R.matrix(1, 1) = 1.0 - r;
    R.matrix(1, 2) = r * (1.0 - qi);
    R.matrix(2, 1) = 1.0 - qi;
    R.matrix(2, 2) = (1.0 - r) * qi;
    R.matrix(3, 3) = 1.0 - r * qi;
    return R;
}

// Quantum-space representation for the tau2 blocks: the finite N-dimensional
// clock representation at q = w, or the truncated shift representation at
// generic q (entries (k)_q, exact on rows/cols 0..M-1-window).
struct Tau2Rep {
    bool finite = true;
    int dim = 0;       // N or M
    cplx q;            // w for the finite case
    int window = 0;    // truncation guard band (0 for finite)
    Matrix e, f, Z;    // single-site matrices
};

inline cplx q_int(int n, cplx q) {
    if (std::abs(q - 1.0) < 1e-12) return static_cast<double>(n);
    return (1.0 - std::pow(q, n)) / (1.0 - q);
}

inline cplx q_factorial(int n, cplx q) {
    cplx out = 1.0;
    for (int j = 1; j <= n; ++j) out *= q_int(j, q);
    return out;
}

inline Tau2Rep tau2_rep_finite(int N) {
    ClockPair cp = clock_pair(N);
    Tau2Rep rep;
    rep.finite = true;
    rep.dim = N;
    rep.q = cp.omega;
    rep.window = 0;
    const Matrix one = Matrix::Identity(N, N);
    // e = X^{-1}(1-Z)/(1-w), f = (1-Z)X/(1-w); the cyclic corner of X drops
    // out against the vanishing diagonal entry of 1-Z.
    rep.e = cp.X.adjoint() * (one - cp.Z) / (1.0 - cp.omega);
    rep.f = (one - cp.Z) * cp.X / (1.0 - cp.omega);
    rep.Z = cp.Z;
    return rep;
}

inline Tau2Rep tau2_rep_truncated(cplx q, int M, int window = 3) {
    if (M < 4) throw std::invalid_argument("tau2_rep_truncated: M must be >= 4");
    Tau2Rep rep;
    rep.finite = false;
    rep.dim = M;
    rep.q = q;
    rep.window = window;
    rep.e = Matrix::Zero(M, M);
    rep.f = Matrix::Zero(M, M);
    for (int k = 1; k < M; ++k) {
        rep.e(k - 1, k) = q_int(k, q);  // (e)_{k,k+1} = (k)_q, 1-indexed
        rep.f(k, k - 1) = q_int(k, q);  // (f)_{l+1,l} = (l)_q
    }
    rep.Z = Matrix::Zero(M, M);
    for (int k = 0; k < M; ++k) rep.Z(k, k) = std::pow(q, k);
    return rep;
}

// U(x) = [ 1 - q x Z        -q x (1-q) f ]
//        [ (1-q) e           q (Z - x)   ]
struct Tau2L {
    cplx x;
    Tau2Rep rep;
    Matrix U00, U01, U10, U11;
};

inline Tau2L tau2_L(cplx x, const Tau2Rep& rep) {
    const Matrix one = Matrix::Identity(rep.dim, rep.dim);
    Tau2L L{x, rep, {}, {}, {}, {}};
    L.U00 = one - rep.q * x * rep.Z;
    L.U01 = -rep.q * x * (1.0 - rep.q) * rep.f;
    L.U10 = (1.0 - rep.q) * rep.e;
    L.U11 = rep.q * (rep.Z - x * one);
    return L;
}

// 2x2 auxiliary-space blocks of the L-site monodromy, quantum spaces
// tensored left to right (site 1 slowest).
struct MonodromyBlocks {
    int L = 0;
    Tau2Rep rep;
    Matrix A, B, C, D;
    long long qdim() const { return A.rows(); }
};

inline Matrix lift_site(const Matrix& op, int j, int L, int d) {
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 1; s <= L; ++s)
        out = kron(out, s == j ? op : Matrix::Identity(d, d));
    return out;
}

inline MonodromyBlocks monodromy(cplx x, int L, const Tau2Rep& rep) {
    if (L < 1) throw std::invalid_argument("monodromy: L must be >= 1");
    const long long dim = ipow(rep.dim, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("monodromy: capacity");
    Tau2L U = tau2_L(x, rep);
    MonodromyBlocks mb{L, rep, {}, {}, {}, {}};
    std::array<std::array<Matrix, 2>, 2> acc;
    for (int j = 1; j <= L; ++j) {
        std::array<std::array<Matrix, 2>, 2> site{
            {{lift_site(U.U00, j, L, rep.dim), lift_site(U.U01, j, L, rep.dim)},
             {lift_site(U.U10, j, L, rep.dim), lift_site(U.U11, j, L, rep.dim)}}};
        if (j == 1) {
            acc = site;
        } else {
            std::array<std::array<Matrix, 2>, 2> next;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    next[r][c] = acc[r][0] * site[0][c] + acc[r][1] * site[1][c];
            acc = next;
        }
    }
    mb.A = std::move(acc[0][0]);
    mb.B = std::move(acc[0][1]);
    mb.C = std::move(acc[1][0]);
    mb.D = std::move(acc[1][1]);
    return mb;
}

// ---------------------------------------------------------------------------
// Yang-Baxter:  R(x,y) T1(x) T2(y) = T2(y) T1(x) R(x,y)  on aux1 (x) aux2 (x)
// quantum; the ordering is pinned by requiring the x = y case to hold
// identically.

namespace detail {
inline Matrix aux_embed(const MonodromyBlocks& mb, int which) {
    // which = 1: T acts on aux1; which = 2: on aux2
    const long long qd = mb.qdim();
    Matrix out = Matrix::Zero(4 * qd, 4 * qd);
    auto put = [&](int a, int b, const Matrix& op) {
        for (int o = 0; o < 2; ++o) {
            const int row = which == 1 ? a * 2 + o : o * 2 + a;
            const int col = which == 1 ? b * 2 + o : o * 2 + b;
            out.block(row * qd, col * qd, qd, qd) = op;
        }
    };
    put(0, 0, mb.A);
    put(0, 1, mb.B);
    put(1, 0, mb.C);
    put(1, 1, mb.D);
    return out;
}

inline std::vector<long long> window_keep(int d, int L, int per_site_max) {
    std::vector<long long> keep;
    const long long dim = ipow(d, L);
    for (long long i = 0; i < dim; ++i) {
        bool ok = true;
        long long t = i;
        for (int s = 0; s < L; ++s) {
            if (t % d >= per_site_max) { ok = false; break; }
            t /= d;
        }
        if (ok) keep.push_back(i);
    }
    return keep;
}

inline Matrix take(const Matrix& M4, const std::vector<long long>& qkeep, long long qd) {
    // restrict the quantum factor of a (4 qd) x (4 qd) matrix
    const long long n = static_cast<long long>(qkeep.size());
    Matrix out(4 * n, 4 * n);
    for (int ar = 0; ar < 4; ++ar)
        for (int ac = 0; ac < 4; ++ac)
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j)
                    out(ar * n + i, ac * n + j) = M4(ar * qd + qkeep[i], ac * qd + qkeep[j]);
    return out;
}

inline Matrix restrict_idx(const Matrix& M, const std::vector<long long>& keep) {
    if (keep.empty()) return M;
    const long long n = static_cast<long long>(keep.size());
    Matrix out(n, n);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) out(i, j) = M(keep[i], keep[j]);
    return out;
}
}  // namespace detail

struct YbeResult {
    double full_residual = 0.0;            // windowed RLL - LLR, relative
    std::vector<double> component;         // the sixteen displayed equations
    double max_component = 0.0;
};

inline std::vector<double> sixteen_relations(const MonodromyBlocks& mx, const MonodromyBlocks& my,
                                             cplx x, cplx y,
                                             const std::vector<long long>& keep = {}) {
    const cplx q = mx.rep.q;
    const cplx r = x / y;
    const cplx qi = 1.0 / q;
    const Matrix &Ax = mx.A, &Bx = mx.B, &Cx = mx.C, &Dx = mx.D;
    const Matrix &Ay = my.A, &By = my.B, &Cy = my.C, &Dy = my.D;
    std::vector<double> res;
    // products are formed on the full (possibly truncated) space and only
    // then windowed; restricting the blocks first would re-truncate them
    auto rr = [&](const Matrix& lhs, const Matrix& rhs) {
        const Matrix lw = detail::restrict_idx(lhs, keep);
        const Matrix rw = detail::restrict_idx(rhs, keep);
        res.push_back((lw - rw).norm() / std::max({lw.norm(), rw.norm(), 1.0}));
    };
    // the four vanishing commutators
    rr(Ax * Ay, Ay * Ax);
    rr(Bx * By, By * Bx);
    rr(Cx * Cy, Cy * Cx);
    rr(Dx * Dy, Dy * Dx);
    // AB pair
    rr((1.0 - r * qi) * (Bx * Ay), r * (1.0 - qi) * (By * Ax) + (1.0 - r) * qi * (Ay * Bx));
    rr((1.0 - r * qi) * (Ax * By), (1.0 - r) * (By * Ax) + (1.0 - qi) * (Ay * Bx));
    // AC pair
    rr(r * (1.0 - qi) * (Cx * Ay) + (1.0 - r) * (Ax * Cy), (1.0 - r * qi) * (Cy * Ax));
    rr((1.0 - r) * qi * (Cx * Ay) + (1.0 - qi) * (Ax * Cy), (1.0 - r * qi) * (Ay * Cx));
    // BD pair
    rr(r * (1.0 - qi) * (Dx * By) + (1.0 - r) * (Bx * Dy), (1.0 - r * qi) * (Dy * Bx));
    rr((1.0 - r) * qi * (Dx * By) + (1.0 - qi) * (Bx * Dy), (1.0 - r * qi) * (By * Dx));
    // CD pair
    rr((1.0 - r * qi) * (Dx * Cy), r * (1.0 - qi) * (Dy * Cx) + (1.0 - r) * qi * (Cy * Dx));
    rr((1.0 - r * qi) * (Cx * Dy), (1.0 - r) * (Dy * Cx) + (1.0 - qi) * (Cy * Dx));
    // mixed AD/BC sums
    rr(r * (1.0 - qi) * (Dx * Ay) + (1.0 - r) * (Bx * Cy),
       r * (1.0 - qi) * (Dy * Ax) + (1.0 - r) * qi * (Cy * Bx));
    rr(r * (1.0 - qi) * (Cx * By) + (1.0 - r) * (Ax * Dy),
       (1.0 - r) * (Dy * Ax) + (1.0 - qi) * (Cy * Bx));
    rr((1.0 - r) * qi * (Dx * Ay) + (1.0 - qi) * (Bx * Cy),
       r * (1.0 - qi) * (By * Cx) + (1.0 - r) * qi * (Ay * Dx));
    rr((1.0 - r) * qi * (Cx * By) + (1.0 - qi) * (Ax * Dy),
       (1.0 - r) * (By * Cx) + (1.0 - qi) * (Ay * Dx));
    return res;
}

inline YbeResult ybe_check(cplx x, cplx y, int L, const Tau2Rep& rep) {
    MonodromyBlocks mx = monodromy(x, L, rep);
    MonodromyBlocks my = monodromy(y, L, rep);
    const long long qd = mx.qdim();
    const Matrix T1x = detail::aux_embed(mx, 1);
    const Matrix T2y = detail::aux_embed(my, 2);
    const Matrix R4 = kron(six_vertex_R(x, y, rep.q).matrix, Matrix::Identity(qd, qd));
    Matrix lhs = R4 * (T1x * T2y);
    Matrix rhs = T2y * (T1x * R4);
    YbeResult out;
    std::vector<long long> keep;
    if (!rep.finite) {
        keep = detail::window_keep(rep.dim, L, rep.dim - rep.window);
        lhs = detail::take(lhs, keep, qd);
        rhs = detail::take(rhs, keep, qd);
    }
    out.full_residual = (lhs - rhs).norm() / std::max({lhs.norm(), rhs.norm(), 1.0});
    out.component = sixteen_relations(mx, my, x, y, keep);
    for (double r : out.component) out.max_component = std::max(out.max_component, r);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial coefficients.  The expansion variable is u = -q x: in that
// variable the leading/trailing coefficients normalize to A_0 = D_L = 1.

struct MonodromyPoly {
    int L = 0;
    Tau2Rep rep;
    std::vector<Matrix> A, B, C, D;  // degree 0..L each
    double method_agreement = 0.0;   // convolution vs Vandermonde extraction
};

inline MonodromyPoly expand_monodromy(int L, const Tau2Rep& rep) {
    const long long dim = ipow(rep.dim, L);
    if (dim > DENSE_DIM_LIMIT) throw capacity_error("expand_monodromy: capacity");
    const cplx q = rep.q;
    const Matrix one = Matrix::Identity(dim, dim);
    const Matrix zero = Matrix::Zero(dim, dim);

    // convolution of the per-site blocks, linear in u:
    //   Utilde(u) = [ 1 + u Z      u (1-q) f ]
    //               [ (1-q) e      u + q Z   ]
    using Poly = std::vector<Matrix>;  // coeffs by degree
    auto pmul_acc = [&](const Poly& P, const Matrix& M0, const Matrix& M1, Poly& out) {
        // out += P(u) * (M0 + u M1)
        for (size_t d = 0; d < P.size(); ++d) {
            out[d] += P[d] * M0;
            out[d + 1] += P[d] * M1;
        }
    };
    std::array<std::array<Poly, 2>, 2> acc;
    for (int j = 1; j <= L; ++j) {
        const Matrix Zj = lift_site(rep.Z, j, L, rep.dim);
        const Matrix ej = lift_site(rep.e, j, L, rep.dim);
        const Matrix fj = lift_site(rep.f, j, L, rep.dim);
        // site blocks as (const, linear) pairs
        const Matrix s00_0 = one, s00_1 = Zj;
        const Matrix s01_0 = zero, s01_1 = (1.0 - q) * fj;
        const Matrix s10_0 = (1.0 - q) * ej, s10_1 = zero;
        const Matrix s11_0 = q * Zj, s11_1 = one;
        if (j == 1) {
            acc[0][0] = {s00_0, s00_1};
            acc[0][1] = {s01_0, s01_1};
            acc[1][0] = {s10_0, s10_1};
            acc[1][1] = {s11_0, s11_1};
            continue;
        }
        std::array<std::array<Poly, 2>, 2> next;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                next[r][c].assign(acc[r][0].size() + 1, zero);
        for (int r = 0; r < 2; ++r) {
            pmul_acc(acc[r][0], s00_0, s00_1, next[r][0]);
            pmul_acc(acc[r][1], s10_0, s10_1, next[r][0]);
            pmul_acc(acc[r][0], s01_0, s01_1, next[r][1]);
            pmul_acc(acc[r][1], s11_0, s11_1, next[r][1]);
        }
        acc = next;
    }
    MonodromyPoly mp{L, rep, acc[0][0], acc[0][1], acc[1][0], acc[1][1], 0.0};

    // cross-check: evaluate the monodromy at L+1 nodes and solve the
    // Vandermonde system in u (nodes on the unit circle, rotated by 0.37 to
    // dodge symmetry-induced degeneracies)
    std::vector<cplx> nodes(L + 1);
    for (int m = 0; m <= L; ++m)
        nodes[m] = std::exp(cplx(0.0, 2.0 * PI * m / (L + 1) + 0.37));
    Matrix V(L + 1, L + 1);
    for (int i = 0; i <= L; ++i)
        for (int d = 0; d <= L; ++d) V(i, d) = std::pow(nodes[i], d);
    Eigen::PartialPivLU<Matrix> lu(V);
    if (std::abs(lu.determinant()) < 1e-8)
        throw degenerate_error("expand_monodromy: ill-conditioned extraction nodes");
    Matrix Vinv = lu.inverse();
    std::vector<MonodromyBlocks> evals;
    for (int i = 0; i <= L; ++i) evals.push_back(monodromy(-nodes[i] / q, L, rep));
    auto check = [&](const std::vector<Matrix>& coeffs, auto pick) {
        for (int d = 0; d <= L; ++d) {
            Matrix c = Matrix::Zero(dim, dim);
            for (int i = 0; i <= L; ++i) c += Vinv(d, i) * pick(evals[i]);
            mp.method_agreement = std::max(
                mp.method_agreement,
                (c - coeffs[d]).norm() / std::max({c.norm(), coeffs[d].norm(), 1.0}));
        }
    };
    check(mp.A, [](const MonodromyBlocks& m) { return m.A; });
    check(mp.B, [](const MonodromyBlocks& m) { return m.B; });
    check(mp.C, [](const MonodromyBlocks& m) { return m.C; });
    check(mp.D, [](const MonodromyBlocks& m) { return m.D; });
    return mp;
}

// Z-string dressed single-site hops appearing in the explicit coefficients.
inline Matrix coeff_BbarL(int L, const Tau2Rep& rep) {
    const long long dim = ipow(rep.dim, L);
    Matrix out = Matrix::Zero(dim, dim);
    for (int j = 1; j <= L; ++j) {
        Matrix t = lift_site(rep.f, j, L, rep.dim);
        for (int m = 1; m < j; ++m) t = lift_site(rep.Z, m, L, rep.dim) * t;
        out += t;
    }
    return out;
}
inline Matrix coeff_Cbar0(int L, const Tau2Rep& rep) {
    const long long dim = ipow(rep.dim, L);
    Matrix out = Matrix::Zero(dim, dim);
    for (int j = 1; j <= L; ++j) {
        Matrix t = lift_site(rep.e, j, L, rep.dim);
        for (int m = 1; m < j; ++m) t = (rep.q * lift_site(rep.Z, m, L, rep.dim)) * t;
        out += t;
    }
    return out;
}
inline Matrix coeff_Bbar1(int L, const Tau2Rep& rep) {
    const long long dim = ipow(rep.dim, L);
    Matrix out = Matrix::Zero(dim, dim);
    for (int j = 1; j <= L; ++j) {
        Matrix t = lift_site(rep.f, j, L, rep.dim);
        for (int m = j + 1; m <= L; ++m) t = t * (rep.q * lift_site(rep.Z, m, L, rep.dim));
        out += t;
    }
    return out;
}
inline Matrix coeff_CbarLm1(int L, const Tau2Rep& rep) {
    const long long dim = ipow(rep.dim, L);
    Matrix out = Matrix::Zero(dim, dim);
    for (int j = 1; j <= L; ++j) {
        Matrix t = lift_site(rep.e, j, L, rep.dim);
        for (int m = j + 1; m <= L; ++m) t = t * lift_site(rep.Z, m, L, rep.dim);
        out += t;
    }
    return out;
}

// A_0 = D_L = 1, A_L = D_0 w^{-L} = prod Z_j, C_L = B_0 = 0, and the four
// dressed-sum coefficients above; max relative residual.
inline double coefficient_identities_check(const MonodromyPoly& mp) {
    if (!mp.rep.finite)
        throw std::invalid_argument("coefficient_identities_check: finite representation only");
    const int L = mp.L;
    const cplx q = mp.rep.q;
    const long long dim = ipow(mp.rep.dim, L);
    const Matrix one = Matrix::Identity(dim, dim);
    Matrix prodZ = one;
    for (int j = 1; j <= L; ++j) prodZ = prodZ * lift_site(mp.rep.Z, j, L, mp.rep.dim);
    double worst = 0.0;
    auto acc = [&](double r) { worst = std::max(worst, r); };
    acc(rel_residual(mp.A[0], one));
    acc(rel_residual(mp.D[L], one));
    acc(rel_residual(mp.A[L], prodZ));
    acc(rel_residual(mp.D[0], std::pow(q, L) * prodZ));
    acc(mp.B[0].norm() / std::max(1.0, mp.B[1].norm()));
    acc(mp.C[L].norm() / std::max(1.0, mp.C[0].norm()));
    const cplx s = 1.0 - q;
    acc(rel_residual(mp.B[L] / s, coeff_BbarL(L, mp.rep)));
    acc(rel_residual(mp.C[0] / s, coeff_Cbar0(L, mp.rep)));
    acc(rel_residual(mp.B[1] / s, coeff_Bbar1(L, mp.rep)));
    acc(rel_residual(mp.C[L - 1] / s, coeff_CbarLm1(L, mp.rep)));
    return worst;
}

// In each of the four series all coefficients commute.
inline double coefficient_commutativity(const MonodromyPoly& mp) {
    double worst = 0.0;
    auto fam = [&](const std::vector<Matrix>& F) {
        for (size_t i = 0; i < F.size(); ++i)
            for (size_t j = i + 1; j < F.size(); ++j) {
                const double sc = std::max({F[i].norm() * F[j].norm(), 1.0});
                worst = std::max(worst, commutator(F[i], F[j]).norm() / sc);
            }
    };
    fam(mp.A);
    fam(mp.B);
    fam(mp.C);
    fam(mp.D);
    return worst;
}

// The ten commutator and six q-commutator consequences of the relation set.
struct CommutatorRelations {
    std::vector<std::pair<std::string, double>> residuals;
    double max_residual = 0.0;
};

inline CommutatorRelations commutator_relations_check(int L, const Tau2Rep& rep, cplx x, cplx y) {
    MonodromyBlocks mx = monodromy(x, L, rep);
    MonodromyBlocks my = monodromy(y, L, rep);
    std::vector<long long> keep;
    if (!rep.finite) keep = detail::window_keep(rep.dim, L, rep.dim - rep.window);
    const cplx q = rep.q;
    const Matrix &Ax = mx.A, &Bx = mx.B, &Cx = mx.C, &Dx = mx.D;
    const Matrix &Ay = my.A, &By = my.B, &Cy = my.C, &Dy = my.D;
    CommutatorRelations out;
    auto add = [&](const std::string& name, const Matrix& lhs, const Matrix& rhs) {
        const Matrix lw = detail::restrict_idx(lhs, keep);
        const Matrix rw = detail::restrict_idx(rhs, keep);
        const double r = (lw - rw).norm() / std::max({lw.norm(), rw.norm(), 1.0});
        out.residuals.emplace_back(name, r);
        out.max_residual = std::max(out.max_residual, r);
    };
    const Matrix zero = Matrix::Zero(Ax.rows(), Ax.cols());
    add("[A(x),A(y)]=0", commutator(Ax, Ay), zero);
    add("[B(x),B(y)]=0", commutator(Bx, By), zero);
    add("[C(x),C(y)]=0", commutator(Cx, Cy), zero);
    add("[D(x),D(y)]=0", commutator(Dx, Dy), zero);
    add("[A(x),B(y)]=[A(y),B(x)]", commutator(Ax, By), commutator(Ay, Bx));
    add("[C(x),D(y)]=[C(y),D(x)]", commutator(Cx, Dy), commutator(Cy, Dx));
    add("[A(x),D(y)]=[A(y),D(x)]", commutator(Ax, Dy), commutator(Ay, Dx));
    add("y[A(x),C(y)]=x[A(y),C(x)]", y * commutator(Ax, Cy), x * commutator(Ay, Cx));
    add("y[B(x),D(y)]=x[B(y),D(x)]", y * commutator(Bx, Dy), x * commutator(By, Dx));
    add("y([A(x),D(y)]+[B(x),C(y)])=x(...)",
        y * (commutator(Ax, Dy) + commutator(Bx, Cy)),
        x * (commutator(Ay, Dx) + commutator(By, Cx)));
    add("[C(x),A(y)]_q=[C(y),A(x)]_q", q_commutator(Cx, Ay, q), q_commutator(Cy, Ax, q));
    add("[D(x),B(y)]_q=[D(y),B(x)]_q", q_commutator(Dx, By, q), q_commutator(Dy, Bx, q));
    add("[D(x),A(y)]_q+[C(x),B(y)]_q sym",
        q_commutator(Dx, Ay, q) + q_commutator(Cx, By, q),
        q_commutator(Dy, Ax, q) + q_commutator(Cy, Bx, q));
    add("x[A(x),B(y)]_q=y[A(y),B(x)]_q", x * q_commutator(Ax, By, q), y * q_commutator(Ay, Bx, q));
    add("x[C(x),D(y)]_q=y[C(y),D(x)]_q", x * q_commutator(Cx, Dy, q), y * q_commutator(Cy, Dx, q));
    add("x[C(x),B(y)]_q=y[C(y),B(x)]_q", x * q_commutator(Cx, By, q), y * q_commutator(Cy, Bx, q));
    return out;
}

// ---------------------------------------------------------------------------
// Star of four Boltzmann weights summed over the central spin.  With
// q' = (y_q, w^2 x_q, mu_q^{-1}) the summed weight vanishes on the window
// 0 <= a-d <= 1, 2 <= b-c <= N-1: the tau2 block sits in the leading corner.

inline RapidityPoint triangular_partner(const RapidityPoint& q) {
    const cplx om = primitive_root(q.params.N);
    return point_from_xymu(q.params, q.y(), om * om * q.x(), 1.0 / q.mu());
}

struct StarSquare {
    int N = 0;
    std::vector<cplx> U;  // N^4 values, index ((a N + b) N + c) N + d
    cplx at(int a, int b, int c, int d, int N_) const {
        return U[((static_cast<size_t>(a) * N_ + b) * N_ + c) * N_ + d];
    }
};

inline StarSquare star_square_U(const RapidityPoint& p, const RapidityPoint& pp,
                                const RapidityPoint& q) {
    const int N = p.params.N;
    const RapidityPoint qp = triangular_partner(q);
    const WeightTable w_pq = chiral_weights(p, q);
    const WeightTable w_ppq = chiral_weights(pp, q);
    const WeightTable w_ppqp = chiral_weights(pp, qp);
    const WeightTable w_pqp = chiral_weights(p, qp);
    StarSquare ss;
    ss.N = N;
    ss.U.assign(static_cast<size_t>(N) * N * N * N, 0.0);
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
    return ss;
}

inline double star_square_triangularity(const StarSquare& ss) {
    const int N = ss.N;
    double mx = 0.0, bad = 0.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c)
                for (int d = 0; d < N; ++d) {
                    const double v = std::abs(ss.at(a, b, c, d, N));
                    mx = std::max(mx, v);
                    const int ad = ((a - d) % N + N) % N;
                    const int bc = ((b - c) % N + N) % N;
                    if (ad <= 1 && bc >= 2) bad = std::max(bad, v);
                }
    return bad / std::max(mx, 1e-300);
}

}  // namespace chiralpotts
