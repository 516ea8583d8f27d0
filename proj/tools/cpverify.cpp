// Command-line driver for the verification sweeps.  Every subcommand prints
// one JSON report (stdout or --out) and exits 0 iff all checks pass their
// tolerance.  Reports are byte-reproducible for a fixed seed apart from the
// trailing timestamp/wall-time fields.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "chiralpotts/core.hpp"
#include "chiralpotts/curve.hpp"
#include "chiralpotts/qgroup.hpp"
#include "chiralpotts/report.hpp"
#include "chiralpotts/spectra.hpp"
#include "chiralpotts/spin_chain.hpp"
#include "chiralpotts/star_triangle.hpp"
#include "chiralpotts/tau2.hpp"
#include "chiralpotts/transfer.hpp"
#include "chiralpotts/weights.hpp"

using namespace chiralpotts;

namespace {

cplx parse_complex(const std::string& s) {
    // accepts "0.8", "0.9+0.1i", "0.9-0.1i", "1i"
    std::string t = s;
    if (t.empty()) throw CLI::ValidationError("empty complex literal");
    if (t.back() == 'i' || t.back() == 'j') {
        t.pop_back();
        size_t split = t.find_last_of("+-");
        if (split == std::string::npos || split == 0) {
            // pure imaginary
            if (t.empty() || t == "+" || t == "-") t += "1";
            return cplx(0.0, std::stod(t));
        }
        const double re = std::stod(t.substr(0, split));
        std::string im = t.substr(split);
        if (im == "+" ) im = "1";
        if (im == "-") im = "-1";
        return cplx(re, std::stod(im));
    }
    return cplx(std::stod(t), 0.0);
}

struct CommonOpts {
    uint64_t seed = 1;
    double tolerance = DEFAULT_TOLERANCE;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "root RNG seed");
    cmd->add_option("--tolerance", c.tolerance, "pass threshold for residual checks");
    cmd->add_option("--out", c.out_path, "write the JSON report to this file");
}

int finish(Report& rep, const CommonOpts& c,
           std::chrono::steady_clock::time_point t0) {
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0).count();
    rep.timestamp_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::system_clock::now().time_since_epoch()).count();
    const std::string text = rep.to_json();
    if (c.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out_path);
        f << text;
    }
    return rep.all_pass() ? 0 : 1;
}

// inverse-margin encoding for a negative control: passes iff value >= floor
double control(double value, double floor) { return value >= floor ? 0.0 : 1.0; }

// ---------------------------------------------------------------------------

int run_str(int N, cplx k, int trials, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify str";
    rep.config.set("N", N).set("k", json_complex(k)).set("trials", trials)
        .set("seed", static_cast<int64_t>(c.seed)).set("tolerance", c.tolerance);
    CurveParams params = curve_params(N, k);
    StrReport swA = str_sweep(params, trials, c.seed, StrOrientation::Standard);
    StrReport swB = str_sweep(params, trials, c.seed, StrOrientation::Reversed);
    rep.checks.push_back({"star_triangle", "max_residual", swA.max_residual, c.tolerance});
    rep.checks.push_back({"star_triangle", "max_residual_reversed", swB.max_residual, c.tolerance});
    double rdiff = 0.0;
    for (int t = 0; t < trials; ++t)
        rdiff = std::max(rdiff, std::abs(swA.R_factors[t] - swB.R_factors[t]) /
                                    std::abs(swA.R_factors[t]));
    rep.checks.push_back({"star_triangle", "R_orientation_agreement", rdiff, 1e-9});
    // off-curve perturbation must break the relation
    RapidityPoint p = sample_point(params, c.seed), q = sample_point(params, c.seed + 1),
                  r = sample_point(params, c.seed + 2);
    r.a *= 1.0 + 1e-2;
    const double off = str_check(p, q, r).residual;
    rep.checks.push_back({"star_triangle", "off_curve_control", control(off, 1e-4), 0.5});
    JsonValue rf = JsonValue::array();
    for (cplx z : swA.R_factors) rf.push(json_complex(z));
    rep.config.set("R_factors", std::move(rf));
    return finish(rep, c, t0);
}

int run_transfer(int N, int L, cplx k, int trials, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify transfer";
    rep.config.set("N", N).set("L", L).set("k", json_complex(k)).set("trials", trials)
        .set("seed", static_cast<int64_t>(c.seed)).set("tolerance", c.tolerance);
    CurveParams params = curve_params(N, k);
    RapidityPoint p = sample_point(params, c.seed);
    const double shift_res =
        rel_residual(transfer_matrix(p, p, L).data.mat, translation_operator(N, L));
    rep.checks.push_back({"transfer", "shift_point_translation", shift_res, 1e-12});
    double comm = 0.0;
    for (int t = 0; t < trials; ++t) {
        RapidityPoint q1 = sample_point(params, c.seed + 10 + 2 * t);
        RapidityPoint q2 = sample_point(params, c.seed + 11 + 2 * t);
        comm = std::max(comm, commuting_family_check(p, q1, q2, L));
    }
    rep.checks.push_back({"transfer", "max_commutator_residual", comm, c.tolerance});
    {
        RapidityPoint q1 = sample_point(params, c.seed + 10);
        RapidityPoint q2 = sample_point(params, c.seed + 11);
        q2.a *= 1.0 + 1e-2;
        const double off = commuting_family_check(p, q1, q2, L);
        rep.checks.push_back({"transfer", "off_curve_control", control(off, 1e-4), 0.5});
    }
    DerivativeHamiltonian dh = derivative_hamiltonian(p, L);
    rep.checks.push_back({"transfer", "hamiltonian_basis_remainder", dh.fit_residual, 1e-7});
    rep.checks.push_back({"transfer", "alpha_pattern_error",
                          std::max(dh.pattern_alpha.rel_error, dh.pattern_alphabar.rel_error),
                          1e-5});
    rep.checks.push_back({"transfer", "feed_alpha_consistency",
                          feed_alpha_consistency(p, L, c.seed + 23), 1e-8});
    JsonValue fit = JsonValue::object();
    fit.set("phi", json_complex(dh.alpha_fit.phi));
    fit.set("rho", json_complex(dh.pattern_alpha.rho));
    fit.set("error", std::max(dh.pattern_alpha.rel_error, dh.pattern_alphabar.rel_error));
    rep.config.set("alpha_fit", std::move(fit));
    return finish(rep, c, t0);
}

int run_ybe(int N, int L, int trials, bool truncated, int M, cplx q, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify ybe";
    rep.config.set("N", N).set("L", L).set("trials", trials)
        .set("rep", truncated ? "truncated" : "finite");
    if (truncated) rep.config.set("M", M).set("q", json_complex(q));
    rep.config.set("seed", static_cast<int64_t>(c.seed)).set("tolerance", c.tolerance);
    Tau2Rep r = truncated ? tau2_rep_truncated(q, M) : tau2_rep_finite(N);
    double full = 0.0, comp = 0.0, agree = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(c.seed, t);
        const cplx x = rng.annulus(), y = rng.annulus();
        YbeResult yb = ybe_check(x, y, L, r);
        full = std::max(full, yb.full_residual);
        comp = std::max(comp, yb.max_component);
        agree = std::max(agree, std::abs(yb.full_residual - yb.max_component));
    }
    rep.checks.push_back({"tau2_monodromy", "ybe_full_residual", full, c.tolerance});
    rep.checks.push_back({"tau2_monodromy", "ybe_sixteen_components", comp, c.tolerance});
    rep.checks.push_back({"tau2_monodromy", "full_vs_components_agreement", agree, 1e-12});
    return finish(rep, c, t0);
}

int run_monodromy(int N, int L, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify monodromy";
    rep.config.set("N", N).set("L", L).set("seed", static_cast<int64_t>(c.seed))
        .set("tolerance", c.tolerance);
    Tau2Rep r = tau2_rep_finite(N);
    MonodromyPoly mp = expand_monodromy(L, r);
    rep.checks.push_back({"tau2_monodromy", "extraction_method_agreement", mp.method_agreement, 1e-12});
    rep.checks.push_back({"tau2_monodromy", "coefficient_identities",
                          coefficient_identities_check(mp), 1e-12});
    rep.checks.push_back({"tau2_monodromy", "family_commutativity",
                          coefficient_commutativity(mp), 1e-12});
    Rng rng = Rng::substream(c.seed, 7);
    CommutatorRelations cr = commutator_relations_check(std::min(L, 2), r, rng.annulus(), rng.annulus());
    JsonValue table = JsonValue::object();
    for (auto& [name, val] : cr.residuals) table.set(name, val);
    rep.config.set("relation_residuals", std::move(table));
    rep.checks.push_back({"tau2_monodromy", "commutator_relations", cr.max_residual, c.tolerance});
    rep.checks.push_back({"quantum_group", "monodromy_coproduct",
                          monodromy_coproduct_check(L, N), 1e-12});
    return finish(rep, c, t0);
}

int run_qgroup(int N, int M, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify qgroup";
    rep.config.set("N", N).set("M", M).set("seed", static_cast<int64_t>(c.seed))
        .set("tolerance", c.tolerance);
    JsonValue table = JsonValue::object();
    double worst_fin = 0.0;
    for (int sign : {+1, -1}) {
        QGroupRep g = generators_finite(N, cplx(0.9, -0.4), sign);
        QGroupRelationReport rr = qgroup_relation_residuals(g);
        worst_fin = std::max(worst_fin, rr.max_residual);
        if (sign > 0)
            for (auto& [name, val] : rr.residuals) table.set(name, val);
    }
    rep.config.set("relation_residuals", std::move(table));
    rep.checks.push_back({"quantum_group", "finite_rep_relations", worst_fin, 1e-11});
    Rng rng = Rng::substream(c.seed, 3);
    const cplx q = cplx(1.1 + 0.4 * rng.uniform(), 0.2 * rng.uniform());
    QGroupRep gt = generators_truncated(q, cplx(0.5, 0.2), M);
    rep.checks.push_back({"quantum_group", "truncated_rep_relations",
                          qgroup_relation_residuals(gt).max_residual, 1e-11});
    QGroupRep g = generators_finite(N, cplx(0.9, -0.4));
    rep.checks.push_back({"quantum_group", "coproduct_relations",
                          qgroup_relation_residuals(coproduct(g, g)).max_residual, 1e-11});
    rep.checks.push_back({"quantum_group", "coassociativity", coassociativity_residual(g), 1e-11});
    // root-of-unity block decoupling of the truncated rep
    Tau2Rep tr = tau2_rep_truncated(primitive_root(N), 3 * N);
    Tau2Rep fin = tau2_rep_finite(N);
    double block = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            block = std::max(block, std::abs(tr.e(i, j) - fin.e(i, j)));
            block = std::max(block, std::abs(tr.f(i, j) - fin.f(i, j)));
        }
    block = std::max(block, std::abs(tr.e(N - 1, N)));  // coupling out of the block
    block = std::max(block, std::abs(tr.f(N, N - 1)));
    rep.checks.push_back({"quantum_group", "root_of_unity_decoupling", block, 1e-14});
    return finish(rep, c, t0);
}

int run_serre(int N, int L, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify serre";
    rep.config.set("N", N).set("L", L).set("seed", static_cast<int64_t>(c.seed));
    JsonValue diag = JsonValue::array();
    double worst = 0.0, extr = 0.0;
    for (int Q = 0; Q < N; ++Q) {
        SectorOperators so = sector_operators(L, N, Q);
        worst = std::max({worst, so.serre_plus, so.serre_minus});
        extr = std::max(extr, so.extrapolation_error);
        JsonValue d = JsonValue::object();
        d.set("Q", Q).set("serre_plus", so.serre_plus).set("serre_minus", so.serre_minus)
            .set("extrapolation_error", so.extrapolation_error);
        JsonValue conv = JsonValue::array();
        for (double v : so.convergence) conv.push(v);
        d.set("rung_deviation", std::move(conv));
        diag.push(std::move(d));
    }
    rep.config.set("sectors", std::move(diag));
    rep.checks.push_back({"quantum_group", "sector_serre_residual", worst, 1e-5});
    rep.checks.push_back({"quantum_group", "divided_power_extrapolation", extr, 1e-5});
    return finish(rep, c, t0);
}

int run_onsager(int N, int L, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify onsager";
    rep.config.set("N", N).set("L", L).set("seed", static_cast<int64_t>(c.seed))
        .set("tolerance", c.tolerance);
    ChiralAlphas a = alphas(N, PI / 2.0, PI / 2.0, cplx(0.5, 0.0));
    SuperintegrableSplit sp = superintegrable_split(a, L);
    rep.checks.push_back({"spin_chain", "dolan_grady_residual", sp.dg.residual, c.tolerance});
    rep.checks.push_back({"spin_chain", "dolan_grady_constant_16",
                          std::abs(sp.dg.constant - 16.0), 1e-9});
    DolanGradyResult dual = dolan_grady_check(sp.A1.mat, sp.A0.mat);
    rep.checks.push_back({"spin_chain", "dolan_grady_dual", dual.residual, c.tolerance});
    rep.checks.push_back({"spin_chain", "dolan_grady_dual_constant_16",
                          std::abs(dual.constant - 16.0), 1e-9});
    OnsagerLadder lad = onsager_ladder(sp.A0.mat, sp.A1.mat, 2);
    rep.checks.push_back({"spin_chain", "onsager_ladder_depth2", lad.max_relation_residual, 1e-9});
    return finish(rep, c, t0);
}

int run_all(int N, const CommonOpts& c) {
    // compact regression across every family at small sizes
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify all";
    rep.config.set("N", N).set("seed", static_cast<int64_t>(c.seed)).set("tolerance", c.tolerance);
    CurveParams params = curve_params(N, 0.8);
    StrReport sw = str_sweep(params, 20, c.seed);
    rep.checks.push_back({"star_triangle", "max_residual", sw.max_residual, c.tolerance});
    RapidityPoint p = sample_point(params, c.seed);
    const int L = N == 2 ? 4 : 3;
    rep.checks.push_back(
        {"transfer", "shift_point_translation",
         rel_residual(transfer_matrix(p, p, L).data.mat, translation_operator(N, L)), 1e-12});
    RapidityPoint q1 = sample_point(params, c.seed + 10), q2 = sample_point(params, c.seed + 11);
    rep.checks.push_back({"transfer", "commutator_residual",
                          commuting_family_check(p, q1, q2, L), c.tolerance});
    DerivativeHamiltonian dh = derivative_hamiltonian(p, L);
    rep.checks.push_back({"transfer", "hamiltonian_basis_remainder", dh.fit_residual, 1e-7});
    FourierData fd = fourier_data(chiral_weights(p, q1));
    ChiralAlphas sol = alphas_from_fourier(fd);
    AlphaEquationResult ae = alpha_equation_residual(sol, fd);
    rep.checks.push_back({"weights", "alpha_equations", ae.max(), c.tolerance});
    rep.checks.push_back({"weights", "consistency",
                          consistency_residual(chiral_weights(p, q1), chiral_weights(p, q2)),
                          c.tolerance});
    Tau2Rep r = tau2_rep_finite(N);
    Rng rng = Rng::substream(c.seed, 5);
    YbeResult yb = ybe_check(rng.annulus(), rng.annulus(), 2, r);
    rep.checks.push_back({"tau2_monodromy", "ybe_full_residual", yb.full_residual, 1e-11});
    MonodromyPoly mp = expand_monodromy(2, r);
    rep.checks.push_back({"tau2_monodromy", "coefficient_identities",
                          coefficient_identities_check(mp), 1e-12});
    QGroupRep g = generators_finite(N, cplx(0.9, -0.4));
    rep.checks.push_back({"quantum_group", "finite_rep_relations",
                          qgroup_relation_residuals(g).max_residual, 1e-11});
    ChiralAlphas sa = alphas(N, PI / 2.0, PI / 2.0, cplx(0.5, 0.0));
    SuperintegrableSplit spq = superintegrable_split(sa, N == 2 ? 4 : 3);
    rep.checks.push_back({"spin_chain", "dolan_grady_constant_16",
                          std::abs(spq.dg.constant - 16.0), 1e-9});
    return finish(rep, c, t0);
}

int run_spectrum(int N, int L, double lambda, const std::string& sector, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "spectrum";
    rep.config.set("N", N).set("L", L).set("lambda", lambda).set("sector", sector)
        .set("seed", static_cast<int64_t>(c.seed));
    ChiralAlphas a = alphas(N, PI / 2.0, PI / 2.0, cplx(lambda, 0.0));
    SpinChainOperator H = hamiltonian(a, L);
    H.mat *= -1.0 / static_cast<double>(N);
    std::vector<int> sectors;
    if (sector == "all")
        for (int Q = 0; Q < N; ++Q) sectors.push_back(Q);
    else
        sectors.push_back(std::stoi(sector));
    JsonValue spectra = JsonValue::array();
    std::vector<double> assembled;
    for (int Q : sectors) {
        SectorSpectrum s = sector_spectrum(H, Q);
        JsonValue js = JsonValue::object();
        js.set("Q", Q);
        JsonValue evs = JsonValue::array();
        for (cplx ev : s.eigenvalues) {
            evs.push(ev.real());
            assembled.push_back(ev.real());
        }
        js.set("eigenvalues", std::move(evs));
        JsonValue degs = JsonValue::array();
        for (auto& [v, m] : s.degeneracy) {
            JsonValue d = JsonValue::object();
            d.set("value", v.real()).set("multiplicity", m);
            degs.push(std::move(d));
        }
        js.set("degeneracy_classes", std::move(degs));
        spectra.push(std::move(js));
    }
    rep.config.set("spectra", std::move(spectra));
    if (sector == "all") {
        // sector reassembly against the full dense spectrum
        Eigen::SelfAdjointEigenSolver<Matrix> es((H.mat + H.mat.adjoint()) / 2.0);
        std::sort(assembled.begin(), assembled.end());
        double worst = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            worst = std::max(worst, std::abs(assembled[i] - es.eigenvalues()(i)));
        rep.checks.push_back({"spectra", "sector_reassembly",
                              worst / std::max(1.0, H.mat.norm()), 1e-10});
    }
    return finish(rep, c, t0);
}

int run_orderparam(int N, int kk, double lambda, std::vector<int> lengths, const CommonOpts& c) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "orderparam";
    JsonValue lens = JsonValue::array();
    for (int L : lengths) lens.push(L);
    rep.config.set("N", N).set("k", kk).set("lambda", lambda).set("lengths", std::move(lens));
    OrderParameterResult r = order_parameter_experiment(N, lambda, kk, lengths);
    JsonValue vals = JsonValue::array();
    for (double v : r.values) vals.push(v);
    rep.config.set("values", std::move(vals));
    rep.config.set("estimate", r.estimate);
    rep.config.set("target", r.target);
    rep.config.set("degenerate_flag", r.degenerate_flag);
    rep.checks.push_back({"spectra", "monotone_approach", r.monotone ? 0.0 : 1.0, 0.5});
    // the conjectured value itself is soft: reported, not gating
    rep.config.set("relative_error_vs_target", std::abs(r.estimate - r.target) / r.target);
    return finish(rep, c, t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiral Potts verification laboratory"};
    app.require_subcommand(1);

    CommonOpts c;
    int N = 3, L = 3, trials = 20, M = 12, kcharge = 1;
    std::string kstr = "0.8", qstr = "1.7", sector = "all", lengths_str = "4,5,6";
    double lambda = 0.5;
    bool truncated = false;

    CLI::App* verify = app.add_subcommand("verify", "run a verification sweep");
    verify->require_subcommand(1);

    auto add_rc = [&](CLI::App* cmd, bool withL = true, bool withK = false, bool withTrials = false) {
        cmd->add_option("--N", N, "clock order");
        if (withL) cmd->add_option("--L", L, "chain length");
        if (withK) cmd->add_option("--k", kstr, "curve modulus (complex, e.g. 0.9+0.1i)");
        if (withTrials) cmd->add_option("--trials", trials, "number of seeded trials");
        add_common(cmd, c);
    };

    CLI::App* str_cmd = verify->add_subcommand("str", "star-triangle relation");
    add_rc(str_cmd, false, true, true);
    CLI::App* transfer_cmd = verify->add_subcommand("transfer", "commuting transfer matrices");
    add_rc(transfer_cmd, true, true, true);
    CLI::App* ybe_cmd = verify->add_subcommand("ybe", "Yang-Baxter for the tau2 monodromy");
    add_rc(ybe_cmd, true, false, true);
    ybe_cmd->add_flag("--truncated", truncated, "use the truncated representation");
    ybe_cmd->add_option("--M", M, "truncation dimension");
    ybe_cmd->add_option("--q", qstr, "deformation parameter for the truncated rep");
    CLI::App* mono_cmd = verify->add_subcommand("monodromy", "coefficient identities");
    add_rc(mono_cmd);
    CLI::App* qg_cmd = verify->add_subcommand("qgroup", "quantum-group relations");
    add_rc(qg_cmd, false);
    qg_cmd->add_option("--M", M, "truncation dimension");
    CLI::App* serre_cmd = verify->add_subcommand("serre", "sector Serre relations");
    add_rc(serre_cmd);
    CLI::App* ons_cmd = verify->add_subcommand("onsager", "Dolan-Grady and the Onsager ladder");
    add_rc(ons_cmd);
    CLI::App* all_cmd = verify->add_subcommand("all", "compact regression at one clock order");
    add_rc(all_cmd, false);

    CLI::App* spec_cmd = app.add_subcommand("spectrum", "charge-sector spectra");
    spec_cmd->add_option("--N", N);
    spec_cmd->add_option("--L", L);
    spec_cmd->add_option("--lambda", lambda);
    spec_cmd->add_option("--sector", sector, "Q or 'all'");
    add_common(spec_cmd, c);

    CLI::App* op_cmd = app.add_subcommand("orderparam", "finite-size order-parameter experiment");
    op_cmd->add_option("--N", N);
    op_cmd->add_option("--k", kcharge, "power of Z in the order parameter");
    op_cmd->add_option("--lambda", lambda);
    op_cmd->add_option("--lengths", lengths_str, "comma-separated chain lengths");
    add_common(op_cmd, c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (str_cmd->parsed()) return run_str(N, parse_complex(kstr), trials, c);
        if (transfer_cmd->parsed()) return run_transfer(N, L, parse_complex(kstr), trials, c);
        if (ybe_cmd->parsed())
            return run_ybe(N, L, trials, truncated, M, parse_complex(qstr), c);
        if (mono_cmd->parsed()) return run_monodromy(N, L, c);
        if (qg_cmd->parsed()) return run_qgroup(N, M, c);
        if (serre_cmd->parsed()) return run_serre(N, L, c);
        if (ons_cmd->parsed()) return run_onsager(N, L, c);
        if (all_cmd->parsed()) return run_all(N, c);
        if (spec_cmd->parsed()) return run_spectrum(N, L, lambda, sector, c);
        if (op_cmd->parsed()) {
            std::vector<int> lengths;
            std::stringstream ss(lengths_str);
            std::string item;
            while (std::getline(ss, item, ',')) lengths.push_back(std::stoi(item));
            return run_orderparam(N, kcharge, lambda, lengths, c);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
