#include "schroheat/runner.hpp"

#include "schroheat/autonomize.hpp"
#include "schroheat/lcu.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

namespace schroheat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Problem {
    SemiDiscreteSystem sys;
    PGrid pg;
    double gamma0 = 0.0;
    double A_norm = 0.0;
    double H_norm = 0.0;
    double C_heat = 0.0;
    ReferenceSolution ref;
};

Problem setup(const RunConfig& cfg, RunReport& rep) {
    Problem p;
    p.sys = build_semi_discrete(cfg.problem);
    p.pg = make_pgrid(cfg.R, cfg.n_p);
    if (p.pg.tail_warning) {
        rep.add_warning("e^{-pi R} >= 1e-9: the truncated e^{-|p|} tail is not negligible");
    }
    p.gamma0 = cfg.problem.a / (p.sys.dx * p.sys.dx * cfg.R);
    p.A_norm = op_norm(p.sys.A);
    p.H_norm = p.A_norm * static_cast<double>(p.pg.N_p) / (2.0 * cfg.R);
    p.C_heat = c_heat_bound(cfg.problem.d, p.pg.N_p, cfg.problem.n_x, p.gamma0);
    auto f = [&sys = p.sys](double t) { return sys.f.eval(t); };
    p.ref = reference_solution(p.sys.A, f, p.sys.u0, cfg.T);
    if (!p.ref.converged) {
        rep.add_warning("reference quadrature did not reach the 1e-8 certificate");
    }
    rep.root["errors"]["reference_certified_error"] = p.ref.certified_error;
    rep.root["predictions"]["C_heat"] = p.C_heat;
    return p;
}

void fill_recovery(RunReport& rep, const Recovery& rec, const ComplexVector& u_ref) {
    const double raw = (rec.u - u_ref).norm() / u_ref.norm();
    const double state =
        (rec.u / rec.u.norm() - u_ref / u_ref.norm()).norm();
    rep.root["errors"]["l2_rel_error_raw"] = raw;
    rep.root["errors"]["l2_rel_error_state"] = state;
    rep.root["errors"]["recovery_variance"] = rec.variance;
    rep.root["recovery"]["k_star"] = rec.k_star;
    rep.root["recovery"]["p_star"] = rec.p_star;
}

void fill_meter(RunReport& rep, const QueryMeter& meter) {
    Json m = Json::object();
    for (const auto& [k, v] : meter.counts) m[k] = v;
    rep.root["query_meter"] = m;
}

int derive_segments(const RunConfig& cfg, double bound_constant) {
    if (cfg.segments > 0) return cfg.segments;
    const double r = std::ceil(bound_constant * cfg.T * cfg.T / cfg.delta);
    return static_cast<int>(std::max(1.0, r));
}

void solve_exact(const RunConfig& cfg, Problem& p, RunReport& rep) {
    // the dense u-space solve at doubled resolution is the method output
    auto f = [&sys = p.sys](double t) { return sys.f.eval(t); };
    auto solved = reference_solution(p.sys.A, f, p.sys.u0, cfg.T, 1 << 13);
    const double dev = (solved.u - p.ref.u).norm() / p.ref.u.norm();
    rep.root["errors"]["l2_rel_error_raw"] = dev;
    rep.add_bound("exact_vs_reference", dev, 1e-8);

    // Schrodingerised dense diagnostics when the p-extended system fits
    if (p.sys.A.rows() * p.pg.N_p <= kDenseCap && p.sys.f.is_zero()) {
        auto schro = schrodingerise(p.sys, p.pg);
        ComplexVector wtT = evolve_exact(schro, cfg.T);
        ComplexVector wT = to_p_space(wtT, p.pg, p.sys.A.rows());
        Recovery rec = recover_u(wT, p.pg, 0.0, cfg.T);
        fill_recovery(rep, rec, p.ref.u);
        rep.root["errors"]["l2_rel_error_raw"] = dev;  // the method error stays the dense one
        rep.root["recovery"]["schro_dense_raw_error"] =
            (rec.u - p.ref.u).norm() / p.ref.u.norm();
    }
}

void solve_circuit_homogeneous(const RunConfig& cfg, Problem& p, RunReport& rep) {
    if (!p.sys.f.is_zero()) {
        throw ConfigError(
            "run.method: circuit-homogeneous requires homogeneous boundary data (use lcu or "
            "autonomise for time-dependent sources)");
    }
    if (cfg.problem.bc.family == BoundaryFamily::NeumannMixed) {
        throw ConfigError(
            "run.method: the shift-block circuits cover Dirichlet and periodic families; the "
            "Neumann flux row makes A non-normal - use method=exact");
    }
    const bool periodic = cfg.problem.bc.family == BoundaryFamily::Periodic;
    const int r = derive_segments(cfg, p.C_heat);
    const double tau = cfg.T / r;
    rep.root["predictions"]["r"] = r;
    rep.add_bound("trotter_budget_rC_heat_tau2", r * p.C_heat * tau * tau, cfg.delta);

    ComplexVector wt0 =
        to_mode_space(initial_extended_state(p.sys.u0, p.pg), p.pg, p.sys.u0.size());
    QueryMeter meter;
    ComplexVector wtT = evolve_homogeneous(wt0, r, cfg.T, cfg.problem.n_x, cfg.n_p,
                                           cfg.problem.d, p.gamma0, periodic, meter);
    ComplexVector wT = to_p_space(wtT, p.pg, p.sys.u0.size());
    Recovery rec = recover_u(wT, p.pg, 0.0, cfg.T);
    fill_recovery(rep, rec, p.ref.u);
    fill_meter(rep, meter);
    rep.root["predictions"]["lambda_plus"] = 0.0;
}

void solve_lcu(const RunConfig& cfg, Problem& p, RunReport& rep) {
    if (cfg.problem.bc.family == BoundaryFamily::NeumannMixed) {
        throw ConfigError(
            "run.method: the shift-block circuits cover Dirichlet and periodic families; the "
            "Neumann flux row makes A non-normal - use method=exact");
    }
    const bool periodic = cfg.problem.bc.family == BoundaryFamily::Periodic;
    const Eigen::Index K =
        cfg.K > 0 ? cfg.K : choose_K(cfg.delta1, cfg.T, p.H_norm, p.C_heat, p.sys.f, p.pg);
    const int r = derive_segments(cfg, p.C_heat);
    rep.root["predictions"]["K"] = K;
    rep.root["predictions"]["r"] = r;
    LcuPlan plan = make_plan(K, cfg.T, p.sys.f, p.pg);
    ComplexVector wt0 =
        to_mode_space(initial_extended_state(p.sys.u0, p.pg), p.pg, p.sys.u0.size());
    CombineResult comb =
        combine_homogeneous_inhomogeneous(wt0, plan, p.sys.f, p.pg, cfg.T, r, cfg.problem.n_x,
                                          cfg.n_p, cfg.problem.d, p.gamma0, periodic);
    rep.root["probabilities"]["branch_measured"] = comb.branch_probability;
    const double shortcut = std::pow(comb.eta0 / (comb.eta0 + comb.eta1), 2);
    rep.root["probabilities"]["branch_formula_unitary_shortcut"] = shortcut;

    ComplexVector wT = to_p_space(comb.w_total, p.pg, p.sys.u0.size());
    Recovery rec = recover_u(wT, p.pg, 0.0, cfg.T);
    fill_recovery(rep, rec, p.ref.u);
    fill_meter(rep, comb.meter);

    auto sp = success_probability(p.sys.u0, p.ref.u, p.sys.f, cfg.T, p.pg);
    rep.root["probabilities"]["success_formula"] = sp.formula;
    rep.root["probabilities"]["ce0_sq_over_ce_sq"] = sp.ce0_sq_over_ce_sq;
    // measured overall: branch probability times the admissible-p mass
    double adm_mass = 0.0;
    for (Eigen::Index k = 0; k < p.pg.N_p; ++k) {
        if (p.pg.p(k) < 0) continue;
        for (Eigen::Index i = 0; i < p.sys.u0.size(); ++i) {
            adm_mass += std::norm(wT(i * p.pg.N_p + k));
        }
    }
    rep.root["probabilities"]["success_measured"] =
        comb.branch_probability * adm_mass / wT.squaredNorm();

    const double Pr = std::max(sp.formula, 1e-300);
    auto qr = lcu_query_report(comb.meter, p.C_heat, p.H_norm, p.sys.f, cfg.T, cfg.delta1, Pr);
    rep.root["predictions"]["C_LCU"] = qr.C_LCU;
    rep.root["predictions"]["Nt_predicted"] = qr.predicted_Nt_over_Pr;
    rep.root["predictions"]["lambda_plus"] = 0.0;
    // the prepared branch amplitude must equal ||w_b||/||alpha||_1
    if (!p.sys.f.is_zero()) {
        InhomogeneousResult inh = prepare_inhomogeneous(plan, p.sys.f, p.pg, cfg.problem.n_x,
                                                        cfg.problem.d, p.gamma0, periodic);
        rep.add_equality("lcu_branch_amplitude_consistency",
                         inh.branch_amplitude - inh.w_b.norm() / plan.alpha_l1, 1e-10);
    }
}

void solve_autonomise(const RunConfig& cfg, Problem& p, RunReport& rep) {
    if (cfg.problem.bc.family == BoundaryFamily::NeumannMixed) {
        throw ConfigError(
            "run.method: the shift-block circuits cover Dirichlet and periodic families; the "
            "Neumann flux row makes A non-normal - use method=exact");
    }
    const bool periodic = cfg.problem.bc.family == BoundaryFamily::Periodic;
    SGrid sg = make_sgrid(cfg.T, cfg.n_s);
    EnlargedSystem enl = build_enlarged(p.sys, cfg.T, sg, cfg.eps_override);
    auto [H1, H2] = split_hermitian(p.sys.A);
    const double lp = lambda_plus(p.sys.f, H1, cfg.T, enl.eps);
    const double C_auto = c_auto_bound(p.C_heat, p.A_norm, p.pg, enl.g_f);
    rep.root["predictions"]["C_auto"] = C_auto;
    rep.root["predictions"]["g_f"] = enl.g_f;
    rep.root["predictions"]["lambda_plus"] = lp;

    int r = cfg.segments;
    if (r == 0) r = static_cast<int>(std::max(1.0, std::ceil(C_auto * cfg.T * cfg.T / cfg.delta1)));
    rep.root["predictions"]["r"] = r;
    rep.root["predictions"]["Nt_predicted"] = C_auto * cfg.T * cfg.T / cfg.delta1;

    AutonomisedRun run = evolve_autonomised(enl, p.sys, p.pg, sg, r, p.gamma0, periodic);
    if (!run.constraint_ok) {
        rep.add_warning("s-grid constraint N_s pi/(2T) <= N_p ||A||/(2R) violated; the C_auto "
                        "certificate is not certified at this resolution");
    }
    AutoRecovery rec = recover_from_autonomised(run.state, enl, p.pg, sg, lp, cfg.T);
    rep.root["probabilities"]["stage1_measured"] = rec.pr_stage1;
    rep.root["probabilities"]["stage1_formula"] = rec.pr_stage1_formula;
    rep.root["probabilities"]["stage2_measured"] = rec.pr_stage2;
    rep.root["probabilities"]["stage3_measured"] = rec.pr_stage3;
    rep.root["probabilities"]["stage3_formula"] = rec.pr_stage3_formula;
    rep.root["recovery"]["k_star"] = rec.k_star;
    rep.root["recovery"]["s_offset_slice_error"] = rec.offset_slice_error;
    const double raw = (rec.u - p.ref.u).norm() / p.ref.u.norm();
    rep.root["errors"]["l2_rel_error_raw"] = raw;
    rep.root["errors"]["l2_rel_error_state"] =
        (rec.u / rec.u.norm() - p.ref.u / p.ref.u.norm()).norm();
    rep.root["errors"]["r_eps_recovery_error"] =
        (rec.r_recovered - enl.r_eps.cast<Complex>()).norm() / enl.r_eps.norm();
    fill_meter(rep, run.meter);
}

}  // namespace

RunReport cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    RunReport rep = RunReport::make("solve", cfg);
    Problem p = setup(cfg, rep);
    if (cfg.method == "exact") {
        solve_exact(cfg, p, rep);
    } else if (cfg.method == "circuit-homogeneous") {
        solve_circuit_homogeneous(cfg, p, rep);
    } else if (cfg.method == "lcu") {
        solve_lcu(cfg, p, rep);
    } else if (cfg.method == "autonomise") {
        solve_autonomise(cfg, p, rep);
    }
    rep.root["wall_time_ms"] = ms_since(t0);
    rep.write(out_dir, "solve_report");
    return rep;
}

RunReport cmd_verify_circuits(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    RunReport rep = RunReport::make("verify-circuits", cfg);

    // B_hat diagonalization, j <= 6
    {
        double max_dev = 0.0;
        for (int j = 1; j <= 6; ++j) {
            for (double lambda : {0.0, M_PI / 4, 1.3}) {
                ComplexMatrix B = circuit_to_matrix(build_B_hat(j, lambda));
                const Eigen::Index N = Eigen::Index(1) << j;
                ComplexMatrix Lam = ComplexMatrix::Zero(N, N);
                Lam(N / 2 - 1, N / 2 - 1) = 1.0;
                Lam(N - 1, N - 1) = -1.0;
                ComplexMatrix S = ComplexMatrix::Zero(N, N);
                S(N / 2 - 1, N / 2) = std::exp(Complex(0, lambda));
                S(N / 2, N / 2 - 1) = std::exp(Complex(0, -lambda));
                max_dev = std::max(max_dev,
                                   (B * Lam * B.adjoint() - S).cwiseAbs().maxCoeff());
            }
        }
        rep.add_bound("bhat_diagonalization_max_dev", max_dev, 1e-12);
    }

    // shift decomposition, n <= 6 (exact integer match)
    {
        double max_dev = 0.0;
        for (int n = 1; n <= 6; ++n) {
            auto ops = shift_ops(n);
            ComplexMatrix sm = ComplexMatrix::Zero(ops.S_minus.rows(), ops.S_minus.cols());
            ComplexMatrix sp = sm;
            for (const auto& t : ops.terms_minus) sm += t;
            for (const auto& t : ops.terms_plus) sp += t;
            max_dev = std::max(max_dev, (sm - ops.S_minus).cwiseAbs().maxCoeff());
            max_dev = std::max(max_dev, (sp - ops.S_plus).cwiseAbs().maxCoeff());
            max_dev =
                std::max(max_dev, (ops.S_plus - ops.S_minus.adjoint()).cwiseAbs().maxCoeff());
        }
        rep.add_bound("shift_term_decomposition_max_dev", max_dev, 0.0);
    }

    // V0 Trotter order and Remark bound (n_x = 3, gamma0 = 1, d Np := 2)
    {
        const int n_x = 3;
        const double g0 = 1.0;
        auto ops = shift_ops(n_x);
        const Eigen::Index N = Eigen::Index(1) << n_x;
        ComplexMatrix H0 =
            g0 * (ops.S_plus + ops.S_minus - 2.0 * ComplexMatrix::Identity(N, N));
        std::vector<double> taus = {0.2, 0.1, 0.05, 0.025};
        std::vector<double> errs;
        double worst_ratio = 0.0;
        const double C = (n_x - 1) * g0 * g0 / 2.0;
        for (double tau : taus) {
            const double e =
                op_norm(ComplexMatrix(circuit_to_matrix(build_V0(tau, n_x, g0)) -
                                      expm_hermitian_i(H0, tau)));
            errs.push_back(e);
            worst_ratio = std::max(worst_ratio, e / (C * tau * tau));
        }
        const double slope = std::log(errs.front() / errs.back()) /
                             std::log(taus.front() / taus.back());
        rep.root["predictions"]["v0_trotter_slope"] = slope;
        rep.add_equality("v0_trotter_slope_is_2", slope - 2.0, 0.1);
        rep.add_bound("v0_remark_bound_ratio", worst_ratio, 1.0);
    }

    // V_heat one-segment bound over a tau sweep [PAPER remark]
    {
        const int n_x = 2, n_p = 2, d = 1;
        const double g0 = 1.0;
        auto ops = shift_ops(n_x);
        const Eigen::Index Nx = Eigen::Index(1) << n_x, Np = Eigen::Index(1) << n_p;
        ComplexMatrix H0 =
            g0 * (ops.S_plus + ops.S_minus - 2.0 * ComplexMatrix::Identity(Nx, Nx));
        ComplexMatrix Hheat = ComplexMatrix::Zero(Nx * Np, Nx * Np);
        for (Eigen::Index k = 0; k < Np; ++k) {
            for (Eigen::Index a = 0; a < Nx; ++a)
                for (Eigen::Index b = 0; b < Nx; ++b)
                    Hheat(a * Np + k, b * Np + k) = H0(a, b) * double(k - Np / 2);
        }
        const double C = c_heat_bound(d, Np, n_x, g0);
        double worst = 0.0;
        for (double tau : {0.2, 0.15, 0.1, 0.05, 0.025}) {
            ComplexMatrix U =
                circuit_to_matrix(build_Vheat(tau, n_x, n_p, d, g0, SelectMode::Original));
            worst = std::max(
                worst, op_norm(ComplexMatrix(U - expm_hermitian_i(Hheat, tau))) / (C * tau * tau));
        }
        rep.add_bound("vheat_remark_bound_ratio", worst, 1.0);
    }

    // select-oracle equivalence: measured modified-vs-original deviations
    {
        const double tau = 0.1, g0 = 1.0;
        Json diffs = Json::array();
        struct Triple {
            int d, n_x, n_p;
        };
        for (Triple t : {Triple{1, 2, 3}, Triple{1, 3, 2}, Triple{2, 1, 2}}) {
            ComplexMatrix a = circuit_to_matrix(
                build_Vheat(tau, t.n_x, t.n_p, t.d, g0, SelectMode::Original));
            ComplexMatrix b = circuit_to_matrix(
                build_Vheat(tau, t.n_x, t.n_p, t.d, g0, SelectMode::Modified));
            const double dev = op_norm(ComplexMatrix(a - b));
            diffs.push_back({{"d", t.d}, {"n_x", t.n_x}, {"n_p", t.n_p}, {"deviation", dev}});
            if (t.n_x == 1) rep.add_equality("select_equivalence_exact_nx1", dev, 1e-12);
        }
        rep.root["select_modified_vs_original"] = diffs;
        // the deviation is a genuine O(tau^2) Trotter-ordering effect: record
        // the scaling ratio so the report carries the evidence
        ComplexMatrix a1 = circuit_to_matrix(build_Vheat(0.2, 2, 2, 1, g0, SelectMode::Original));
        ComplexMatrix b1 = circuit_to_matrix(build_Vheat(0.2, 2, 2, 1, g0, SelectMode::Modified));
        ComplexMatrix a2 = circuit_to_matrix(build_Vheat(0.1, 2, 2, 1, g0, SelectMode::Original));
        ComplexMatrix b2 = circuit_to_matrix(build_Vheat(0.1, 2, 2, 1, g0, SelectMode::Modified));
        rep.root["select_deviation_scaling_ratio"] =
            op_norm(ComplexMatrix(a1 - b1)) / op_norm(ComplexMatrix(a2 - b2));
    }

    // statevector engine vs dense oracle on random states
    {
        std::mt19937 rng(2024);
        std::normal_distribution<double> gauss;
        double worst = 0.0;
        for (auto mode : {SelectMode::Original, SelectMode::Modified}) {
            QuantumCircuit c = build_Vheat(0.08, 2, 2, 1, 1.2, mode);
            ComplexMatrix U = circuit_to_matrix(c);
            for (int trial = 0; trial < 100; ++trial) {
                ComplexVector v(U.rows());
                for (auto& x : v.reshaped()) x = Complex(gauss(rng), gauss(rng));
                Statevector s = Statevector::from_vector(v);
                apply(c, s);
                worst = std::max(worst, (s.amplitudes - ComplexVector(U * v)).norm() / v.norm());
            }
        }
        rep.add_bound("apply_vs_dense_max_dev", worst, 1e-11);
    }

    // serialization round trip
    {
        QuantumCircuit c = build_Vheat(0.137, 2, 2, 1, 0.93, SelectMode::Modified);
        const std::string text = circuit_print(c);
        const bool same = circuit_print(circuit_parse(text)) == text;
        rep.add_equality("serialization_round_trip", same ? 0.0 : 1.0, 0.0);
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::ofstream f(std::filesystem::path(out_dir) / "vheat_exemplar.circuit");
            f << text;
        }
    }

    rep.root["wall_time_ms"] = ms_since(t0);
    rep.write(out_dir, "verify_circuits_report");
    return rep;
}

RunReport cmd_gate_count(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    RunReport rep = RunReport::make("gate-count", cfg);

    CsvTable csv;
    csv.columns = {"d",    "n_x",  "n_p",  "single_qubit", "cnot",
                   "mcrz", "cnot_equivalent", "csub_expansions"};
    double sxy = 0.0, sxx = 0.0;  // least squares single ~ c1 * (d n_p n_x)
    std::vector<std::pair<double, double>> pts;  // (d n_p n_x, singles)
    double c2 = 0.0;
    for (int d = 1; d <= 2; ++d) {
        for (int n_x = 2; n_x <= 5; ++n_x) {
            for (int n_p = 2; n_p <= 5; ++n_p) {
                // the modified select form is the circuit whose cost the
                // count lemma describes
                GateCounts g =
                    count_gates(build_Vheat(0.1, n_x, n_p, d, 1.0, SelectMode::Modified));
                csv.rows.push_back({double(d), double(n_x), double(n_p), double(g.single_qubit),
                                    double(g.cnot), double(g.multi_controlled_rz),
                                    double(g.cnot_equivalent),
                                    double(g.controlled_subcircuit_expansions)});
                const double x = double(d) * n_p * n_x;
                sxy += x * double(g.single_qubit);
                sxx += x * x;
                pts.emplace_back(x, double(g.single_qubit));
                c2 = std::max(c2, double(g.cnot_equivalent) / (double(d) * n_p * n_x * n_x));
            }
        }
    }
    const double c1 = sxy / sxx;
    double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
    for (const auto& [x, y] : pts) mean += y;
    mean /= pts.size();
    for (const auto& [x, y] : pts) {
        ss_res += (y - c1 * x) * (y - c1 * x);
        ss_tot += (y - mean) * (y - mean);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    rep.root["gate_counts"] = {{"fit_c1", c1},
                               {"fit_r2", r2},
                               {"c2_max_ratio", c2},
                               {"grid_points", pts.size()}};
    rep.add_bound("single_qubit_fit_r2_complement", 1.0 - r2, 0.01);
    rep.add_bound("cnot_equivalent_c2", c2, 4.0);

    // fitted scaling exponents (log-log multilinear), reported for the record
    {
        Eigen::MatrixXd X(csv.rows.size(), 4);
        Eigen::VectorXd ys(csv.rows.size()), yc(csv.rows.size());
        for (std::size_t i = 0; i < csv.rows.size(); ++i) {
            X(i, 0) = 1.0;
            X(i, 1) = std::log(csv.rows[i][0]);
            X(i, 2) = std::log(csv.rows[i][2]);
            X(i, 3) = std::log(csv.rows[i][1]);
            ys(i) = std::log(csv.rows[i][3]);
            yc(i) = std::log(csv.rows[i][6]);
        }
        Eigen::VectorXd es = X.colPivHouseholderQr().solve(ys);
        Eigen::VectorXd ec = X.colPivHouseholderQr().solve(yc);
        rep.root["gate_counts"]["single_qubit_exponents_d_np_nx"] = {es(1), es(2), es(3)};
        rep.root["gate_counts"]["cnot_equivalent_exponents_d_np_nx"] = {ec(1), ec(2), ec(3)};
    }

    if (!out_dir.empty()) {
        csv.write((std::filesystem::path(out_dir) / "gate_counts.csv").string());
    }
    rep.root["wall_time_ms"] = ms_since(t0);
    rep.write(out_dir, "gate_count_report");
    return rep;
}

namespace {

struct SweepPoint {
    double scale = 1.0;
    double C_LCU = 0.0, C_auto = 0.0, g_f = 0.0, lambda_p = 0.0;
    double Pr_lcu = 0.0, Pr_auto = 0.0;
    double Nt_lcu = 0.0, Nt_auto = 0.0;
    std::int64_t OH_lcu = 0, OH_auto = 0, HAM = 0, Ob = 0;
    bool auto_factor_smaller = false;
};

SweepPoint run_sweep_point(const RunConfig& base, double scale) {
    RunConfig cfg = base;
    cfg.problem.bc.left = base.problem.bc.left.scaled(scale);
    cfg.problem.bc.right = base.problem.bc.right.scaled(scale);
    SweepPoint pt;
    pt.scale = scale;

    SemiDiscreteSystem sys = build_semi_discrete(cfg.problem);
    PGrid pg = make_pgrid(cfg.R, cfg.n_p);
    SGrid sg = make_sgrid(cfg.T, cfg.n_s);
    const double gamma0 = cfg.problem.a / (sys.dx * sys.dx * cfg.R);
    const double A_norm = op_norm(sys.A);
    const double H_norm = A_norm * double(pg.N_p) / (2.0 * cfg.R);
    const double C_heat = c_heat_bound(cfg.problem.d, pg.N_p, cfg.problem.n_x, gamma0);
    EnlargedSystem enl = build_enlarged(sys, cfg.T, sg, cfg.eps_override);
    auto [H1, H2] = split_hermitian(sys.A);
    pt.g_f = enl.g_f;
    pt.lambda_p = lambda_plus(sys.f, H1, cfg.T, enl.eps);
    pt.C_auto = c_auto_bound(C_heat, A_norm, pg, enl.g_f);

    auto ref = reference_solution(sys.A, [&](double t) { return sys.f.eval(t); }, sys.u0, cfg.T);
    auto sp = success_probability(sys.u0, ref.u, sys.f, cfg.T, pg);
    pt.Pr_lcu = sp.formula;
    QueryMeter dummy;
    auto qr = lcu_query_report(dummy, C_heat, H_norm, sys.f, cfg.T, cfg.delta1,
                               std::max(sp.formula, 1e-300));
    pt.C_LCU = qr.C_LCU;
    pt.Nt_lcu = qr.predicted_Nt_over_Pr;

    // autonomisation overall probability (paper form)
    double f2ave = 0.0;
    for (const auto& [idx, sig] : enl.f_by_index) f2ave += sig.mean_square(cfg.T);
    const double cep = pg.C_e_shifted(pt.lambda_p * cfg.T);
    const double prw = (cep * cep) / (pg.C_e() * pg.C_e());
    const double prg = sg.C_G0() * sg.C_G0() / (sg.C_G() * sg.C_G());
    pt.Pr_auto = prw * prg * ref.u.squaredNorm() /
                 (sys.u0.squaredNorm() + f2ave + 1.0);
    pt.Nt_auto = pt.C_auto * cfg.T * cfg.T / (std::max(pt.Pr_auto, 1e-300) * cfg.delta1);
    pt.auto_factor_smaller = pt.Nt_auto < pt.Nt_lcu;

    // measured meters from small fixed-size runs (deterministic)
    const bool periodic = cfg.problem.bc.family == BoundaryFamily::Periodic;
    {
        LcuPlan plan = make_plan(64, cfg.T, sys.f, pg);
        ComplexVector wt0 = to_mode_space(initial_extended_state(sys.u0, pg), pg, sys.u0.size());
        CombineResult comb = combine_homogeneous_inhomogeneous(
            wt0, plan, sys.f, pg, cfg.T, 16, cfg.problem.n_x, cfg.n_p, cfg.problem.d, gamma0,
            periodic);
        pt.OH_lcu = comb.meter.get("O_H");
        pt.Ob = comb.meter.get("O_b");
    }
    {
        AutonomisedRun run = evolve_autonomised(enl, sys, pg, sg, 16, gamma0, periodic);
        pt.OH_auto = run.meter.get("O_H");
        pt.HAM = run.meter.get("HAM_equivalents");
    }
    return pt;
}

}  // namespace

RunReport cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    RunReport rep = RunReport::make("sweep", cfg);
    const std::vector<double> scales = {0.25, 0.5, 1.0, 2.0, 4.0};

    std::vector<SweepPoint> points(scales.size());
    if (cfg.threads > 1) {
        std::vector<std::future<SweepPoint>> futs;
        for (double s : scales) {
            futs.push_back(std::async(std::launch::async, run_sweep_point, cfg, s));
        }
        for (std::size_t i = 0; i < futs.size(); ++i) points[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < scales.size(); ++i) {
            points[i] = run_sweep_point(cfg, scales[i]);
        }
    }

    CsvTable csv;
    csv.columns = {"scale",  "C_LCU",    "C_auto",  "g_f",     "lambda_plus",
                   "Pr_lcu", "Pr_auto",  "Nt_lcu",  "Nt_auto", "OH_lcu",
                   "OH_auto", "HAM",     "Ob",      "auto_factor_smaller"};
    Json jpoints = Json::array();
    bool any_auto_smaller = false;
    for (const auto& pt : points) {
        csv.rows.push_back({pt.scale, pt.C_LCU, pt.C_auto, pt.g_f, pt.lambda_p, pt.Pr_lcu,
                            pt.Pr_auto, pt.Nt_lcu, pt.Nt_auto, double(pt.OH_lcu),
                            double(pt.OH_auto), double(pt.HAM), double(pt.Ob),
                            pt.auto_factor_smaller ? 1.0 : 0.0});
        jpoints.push_back({{"scale", pt.scale},
                           {"Nt_lcu", pt.Nt_lcu},
                           {"Nt_auto", pt.Nt_auto},
                           {"auto_factor_smaller", pt.auto_factor_smaller}});
        any_auto_smaller = any_auto_smaller || pt.auto_factor_smaller;
    }
    rep.root["sweep_points"] = jpoints;
    rep.root["auto_factor_smaller_somewhere"] = any_auto_smaller;

    // determinism: re-run one point and compare the meters
    SweepPoint again = run_sweep_point(cfg, scales[2]);
    rep.add_equality("sweep_meters_deterministic",
                     double(again.OH_lcu - points[2].OH_lcu) +
                         double(again.HAM - points[2].HAM),
                     0.0);

    if (!out_dir.empty()) {
        csv.write((std::filesystem::path(out_dir) / "sweep.csv").string());
    }
    rep.root["wall_time_ms"] = ms_since(t0);
    rep.write(out_dir, "sweep_report");
    return rep;
}

RunReport run_command(const RunConfig& cfg, const std::string& command,
                      const std::string& out_dir) {
    if (command == "solve") return cmd_solve(cfg, out_dir);
    if (command == "verify-circuits") return cmd_verify_circuits(cfg, out_dir);
    if (command == "gate-count") return cmd_gate_count(cfg, out_dir);
    if (command == "sweep") return cmd_sweep(cfg, out_dir);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace schroheat
