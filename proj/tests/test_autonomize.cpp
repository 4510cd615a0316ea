#include "schroheat/autonomize.hpp"

#include <doctest.h>

#include <cmath>

using namespace schroheat;

namespace {

struct Instance {
    SemiDiscreteSystem sys;
    PGrid pg;
    SGrid sg;
    EnlargedSystem enl;
    double gamma0;
    double T;
    Instance(int n_x, int n_p, int n_s, double R, double T_) : T(T_) {
        HeatProblem p;
        p.n_x = n_x;
        p.bc.family = BoundaryFamily::Dirichlet;
        p.bc.left = TimeSignal::sine(1.0, 1.0, 0.0);
        p.initial = TimeSignal::sine(1.0, M_PI, 0.0);
        sys = build_semi_discrete(p);
        pg = make_pgrid(R, n_p);
        sg = make_sgrid(T, n_s);
        enl = build_enlarged(sys, T, sg);
        gamma0 = 1.0 / (sys.dx * sys.dx * R);
    }
};

ComplexVector rk4_enlarged(const Instance& inst) {
    auto [H1, H2] = split_hermitian(inst.sys.A);
    auto deriv = [&](double t, const ComplexVector& y) {
        return ComplexVector(Complex(0, 1) *
                             (H_eps_dense(inst.enl, H1, H2, inst.pg, t) * y));
    };
    const ComplexVector q =
        inst.pg.fourier_unitary().adjoint() * inst.pg.weights().cast<Complex>();
    ComplexVector wteps0(2 * inst.enl.N * inst.pg.N_p);
    for (Eigen::Index i = 0; i < 2 * inst.enl.N; ++i) {
        wteps0.segment(i * inst.pg.N_p, inst.pg.N_p) = inst.enl.u_eps0(i) * q;
    }
    return rk4(deriv, wteps0, inst.T, 1 << 14);
}

}  // namespace

TEST_CASE("mollifier values") {
    CHECK(mollifier_G(0.0) == doctest::Approx(1.0));
    CHECK(mollifier_G(1.0) == doctest::Approx(0.0));
    CHECK(mollifier_G(-1.0) == doctest::Approx(0.0));
    CHECK(mollifier_G(2.3) == doctest::Approx(0.0));
    // G(0.5) = e * exp(1/(0.25-1)) = e^{-1/3}
    CHECK(mollifier_G(0.5) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("sgrid layout") {
    SGrid sg = make_sgrid(0.05, 3);
    CHECK(sg.N_s == 8);
    CHECK(sg.s(0) == doctest::Approx(-0.05));
    CHECK(sg.s(4) == doctest::Approx(0.0));
    CHECK(sg.dxs == doctest::Approx(0.0125));
    CHECK(sg.R_s == doctest::Approx(0.05 / M_PI));
    CHECK(sg.G(4) == doctest::Approx(1.0));  // node at s = 0
    CHECK(sg.G(0) == doctest::Approx(0.0));  // support boundary
}

TEST_CASE("enlarged system basics") {
    SUBCASE("f == 0: r_eps = eps * ones and u passes through") {
        Instance inst(1, 2, 3, 1.0, 0.05);
        SemiDiscreteSystem hom = inst.sys;
        hom.f.entries.clear();
        EnlargedSystem enl = build_enlarged(hom, 0.05, inst.sg);
        CHECK(enl.eps == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK((enl.r_eps.array() - enl.eps).abs().maxCoeff() < 1e-15);
        CHECK(enl.g_f == doctest::Approx(0.0));
    }
    SUBCASE("constant source: F_eps entry is c/sqrt(c^2+eps^2)") {
        SemiDiscreteSystem sys = build_dirichlet_1d(1, 0.5, TimeSignal::constant(3.0),
                                                    TimeSignal::zero());
        SGrid sg = make_sgrid(1.0, 3);
        EnlargedSystem enl = build_enlarged(sys, 1.0, sg);
        const double c = 3.0 / 0.25;  // scaled by 1/dx^2
        const double expect = c / std::sqrt(c * c + enl.eps * enl.eps);
        CHECK(enl.F_eps_diag(0.7)(0) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(enl.g_f == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("enlarged block ODE reproduces the reference solution and keeps r_eps") {
    // the block-triangular identity lives in u-space: d/dt [u; r] = [[A, F],[0,0]] [u; r]
    Instance inst(2, 3, 3, 1.5, 0.05);
    const Eigen::Index N = inst.enl.N;
    auto deriv = [&](double t, const ComplexVector& y) {
        const RealVector fe = inst.enl.F_eps_diag(t);
        ComplexVector out(2 * N);
        out.head(N) = inst.sys.A * y.head(N) + fe.cast<Complex>().asDiagonal() * y.tail(N);
        out.tail(N).setZero();
        return out;
    };
    ComplexVector uepsT = rk4(deriv, inst.enl.u_eps0, inst.T, 1 << 12);
    auto ref = reference_solution(inst.sys.A, [&](double t) { return inst.sys.f.eval(t); },
                                  inst.sys.u0, inst.T);
    REQUIRE(ref.converged);
    CHECK((uepsT.head(N) - ref.u).norm() < 1e-8 * (1.0 + ref.u.norm()));
    CHECK((uepsT.tail(N) - inst.enl.r_eps.cast<Complex>()).norm() < 1e-12);
}

TEST_CASE("schrodingerised enlarged evolution recovers u and r up to the p-grid error") {
    Instance inst(1, 5, 3, 2.0, 0.05);
    ComplexVector wteps = rk4_enlarged(inst);
    ComplexVector w = to_p_space(wteps, inst.pg, 2 * inst.enl.N);
    Recovery rec_u = recover_u(w.segment(0, inst.enl.N * inst.pg.N_p), inst.pg, 0.0, inst.T);
    auto ref = reference_solution(inst.sys.A, [&](double t) { return inst.sys.f.eval(t); },
                                  inst.sys.u0, inst.T);
    REQUIRE(ref.converged);
    CHECK((rec_u.u - ref.u).norm() / ref.u.norm() < 0.1);
    Recovery rec_r =
        recover_u(w.segment(inst.enl.N * inst.pg.N_p, inst.enl.N * inst.pg.N_p), inst.pg, 0.0,
                  inst.T);
    CHECK((rec_r.u - inst.enl.r_eps.cast<Complex>()).norm() / inst.enl.r_eps.norm() < 0.05);
}

TEST_CASE("Hbar is Hermitian and s<0 blocks vanish") {
    Instance inst(1, 2, 3, 1.0, 0.05);
    auto [H1, H2] = split_hermitian(inst.sys.A);
    ComplexMatrix Hbar = assemble_Hbar(inst.enl, H1, H2, inst.pg, inst.sg);
    CHECK((Hbar - Hbar.adjoint()).cwiseAbs().maxCoeff() < 1e-11);

    SemiDiscreteSystem hom = inst.sys;
    hom.f.entries.clear();
    EnlargedSystem enl0 = build_enlarged(hom, inst.T, inst.sg);
    ComplexMatrix Hbar0 = assemble_Hbar(enl0, H1, H2, inst.pg, inst.sg);
    // with f == 0 there is no B block at all
    const Eigen::Index inner = 2 * inst.enl.N * inst.pg.N_p;
    ComplexMatrix offdiag = Hbar0;
    const ComplexMatrix Fs =
        dft_matrix(inst.sg.N_s, -inst.sg.T, inst.sg.T) / std::sqrt(double(inst.sg.N_s));
    const ComplexMatrix Ps = Fs * inst.sg.mu.cast<Complex>().asDiagonal() * Fs.adjoint();
    ComplexMatrix expected = ComplexMatrix::Zero(Hbar0.rows(), Hbar0.cols());
    ComplexMatrix A0 = ComplexMatrix::Zero(inner, inner);
    A0.topLeftCorner(inner / 2, inner / 2) = assemble_hamiltonian(H1, H2, inst.pg);
    for (Eigen::Index l = 0; l < inst.sg.N_s; ++l) {
        for (Eigen::Index m = 0; m < inst.sg.N_s; ++m) {
            expected.block(l * inner, m * inner, inner, inner) =
                -Ps(l, m) * ComplexMatrix::Identity(inner, inner);
        }
        expected.block(l * inner, l * inner, inner, inner) += A0;
    }
    CHECK((Hbar0 - expected).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("autonomised dense evolution sliced at the periodic s=T node matches RK4") {
    // error decreases monotonically over N_s in {8, 16, 32}
    double prev = 1e9;
    for (int n_s : {3, 4, 5}) {
        Instance inst(1, 2, n_s, 1.0, 0.05);
        auto [H1, H2] = split_hermitian(inst.sys.A);
        ComplexMatrix Hbar = assemble_Hbar(inst.enl, H1, H2, inst.pg, inst.sg);
        ComplexVector wbar0 = initial_wbar(inst.enl, inst.pg, inst.sg);
        ComplexVector wbarT = expm_hermitian_i(Hbar, inst.T) * wbar0;
        const Eigen::Index inner = 2 * inst.enl.N * inst.pg.N_p;
        ComplexVector slice = wbarT.segment(0, inner);  // l = 0 is s = -T == +T
        ComplexVector target = mollifier_G(0.0) * rk4_enlarged(inst);
        const double err = (slice - target).norm();
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 2e-3);
}

TEST_CASE("structured appliers match the gate-level U_auto^(1) circuit") {
    Instance inst(1, 2, 2, 1.0, 0.05);
    const double tau = 0.01;
    AutoWorkspace ws =
        make_auto_workspace(tau, inst.enl, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
    ComplexMatrix U1 = dense_Uauto1(ws);

    QuantumCircuit c = build_Uauto1(tau, inst.sg, 1, 2, 1, inst.gamma0, false);
    ComplexMatrix Ufull = circuit_to_matrix(c);
    // restrict to the kickback-ancilla |0> block (last wire = LSB)
    const Eigen::Index dim = U1.rows();
    ComplexMatrix Ublock(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) Ublock(i, j) = Ufull(2 * i, 2 * j);
    }
    CHECK((Ublock - U1).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("U_auto^(1) ancilla-0 block equals exp(i tau (-P_s x I + I x A0)) for n_x=1") {
    Instance inst(1, 2, 2, 1.0, 0.05);
    const double tau = 0.01;
    AutoWorkspace ws =
        make_auto_workspace(tau, inst.enl, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
    ComplexMatrix U1 = dense_Uauto1(ws);

    auto [H1, H2] = split_hermitian(inst.sys.A);
    SemiDiscreteSystem hom = inst.sys;
    hom.f.entries.clear();
    EnlargedSystem enl0 = build_enlarged(hom, inst.T, inst.sg);
    ComplexMatrix Hfree = assemble_Hbar(enl0, H1, H2, inst.pg, inst.sg);
    // n_x = 1: the heat circuit inside is exact, so the block matches exactly
    CHECK(op_norm(ComplexMatrix(U1 - expm_hermitian_i(Hfree, tau))) < 1e-11);
}

TEST_CASE("EXP factors: identity for f=0; exact select powers; Trotter bound") {
    Instance inst(1, 2, 3, 1.0, 0.05);
    SUBCASE("zero source gives identity factors") {
        SemiDiscreteSystem hom = inst.sys;
        hom.f.entries.clear();
        EnlargedSystem enl0 = build_enlarged(hom, inst.T, inst.sg);
        AutoWorkspace ws =
            make_auto_workspace(0.02, enl0, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
        const Eigen::Index dim = inst.sg.N_s * 2 * 2 * 4;
        CHECK((dense_Uauto2x(ws) - ComplexMatrix::Identity(dim, dim)).norm() < 1e-14);
        CHECK((dense_Uauto2y(ws) - ComplexMatrix::Identity(dim, dim)).norm() < 1e-14);
    }
    SUBCASE("EXP_x(k tau) = EXP_x(tau)^k (exact one-parameter family)") {
        const double tau = 0.015;
        AutoWorkspace w1 =
            make_auto_workspace(tau, inst.enl, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
        AutoWorkspace w3 =
            make_auto_workspace(3 * tau, inst.enl, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
        ComplexMatrix X1 = dense_Uauto2x(w1);
        ComplexMatrix X3 = dense_Uauto2x(w3);
        CHECK((X1 * X1 * X1 - X3).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("x/y splitting obeys the (N_p/(8R)) g_f^2 tau^2 bound with slope 2") {
        auto [H1, H2] = split_hermitian(inst.sys.A);
        auto err = [&](double tau) {
            AutoWorkspace ws =
                make_auto_workspace(tau, inst.enl, inst.pg, inst.sg, 1, 1, inst.gamma0, false);
            // exact exp(i tau sum_l |l><l| x B(s_l)) from the dense Hbar pieces
            ComplexMatrix Hfull = assemble_Hbar(inst.enl, H1, H2, inst.pg, inst.sg);
            SemiDiscreteSystem hom = inst.sys;
            hom.f.entries.clear();
            EnlargedSystem enl0 = build_enlarged(hom, inst.T, inst.sg);
            ComplexMatrix Hfree = assemble_Hbar(enl0, H1, H2, inst.pg, inst.sg);
            ComplexMatrix U2exact = expm_hermitian_i(ComplexMatrix(Hfull - Hfree), tau);
            return op_norm(ComplexMatrix(U2exact - dense_Uauto2x(ws) * dense_Uauto2y(ws)));
        };
        const double e1 = err(0.04), e2 = err(0.02);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
        const double bound =
            double(inst.pg.N_p) / (8 * inst.pg.R) * inst.enl.g_f * inst.enl.g_f * 0.04 * 0.04;
        CHECK(e1 <= bound);
    }
}

TEST_CASE("evolve_autonomised: unitarity, meters, and f=0 exactness at n_x=1") {
    Instance inst(1, 2, 3, 1.0, 0.05);
    SUBCASE("norm preserved") {
        AutonomisedRun run =
            evolve_autonomised(inst.enl, inst.sys, inst.pg, inst.sg, 16, inst.gamma0, false);
        ComplexVector wbar0 = initial_wbar(inst.enl, inst.pg, inst.sg);
        CHECK(run.state.norm() == doctest::Approx(wbar0.norm()).epsilon(1e-9));
        CHECK(run.meter.get("O_H") == 16);
        CHECK(run.meter.get("HAM_equivalents") == 16 * (2 + 2));
    }
    SUBCASE("f = 0, n_x = 1: matches dense evolution to 1e-10") {
        SemiDiscreteSystem hom = inst.sys;
        hom.f.entries.clear();
        EnlargedSystem enl0 = build_enlarged(hom, inst.T, inst.sg);
        AutonomisedRun run =
            evolve_autonomised(enl0, hom, inst.pg, inst.sg, 8, inst.gamma0, false);
        auto [H1, H2] = split_hermitian(hom.A);
        ComplexMatrix Hbar = assemble_Hbar(enl0, H1, H2, inst.pg, inst.sg);
        ComplexVector expect = expm_hermitian_i(Hbar, inst.T) * initial_wbar(enl0, inst.pg, inst.sg);
        CHECK((run.state - expect).norm() < 1e-10);
    }
    SUBCASE("halving tau quarters the end-to-end operator error") {
        auto err = [&](int r) {
            AutonomisedRun run =
                evolve_autonomised(inst.enl, inst.sys, inst.pg, inst.sg, r, inst.gamma0, false);
            auto [H1, H2] = split_hermitian(inst.sys.A);
            ComplexMatrix Hbar = assemble_Hbar(inst.enl, H1, H2, inst.pg, inst.sg);
            ComplexVector expect =
                expm_hermitian_i(Hbar, inst.T) * initial_wbar(inst.enl, inst.pg, inst.sg);
            return (run.state - expect).norm();
        };
        const double e1 = err(4), e2 = err(8);
        // first-order splitting: error per run scales as tau = T/r
        CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.25));
    }
}

TEST_CASE("recovery: stage probabilities are exact on a synthetic ideal state") {
    Instance inst(2, 3, 3, 1.5, 0.05);
    const Eigen::Index N = inst.enl.N, Np = inst.pg.N_p;
    const Eigen::Index inner = 2 * N * Np;
    // ideal z(T, s_l) = G((s_l - T)/T mod) * w~_eps(T) with w_eps(T) the exact
    // product structure u_eps x e^{-|p|}
    ComplexVector u_eps(2 * N);
    std::srand(17);
    u_eps.head(N) = ComplexVector::Random(N);
    u_eps.tail(N) = inst.enl.r_eps.cast<Complex>();
    ComplexVector w_eps(inner);
    for (Eigen::Index i = 0; i < 2 * N; ++i) {
        for (Eigen::Index k = 0; k < Np; ++k) {
            w_eps(i * Np + k) = u_eps(i) * std::exp(-std::abs(inst.pg.p(k)));
        }
    }
    ComplexVector wteps = to_mode_space(w_eps, inst.pg, 2 * N);
    ComplexVector wbar(inst.sg.N_s * inner);
    for (Eigen::Index l = 0; l < inst.sg.N_s; ++l) {
        // profile G(s - T) on the periodic grid = G shifted by N_s/2 nodes
        const Eigen::Index src = (l + inst.sg.N_s / 2) % inst.sg.N_s;
        wbar.segment(l * inner, inner) = inst.sg.G(src) * wteps;
    }
    AutoRecovery rec = recover_from_autonomised(wbar, inst.enl, inst.pg, inst.sg, 0.0, inst.T);
    CHECK(rec.pr_stage1 == doctest::Approx(rec.pr_stage1_formula).epsilon(1e-10));
    CHECK((rec.u - u_eps.head(N)).norm() < 1e-10);
    CHECK((rec.r_recovered - inst.enl.r_eps.cast<Complex>()).norm() < 1e-10);
    // stage 3 formula: ||u||^2 / (||u||^2 + ||r_eps||^2) with ||r_eps||^2 = ||f||_ave^2 + 1
    const double reps2 = inst.enl.r_eps.squaredNorm();
    double f2ave = 0.0;
    for (const auto& [idx, sig] : inst.enl.f_by_index) f2ave += sig.mean_square(inst.T);
    CHECK(reps2 == doctest::Approx(f2ave + 1.0).epsilon(1e-10));
    // measured flag probability on the ideal state: the p-profile is exactly
    // separable, so measured equals the formula
    const double expect3 =
        u_eps.head(N).squaredNorm() / (u_eps.head(N).squaredNorm() + reps2);
    CHECK(rec.pr_stage3 == doctest::Approx(expect3).epsilon(1e-10));
    CHECK(rec.pr_stage3_formula == doctest::Approx(expect3).epsilon(1e-8));
}

TEST_CASE("C_auto bound formula") {
    PGrid pg = make_pgrid(2.0, 3);
    const double C = c_auto_bound(5.0, 10.0, pg, 0.5);
    const double expect = 5.0 + (8.0 / 2.0) * 10.0 * (8.0 / 4.0 + 1.0) * 0.5 + (8.0 / 2.0) * 0.25;
    CHECK(C == doctest::Approx(expect).epsilon(1e-14));
}
