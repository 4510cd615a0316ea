#include "schroheat/autonomize.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <functional>

namespace schroheat {

double mollifier_G(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return M_E * std::exp(1.0 / (s * s - 1.0));
}

SGrid make_sgrid(double T, int n_s) {
    if (!(T > 0)) throw NumericsError("make_sgrid: T > 0 required");
    if (n_s < 1) throw NumericsError("make_sgrid: n_s >= 1 required");
    SGrid sg;
    sg.T = T;
    sg.R_s = T / M_PI;
    sg.n_s = n_s;
    sg.N_s = Eigen::Index(1) << n_s;
    sg.dxs = 2.0 * T / static_cast<double>(sg.N_s);
    sg.s.resize(sg.N_s);
    sg.mu.resize(sg.N_s);
    sg.G.resize(sg.N_s);
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        sg.s(l) = -T + static_cast<double>(l) * sg.dxs;
        sg.mu(l) = static_cast<double>(l - sg.N_s / 2) / sg.R_s;
        // the mollifier is rescaled to have support exactly [-T, T]
        sg.G(l) = mollifier_G(sg.s(l) / T);
    }
    return sg;
}

RealVector EnlargedSystem::F_eps_diag(double t) const {
    RealVector v = RealVector::Zero(N);
    for (const auto& [idx, sig] : f_by_index) v(idx) = sig.eval(t) / r_eps(idx);
    return v;
}

EnlargedSystem build_enlarged(const SemiDiscreteSystem& sys, double T, const SGrid& sg,
                              double eps_override) {
    EnlargedSystem enl;
    enl.N = sys.A.rows();
    enl.eps = eps_override > 0 ? eps_override : 1.0 / std::sqrt(static_cast<double>(enl.N));
    enl.T = T;
    enl.f_by_index = combined_entries(sys.f);
    enl.r_eps = RealVector::Constant(enl.N, enl.eps);
    for (const auto& [idx, sig] : enl.f_by_index) {
        enl.r_eps(idx) = std::sqrt(sig.mean_square(T) + enl.eps * enl.eps);
    }
    enl.g_f = 0.0;
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        if (sg.s(l) < 0) continue;
        const RealVector fe = enl.F_eps_diag(sg.s(l));
        enl.g_f = std::max(enl.g_f, fe.cwiseAbs().maxCoeff());
    }
    enl.u_eps0.resize(2 * enl.N);
    enl.u_eps0.head(enl.N) = sys.u0;
    enl.u_eps0.tail(enl.N) = enl.r_eps.cast<Complex>();
    return enl;
}

namespace {

ComplexMatrix sigma_x() {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}
ComplexMatrix sigma_y() {
    ComplexMatrix s(2, 2);
    s << 0, Complex(0, -1), Complex(0, 1), 0;
    return s;
}
ComplexMatrix proj0() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 0) = 1;
    return s;
}

}  // namespace

ComplexMatrix H_eps_dense(const EnlargedSystem& enl, const ComplexMatrix& H1,
                          const ComplexMatrix& H2, const PGrid& pg, double t) {
    const Eigen::Index N = enl.N;
    const RealVector fe = enl.F_eps_diag(t);
    ComplexMatrix F = fe.cast<Complex>().asDiagonal();
    ComplexMatrix H1e = ComplexMatrix::Zero(2 * N, 2 * N);
    H1e.topLeftCorner(N, N) = H1;
    H1e.topRightCorner(N, N) = F / 2.0;
    H1e.bottomLeftCorner(N, N) = F / 2.0;
    ComplexMatrix H2e = ComplexMatrix::Zero(2 * N, 2 * N);
    H2e.topLeftCorner(N, N) = H2;
    H2e.topRightCorner(N, N) = F / Complex(0, 2);
    H2e.bottomLeftCorner(N, N) = -F / Complex(0, 2);
    return assemble_hamiltonian(H1e, H2e, pg);
}

ComplexMatrix assemble_Hbar(const EnlargedSystem& enl, const ComplexMatrix& H1,
                            const ComplexMatrix& H2, const PGrid& pg, const SGrid& sg) {
    const Eigen::Index N = enl.N;
    const Eigen::Index inner = 2 * N * pg.N_p;
    const Eigen::Index dim = sg.N_s * inner;
    if (dim > kDenseCap) throw NumericsError("assemble_Hbar: dense cap exceeded");

    const ComplexMatrix H = assemble_hamiltonian(H1, H2, pg);
    ComplexMatrix A0 = Eigen::kroneckerProduct(proj0(), H).eval();

    const ComplexMatrix Fs =
        dft_matrix(sg.N_s, -sg.T, sg.T) / std::sqrt(static_cast<double>(sg.N_s));
    const ComplexMatrix Ps =
        Fs * sg.mu.cast<Complex>().asDiagonal() * Fs.adjoint();

    ComplexMatrix Hbar = ComplexMatrix::Zero(dim, dim);
    Hbar -= Eigen::kroneckerProduct(Ps, ComplexMatrix::Identity(inner, inner)).eval();
    Hbar += Eigen::kroneckerProduct(ComplexMatrix::Identity(sg.N_s, sg.N_s), A0).eval();
    const ComplexMatrix Deta = pg.eta.cast<Complex>().asDiagonal();
    const ComplexMatrix Ip = ComplexMatrix::Identity(pg.N_p, pg.N_p);
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        if (sg.s(l) < 0) continue;
        const RealVector fe = enl.F_eps_diag(sg.s(l));
        ComplexMatrix F = fe.cast<Complex>().asDiagonal();
        ComplexMatrix B = -Eigen::kroneckerProduct(sigma_x(),
                                                   Eigen::kroneckerProduct(F / 2.0, Deta).eval())
                               .eval() +
                          Eigen::kroneckerProduct(sigma_y(),
                                                  Eigen::kroneckerProduct(F / 2.0, Ip).eval())
                              .eval();
        Hbar.block(l * inner, l * inner, inner, inner) += B;
    }
    return Hbar;
}

ComplexVector initial_wbar(const EnlargedSystem& enl, const PGrid& pg, const SGrid& sg) {
    const ComplexVector q =
        pg.fourier_unitary().adjoint() * pg.weights().cast<Complex>();
    ComplexVector wteps0(2 * enl.N * pg.N_p);
    for (Eigen::Index i = 0; i < 2 * enl.N; ++i) {
        wteps0.segment(i * pg.N_p, pg.N_p) = enl.u_eps0(i) * q;
    }
    ComplexVector out(sg.N_s * wteps0.size());
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        out.segment(l * wteps0.size(), wteps0.size()) = sg.G(l) * wteps0;
    }
    return out;
}

QuantumCircuit build_Uauto1(double tau, const SGrid& sg, int n_x, int n_p, int d, double gamma0,
                            bool periodic) {
    QuantumCircuit c;
    c.registers.push_back({"s", sg.n_s});
    c.registers.push_back({"aug", 1});
    for (int r = 0; r < d; ++r) c.registers.push_back({"x" + std::to_string(r), n_x});
    c.registers.push_back({"p", n_p});
    c.registers.push_back({"kb", 1});
    const int flag_wire = sg.n_s;
    const int heat_off = sg.n_s + 1;
    const int kb_wire = c.total_wires() - 1;

    const QuantumCircuit Fs = build_centered_qft(sg.n_s);
    c.append(embed(Fs.adjoint(), c.registers, 0));

    // phase kickback ladder: e^{-i tau D_s} via Rz on the ancilla
    const double gamma_s = 2.0 * tau / sg.R_s;
    for (int m = 0; m < sg.n_s; ++m) {
        QuantumCircuit sub;
        sub.registers = c.registers;
        sub.append(Gate::rz(std::ldexp(gamma_s, m), kb_wire));
        c.append(Gate::controlled(sg.n_s - 1 - m, 1, std::move(sub)));
    }
    c.append(Gate::rz(-static_cast<double>(sg.N_s / 2) * gamma_s, kb_wire));

    // e^{i tau A0}: heat evolution on the flag-0 branch
    QuantumCircuit heat;
    heat.registers = c.registers;
    heat.append(embed(evolution_segment(tau, n_x, n_p, d, gamma0, periodic), c.registers,
                      heat_off));
    c.append(Gate::controlled(flag_wire, 0, std::move(heat)));

    c.append(embed(Fs, c.registers, 0));
    return c;
}

AutoWorkspace make_auto_workspace(double tau, const EnlargedSystem& enl, const PGrid& pg,
                                  const SGrid& sg, int n_x, int d, double gamma0,
                                  bool periodic) {
    AutoWorkspace ws;
    ws.Ns = sg.N_s;
    ws.Nx = enl.N;
    ws.Np = pg.N_p;
    ws.tau = tau;
    ws.eta = pg.eta;
    const ComplexMatrix Fs =
        dft_matrix(sg.N_s, -sg.T, sg.T) / std::sqrt(static_cast<double>(sg.N_s));
    ComplexVector phases(sg.N_s);
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        phases(l) = std::exp(Complex(0, -tau * sg.mu(l)));
    }
    ws.exp_minus_iPs = Fs * phases.asDiagonal() * Fs.adjoint();
    SegmentBlocks blocks = segment_blocks(tau, n_x, pg.n_p, d, gamma0, periodic);
    ws.heat_slice = std::move(blocks.slice);
    ws.Fe.resize(sg.N_s, enl.N);
    for (Eigen::Index l = 0; l < sg.N_s; ++l) {
        if (sg.s(l) < 0) {
            ws.Fe.row(l).setZero();
        } else {
            ws.Fe.row(l) = enl.F_eps_diag(sg.s(l)).transpose();
        }
    }
    return ws;
}

namespace {

inline Eigen::Index flat(const AutoWorkspace& ws, Eigen::Index l, int flag, Eigen::Index i,
                         Eigen::Index k) {
    return ((l * 2 + flag) * ws.Nx + i) * ws.Np + k;
}

void apply_u2y(const AutoWorkspace& ws, ComplexVector& a) {
    for (Eigen::Index l = 0; l < ws.Ns; ++l) {
        for (Eigen::Index i = 0; i < ws.Nx; ++i) {
            const double th = ws.tau * ws.Fe(l, i) / 2.0;
            if (th == 0.0) continue;
            const double ct = std::cos(th), st = std::sin(th);
            for (Eigen::Index k = 0; k < ws.Np; ++k) {
                Complex& a0 = a(flat(ws, l, 0, i, k));
                Complex& a1 = a(flat(ws, l, 1, i, k));
                const Complex b0 = ct * a0 + st * a1;
                const Complex b1 = -st * a0 + ct * a1;
                a0 = b0;
                a1 = b1;
            }
        }
    }
}

void apply_u2x(const AutoWorkspace& ws, ComplexVector& a) {
    for (Eigen::Index l = 0; l < ws.Ns; ++l) {
        for (Eigen::Index i = 0; i < ws.Nx; ++i) {
            if (ws.Fe(l, i) == 0.0) continue;
            for (Eigen::Index k = 0; k < ws.Np; ++k) {
                const double al = ws.tau * ws.eta(k) * ws.Fe(l, i) / 2.0;
                const double ca = std::cos(al);
                const Complex isa(0.0, std::sin(al));
                Complex& a0 = a(flat(ws, l, 0, i, k));
                Complex& a1 = a(flat(ws, l, 1, i, k));
                const Complex b0 = ca * a0 - isa * a1;
                const Complex b1 = -isa * a0 + ca * a1;
                a0 = b0;
                a1 = b1;
            }
        }
    }
}

void apply_u1(const AutoWorkspace& ws, ComplexVector& a) {
    // e^{i tau A0}: heat blocks on the flag-0 branch
    ComplexVector col(ws.Nx);
    for (Eigen::Index l = 0; l < ws.Ns; ++l) {
        for (Eigen::Index k = 0; k < ws.Np; ++k) {
            for (Eigen::Index i = 0; i < ws.Nx; ++i) col(i) = a(flat(ws, l, 0, i, k));
            col = ws.heat_slice[k] * col;
            for (Eigen::Index i = 0; i < ws.Nx; ++i) a(flat(ws, l, 0, i, k)) = col(i);
        }
    }
    // e^{-i tau P_s}: dense transport over the s axis per inner index
    const Eigen::Index inner = 2 * ws.Nx * ws.Np;
    ComplexVector scol(ws.Ns);
    for (Eigen::Index idx = 0; idx < inner; ++idx) {
        for (Eigen::Index l = 0; l < ws.Ns; ++l) scol(l) = a(l * inner + idx);
        scol = ws.exp_minus_iPs * scol;
        for (Eigen::Index l = 0; l < ws.Ns; ++l) a(l * inner + idx) = scol(l);
    }
}

}  // namespace

void apply_uauto_segment(const AutoWorkspace& ws, ComplexVector& state) {
    if (state.size() != ws.Ns * 2 * ws.Nx * ws.Np) {
        throw NumericsError("apply_uauto_segment: state size mismatch");
    }
    apply_u2y(ws, state);
    apply_u2x(ws, state);
    apply_u1(ws, state);
}

namespace {

ComplexMatrix dense_from_applier(const AutoWorkspace& ws,
                                 const std::function<void(const AutoWorkspace&, ComplexVector&)>& op) {
    const Eigen::Index dim = ws.Ns * 2 * ws.Nx * ws.Np;
    if (dim > kDenseCap) throw NumericsError("dense factor: cap exceeded");
    ComplexMatrix U(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(c) = 1.0;
        op(ws, v);
        U.col(c) = v;
    }
    return U;
}

}  // namespace

ComplexMatrix dense_Uauto1(const AutoWorkspace& ws) { return dense_from_applier(ws, apply_u1); }
ComplexMatrix dense_Uauto2x(const AutoWorkspace& ws) { return dense_from_applier(ws, apply_u2x); }
ComplexMatrix dense_Uauto2y(const AutoWorkspace& ws) { return dense_from_applier(ws, apply_u2y); }

AutonomisedRun evolve_autonomised(const EnlargedSystem& enl, const SemiDiscreteSystem& sys,
                                  const PGrid& pg, const SGrid& sg, int r, double gamma0,
                                  bool periodic) {
    if (r < 1) throw NumericsError("evolve_autonomised: r >= 1 required");
    AutonomisedRun run;
    const double A_norm = op_norm(sys.A);
    run.constraint_ok =
        static_cast<double>(sg.N_s) * M_PI / (2.0 * sg.T) <=
        static_cast<double>(pg.N_p) * A_norm / (2.0 * pg.R);
    const double C_heat = c_heat_bound(sys.d, pg.N_p, sys.n_x, gamma0);
    run.C_auto = c_auto_bound(C_heat, A_norm, pg, enl.g_f);

    const double tau = sg.T / static_cast<double>(r);
    const AutoWorkspace ws =
        make_auto_workspace(tau, enl, pg, sg, sys.n_x, sys.d, gamma0, periodic);
    run.state = initial_wbar(enl, pg, sg);
    for (int seg = 0; seg < r; ++seg) apply_uauto_segment(ws, run.state);
    run.meter.add("O_H", r);
    run.meter.add("EXP_x", static_cast<std::int64_t>(r) * (pg.n_p + 1));
    run.meter.add("EXP_y", r);
    run.meter.add("HAM_equivalents", static_cast<std::int64_t>(r) * (pg.n_p + 2));
    return run;
}

AutoRecovery recover_from_autonomised(const ComplexVector& wbar, const EnlargedSystem& enl,
                                      const PGrid& pg, const SGrid& sg, double lambda_plus,
                                      double T) {
    AutoRecovery rec;
    const Eigen::Index inner = 2 * enl.N * pg.N_p;
    if (wbar.size() != sg.N_s * inner) {
        throw NumericsError("recover_from_autonomised: state size mismatch");
    }
    // stage 1: project the s register onto the node carrying s = T. The grid
    // is periodic (s = -T identified with +T), so that node is l = 0.
    const ComplexVector slice0 = wbar.segment(0, inner);
    rec.pr_stage1 = slice0.squaredNorm() / wbar.squaredNorm();
    rec.pr_stage1_formula =
        sg.C_G0() * sg.C_G0() / (sg.C_G() * sg.C_G());
    {
        const ComplexVector slice_last = wbar.segment((sg.N_s - 1) * inner, inner);
        const double n0 = slice0.norm(), nl = slice_last.norm();
        rec.offset_slice_error =
            (n0 > 0 && nl > 0) ? (slice_last / nl - slice0 / n0).norm() : 0.0;
    }

    // stage 2: inverse Fourier on p, then project onto p_k >= lambda_+ T
    const ComplexVector w = to_p_space(slice0, pg, 2 * enl.N);
    const double dp = 2.0 * M_PI * pg.R / static_cast<double>(pg.N_p);
    const double threshold = lambda_plus * T + std::max(dp, 0.1);
    std::vector<Eigen::Index> adm;
    for (Eigen::Index k = 0; k < pg.N_p; ++k) {
        if (pg.p(k) >= threshold) adm.push_back(k);
    }
    if (adm.empty()) throw NumericsError("recover_from_autonomised: no admissible p node");
    rec.k_star = adm.front();
    double adm_mass = 0.0, flag0_mass = 0.0;
    for (Eigen::Index k : adm) {
        for (Eigen::Index i = 0; i < 2 * enl.N; ++i) {
            const double m = std::norm(w(i * pg.N_p + k));
            adm_mass += m;
            if (i < enl.N) flag0_mass += m;
        }
    }
    rec.pr_stage2 = adm_mass / w.squaredNorm();

    // stage 3: drop the augmentation branch
    rec.pr_stage3 = flag0_mass / adm_mass;
    rec.u.resize(enl.N);
    rec.r_recovered.resize(enl.N);
    const double scale = std::exp(pg.p(rec.k_star)) / mollifier_G(0.0);
    for (Eigen::Index i = 0; i < enl.N; ++i) {
        rec.u(i) = scale * w(i * pg.N_p + rec.k_star);
        rec.r_recovered(i) = scale * w((enl.N + i) * pg.N_p + rec.k_star);
    }
    rec.pr_stage3_formula =
        rec.u.squaredNorm() / (rec.u.squaredNorm() + enl.r_eps.squaredNorm());
    return rec;
}

double c_auto_bound(double C_heat, double A_norm, const PGrid& pg, double g_f) {
    const double NpR = static_cast<double>(pg.N_p) / pg.R;
    return C_heat + NpR * A_norm * (static_cast<double>(pg.N_p) / (2.0 * pg.R) + 1.0) * g_f +
           NpR * g_f * g_f;
}

}  // namespace schroheat
