#pragma once

// The augmentation + autonomisation pipeline: the inhomogeneous system is
// enlarged into a homogeneous non-autonomous one, then lifted to an
// autonomous system in one higher dimension with mollifier initial data on
// the s-grid. Evolution factors into U^(1) (s-transport + A0 block, with the
// heat-evolution circuit inside) and U^(2,x/y) (block exponentials of the
// time-dependent source coupling, evaluated in closed form as direct sums of
// 2x2 rotations in place of their QSVT block-encodings).
//
// Register layout: [s (n_s wires) | flag (1) | x (d n_x) | p (n_p)], s-index
// most significant. The recovery slice for s = T is the periodic node l = 0
// (s = -T identified with +T; the Fourier shift by T moves the grid by
// exactly N_s/2 nodes).

#include "schroheat/lcu.hpp"

namespace schroheat {

/// Unit mollifier: G(s) = e * exp(1/(s^2-1)) for |s| < 1, else 0.
double mollifier_G(double s);

struct SGrid {
    double T = 1.0;
    double R_s = 0.0;       // T / pi
    int n_s = 1;
    Eigen::Index N_s = 2;
    RealVector s;           // nodes -T + l * (2T/N_s), l = 0..N_s-1
    RealVector mu;          // Fourier modes (l - N_s/2)/R_s
    RealVector G;           // mollifier samples G(s_l / T)
    double dxs = 0.0;       // mesh 2T/N_s

    double C_G() const { return std::sqrt(G.array().square().sum()); }
    double C_G0() const { return mollifier_G(0.0); }
};
SGrid make_sgrid(double T, int n_s);

struct EnlargedSystem {
    Eigen::Index N = 0;          // base system dimension
    double eps = 0.0;            // 1/sqrt(N)
    RealVector r_eps;            // ((f_i^2)_ave + eps^2)^{1/2}
    std::map<Eigen::Index, TimeSignal> f_by_index;
    double T = 0.0;
    double g_f = 0.0;            // max_i,l |f_i(s_l)| / r_eps_i over s_l >= 0
    ComplexVector u_eps0;        // [u0; r_eps]

    /// Diagonal of F_eps(t): f_i(t) / r_eps_i (zero rows included).
    RealVector F_eps_diag(double t) const;
};
EnlargedSystem build_enlarged(const SemiDiscreteSystem& sys, double T, const SGrid& sg,
                              double eps_override = -1.0);

/// H_eps(t) = -H1e(t) x D_eta + H2e(t) x I on the enlarged (2N x N_p) system;
/// dense, for the RK4 brute-force oracle.
ComplexMatrix H_eps_dense(const EnlargedSystem& enl, const ComplexMatrix& H1,
                          const ComplexMatrix& H2, const PGrid& pg, double t);

/// Dense autonomised Hamiltonian Hbar = -P_s x I + I x A0 + sum_l |l><l| x
/// B_eps(s_l) (B_eps = 0 for s_l < 0); verification instances only.
ComplexMatrix assemble_Hbar(const EnlargedSystem& enl, const ComplexMatrix& H1,
                            const ComplexMatrix& H2, const PGrid& pg, const SGrid& sg);

/// w_bar(0) = [G(s_0),...,G(s_{N_s-1})] x w~_eps0.
ComplexVector initial_wbar(const EnlargedSystem& enl, const PGrid& pg, const SGrid& sg);

/// Gate-level circuit for U_auto^(1)(tau) on [s | flag | x | p | kb]: F_s
/// conjugation, phase-kickback Rz ladder on the trailing ancilla, and the
/// flag-0-controlled heat evolution circuit. Small instances / verification.
QuantumCircuit build_Uauto1(double tau, const SGrid& sg, int n_x, int n_p, int d, double gamma0,
                            bool periodic);

/// Structured applier state: shape (N_s, 2, Nx, Np) flattened row-major.
struct AutoWorkspace {
    Eigen::Index Ns = 0, Nx = 0, Np = 0;
    ComplexMatrix exp_minus_iPs;     // dense N_s x N_s transport factor at tau
    std::vector<ComplexMatrix> heat_slice;  // per-p-slice V~0(-tau)^{k-Np/2}
    Eigen::MatrixXd Fe;              // (N_s x Nx) F_eps diagonal at the s-nodes, 0 for s<0
    RealVector eta;
    double tau = 0.0;
};
AutoWorkspace make_auto_workspace(double tau, const EnlargedSystem& enl, const PGrid& pg,
                                  const SGrid& sg, int n_x, int d, double gamma0, bool periodic);

/// One segment: U^(1)(tau) U^(2,x)(tau) U^(2,y)(tau) (y applied first).
void apply_uauto_segment(const AutoWorkspace& ws, ComplexVector& state);

/// Dense matrices of the three factors for verification instances.
ComplexMatrix dense_Uauto1(const AutoWorkspace& ws);
ComplexMatrix dense_Uauto2x(const AutoWorkspace& ws);
ComplexMatrix dense_Uauto2y(const AutoWorkspace& ws);

struct AutonomisedRun {
    ComplexVector state;   // final w_bar
    QueryMeter meter;
    bool constraint_ok = true;   // N_s pi/(2T) <= N_p ||A||/(2R)
    double C_auto = 0.0;
};
AutonomisedRun evolve_autonomised(const EnlargedSystem& enl, const SemiDiscreteSystem& sys,
                                  const PGrid& pg, const SGrid& sg, int r, double gamma0,
                                  bool periodic);

struct AutoRecovery {
    ComplexVector u;
    ComplexVector r_recovered;
    double pr_stage1 = 0.0;  // s-slice projection
    double pr_stage2 = 0.0;  // p >= lambda_+ T projection
    double pr_stage3 = 0.0;  // augmentation flag
    double pr_stage1_formula = 0.0;  // G(0)^2 / sum G(s_l)^2
    double pr_stage3_formula = 0.0;  // ||u||^2/(||u||^2 + ||r_eps||^2)
    Eigen::Index k_star = 0;
    double offset_slice_error = 0.0; // diagnostic: l = N_s-1 slice vs l = 0 slice
};
AutoRecovery recover_from_autonomised(const ComplexVector& wbar, const EnlargedSystem& enl,
                                      const PGrid& pg, const SGrid& sg, double lambda_plus,
                                      double T);

/// C_auto = C_heat + (N_p ||A||/R)(N_p/(2R)+1) g_f + (N_p/R) g_f^2.
double c_auto_bound(double C_heat, double A_norm, const PGrid& pg, double g_f);

}  // namespace schroheat
