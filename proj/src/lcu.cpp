#include "schroheat/lcu.hpp"

#include <cmath>

namespace schroheat {

namespace {

/// F^dag * e^{-|p|} sample vector: the fixed p-part of b~(s).
ComplexVector mode_weights(const PGrid& pg) {
    return ComplexVector(pg.fourier_unitary().adjoint() * pg.weights().cast<Complex>());
}

/// Unitary with first column v/||v|| (phased Householder reflection).
ComplexMatrix householder_from_e0(const ComplexVector& v) {
    const Eigen::Index n = v.size();
    ComplexVector target = v / v.norm();
    // rotate so the leading entry is real non-negative, reflect, restore phase
    const Complex a0 = target(0);
    const Complex mu = std::abs(a0) > 0 ? a0 / std::abs(a0) : Complex(1.0);
    ComplexVector w = target / mu;
    ComplexVector e0 = ComplexVector::Zero(n);
    e0(0) = 1.0;
    ComplexVector h = e0 - w;
    const double hn2 = h.squaredNorm();
    ComplexMatrix U = ComplexMatrix::Identity(n, n);
    if (hn2 > 1e-28) U -= (2.0 / hn2) * (h * h.adjoint());
    return mu * U;  // column 0 equals target
}

ComplexVector pow_eigs(const ComplexVector& lam, double p) {
    ComplexVector out(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) out(i) = std::pow(lam(i), p);
    return out;
}

struct EigBlocks {
    ComplexMatrix Q, Qi;
    ComplexVector lam;
    Eigen::Index Np = 0;

    ComplexMatrix power(double p) const { return Q * pow_eigs(lam, p).asDiagonal() * Qi; }
};

EigBlocks eig_of_v0_tilde(double param, int n_x, int d, double gamma0, bool periodic) {
    const ComplexMatrix V = circuit_to_matrix(build_V0_tilde(param, n_x, d, gamma0, periodic));
    Eigen::ComplexEigenSolver<ComplexMatrix> es(V);
    if (es.info() != Eigen::Success) throw NumericsError("segment_blocks: eigensolver failed");
    EigBlocks out;
    out.Q = es.eigenvectors();
    out.Qi = out.Q.inverse();
    out.lam = es.eigenvalues();
    // V is unitary, so the true eigenvalues have unit modulus; renormalizing
    // keeps large powers lam^(r * Np/2) free of spurious modulus drift
    for (Eigen::Index i = 0; i < out.lam.size(); ++i) out.lam(i) /= std::abs(out.lam(i));
    return out;
}

}  // namespace

ComplexVector b_tilde(const SourceTerm& f, double s, const PGrid& pg) {
    const ComplexVector q = mode_weights(pg);
    const ComplexVector fs = f.eval(s);
    ComplexVector out(fs.size() * pg.N_p);
    for (Eigen::Index i = 0; i < fs.size(); ++i) {
        out.segment(i * pg.N_p, pg.N_p) = fs(i) * q;
    }
    return out;
}

Eigen::Index choose_K(double delta1, double T, double H_norm, double C_heat,
                      const SourceTerm& f, const PGrid& pg) {
    if (!(delta1 > 0)) throw NumericsError("choose_K: delta1 > 0 required");
    if (f.is_zero()) return 1;
    const double Ce = pg.C_e();
    const int samples = 1 << 10;
    double sup = 0.0;
    double b_avg = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = T * static_cast<double>(i) / samples;
        const double bn = Ce * f.eval(t).norm();
        const double bd = Ce * f.derivative(t).norm();
        sup = std::max(sup, H_norm * bn + bd);
        b_avg += (i == 0 || i == samples ? 0.5 : 1.0) * bn;
    }
    b_avg *= T / samples;
    const double lower = T * T / delta1 * std::max(2.0 * C_heat * b_avg, sup);
    Eigen::Index K = 1;
    while (static_cast<double>(K) < lower) K <<= 1;
    return K;
}

LcuPlan make_plan(Eigen::Index K, double T, const SourceTerm& f, const PGrid& pg) {
    if (!is_power_of_two(K)) throw NumericsError("make_plan: K must be a power of two");
    LcuPlan plan;
    plan.K = K;
    plan.n_s = 0;
    while ((Eigen::Index(1) << plan.n_s) < K) ++plan.n_s;
    plan.T = T;
    plan.ds = T / static_cast<double>(K);
    plan.alpha.resize(K);
    const double Ce = pg.C_e();
    for (Eigen::Index j = 0; j < K; ++j) {
        plan.alpha(j) = plan.ds * Ce * f.eval(static_cast<double>(j) * plan.ds).norm();
    }
    plan.alpha_l1 = plan.alpha.sum();
    return plan;
}

QuantumCircuit evolution_segment(double sgn_ds, int n_x, int n_p, int d, double gamma0,
                                 bool periodic) {
    // exp(i H t) for the transport Hamiltonian equals the paper-internal
    // V_heat at the negated parameter.
    return build_Vheat(-sgn_ds, n_x, n_p, d, gamma0, SelectMode::Original, periodic);
}

SegmentBlocks segment_blocks(double ds, int n_x, int n_p, int d, double gamma0, bool periodic) {
    SegmentBlocks out;
    out.Np = Eigen::Index(1) << n_p;
    const EigBlocks eig = eig_of_v0_tilde(-ds, n_x, d, gamma0, periodic);
    out.v0_tilde = eig.Q * eig.lam.asDiagonal() * eig.Qi;
    out.slice.reserve(out.Np);
    for (Eigen::Index k = 0; k < out.Np; ++k) {
        out.slice.push_back(eig.power(static_cast<double>(k - out.Np / 2)));
    }
    return out;
}

void apply_segment(const SegmentBlocks& blocks, ComplexVector& state) {
    const Eigen::Index Np = blocks.Np;
    const Eigen::Index Nx = blocks.slice.front().rows();
    if (state.size() != Nx * Np) throw NumericsError("apply_segment: state size mismatch");
    ComplexVector col(Nx);
    for (Eigen::Index k = 0; k < Np; ++k) {
        for (Eigen::Index i = 0; i < Nx; ++i) col(i) = state(i * Np + k);
        col = blocks.slice[k] * col;
        for (Eigen::Index i = 0; i < Nx; ++i) state(i * Np + k) = col(i);
    }
}

ComplexVector evolve_homogeneous(const ComplexVector& wt0, int r, double T, int n_x, int n_p,
                                 int d, double gamma0, bool periodic, QueryMeter& meter) {
    if (r < 1) throw NumericsError("evolve_homogeneous: r >= 1 required");
    const double tau = T / r;
    const Eigen::Index Np = Eigen::Index(1) << n_p;
    const Eigen::Index Nx = wt0.size() / Np;
    const EigBlocks eig = eig_of_v0_tilde(-tau, n_x, d, gamma0, periodic);
    ComplexVector out = wt0;
    ComplexVector col(Nx);
    for (Eigen::Index k = 0; k < Np; ++k) {
        // [V~0(-tau)^(k-Np/2)]^r applied in one shot through the eigenbasis
        const ComplexMatrix P = eig.power(static_cast<double>((k - Np / 2) * r));
        for (Eigen::Index i = 0; i < Nx; ++i) col(i) = out(i * Np + k);
        col = P * col;
        for (Eigen::Index i = 0; i < Nx; ++i) out(i * Np + k) = col(i);
    }
    meter.add("O_H", r);
    return out;
}

InhomogeneousResult prepare_inhomogeneous(const LcuPlan& plan, const SourceTerm& f,
                                          const PGrid& pg, int n_x, int d, double gamma0,
                                          bool periodic) {
    InhomogeneousResult res;
    const Eigen::Index Np = pg.N_p;
    const Eigen::Index Nx = f.dim;
    const ComplexVector q = mode_weights(pg);

    if (plan.alpha_l1 == 0.0) {
        res.w_b = ComplexVector::Zero(Nx * Np);
        res.branch_amplitude = 0.0;
        return res;
    }

    // Horner over j of [e^{-iH ds}]^j b~(s_j): inverse one-segment blocks.
    const EigBlocks fwd = eig_of_v0_tilde(-plan.ds, n_x, d, gamma0, periodic);
    std::vector<ComplexMatrix> inv_slice(Np);
    for (Eigen::Index k = 0; k < Np; ++k) {
        inv_slice[k] = fwd.power(-static_cast<double>(k - Np / 2));
    }
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(Nx, Np);  // column k = p-slice k
    for (Eigen::Index j = plan.K - 1; j >= 0; --j) {
        const ComplexVector fj = f.eval(static_cast<double>(j) * plan.ds);
        if (j < plan.K - 1) {
            for (Eigen::Index k = 0; k < Np; ++k) S.col(k) = inv_slice[k] * S.col(k);
        }
        for (Eigen::Index k = 0; k < Np; ++k) S.col(k).noalias() += q(k) * fj;
    }
    // trailing e^{iHT} block: forward powers with exponent K * (k - Np/2)
    for (Eigen::Index k = 0; k < Np; ++k) {
        const ComplexMatrix P =
            fwd.power(static_cast<double>((k - Np / 2)) * static_cast<double>(plan.K));
        S.col(k) = P * S.col(k);
    }
    res.w_b.resize(Nx * Np);
    for (Eigen::Index i = 0; i < Nx; ++i) {
        for (Eigen::Index k = 0; k < Np; ++k) res.w_b(i * Np + k) = plan.ds * S(i, k);
    }
    res.branch_amplitude = res.w_b.norm() / plan.alpha_l1;
    res.meter.add("O_H", 2 * plan.K - 1);  // 1 + 2 + ... + 2^{n_s-1} + K
    res.meter.add("O_coef", 2);
    res.meter.add("O_b", 1);
    return res;
}

Statevector prepare_inhomogeneous_registered(const LcuPlan& plan, const SourceTerm& f,
                                             const PGrid& pg, int n_x, int n_p, int d,
                                             double gamma0, bool periodic, QueryMeter& meter) {
    const int n_xp = d * n_x + n_p;
    const int wires = plan.n_s + n_xp;
    if (wires > kStatevectorWireCap) {
        throw NumericsError("prepare_inhomogeneous_registered: wire cap exceeded; use the "
                            "block-factored path");
    }
    if (plan.alpha_l1 == 0.0) return Statevector::zero_state(wires);
    const Eigen::Index Np = pg.N_p;
    const Eigen::Index Nsys = Eigen::Index(1) << n_xp;
    const ComplexVector q = mode_weights(pg);

    Statevector state = Statevector::zero_state(wires);

    // O_coef on the ancilla register
    ComplexVector coef(plan.K);
    for (Eigen::Index j = 0; j < plan.K; ++j) coef(j) = std::sqrt(plan.alpha(j) / plan.alpha_l1);
    const ComplexMatrix Ucoef = householder_from_e0(coef);
    apply_dense_on_wires(state, Ucoef, 0, plan.n_s);
    meter.add("O_coef");

    // O_b: |j>|0> -> |j>|b^(s_j)>, per-slice Householder
    for (Eigen::Index j = 0; j < plan.K; ++j) {
        ComplexVector bj(Nsys);
        const ComplexVector fj = f.eval(static_cast<double>(j) * plan.ds);
        for (Eigen::Index i = 0; i < fj.size(); ++i) bj.segment(i * Np, Np) = fj(i) * q;
        auto slice = state.amplitudes.segment(j * Nsys, Nsys);
        if (bj.norm() == 0.0) continue;  // zero column stays |0...0> with zero weight
        const ComplexMatrix Ub = householder_from_e0(bj);
        slice = Ub * slice;
    }
    meter.add("O_b");

    // SEL_H: slice j gets the inverse one-segment circuit to the j-th power
    const EigBlocks fwd = eig_of_v0_tilde(-plan.ds, n_x, d, gamma0, periodic);
    ComplexVector col(f.dim);
    for (Eigen::Index j = 0; j < plan.K; ++j) {
        for (Eigen::Index k = 0; k < Np; ++k) {
            const ComplexMatrix Pj = fwd.power(-static_cast<double>(k - Np / 2) *
                                               static_cast<double>(j));
            for (Eigen::Index i = 0; i < f.dim; ++i)
                col(i) = state.amplitudes(j * Nsys + i * Np + k);
            col = Pj * col;
            for (Eigen::Index i = 0; i < f.dim; ++i)
                state.amplitudes(j * Nsys + i * Np + k) = col(i);
        }
    }
    meter.add("O_H", plan.K - 1);

    // O_coef^dag
    apply_dense_on_wires(state, ComplexMatrix(Ucoef.adjoint()), 0, plan.n_s);
    meter.add("O_coef");

    // U_K = e^{iHT} block on every slice
    std::vector<ComplexMatrix> traili(Np);
    for (Eigen::Index k = 0; k < Np; ++k) {
        traili[k] = fwd.power(static_cast<double>(k - Np / 2) * static_cast<double>(plan.K));
    }
    for (Eigen::Index j = 0; j < plan.K; ++j) {
        for (Eigen::Index k = 0; k < Np; ++k) {
            for (Eigen::Index i = 0; i < f.dim; ++i)
                col(i) = state.amplitudes(j * Nsys + i * Np + k);
            col = traili[k] * col;
            for (Eigen::Index i = 0; i < f.dim; ++i)
                state.amplitudes(j * Nsys + i * Np + k) = col(i);
        }
    }
    meter.add("O_H", plan.K);
    return state;
}

CombineResult combine_homogeneous_inhomogeneous(const ComplexVector& wt0, const LcuPlan& plan,
                                                const SourceTerm& f, const PGrid& pg, double T,
                                                int r, int n_x, int n_p, int d, double gamma0,
                                                bool periodic) {
    CombineResult out;
    out.eta0 = wt0.norm();
    out.eta1 = plan.alpha_l1;
    if (out.eta0 + out.eta1 == 0.0) {
        throw NumericsError("combine: empty problem (eta0 + eta1 == 0)");
    }
    ComplexVector wH = evolve_homogeneous(wt0, r, T, n_x, n_p, d, gamma0, periodic, out.meter);
    out.meter.add("O_prep", 1);
    InhomogeneousResult inh = prepare_inhomogeneous(plan, f, pg, n_x, d, gamma0, periodic);
    for (const auto& [k, v] : inh.meter.counts) out.meter.add(k, v);
    out.w_total = wH + inh.w_b;
    const double denom = out.eta0 + out.eta1;
    out.branch_probability = (out.w_total.norm() / denom) * (out.w_total.norm() / denom);
    return out;
}

SuccessProbability success_probability(const ComplexVector& u0, const ComplexVector& uT,
                                       const SourceTerm& f, double T, const PGrid& pg) {
    SuccessProbability out;
    const double ce = pg.C_e();
    const double ce0 = pg.C_e0();
    out.ce0_sq_over_ce_sq = (ce0 * ce0) / (ce * ce);
    const int samples = 1 << 10;
    double favg = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = T * static_cast<double>(i) / samples;
        favg += (i == 0 || i == samples ? 0.5 : 1.0) * f.eval(t).norm();
    }
    out.f_avg = favg * T / samples;
    const double denom = u0.norm() + out.f_avg;
    if (denom == 0.0) throw NumericsError("success_probability: norms must be positive");
    out.formula = out.ce0_sq_over_ce_sq * uT.squaredNorm() / (denom * denom);
    return out;
}

LcuQueryReport lcu_query_report(const QueryMeter& meter, double C_heat, double H_norm,
                                const SourceTerm& f, double T, double delta, double Pr) {
    LcuQueryReport out;
    out.measured_OH_homogeneous = 0;  // filled by the caller when branches are metered apart
    out.measured_OH_inhomogeneous = 0;
    out.measured_Ob = meter.get("O_b");
    out.measured_Ocoef = meter.get("O_coef");
    out.measured_Oprep = meter.get("O_prep");
    const int samples = 1 << 10;
    double sup = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = T * static_cast<double>(i) / samples;
        sup = std::max(sup, H_norm * f.eval(t).norm() + f.derivative(t).norm());
    }
    out.C_LCU = C_heat + sup;
    out.predicted_Nt_over_Pr = out.C_LCU * T * T / (std::max(Pr, 1e-300) * delta);
    return out;
}

}  // namespace schroheat
