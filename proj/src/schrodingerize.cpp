#include "schroheat/schrodingerize.hpp"

#include <cmath>
#include <map>

namespace schroheat {

ComplexMatrix PGrid::fourier_unitary() const {
    return dft_matrix(N_p, -M_PI * R, M_PI * R) / std::sqrt(static_cast<double>(N_p));
}

RealVector PGrid::weights() const {
    RealVector w(N_p);
    for (Eigen::Index k = 0; k < N_p; ++k) w(k) = std::exp(-std::abs(p(k)));
    return w;
}

double PGrid::C_e() const { return std::sqrt(weights().array().square().sum()); }

double PGrid::C_e0() const { return C_e_shifted(0.0); }

double PGrid::C_e_shifted(double threshold) const {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < N_p; ++k) {
        if (p(k) >= threshold) acc += std::exp(-2.0 * std::abs(p(k)));
    }
    return std::sqrt(acc);
}

PGrid make_pgrid(double R, int n_p) {
    if (!(R > 0)) throw NumericsError("make_pgrid: R > 0 required");
    if (n_p < 1) throw NumericsError("make_pgrid: n_p >= 1 required");
    PGrid pg;
    pg.R = R;
    pg.n_p = n_p;
    pg.N_p = Eigen::Index(1) << n_p;
    pg.p.resize(pg.N_p);
    pg.eta.resize(pg.N_p);
    const double dp = 2.0 * M_PI * R / static_cast<double>(pg.N_p);
    for (Eigen::Index k = 0; k < pg.N_p; ++k) {
        pg.p(k) = -M_PI * R + static_cast<double>(k) * dp;
        pg.eta(k) = static_cast<double>(k - pg.N_p / 2) / R;
    }
    pg.tail_warning = std::exp(-M_PI * R) >= 1e-9;
    return pg;
}

std::pair<ComplexMatrix, ComplexMatrix> split_hermitian(const ComplexMatrix& A) {
    if (A.rows() != A.cols()) throw NumericsError("split_hermitian: matrix not square");
    ComplexMatrix H1 = (A + A.adjoint()) / 2.0;
    ComplexMatrix H2 = (A - A.adjoint()) / Complex(0.0, 2.0);
    return {H1, H2};
}

ComplexVector initial_extended_state(const ComplexVector& u0, const PGrid& pg) {
    const RealVector w = pg.weights();
    ComplexVector out(u0.size() * pg.N_p);
    for (Eigen::Index i = 0; i < u0.size(); ++i) {
        for (Eigen::Index k = 0; k < pg.N_p; ++k) {
            out(i * pg.N_p + k) = u0(i) * w(k);
        }
    }
    return out;
}

ComplexMatrix assemble_hamiltonian(const ComplexMatrix& H1, const ComplexMatrix& H2,
                                   const PGrid& pg) {
    if (H1.rows() != H1.cols() || H2.rows() != H2.cols() || H1.rows() != H2.rows()) {
        throw NumericsError("assemble_hamiltonian: H1, H2 must be square and same size");
    }
    const double tol = 1e-12 * std::max(1.0, std::max(H1.norm(), H2.norm()));
    if ((H1 - H1.adjoint()).norm() > tol || (H2 - H2.adjoint()).norm() > tol) {
        throw NumericsError("assemble_hamiltonian: inputs must be Hermitian");
    }
    const Eigen::Index n = H1.rows();
    ComplexMatrix H = ComplexMatrix::Zero(n * pg.N_p, n * pg.N_p);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index k = 0; k < pg.N_p; ++k) {
                H(i * pg.N_p + k, j * pg.N_p + k) = -H1(i, j) * pg.eta(k) + H2(i, j);
            }
        }
    }
    return H;
}

SchrodingerisedSystem schrodingerise(const SemiDiscreteSystem& sys, const PGrid& pg) {
    SchrodingerisedSystem out;
    auto [H1, H2] = split_hermitian(sys.A);
    out.H1 = std::move(H1);
    out.H2 = std::move(H2);
    out.pgrid = pg;
    out.H = assemble_hamiltonian(out.H1, out.H2, pg);
    out.w0 = initial_extended_state(sys.u0, pg);
    out.wt0 = to_mode_space(out.w0, pg, sys.u0.size());
    out.gamma0 = 0.0;  // caller sets a/(dx^2 R) when circuits are used
    return out;
}

ComplexVector evolve_exact(const SchrodingerisedSystem& sys, double T) {
    if (sys.H.rows() > kDenseCap) throw NumericsError("evolve_exact: dense cap exceeded");
    return expm_hermitian_i(sys.H, T) * sys.wt0;
}

ComplexVector to_p_space(const ComplexVector& wt, const PGrid& pg, Eigen::Index sys_dim) {
    const ComplexMatrix F = pg.fourier_unitary();
    ComplexVector out(wt.size());
    for (Eigen::Index i = 0; i < sys_dim; ++i) {
        out.segment(i * pg.N_p, pg.N_p) = F * wt.segment(i * pg.N_p, pg.N_p);
    }
    return out;
}

ComplexVector to_mode_space(const ComplexVector& w, const PGrid& pg, Eigen::Index sys_dim) {
    const ComplexMatrix F = pg.fourier_unitary();
    ComplexVector out(w.size());
    for (Eigen::Index i = 0; i < sys_dim; ++i) {
        out.segment(i * pg.N_p, pg.N_p) = F.adjoint() * w.segment(i * pg.N_p, pg.N_p);
    }
    return out;
}

Recovery recover_u(const ComplexVector& w, const PGrid& pg, double lambda_plus, double t) {
    if (lambda_plus < 0) throw NumericsError("recover_u: lambda_plus must be >= 0");
    if (w.size() % pg.N_p != 0) throw NumericsError("recover_u: state size mismatch");
    const Eigen::Index n = w.size() / pg.N_p;
    const double dp = 2.0 * M_PI * pg.R / static_cast<double>(pg.N_p);
    const double threshold = lambda_plus * t + std::max(dp, 0.1);

    Recovery rec;
    for (Eigen::Index k = 0; k < pg.N_p; ++k) {
        if (pg.p(k) >= threshold) rec.admissible.push_back(k);
    }
    if (rec.admissible.empty()) {
        throw NumericsError(
            "recover_u: no admissible p-node (lambda_plus*t too close to pi*R); increase R");
    }
    rec.k_star = rec.admissible.front();
    rec.p_star = pg.p(rec.k_star);

    auto slice_at = [&](Eigen::Index k) {
        ComplexVector u(n);
        for (Eigen::Index i = 0; i < n; ++i) u(i) = std::exp(pg.p(k)) * w(i * pg.N_p + k);
        return u;
    };
    rec.u = slice_at(rec.k_star);

    ComplexVector mean = ComplexVector::Zero(n);
    std::vector<ComplexVector> slices;
    slices.reserve(rec.admissible.size());
    for (Eigen::Index k : rec.admissible) {
        slices.push_back(slice_at(k));
        mean += slices.back();
    }
    mean /= static_cast<double>(rec.admissible.size());
    double var = 0.0;
    for (const auto& s : slices) var += (s - mean).squaredNorm();
    rec.variance = var / static_cast<double>(rec.admissible.size());
    return rec;
}

std::map<Eigen::Index, TimeSignal> combined_entries(const SourceTerm& f) {
    std::map<Eigen::Index, TimeSignal> by_index;
    for (const auto& [idx, sig] : f.entries) {
        auto it = by_index.find(idx);
        if (it == by_index.end()) {
            by_index.emplace(idx, sig);
        } else {
            it->second = it->second + sig;
        }
    }
    return by_index;
}

double lambda_plus(const SourceTerm& f, const ComplexMatrix& H1, double T, double eps,
                   int samples) {
    if (f.is_zero()) return 0.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H1);
    const double lmax = es.eigenvalues().maxCoeff();

    const auto by_index = combined_entries(f);
    std::vector<std::pair<TimeSignal, double>> rows;
    rows.reserve(by_index.size());
    for (const auto& [idx, sig] : by_index) {
        rows.emplace_back(sig, std::sqrt(sig.mean_square(T) + eps * eps));
    }
    double sup = 0.0;
    for (int s = 0; s <= samples; ++s) {
        const double t = T * static_cast<double>(s) / samples;
        double mx = 0.0;
        for (const auto& [sig, d] : rows) mx = std::max(mx, std::abs(sig.eval(t)) / d);
        sup = std::max(sup, lmax + 0.5 * mx);
    }
    return std::max(sup, 0.0);
}

}  // namespace schroheat
