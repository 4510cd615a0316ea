#pragma once

// Warped phase transform machinery: p-grid, Hermitian splitting, assembly of
// the Schrodingerised Hamiltonian H = -H1 x D_eta + H2 x I, extended initial
// data u0 x e^{-|p|}, exact dense evolution, and recovery of u by e^p
// rescaling at an admissible node.
//
// States move between the p-sample representation w and the mode
// representation w~ through the unitary F = Phi/sqrt(N_p), so all the norm
// identities (||w~|| = ||w||, eta_0 = ||w(0)||) hold exactly.

#include "schroheat/discretize.hpp"
#include "schroheat/numerics.hpp"

#include <map>

namespace schroheat {

struct PGrid {
    double R = 1.0;     // p-domain is [-pi R, pi R)
    int n_p = 1;
    Eigen::Index N_p = 2;
    RealVector p;       // nodes
    RealVector eta;     // eta_k = (k - N_p/2)/R
    bool tail_warning = false;  // e^{-pi R} >= 1e-9: truncated tail not negligible

    ComplexMatrix fourier_unitary() const;      // F = Phi/sqrt(N_p)
    RealVector weights() const;                 // e^{-|p_k|}
    double C_e() const;                         // (sum e^{-2|p_k|})^{1/2}
    double C_e0() const;                        // restricted to p_k >= 0
    double C_e_shifted(double threshold) const; // restricted to p_k >= threshold
};

PGrid make_pgrid(double R, int n_p);

/// A = H1 + i H2 with both Hermitian.
std::pair<ComplexMatrix, ComplexMatrix> split_hermitian(const ComplexMatrix& A);

/// w(0) = u0 x [e^{-|p_0|}, ..., e^{-|p_{N_p-1}|}]
ComplexVector initial_extended_state(const ComplexVector& u0, const PGrid& pg);

/// H = -H1 x D_eta + H2 x I; inputs must be Hermitian to 1e-12.
ComplexMatrix assemble_hamiltonian(const ComplexMatrix& H1, const ComplexMatrix& H2,
                                   const PGrid& pg);

struct SchrodingerisedSystem {
    ComplexMatrix H1, H2;
    PGrid pgrid;
    ComplexMatrix H;
    ComplexVector w0;       // p-sample representation
    ComplexVector wt0;      // mode representation (I x F^dag) w0
    double gamma0 = 0.0;    // a/(dx^2 R)
};
SchrodingerisedSystem schrodingerise(const SemiDiscreteSystem& sys, const PGrid& pg);

/// w~(T) = exp(iHT) w~(0), dense oracle path.
ComplexVector evolve_exact(const SchrodingerisedSystem& sys, double T);

/// Mode representation -> p samples and back.
ComplexVector to_p_space(const ComplexVector& wt, const PGrid& pg, Eigen::Index sys_dim);
ComplexVector to_mode_space(const ComplexVector& w, const PGrid& pg, Eigen::Index sys_dim);

struct Recovery {
    ComplexVector u;
    Eigen::Index k_star = 0;
    double p_star = 0.0;
    std::vector<Eigen::Index> admissible;
    double variance = 0.0;  // multi-node consistency diagnostic
};

/// Recover u from the p-space state: pick the smallest node with
/// p_k >= lambda_plus*t + max(dp, 0.1) and rescale by e^{p_k}. The variance
/// over all admissible nodes is the consistency diagnostic.
Recovery recover_u(const ComplexVector& w, const PGrid& pg, double lambda_plus, double t);

/// lambda_+ = max{ sup_t [lambda_max(H1) + 0.5*max_i |f_i(t)|/((f_i^2)_ave+eps^2)^{1/2}], 0 },
/// sup estimated on a uniform grid of `samples` points over [0, T].
double lambda_plus(const SourceTerm& f, const ComplexMatrix& H1, double T, double eps,
                   int samples = 1 << 10);

/// Source entries merged per index (repeated indices summed).
std::map<Eigen::Index, TimeSignal> combined_entries(const SourceTerm& f);

}  // namespace schroheat
