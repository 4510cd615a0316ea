#pragma once

// Dense complex linear algebra and the brute-force oracles (matrix
// exponential, operator norm, reference ODE solver) that every circuit
// and bound in this project is verified against.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>

namespace schroheat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense feasibility caps. Everything above these sizes is a config error,
// not an allocation attempt.
inline constexpr Eigen::Index kDenseCap = 1 << 13;   // expm / op_norm / oracles
inline constexpr int kStatevectorWireCap = 24;       // 2^24 amplitudes
inline constexpr int kDenseUnitaryWireCap = 13;

struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw DFT matrix Phi with Phi(j,k) = exp(i mu_l (x_j - L)), l = k - N/2,
/// mu_l = 2 pi l / (R - L), x_j uniform on [L, R). Phi/sqrt(N) is unitary.
/// N must be a power of two >= 2.
ComplexMatrix dft_matrix(Eigen::Index N, double L, double R);

/// Fourier modes mu_l for the grid above, stored with l = k - N/2.
RealVector dft_modes(Eigen::Index N, double L, double R);

/// exp(t*M) by scaling-and-squaring Pade. Square M, dim <= 2^13, finite entries.
ComplexMatrix expm(const ComplexMatrix& M, double t = 1.0);

/// exp(i*t*H) for Hermitian H via eigendecomposition (exactly unitary up to
/// roundoff; cheaper and better conditioned than the general path).
ComplexMatrix expm_hermitian_i(const ComplexMatrix& H, double t);

/// Spectral norm (largest singular value).
double op_norm(const ComplexMatrix& M);

bool is_power_of_two(Eigen::Index n);

/// u(T) = e^{AT} u0 + int_0^T e^{A(T-s)} f(s) ds by exponential trapezoid on
/// K_ref steps. `certified_error` holds the Richardson estimate between
/// K_ref and 2*K_ref; `converged` is false when the estimate exceeds `tol`.
struct ReferenceSolution {
    ComplexVector u;
    double certified_error = 0.0;
    bool converged = true;
};
ReferenceSolution reference_solution(const ComplexMatrix& A,
                                     const std::function<ComplexVector(double)>& f,
                                     const ComplexVector& u0, double T,
                                     Eigen::Index K_ref = 1 << 12,
                                     double tol = 1e-8);

/// RK4 for dy/dt = D(t, y) with `steps` uniform steps; brute-force oracle for
/// the non-autonomous systems in the augmentation pipeline.
ComplexVector rk4(const std::function<ComplexVector(double, const ComplexVector&)>& deriv,
                  const ComplexVector& y0, double T, int steps);

}  // namespace schroheat
