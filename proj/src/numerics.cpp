#include "schroheat/numerics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace schroheat {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

ComplexMatrix dft_matrix(Eigen::Index N, double L, double R) {
    if (N < 2 || !is_power_of_two(N)) {
        throw NumericsError("dft_matrix: N must be a power of two >= 2");
    }
    if (!(L < R)) throw NumericsError("dft_matrix: requires L < R");
    const double h = (R - L) / static_cast<double>(N);
    ComplexMatrix Phi(N, N);
    for (Eigen::Index k = 0; k < N; ++k) {
        const double mu = 2.0 * M_PI * static_cast<double>(k - N / 2) / (R - L);
        for (Eigen::Index j = 0; j < N; ++j) {
            const double x = static_cast<double>(j) * h;  // x_j - L
            Phi(j, k) = std::exp(Complex(0.0, mu * x));
        }
    }
    return Phi;
}

RealVector dft_modes(Eigen::Index N, double L, double R) {
    RealVector mu(N);
    for (Eigen::Index k = 0; k < N; ++k) {
        mu(k) = 2.0 * M_PI * static_cast<double>(k - N / 2) / (R - L);
    }
    return mu;
}

static void check_square_capped(const ComplexMatrix& M, const char* who) {
    if (M.rows() != M.cols()) throw NumericsError(std::string(who) + ": matrix not square");
    if (M.rows() > kDenseCap) throw NumericsError(std::string(who) + ": dimension cap 2^13 exceeded");
    if (!M.allFinite()) throw NumericsError(std::string(who) + ": non-finite entries");
}

ComplexMatrix expm(const ComplexMatrix& M, double t) {
    check_square_capped(M, "expm");
    return ComplexMatrix((t * M).exp());
}

ComplexMatrix expm_hermitian_i(const ComplexMatrix& H, double t) {
    check_square_capped(H, "expm_hermitian_i");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
    if (es.info() != Eigen::Success) throw NumericsError("expm_hermitian_i: eigensolver failed");
    ComplexVector phases(H.rows());
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        phases(i) = std::exp(Complex(0.0, t * es.eigenvalues()(i)));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double op_norm(const ComplexMatrix& M) {
    check_square_capped(M, "op_norm");
    Eigen::BDCSVD<ComplexMatrix> svd(M);
    return svd.singularValues()(0);
}

namespace {

// One sweep of the exponential trapezoid rule with K steps.
ComplexVector duhamel_step(const ComplexMatrix& A,
                           const std::function<ComplexVector(double)>& f,
                           const ComplexVector& u0, double T, Eigen::Index K) {
    const double h = T / static_cast<double>(K);
    const ComplexMatrix E = expm(A, h);
    ComplexVector u = u0;
    for (Eigen::Index i = 0; i < K; ++i) {
        const double t0 = static_cast<double>(i) * h;
        const double t1 = static_cast<double>(i + 1) * h;
        u = E * u + (h / 2.0) * (E * f(t0) + f(t1));
    }
    return u;
}

}  // namespace

ReferenceSolution reference_solution(const ComplexMatrix& A,
                                     const std::function<ComplexVector(double)>& f,
                                     const ComplexVector& u0, double T,
                                     Eigen::Index K_ref, double tol) {
    check_square_capped(A, "reference_solution");
    if (K_ref < 2) throw NumericsError("reference_solution: K_ref too small");
    ReferenceSolution out;
    Eigen::Index K = K_ref;
    ComplexVector coarse = duhamel_step(A, f, u0, T, K);
    ComplexVector fine = duhamel_step(A, f, u0, T, 2 * K);
    double est = (fine - coarse).norm() / std::max(1.0, fine.norm());
    // adaptive refinement rounds before flagging non-convergence
    for (int round = 0; round < 3 && est > tol; ++round) {
        K *= 2;
        coarse = std::move(fine);
        fine = duhamel_step(A, f, u0, T, 2 * K);
        est = (fine - coarse).norm() / std::max(1.0, fine.norm());
    }
    out.u = fine;
    out.certified_error = est;
    out.converged = (est <= tol);
    return out;
}

ComplexVector rk4(const std::function<ComplexVector(double, const ComplexVector&)>& deriv,
                  const ComplexVector& y0, double T, int steps) {
    if (steps < 1) throw NumericsError("rk4: steps must be positive");
    ComplexVector y = y0;
    const double h = T / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        ComplexVector k1 = deriv(t, y);
        ComplexVector k2 = deriv(t + h / 2, y + (h / 2) * k1);
        ComplexVector k3 = deriv(t + h / 2, y + (h / 2) * k2);
        ComplexVector k4 = deriv(t + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

}  // namespace schroheat
