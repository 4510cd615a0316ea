#include "schroheat/discretize.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace schroheat {

ComplexVector SourceTerm::eval(double t) const {
    ComplexVector v = ComplexVector::Zero(dim);
    for (const auto& [idx, sig] : entries) v(idx) += sig.eval(t);
    return v;
}

ComplexVector SourceTerm::derivative(double t) const {
    ComplexVector v = ComplexVector::Zero(dim);
    for (const auto& [idx, sig] : entries) v(idx) += sig.derivative(t);
    return v;
}

bool SourceTerm::is_zero() const {
    for (const auto& [idx, sig] : entries) {
        if (!sig.is_zero()) return false;
    }
    return true;
}

void SourceTerm::scale(double a) {
    for (auto& [idx, sig] : entries) sig = sig.scaled(a);
}

namespace {

ComplexMatrix laplacian_core(Eigen::Index N, double dx) {
    ComplexMatrix A = ComplexMatrix::Zero(N, N);
    const double w = 1.0 / (dx * dx);
    for (Eigen::Index i = 0; i < N; ++i) {
        A(i, i) = -2.0 * w;
        if (i + 1 < N) {
            A(i, i + 1) = w;
            A(i + 1, i) = w;
        }
    }
    return A;
}

ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

SemiDiscreteSystem build_dirichlet_1d(int n_x, double dx, TimeSignal u_a, TimeSignal u_b) {
    if (n_x < 1) throw NumericsError("build_dirichlet_1d: n_x >= 1 required");
    if (!(dx > 0)) throw NumericsError("build_dirichlet_1d: dx > 0 required");
    const Eigen::Index N = Eigen::Index(1) << n_x;
    SemiDiscreteSystem sys;
    sys.A = laplacian_core(N, dx);
    sys.f.dim = N;
    const double w = 1.0 / (dx * dx);
    if (!u_a.is_zero()) sys.f.entries.emplace_back(0, u_a.scaled(w));
    if (!u_b.is_zero()) sys.f.entries.emplace_back(N - 1, u_b.scaled(w));
    sys.u0 = ComplexVector::Zero(N);
    sys.n_x = n_x;
    sys.dx = dx;
    sys.family = BoundaryFamily::Dirichlet;
    return sys;
}

SemiDiscreteSystem build_neumann_1d(int n_x, double dx, TimeSignal g, TimeSignal h) {
    if (n_x < 1) throw NumericsError("build_neumann_1d: n_x >= 1 required");
    if (!(dx > 0)) throw NumericsError("build_neumann_1d: dx > 0 required");
    const Eigen::Index N = Eigen::Index(1) << n_x;
    SemiDiscreteSystem sys;
    sys.A = laplacian_core(N, dx);
    sys.A(N - 1, N - 2) = 2.0 / (dx * dx);  // ghost-point elimination at the flux face
    sys.f.dim = N;
    if (!g.is_zero()) sys.f.entries.emplace_back(0, g.scaled(1.0 / (dx * dx)));
    if (!h.is_zero()) sys.f.entries.emplace_back(N - 1, h.scaled(2.0 / dx));
    sys.u0 = ComplexVector::Zero(N);
    sys.n_x = n_x;
    sys.dx = dx;
    sys.family = BoundaryFamily::NeumannMixed;
    return sys;
}

SemiDiscreteSystem build_periodic_1d(int n_x, double dx) {
    if (n_x < 1) throw NumericsError("build_periodic_1d: n_x >= 1 required");
    if (!(dx > 0)) throw NumericsError("build_periodic_1d: dx > 0 required");
    const Eigen::Index N = Eigen::Index(1) << n_x;
    SemiDiscreteSystem sys;
    sys.A = laplacian_core(N, dx);
    const double w = 1.0 / (dx * dx);
    sys.A(0, N - 1) += w;
    sys.A(N - 1, 0) += w;
    sys.f.dim = N;
    sys.u0 = ComplexVector::Zero(N);
    sys.n_x = n_x;
    sys.dx = dx;
    sys.family = BoundaryFamily::Periodic;
    return sys;
}

SemiDiscreteSystem lift_to_d(const SemiDiscreteSystem& sys1d, int d, const BoundaryCondition& bc) {
    if (d < 1) throw NumericsError("lift_to_d: d >= 1 required");
    if (d * sys1d.n_x > kStatevectorWireCap) {
        throw NumericsError("lift_to_d: total qubits exceed statevector cap");
    }
    if (d == 1) return sys1d;

    const Eigen::Index N1 = sys1d.A.rows();
    Eigen::Index Nd = 1;
    for (int i = 0; i < d; ++i) Nd *= N1;

    SemiDiscreteSystem sys;
    sys.A = ComplexMatrix::Zero(Nd, Nd);
    for (int alpha = 1; alpha <= d; ++alpha) {
        // (A_1)_alpha = I^{(d-alpha) n_x} x A_1 x I^{(alpha-1) n_x}
        Eigen::Index left = 1, right = 1;
        for (int i = 0; i < d - alpha; ++i) left *= N1;
        for (int i = 0; i < alpha - 1; ++i) right *= N1;
        sys.A += Eigen::kroneckerProduct(eye(left),
                                         Eigen::kroneckerProduct(sys1d.A, eye(right)).eval())
                     .eval();
    }

    // Boundary source assembled by enumerating faces: axis alpha occupies the
    // (alpha-1)-th digit of the index (alpha = 1 least significant). A point
    // adjacent to a face receives that face's signal with the 1d weight.
    sys.f.dim = Nd;
    if (bc.family != BoundaryFamily::Periodic) {
        const double w = 1.0 / (sys1d.dx * sys1d.dx);
        const TimeSignal left_sig = bc.left.scaled(w);
        const TimeSignal right_sig = bc.family == BoundaryFamily::Dirichlet
                                         ? bc.right.scaled(w)
                                         : bc.right.scaled(2.0 / sys1d.dx);
        for (Eigen::Index idx = 0; idx < Nd; ++idx) {
            Eigen::Index rem = idx;
            for (int alpha = 1; alpha <= d; ++alpha) {
                const Eigen::Index digit = rem % N1;
                rem /= N1;
                if (digit == 0 && !bc.left.is_zero()) sys.f.entries.emplace_back(idx, left_sig);
                if (digit == N1 - 1 && !bc.right.is_zero()) sys.f.entries.emplace_back(idx, right_sig);
            }
        }
    }
    sys.u0 = ComplexVector::Zero(Nd);
    sys.n_x = sys1d.n_x;
    sys.d = d;
    sys.dx = sys1d.dx;
    sys.family = sys1d.family;
    return sys;
}

ShiftOps shift_ops(int n) {
    if (n < 1 || n > 12) throw NumericsError("shift_ops: 1 <= n <= 12 required");
    const Eigen::Index N = Eigen::Index(1) << n;
    ShiftOps ops;
    ops.n = n;
    ops.S_plus = ComplexMatrix::Zero(N, N);
    ops.S_minus = ComplexMatrix::Zero(N, N);
    for (Eigen::Index j = 0; j + 1 < N; ++j) {
        ops.S_plus(j + 1, j) = 1.0;   // S+|j> = |j+1>, annihilates |N-1>
        ops.S_minus(j, j + 1) = 1.0;  // S-|j> = |j-1>, annihilates |0>
    }
    ComplexMatrix s01 = ComplexMatrix::Zero(2, 2);
    s01(0, 1) = 1.0;
    ComplexMatrix s10 = s01.adjoint();
    for (int j = 1; j <= n; ++j) {
        ComplexMatrix minus = eye(Eigen::Index(1) << (n - j));
        ComplexMatrix plus = minus;
        minus = Eigen::kroneckerProduct(minus, s01).eval();
        plus = Eigen::kroneckerProduct(plus, s10).eval();
        for (int m = 0; m < j - 1; ++m) {
            minus = Eigen::kroneckerProduct(minus, s10).eval();
            plus = Eigen::kroneckerProduct(plus, s01).eval();
        }
        ops.terms_minus.push_back(minus);
        ops.terms_plus.push_back(plus);
    }
    return ops;
}

ComplexMatrix periodic_wrap_term(int n) {
    const Eigen::Index N = Eigen::Index(1) << n;
    ComplexMatrix K = ComplexMatrix::Zero(N, N);
    K(0, N - 1) = 1.0;
    K(N - 1, 0) = 1.0;
    return K;
}

ComplexVector sample_initial(const TimeSignal& profile, int n_x, int d, double a, double b,
                             BoundaryFamily family) {
    const Eigen::Index N1 = Eigen::Index(1) << n_x;
    Eigen::Index Nd = 1;
    for (int i = 0; i < d; ++i) Nd *= N1;
    const Eigen::Index M = family == BoundaryFamily::Dirichlet ? N1 + 1 : N1;
    const double dx = (b - a) / static_cast<double>(M);

    Eigen::VectorXd axis(N1);
    for (Eigen::Index i = 0; i < N1; ++i) {
        // Dirichlet and Neumann unknowns start at x_1; periodic at x_0.
        const double x = family == BoundaryFamily::Periodic ? a + i * dx : a + (i + 1) * dx;
        axis(i) = profile.eval(x);
    }
    ComplexVector u0(Nd);
    for (Eigen::Index idx = 0; idx < Nd; ++idx) {
        double v = 1.0;
        Eigen::Index rem = idx;
        for (int ax = 0; ax < d; ++ax) {
            v *= axis(rem % N1);
            rem /= N1;
        }
        u0(idx) = v;
    }
    return u0;
}

SemiDiscreteSystem build_semi_discrete(const HeatProblem& p) {
    const Eigen::Index M = p.bc.family == BoundaryFamily::Dirichlet ? (Eigen::Index(1) << p.n_x) + 1
                                                                    : (Eigen::Index(1) << p.n_x);
    const double dx = (p.domain_max - p.domain_min) / static_cast<double>(M);
    SemiDiscreteSystem sys1d;
    switch (p.bc.family) {
        case BoundaryFamily::Dirichlet:
            sys1d = build_dirichlet_1d(p.n_x, dx, p.bc.left, p.bc.right);
            break;
        case BoundaryFamily::NeumannMixed:
            sys1d = build_neumann_1d(p.n_x, dx, p.bc.left, p.bc.right);
            break;
        case BoundaryFamily::Periodic:
            sys1d = build_periodic_1d(p.n_x, dx);
            break;
    }
    SemiDiscreteSystem sys = p.d == 1 ? sys1d : lift_to_d(sys1d, p.d, p.bc);
    sys.u0 = sample_initial(p.initial, p.n_x, p.d, p.domain_min, p.domain_max, p.bc.family);
    if (p.a != 1.0) {
        sys.A *= p.a;
        sys.f.scale(p.a);
    }
    return sys;
}

}  // namespace schroheat
