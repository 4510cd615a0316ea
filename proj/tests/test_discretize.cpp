#include "schroheat/discretize.hpp"
#include "schroheat/numerics.hpp"

#include <doctest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

using namespace schroheat;

TEST_CASE("Dirichlet 1d matrix and source layout") {
    auto sys = build_dirichlet_1d(2, 1.0, TimeSignal::constant(2.0), TimeSignal::sine(1, 1, 0));
    // row 1 of A equals [1, -2, 1, 0]
    CHECK(sys.A(1, 0).real() == doctest::Approx(1.0));
    CHECK(sys.A(1, 1).real() == doctest::Approx(-2.0));
    CHECK(sys.A(1, 2).real() == doctest::Approx(1.0));
    CHECK(sys.A(1, 3).real() == doctest::Approx(0.0));
    ComplexVector f = sys.f.eval(0.7);
    CHECK(f(0).real() == doctest::Approx(2.0));
    CHECK(f(1).real() == doctest::Approx(0.0));
    CHECK(f(2).real() == doctest::Approx(0.0));
    CHECK(f(3).real() == doctest::Approx(std::sin(0.7)));
}

TEST_CASE("homogeneous Dirichlet data gives zero source") {
    auto sys = build_dirichlet_1d(3, 0.25, TimeSignal::zero(), TimeSignal::zero());
    CHECK(sys.f.is_zero());
    CHECK(sys.f.eval(1.23).norm() == doctest::Approx(0.0));
}

TEST_CASE("Dirichlet A equals (S+ - 2I + S-)/dx^2 from the shift terms") {
    const double dx = 0.5;
    auto sys = build_dirichlet_1d(2, dx, TimeSignal::zero(), TimeSignal::zero());
    auto ops = shift_ops(2);
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (const auto& t : ops.terms_plus) sum += t;
    for (const auto& t : ops.terms_minus) sum += t;
    ComplexMatrix A2 = (sum - 2.0 * ComplexMatrix::Identity(4, 4)) / (dx * dx);
    CHECK((sys.A - A2).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("Neumann ghost-point elimination") {
    auto sys = build_neumann_1d(2, 1.0, TimeSignal::zero(), TimeSignal::constant(1.0));
    // last row [0, 0, 2, -2]
    CHECK(sys.A(3, 0).real() == doctest::Approx(0.0));
    CHECK(sys.A(3, 1).real() == doctest::Approx(0.0));
    CHECK(sys.A(3, 2).real() == doctest::Approx(2.0));
    CHECK(sys.A(3, 3).real() == doctest::Approx(-2.0));
    // f = [g/dx^2, 0, ..., 2h/dx]
    ComplexVector f = sys.f.eval(0.0);
    CHECK(f(3).real() == doctest::Approx(2.0));

    SUBCASE("matches explicit ghost-augmented elimination") {
        // build the (N+1)-unknown system with the ghost value u_{M+1}, apply the
        // flux relation u_{M+1} = u_{M-1} + 2 dx h, and eliminate.
        const int N = 4;
        const double dx = 1.0;
        // columns are u_1..u_M plus the ghost value as column N
        ComplexMatrix big = ComplexMatrix::Zero(N, N + 1);
        for (int i = 0; i < N; ++i) {
            big(i, i) = -2.0 / (dx * dx);
            if (i - 1 >= 0) big(i, i - 1) = 1.0 / (dx * dx);
            if (i + 1 <= N - 1) big(i, i + 1) = 1.0 / (dx * dx);
            if (i == N - 1) big(i, N) = 1.0 / (dx * dx);  // ghost coefficient
        }
        // eliminate ghost: u_ghost = u_{M-1} + 2 dx h -> fold into column M-2
        ComplexMatrix folded = big.leftCols(N);
        folded(N - 1, N - 2) += big(N - 1, N).real();
        CHECK((sys.A - folded).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
}

TEST_CASE("Neumann homogeneous data gives zero source") {
    auto sys = build_neumann_1d(2, 0.5, TimeSignal::zero(), TimeSignal::zero());
    CHECK(sys.f.is_zero());
}

TEST_CASE("periodic corner entries and kernel") {
    auto sys = build_periodic_1d(2, 1.0);
    CHECK(sys.A(0, 3).real() == doctest::Approx(1.0));
    CHECK(sys.A(3, 0).real() == doctest::Approx(1.0));
    ComplexVector ones = ComplexVector::Ones(4);
    CHECK((sys.A * ones).norm() == doctest::Approx(0.0));
}

TEST_CASE("periodic eigenvalues match the circulant formula") {
    for (int n_x : {2, 3, 4, 5}) {
        const Eigen::Index M = Eigen::Index(1) << n_x;
        auto sys = build_periodic_1d(n_x, 1.0);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sys.A);
        std::vector<double> expected;
        for (Eigen::Index k = 0; k < M; ++k) {
            expected.push_back(2.0 * std::cos(2.0 * M_PI * k / double(M)) - 2.0);
        }
        std::sort(expected.begin(), expected.end());
        for (Eigen::Index k = 0; k < M; ++k) {
            CHECK(std::abs(es.eigenvalues()(k) - expected[k]) < 1e-10);
        }
    }
}

TEST_CASE("A is stable for every family; symmetric except the Neumann flux row") {
    // The ghost-point elimination puts 2/dx^2 in the last Neumann row, so that
    // matrix is only symmetrizable (diag(1,..,1,1/sqrt(2)) similarity), not
    // symmetric. Dirichlet and periodic are symmetric outright. All spectra
    // are real and non-positive.
    for (int family = 0; family < 3; ++family) {
        SemiDiscreteSystem sys;
        if (family == 0) sys = build_dirichlet_1d(3, 0.2, TimeSignal::zero(), TimeSignal::zero());
        if (family == 1) sys = build_neumann_1d(3, 0.2, TimeSignal::zero(), TimeSignal::zero());
        if (family == 2) sys = build_periodic_1d(3, 0.2);
        if (family != 1) {
            CHECK((sys.A - sys.A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        } else {
            const Eigen::Index N = sys.A.rows();
            Eigen::VectorXd d = Eigen::VectorXd::Ones(N);
            d(N - 1) = 1.0 / std::sqrt(2.0);
            ComplexMatrix sym = d.asDiagonal() * sys.A * d.cwiseInverse().asDiagonal();
            CHECK((sym - sym.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        }
        Eigen::ComplexEigenSolver<ComplexMatrix> es(sys.A);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            CHECK(es.eigenvalues()(i).real() < 1e-10);
            CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-10);
        }
    }
}

TEST_CASE("shift operators: dense action and term decomposition") {
    SUBCASE("n=1 is the Pauli ladder") {
        auto ops = shift_ops(1);
        CHECK(ops.S_minus(0, 1).real() == doctest::Approx(1.0));
        CHECK(ops.S_plus(1, 0).real() == doctest::Approx(1.0));
    }
    SUBCASE("boundary annihilation (n=2)") {
        auto ops = shift_ops(2);
        ComplexVector e0 = ComplexVector::Zero(4), e1 = e0, e2 = e0;
        e0(0) = 1;
        e1(1) = 1;
        e2(2) = 1;
        CHECK((ops.S_minus * e1 - e0).norm() == doctest::Approx(0.0));
        CHECK((ops.S_minus * e2 - e1).norm() == doctest::Approx(0.0));
        CHECK((ops.S_minus * e0).norm() == doctest::Approx(0.0));
    }
    for (int n : {1, 2, 3, 4, 5, 6}) {
        CAPTURE(n);
        auto ops = shift_ops(n);
        ComplexMatrix sm = ComplexMatrix::Zero(ops.S_minus.rows(), ops.S_minus.cols());
        ComplexMatrix sp = sm;
        for (const auto& t : ops.terms_minus) sm += t;
        for (const auto& t : ops.terms_plus) sp += t;
        CHECK((sm - ops.S_minus).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        CHECK((sp - ops.S_plus).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        CHECK((ops.S_plus - ops.S_minus.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
}

TEST_CASE("lift_to_d: Kronecker sum and corner sources") {
    BoundaryCondition bc;
    bc.family = BoundaryFamily::Dirichlet;
    bc.left = TimeSignal::constant(1.0);
    bc.right = TimeSignal::constant(1.0);

    auto sys1 = build_dirichlet_1d(1, 1.0, bc.left, bc.right);

    SUBCASE("d=1 passthrough") {
        auto sysd = lift_to_d(sys1, 1, bc);
        CHECK((sysd.A - sys1.A).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    }
    SUBCASE("d=2, n_x=1: A x I + I x A") {
        auto sysd = lift_to_d(sys1, 2, bc);
        ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
        ComplexMatrix I2 = ComplexMatrix::Identity(2, 2);
        expected = Eigen::kroneckerProduct(sys1.A, I2).eval() +
                   Eigen::kroneckerProduct(I2, sys1.A).eval();
        CHECK((sysd.A - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("d=2 with u == 1 on all faces: corner point gets 2/dx^2") {
        auto sys1b = build_dirichlet_1d(2, 0.5, bc.left, bc.right);
        auto sysd = lift_to_d(sys1b, 2, bc);
        ComplexVector f = sysd.f.eval(0.0);
        const double w = 1.0 / 0.25;
        // index 0 has digit 0 on both axes -> two face contributions
        CHECK(f(0).real() == doctest::Approx(2.0 * w));
        // a fully interior index gets nothing: digits (1,1) -> idx 1*4+1 = 5
        CHECK(f(5).real() == doctest::Approx(0.0));
    }
}

TEST_CASE("source supported only on boundary-adjacent indices") {
    BoundaryCondition bc;
    bc.family = BoundaryFamily::Dirichlet;
    bc.left = TimeSignal::constant(1.0);
    bc.right = TimeSignal::constant(2.0);
    auto sysd = lift_to_d(build_dirichlet_1d(2, 1.0, bc.left, bc.right), 2, bc);
    ComplexVector f = sysd.f.eval(0.3);
    const Eigen::Index N1 = 4;
    for (Eigen::Index idx = 0; idx < f.size(); ++idx) {
        const bool boundary_adjacent =
            (idx % N1 == 0) || (idx % N1 == N1 - 1) || (idx / N1 == 0) || (idx / N1 == N1 - 1);
        if (!boundary_adjacent) CHECK(std::abs(f(idx)) == doctest::Approx(0.0));
    }
}

TEST_CASE("dirichlet semi-discrete convergence is second order") {
    // u = e^{-pi^2 t} sin(pi x) on (0,1) solves the heat equation with zero data
    std::vector<double> errs;
    std::vector<double> hs;
    const double T = 0.02;
    for (int n_x : {3, 4, 5}) {
        HeatProblem p;
        p.n_x = n_x;
        p.a = 1.0;
        p.bc.family = BoundaryFamily::Dirichlet;
        p.initial = TimeSignal::sine(1.0, M_PI, 0.0);
        auto sys = build_semi_discrete(p);
        auto f = [&](double t) { return sys.f.eval(t); };
        auto ref = reference_solution(sys.A, f, sys.u0, T);
        REQUIRE(ref.converged);
        const Eigen::Index N = sys.u0.size();
        const double dx = 1.0 / double(N + 1);
        double err = 0.0, nrm = 0.0;
        for (Eigen::Index i = 0; i < N; ++i) {
            const double exact = std::exp(-M_PI * M_PI * T) * std::sin(M_PI * (i + 1) * dx);
            err += std::norm(ref.u(i) - Complex(exact));
            nrm += exact * exact;
        }
        errs.push_back(std::sqrt(err / nrm));
        hs.push_back(dx);
    }
    const double order = std::log(errs[0] / errs[2]) / std::log(hs[0] / hs[2]);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}
