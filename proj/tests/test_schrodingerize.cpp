#include "schroheat/schrodingerize.hpp"

#include <doctest.h>

#include <cmath>

using namespace schroheat;

TEST_CASE("split_hermitian") {
    SUBCASE("real symmetric passes through") {
        ComplexMatrix A(2, 2);
        A << 1.0, 2.0, 2.0, -3.0;
        auto [H1, H2] = split_hermitian(A);
        CHECK((H1 - A).norm() < 1e-15);
        CHECK(H2.norm() < 1e-15);
    }
    SUBCASE("A = iI") {
        ComplexMatrix A = Complex(0, 1) * ComplexMatrix::Identity(3, 3);
        auto [H1, H2] = split_hermitian(A);
        CHECK(H1.norm() < 1e-15);
        CHECK((H2 - ComplexMatrix::Identity(3, 3)).norm() < 1e-15);
    }
    SUBCASE("random reconstruction") {
        std::srand(5);
        ComplexMatrix A = ComplexMatrix::Random(6, 6);
        auto [H1, H2] = split_hermitian(A);
        CHECK((H1 + Complex(0, 1) * H2 - A).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((H1 - H1.adjoint()).norm() < 1e-14);
        CHECK((H2 - H2.adjoint()).norm() < 1e-14);
    }
}

TEST_CASE("make_pgrid") {
    SUBCASE("n_p=1, R=1: eta = {-1, 0}") {
        PGrid pg = make_pgrid(1.0, 1);
        CHECK(pg.eta(0) == doctest::Approx(-1.0));
        CHECK(pg.eta(1) == doctest::Approx(0.0));
        CHECK(pg.tail_warning);  // e^{-pi} >= 1e-9
    }
    SUBCASE("n_p=2, R=2: eta = {-1, -0.5, 0, 0.5}") {
        PGrid pg = make_pgrid(2.0, 2);
        for (int k = 0; k < 4; ++k) CHECK(pg.eta(k) == doctest::Approx((k - 2) / 2.0));
    }
    SUBCASE("uniform spacing 2 pi R / N_p") {
        PGrid pg = make_pgrid(3.0, 4);
        const double dp = 2 * M_PI * 3.0 / 16.0;
        for (int k = 0; k + 1 < 16; ++k) {
            CHECK(pg.p(k + 1) - pg.p(k) == doctest::Approx(dp).epsilon(1e-14));
        }
        CHECK(pg.p(0) == doctest::Approx(-3 * M_PI));
    }
    SUBCASE("tail warning clears for large R") {
        CHECK(!make_pgrid(7.0, 3).tail_warning);
    }
}

TEST_CASE("initial_extended_state") {
    PGrid pg = make_pgrid(1.0, 1);  // p = {-pi, 0}
    SUBCASE("u0 = |0>") {
        ComplexVector u0 = ComplexVector::Zero(2);
        u0(0) = 1.0;
        ComplexVector w0 = initial_extended_state(u0, pg);
        CHECK(w0(0).real() == doctest::Approx(std::exp(-M_PI)));
        CHECK(w0(1).real() == doctest::Approx(1.0));
        CHECK(w0(2).real() == doctest::Approx(0.0));
        CHECK(w0(3).real() == doctest::Approx(0.0));
    }
    SUBCASE("norm is C_e ||u0||") {
        std::srand(11);
        ComplexVector u0 = ComplexVector::Random(4);
        PGrid pg2 = make_pgrid(2.0, 3);
        ComplexVector w0 = initial_extended_state(u0, pg2);
        CHECK(w0.norm() == doctest::Approx(pg2.C_e() * u0.norm()).epsilon(1e-12));
    }
    SUBCASE("zero u0") {
        ComplexVector u0 = ComplexVector::Zero(2);
        CHECK(initial_extended_state(u0, pg).norm() == doctest::Approx(0.0));
    }
}

TEST_CASE("assemble_hamiltonian") {
    SUBCASE("zero inputs") {
        PGrid pg = make_pgrid(1.0, 1);
        ComplexMatrix z = ComplexMatrix::Zero(2, 2);
        CHECK(assemble_hamiltonian(z, z, pg).norm() == doctest::Approx(0.0));
    }
    SUBCASE("H1 = diag(-1), n_p=1, R=1 -> H = diag(-1, 0)") {
        PGrid pg = make_pgrid(1.0, 1);
        ComplexMatrix H1 = -ComplexMatrix::Identity(1, 1);
        ComplexMatrix H = assemble_hamiltonian(H1, ComplexMatrix::Zero(1, 1), pg);
        CHECK(H(0, 0).real() == doctest::Approx(-1.0));
        CHECK(H(1, 1).real() == doctest::Approx(0.0));
    }
    SUBCASE("norm identity ||H|| = ||A|| N_p/(2R) for heat") {
        auto sys = build_dirichlet_1d(2, 0.3, TimeSignal::zero(), TimeSignal::zero());
        PGrid pg = make_pgrid(2.0, 3);
        ComplexMatrix H = assemble_hamiltonian(sys.A, ComplexMatrix::Zero(4, 4), pg);
        CHECK(op_norm(H) ==
              doctest::Approx(op_norm(sys.A) * double(pg.N_p) / (2 * pg.R)).epsilon(1e-9));
    }
    SUBCASE("rejects non-Hermitian input") {
        PGrid pg = make_pgrid(1.0, 1);
        ComplexMatrix bad(2, 2);
        bad << 0.0, 1.0, 0.0, 0.0;
        CHECK_THROWS_AS(assemble_hamiltonian(bad, ComplexMatrix::Zero(2, 2), pg), NumericsError);
    }
}

TEST_CASE("evolve_exact is unitary and T=0 is the identity") {
    auto sysd = build_dirichlet_1d(2, 0.5, TimeSignal::zero(), TimeSignal::zero());
    sysd.u0 = ComplexVector::Random(4);
    PGrid pg = make_pgrid(1.5, 3);
    auto sys = schrodingerise(sysd, pg);
    CHECK((evolve_exact(sys, 0.0) - sys.wt0).norm() < 1e-12);
    CHECK(evolve_exact(sys, 0.4).norm() == doctest::Approx(sys.wt0.norm()).epsilon(1e-10));
}

TEST_CASE("warped-transform roundtrip recovers u0 exactly at every admissible node") {
    auto sysd = build_dirichlet_1d(2, 0.5, TimeSignal::zero(), TimeSignal::zero());
    std::srand(3);
    sysd.u0 = ComplexVector::Random(4);
    PGrid pg = make_pgrid(2.0, 4);
    ComplexVector w0 = initial_extended_state(sysd.u0, pg);
    Recovery rec = recover_u(w0, pg, 0.0, 0.0);
    CHECK((rec.u - sysd.u0).norm() < 1e-12);
    CHECK(rec.variance < 1e-24);
}

TEST_CASE("recovery errors out when lambda_plus * t reaches the p-boundary") {
    PGrid pg = make_pgrid(1.0, 3);
    ComplexVector w = ComplexVector::Ones(8);
    CHECK_THROWS_AS(recover_u(w, pg, 1.0, 4.0), NumericsError);
}

TEST_CASE("homogeneous heat recovery approaches reference as n_p grows") {
    auto sysd = build_dirichlet_1d(2, 1.0 / 5.0, TimeSignal::zero(), TimeSignal::zero());
    for (Eigen::Index i = 0; i < 4; ++i) sysd.u0(i) = std::sin(M_PI * (i + 1) / 5.0);
    const double T = 0.05;
    auto ref = reference_solution(sysd.A, [&](double t) { return sysd.f.eval(t); }, sysd.u0, T);
    double prev = 1e9, prev_state = 1e9;
    for (int n_p : {4, 5, 6}) {
        PGrid pg = make_pgrid(3.0, n_p);
        auto sys = schrodingerise(sysd, pg);
        ComplexVector wtT = evolve_exact(sys, T);
        ComplexVector wT = to_p_space(wtT, pg, 4);
        Recovery rec = recover_u(wT, pg, 0.0, T);
        const double err = (rec.u - ref.u).norm() / ref.u.norm();
        const double err_state =
            (rec.u / rec.u.norm() - ref.u / ref.u.norm()).norm();
        CHECK(err < prev);
        prev = err;
        prev_state = err_state;
    }
    // raw error carries the e^{-|p|}-kink scale bias; the state-direction
    // error is an order of magnitude smaller
    CHECK(prev < 0.05);
    CHECK(prev_state < 0.01);
}

TEST_CASE("lambda_plus") {
    ComplexMatrix H1(2, 2);
    H1 << -2.0, 0.0, 0.0, -1.0;
    SUBCASE("homogeneous returns zero") {
        SourceTerm f;
        f.dim = 2;
        CHECK(lambda_plus(f, H1, 1.0, 0.1) == doctest::Approx(0.0));
    }
    SUBCASE("constant source bound") {
        SourceTerm f;
        f.dim = 2;
        f.entries.emplace_back(0, TimeSignal::constant(3.0));
        const double eps = 0.5;
        // |c| / sqrt(c^2 + eps^2) < 1, lambda_max = -1 -> clipped at 0
        CHECK(lambda_plus(f, H1, 1.0, eps) == doctest::Approx(0.0));
        // with a positive top eigenvalue the formula value is exact
        ComplexMatrix H1b = H1;
        H1b(1, 1) = 0.5;
        const double expect = 0.5 + 0.5 * 3.0 / std::sqrt(9.0 + eps * eps);
        CHECK(lambda_plus(f, H1b, 1.0, eps) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("time-grid refinement changes the estimate by < 1e-6") {
        SourceTerm f;
        f.dim = 2;
        f.entries.emplace_back(0, TimeSignal::parse("sin(2,3,0.4) + const(0.2)"));
        ComplexMatrix H1b = H1;
        H1b(1, 1) = 1.0;
        const double a = lambda_plus(f, H1b, 1.0, 0.3, 1 << 10);
        const double b = lambda_plus(f, H1b, 1.0, 0.3, 1 << 11);
        CHECK(std::abs(a - b) < 1e-6);
    }
}
