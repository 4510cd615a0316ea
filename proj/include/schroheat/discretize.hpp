#pragma once

// Semi-discrete systems (A, f(t), u0) for the heat equation under Dirichlet,
// Neumann-mixed and periodic boundary conditions, in 1..d dimensions, plus
// the shift operators and their Bell-pair term decomposition.
//
// Mesh convention: interior-unknown counts are forced to powers of two.
// Dirichlet divides (a,b) into M intervals with M - 1 = 2^{n_x} interior
// unknowns; Neumann and periodic use M = 2^{n_x} unknowns. The builders here
// produce the unit-diffusion system; the heat problem assembly scales A and
// f by the diffusion constant.

#include "schroheat/numerics.hpp"
#include "schroheat/signals.hpp"

#include <vector>

namespace schroheat {

enum class BoundaryFamily { Dirichlet, NeumannMixed, Periodic };

/// Boundary data, one time signal per face per axis. Dirichlet: value on both
/// faces; Neumann-mixed: Dirichlet value g(t) on the left face and flux h(t)
/// on the right face; periodic: none.
struct BoundaryCondition {
    BoundaryFamily family = BoundaryFamily::Dirichlet;
    TimeSignal left;   // u_a(t) or g(t)
    TimeSignal right;  // u_b(t) or h(t)
};

/// Time-dependent source supported on boundary-adjacent interior indices.
struct SourceTerm {
    Eigen::Index dim = 0;
    std::vector<std::pair<Eigen::Index, TimeSignal>> entries;

    ComplexVector eval(double t) const;
    ComplexVector derivative(double t) const;
    bool is_zero() const;
    void scale(double a);
};

struct SemiDiscreteSystem {
    ComplexMatrix A;       // real symmetric, negative semi-definite
    SourceTerm f;
    ComplexVector u0;
    int n_x = 0;           // qubits per axis
    int d = 1;
    double dx = 0.0;
    BoundaryFamily family = BoundaryFamily::Dirichlet;
};

SemiDiscreteSystem build_dirichlet_1d(int n_x, double dx, TimeSignal u_a, TimeSignal u_b);
SemiDiscreteSystem build_neumann_1d(int n_x, double dx, TimeSignal g, TimeSignal h);
SemiDiscreteSystem build_periodic_1d(int n_x, double dx);

/// Kronecker-sum lift A_d = sum_a I x ... x A_1 x ... x I with the boundary
/// source assembled by direct enumeration over faces (each face carries the
/// spatially constant signal of `bc`). The 1d system must be homogeneous in
/// structure with `bc`'s family.
SemiDiscreteSystem lift_to_d(const SemiDiscreteSystem& sys1d, int d, const BoundaryCondition& bc);

/// Shift operators on n qubits, both dense (defined by basis-state action)
/// and as the Bell-pair summands s_j^± = I^{(n-j)} x sigma x sigma'^{(j-1)}.
struct ShiftOps {
    int n = 0;
    ComplexMatrix S_plus, S_minus;
    std::vector<ComplexMatrix> terms_plus, terms_minus;  // index j-1 holds s_j^±
};
ShiftOps shift_ops(int n);

/// sigma_01^{x n} + sigma_10^{x n}: the periodic wrap term |0..0><1..1| + h.c.
ComplexMatrix periodic_wrap_term(int n);

/// Initial condition assembled from a per-axis profile g: u0[j] = prod_a g(x_{j_a}),
/// evaluated on the unknowns' grid for the given family.
ComplexVector sample_initial(const TimeSignal& profile, int n_x, int d, double a, double b,
                             BoundaryFamily family);

/// Full problem description -> semi-discrete system (diffusion folded in).
struct HeatProblem {
    int d = 1;
    int n_x = 1;
    double a = 1.0;          // diffusion constant
    double domain_min = 0.0;
    double domain_max = 1.0;
    BoundaryCondition bc;
    TimeSignal initial;      // per-axis profile
};
SemiDiscreteSystem build_semi_discrete(const HeatProblem& p);

}  // namespace schroheat
