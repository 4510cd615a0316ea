#pragma once

// Gate-level circuit IR, statevector engine, and the builders for the
// Hamiltonian-evolution circuits: B_hat_j(lambda), W_j, V0(tau), the select
// oracle V_heat(tau) in both original (controlled powers of the one-segment
// circuit) and modified (controlled rescaled-parameter circuits) forms, the
// periodic-boundary V1(tau), and the gate counter.
//
// Wire convention: wires are numbered 0..n-1 top to bottom and wire 0 carries
// the most significant bit of the basis index, so basis state |j> has bit
// j_{n-1} on wire 0. Everything in this module follows the paper-internal
// Hamiltonian sign: V_heat(tau) approximates exp(i*Hheat*tau) with
// Hheat = gamma0 R * (D^Delta dx^2) x D_eta-type blocks; pipelines that need
// exp(iHt) for the transport Hamiltonian H = -H1 x D_eta call these builders
// with a negated time parameter.

#include "schroheat/numerics.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace schroheat {

struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuantumCircuit;

struct Gate {
    enum class Kind {
        H,
        X,
        CNOT,
        Rz,          // diag(e^{-i theta/2}, e^{+i theta/2})
        Phase,       // diag(1, e^{i lambda})
        GlobalPhase, // e^{i theta} I
        MultiControlledRz,
        ControlledSub,
    };
    Kind kind;
    int target = -1;
    int control = -1;               // CNOT / ControlledSub
    int control_value = 1;          // ControlledSub only (0 or 1)
    double param = 0.0;             // angle
    std::vector<int> controls;      // MultiControlledRz
    std::shared_ptr<const QuantumCircuit> sub;  // ControlledSub

    static Gate h(int w);
    static Gate x(int w);
    static Gate cnot(int control, int target);
    static Gate rz(double theta, int w);
    static Gate phase(double lambda, int w);
    static Gate global_phase(double theta);
    static Gate mcrz(double theta, std::vector<int> controls, int target);
    static Gate controlled(int control_wire, int control_value, QuantumCircuit sub);
};

struct Register {
    std::string name;
    int width = 0;
};

struct QuantumCircuit {
    std::vector<Register> registers;
    std::vector<Gate> gates;

    int total_wires() const;
    /// First wire of the named register.
    int reg_offset(const std::string& name) const;
    int reg_width(const std::string& name) const;
    void append(Gate g);
    void append(const QuantumCircuit& other);  // same layout
    QuantumCircuit adjoint() const;
    void validate() const;
};

struct GateCounts {
    std::int64_t single_qubit = 0;
    std::int64_t cnot = 0;
    std::int64_t multi_controlled_rz = 0;
    std::int64_t cnot_equivalent = 0;  // with MCRZ charged via the ladder formula
    std::int64_t controlled_subcircuit_expansions = 0;

    GateCounts& operator+=(const GateCounts& o);
};

/// Counts with controlled subcircuits expanded. A MultiControlledRz with k
/// controls is charged 2k CNOTs + 2 single-qubit rotations for k >= 1
/// (CNOT-ladder conjugation of a two-rotation controlled core), one rotation
/// for k = 0. Both the raw multi-controlled count and the CNOT-equivalent
/// total are reported.
GateCounts count_gates(const QuantumCircuit& c);
std::int64_t mcrz_cnot_equivalent(int k_controls);

struct Statevector {
    ComplexVector amplitudes;
    int wires = 0;

    static Statevector zero_state(int wires);
    static Statevector from_vector(ComplexVector v);
};

/// Apply the gate list in order by basis-index bit manipulation; never
/// materializes a full unitary.
void apply(const QuantumCircuit& c, Statevector& state);

/// Apply a dense unitary to a contiguous group of wires (offset..offset+w-1);
/// used by the structured pipeline appliers, not part of the gate IR.
void apply_dense_on_wires(Statevector& state, const ComplexMatrix& U, int offset, int width);

/// Exact dense unitary of the gate list (total wires <= 13).
ComplexMatrix circuit_to_matrix(const QuantumCircuit& c);

/// Copy of `block` with every wire shifted by `offset`, re-registered on
/// `layout`; nested controlled blocks are rewired recursively.
QuantumCircuit embed(const QuantumCircuit& block, const std::vector<Register>& layout,
                     int offset);

// --- builders (single x-register unless stated otherwise) ---

/// B_hat_j(lambda): H on qubit 0, P(-lambda) on qubit 0, CNOT 0->m for m=1..j-1.
QuantumCircuit build_B_hat(int j, double lambda);

/// W_j(gamma_tau, lambda) = B_j e^{i gamma_tau Z x |1><1|^(j-1)} B_j^dag on j wires.
QuantumCircuit build_W(int j, double gamma_tau, double lambda);

/// V0(tau) = Ph(-2 gamma0 tau) prod_j [I^(n_x-j) x W_j(gamma0 tau, 0)];
/// gate order applies j = 1 first.
QuantumCircuit build_V0(double tau, int n_x, double gamma0);

enum class SelectMode { Original, Modified };

/// V~0(tau) = prod_alpha (V0(tau))_alpha over d disjoint x-registers.
QuantumCircuit build_V0_tilde(double tau, int n_x, int d, double gamma0, bool periodic = false);

/// Select oracle V_heat(tau) on registers x0..x{d-1}, p. Original mode
/// realizes c-V~0^(2^m)(tau) as repeated controlled one-segment circuits;
/// modified mode uses c-V~0(2^m tau). The inverse half-power is merged with
/// the top p-wire as a control-on-0 block in both modes. `periodic` swaps the
/// one-axis factor for V1(tau).
QuantumCircuit build_Vheat(double tau, int n_x, int n_p, int d, double gamma0, SelectMode mode,
                           bool periodic = false);

/// U1^(1)(tau) = exp(i tau gamma0 (s01^xn + s10^xn)) via X-conjugation of the
/// Bell-pair block; V1(tau) = V0(tau) * U1^(1)(tau) (U1^(1) applied first).
QuantumCircuit build_U1_wrap(double tau, int n_x, double gamma0);
QuantumCircuit build_V1_periodic(double tau, int n_x, double gamma0);

/// Quantum Fourier transform matrix-equivalent circuit for the project's DFT
/// convention F = diag((-1)^j) * QFT (modes l = k - N/2).
QuantumCircuit build_centered_qft(int n);

/// One-segment operator-norm error constant: ||e^{i Hheat tau} - V_heat(tau)||
/// <= C_heat tau^2 with C_heat = d N_p (n_x - 1) gamma0^2 / 4.
double c_heat_bound(int d, Eigen::Index N_p, int n_x, double gamma0);

// --- serialization: one gate per line, nested CSUB blocks ---
std::string circuit_print(const QuantumCircuit& c);
QuantumCircuit circuit_parse(const std::string& text);

}  // namespace schroheat
