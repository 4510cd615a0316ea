#include "schroheat/circuits.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace schroheat {

Gate Gate::h(int w) {
    Gate g;
    g.kind = Kind::H;
    g.target = w;
    return g;
}
Gate Gate::x(int w) {
    Gate g;
    g.kind = Kind::X;
    g.target = w;
    return g;
}
Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = Kind::CNOT;
    g.control = control;
    g.target = target;
    return g;
}
Gate Gate::rz(double theta, int w) {
    Gate g;
    g.kind = Kind::Rz;
    g.target = w;
    g.param = theta;
    return g;
}
Gate Gate::phase(double lambda, int w) {
    Gate g;
    g.kind = Kind::Phase;
    g.target = w;
    g.param = lambda;
    return g;
}
Gate Gate::global_phase(double theta) {
    Gate g;
    g.kind = Kind::GlobalPhase;
    g.param = theta;
    return g;
}
Gate Gate::mcrz(double theta, std::vector<int> controls, int target) {
    Gate g;
    g.kind = Kind::MultiControlledRz;
    g.param = theta;
    g.controls = std::move(controls);
    g.target = target;
    return g;
}
Gate Gate::controlled(int control_wire, int control_value, QuantumCircuit sub) {
    Gate g;
    g.kind = Kind::ControlledSub;
    g.control = control_wire;
    g.control_value = control_value;
    g.sub = std::make_shared<const QuantumCircuit>(std::move(sub));
    return g;
}

int QuantumCircuit::total_wires() const {
    int n = 0;
    for (const auto& r : registers) n += r.width;
    return n;
}

int QuantumCircuit::reg_offset(const std::string& name) const {
    int off = 0;
    for (const auto& r : registers) {
        if (r.name == name) return off;
        off += r.width;
    }
    throw CircuitError("unknown register '" + name + "'");
}

int QuantumCircuit::reg_width(const std::string& name) const {
    for (const auto& r : registers) {
        if (r.name == name) return r.width;
    }
    throw CircuitError("unknown register '" + name + "'");
}

void QuantumCircuit::append(Gate g) { gates.push_back(std::move(g)); }

void QuantumCircuit::append(const QuantumCircuit& other) {
    if (other.total_wires() != total_wires()) {
        throw CircuitError("append: layout mismatch");
    }
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

namespace {

Gate dagger_of(const Gate& g);

QuantumCircuit adjoint_of(const QuantumCircuit& c) {
    QuantumCircuit out;
    out.registers = c.registers;
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        out.gates.push_back(dagger_of(*it));
    }
    return out;
}

Gate dagger_of(const Gate& g) {
    Gate out = g;
    switch (g.kind) {
        case Gate::Kind::H:
        case Gate::Kind::X:
        case Gate::Kind::CNOT:
            break;  // self-inverse
        case Gate::Kind::Rz:
        case Gate::Kind::Phase:
        case Gate::Kind::GlobalPhase:
        case Gate::Kind::MultiControlledRz:
            out.param = -g.param;
            break;
        case Gate::Kind::ControlledSub:
            out.sub = std::make_shared<const QuantumCircuit>(adjoint_of(*g.sub));
            break;
    }
    return out;
}

void check_wire(int w, int n, const char* who) {
    if (w < 0 || w >= n) throw CircuitError(std::string(who) + ": wire index out of range");
}

}  // namespace

QuantumCircuit QuantumCircuit::adjoint() const { return adjoint_of(*this); }

void QuantumCircuit::validate() const {
    const int n = total_wires();
    if (n < 1 || n > kStatevectorWireCap) throw CircuitError("validate: wire count outside 1..24");
    for (const auto& g : gates) {
        switch (g.kind) {
            case Gate::Kind::H:
            case Gate::Kind::X:
            case Gate::Kind::Rz:
            case Gate::Kind::Phase:
                check_wire(g.target, n, "validate");
                break;
            case Gate::Kind::GlobalPhase:
                break;
            case Gate::Kind::CNOT:
                check_wire(g.target, n, "validate");
                check_wire(g.control, n, "validate");
                if (g.control == g.target) throw CircuitError("validate: CNOT control == target");
                break;
            case Gate::Kind::MultiControlledRz:
                check_wire(g.target, n, "validate");
                for (int c : g.controls) {
                    check_wire(c, n, "validate");
                    if (c == g.target) throw CircuitError("validate: MCRZ control == target");
                }
                break;
            case Gate::Kind::ControlledSub:
                check_wire(g.control, n, "validate");
                if (g.control_value != 0 && g.control_value != 1) {
                    throw CircuitError("validate: control value must be 0 or 1");
                }
                if (!g.sub || g.sub->total_wires() != n) {
                    throw CircuitError("validate: controlled subcircuit layout mismatch");
                }
                g.sub->validate();
                break;
        }
    }
}

GateCounts& GateCounts::operator+=(const GateCounts& o) {
    single_qubit += o.single_qubit;
    cnot += o.cnot;
    multi_controlled_rz += o.multi_controlled_rz;
    cnot_equivalent += o.cnot_equivalent;
    controlled_subcircuit_expansions += o.controlled_subcircuit_expansions;
    return *this;
}

std::int64_t mcrz_cnot_equivalent(int k_controls) {
    return k_controls >= 1 ? 2 * static_cast<std::int64_t>(k_controls) : 0;
}

GateCounts count_gates(const QuantumCircuit& c) {
    GateCounts out;
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::H:
            case Gate::Kind::X:
            case Gate::Kind::Rz:
            case Gate::Kind::Phase:
                ++out.single_qubit;
                break;
            case Gate::Kind::GlobalPhase:
                break;  // a bookkeeping factor, not a gate on a wire
            case Gate::Kind::CNOT:
                ++out.cnot;
                ++out.cnot_equivalent;
                break;
            case Gate::Kind::MultiControlledRz:
                if (g.controls.empty()) {
                    ++out.single_qubit;  // degenerates to a plain rotation
                } else {
                    ++out.multi_controlled_rz;
                    out.cnot_equivalent +=
                        mcrz_cnot_equivalent(static_cast<int>(g.controls.size()));
                }
                break;
            case Gate::Kind::ControlledSub: {
                ++out.controlled_subcircuit_expansions;
                out += count_gates(*g.sub);
                break;
            }
        }
    }
    return out;
}

Statevector Statevector::zero_state(int wires) {
    Statevector s;
    s.wires = wires;
    s.amplitudes = ComplexVector::Zero(Eigen::Index(1) << wires);
    s.amplitudes(0) = 1.0;
    return s;
}

Statevector Statevector::from_vector(ComplexVector v) {
    Statevector s;
    Eigen::Index n = v.size();
    if (!is_power_of_two(n)) throw CircuitError("from_vector: length must be a power of two");
    s.wires = 0;
    while ((Eigen::Index(1) << s.wires) < n) ++s.wires;
    s.amplitudes = std::move(v);
    return s;
}

namespace {

using Amp = Complex;

void apply_gate(const Gate& g, ComplexVector& a, int n, std::uint64_t cmask, std::uint64_t cval);

void apply_gates(const std::vector<Gate>& gates, ComplexVector& a, int n, std::uint64_t cmask,
                 std::uint64_t cval) {
    for (const auto& g : gates) apply_gate(g, a, n, cmask, cval);
}

inline std::uint64_t wire_bit(int wire, int n) { return std::uint64_t(1) << (n - 1 - wire); }

void apply_gate(const Gate& g, ComplexVector& a, int n, std::uint64_t cmask, std::uint64_t cval) {
    const std::uint64_t N = std::uint64_t(1) << n;
    switch (g.kind) {
        case Gate::Kind::H: {
            const std::uint64_t m = wire_bit(g.target, n);
            const double inv = 1.0 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < N; ++i) {
                if ((i & m) || (i & cmask) != cval) continue;
                const Amp a0 = a(i), a1 = a(i | m);
                a(i) = inv * (a0 + a1);
                a(i | m) = inv * (a0 - a1);
            }
            break;
        }
        case Gate::Kind::X: {
            const std::uint64_t m = wire_bit(g.target, n);
            for (std::uint64_t i = 0; i < N; ++i) {
                if ((i & m) || (i & cmask) != cval) continue;
                std::swap(a(i), a(i | m));
            }
            break;
        }
        case Gate::Kind::CNOT: {
            const std::uint64_t mc = wire_bit(g.control, n);
            const std::uint64_t mt = wire_bit(g.target, n);
            for (std::uint64_t i = 0; i < N; ++i) {
                if (!(i & mc) || (i & mt) || (i & cmask) != cval) continue;
                std::swap(a(i), a(i | mt));
            }
            break;
        }
        case Gate::Kind::Rz: {
            const std::uint64_t m = wire_bit(g.target, n);
            const Amp ph0 = std::exp(Amp(0, -g.param / 2));
            const Amp ph1 = std::exp(Amp(0, +g.param / 2));
            for (std::uint64_t i = 0; i < N; ++i) {
                if ((i & cmask) != cval) continue;
                a(i) *= (i & m) ? ph1 : ph0;
            }
            break;
        }
        case Gate::Kind::Phase: {
            const std::uint64_t m = wire_bit(g.target, n);
            const Amp ph = std::exp(Amp(0, g.param));
            for (std::uint64_t i = 0; i < N; ++i) {
                if (!(i & m) || (i & cmask) != cval) continue;
                a(i) *= ph;
            }
            break;
        }
        case Gate::Kind::GlobalPhase: {
            const Amp ph = std::exp(Amp(0, g.param));
            for (std::uint64_t i = 0; i < N; ++i) {
                if ((i & cmask) != cval) continue;
                a(i) *= ph;
            }
            break;
        }
        case Gate::Kind::MultiControlledRz: {
            std::uint64_t ones = 0;
            for (int c : g.controls) ones |= wire_bit(c, n);
            const std::uint64_t m = wire_bit(g.target, n);
            const Amp ph0 = std::exp(Amp(0, -g.param / 2));
            const Amp ph1 = std::exp(Amp(0, +g.param / 2));
            for (std::uint64_t i = 0; i < N; ++i) {
                if ((i & ones) != ones || (i & cmask) != cval) continue;
                a(i) *= (i & m) ? ph1 : ph0;
            }
            break;
        }
        case Gate::Kind::ControlledSub: {
            const std::uint64_t m = wire_bit(g.control, n);
            const std::uint64_t want = g.control_value ? m : 0;
            if (cmask & m) throw CircuitError("apply: nested control reuses a control wire");
            apply_gates(g.sub->gates, a, n, cmask | m, cval | want);
            break;
        }
    }
}

}  // namespace

void apply(const QuantumCircuit& c, Statevector& state) {
    const int n = c.total_wires();
    if (n != state.wires) throw CircuitError("apply: register layout mismatch");
    apply_gates(c.gates, state.amplitudes, n, 0, 0);
}

void apply_dense_on_wires(Statevector& state, const ComplexMatrix& U, int offset, int width) {
    const int n = state.wires;
    if (offset < 0 || offset + width > n) throw CircuitError("apply_dense_on_wires: range");
    if (U.rows() != (Eigen::Index(1) << width) || U.rows() != U.cols()) {
        throw CircuitError("apply_dense_on_wires: matrix size mismatch");
    }
    const std::uint64_t N = std::uint64_t(1) << n;
    const std::uint64_t W = std::uint64_t(1) << width;
    const int low = n - offset - width;  // wires below the group
    const std::uint64_t low_count = std::uint64_t(1) << low;
    ComplexVector tmp(W);
    for (std::uint64_t hi = 0; hi < (N >> (width + low)); ++hi) {
        for (std::uint64_t lo = 0; lo < low_count; ++lo) {
            const std::uint64_t base = (hi << (width + low)) | lo;
            for (std::uint64_t k = 0; k < W; ++k) tmp(k) = state.amplitudes(base | (k << low));
            ComplexVector res = U * tmp;
            for (std::uint64_t k = 0; k < W; ++k) state.amplitudes(base | (k << low)) = res(k);
        }
    }
}

ComplexMatrix circuit_to_matrix(const QuantumCircuit& c) {
    const int n = c.total_wires();
    if (n > kDenseUnitaryWireCap) throw CircuitError("circuit_to_matrix: wire cap 13 exceeded");
    const Eigen::Index N = Eigen::Index(1) << n;
    ComplexMatrix U(N, N);
    for (Eigen::Index col = 0; col < N; ++col) {
        ComplexVector v = ComplexVector::Zero(N);
        v(col) = 1.0;
        apply_gates(c.gates, v, n, 0, 0);
        U.col(col) = v;
    }
    return U;
}

// ---------------------------------------------------------------------------
// builders

QuantumCircuit build_B_hat(int j, double lambda) {
    if (j < 1) throw CircuitError("build_B_hat: j >= 1 required");
    QuantumCircuit c;
    c.registers = {{"x", j}};
    c.append(Gate::h(0));
    if (lambda != 0.0) c.append(Gate::phase(-lambda, 0));
    for (int m = 1; m < j; ++m) c.append(Gate::cnot(0, m));
    return c;
}

QuantumCircuit build_W(int j, double gamma_tau, double lambda) {
    if (j < 1) throw CircuitError("build_W: j >= 1 required");
    QuantumCircuit c;
    c.registers = {{"x", j}};
    const QuantumCircuit B = build_B_hat(j, lambda);
    c.append(B.adjoint());
    std::vector<int> controls;
    for (int m = 1; m < j; ++m) controls.push_back(m);
    c.append(Gate::mcrz(-2.0 * gamma_tau, controls, 0));
    c.append(B);
    return c;
}

namespace {

Gate shift_gate(const Gate& in, const std::vector<Register>& layout, int off);

// Place `block` (defined on `width` wires) at wire offset `off` of circuit `c`.
void emplace_shifted(QuantumCircuit& c, const QuantumCircuit& block, int off) {
    for (const Gate& g : block.gates) c.append(shift_gate(g, c.registers, off));
}

Gate shift_gate(const Gate& in, const std::vector<Register>& layout, int off) {
    Gate g = in;
    if (g.target >= 0) g.target += off;
    if (g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::ControlledSub) g.control += off;
    if (g.kind == Gate::Kind::MultiControlledRz) {
        for (int& w : g.controls) w += off;
    }
    if (g.kind == Gate::Kind::ControlledSub) {
        QuantumCircuit sub;
        sub.registers = layout;
        for (const Gate& inner : in.sub->gates) sub.append(shift_gate(inner, layout, off));
        g.sub = std::make_shared<const QuantumCircuit>(std::move(sub));
    }
    return g;
}

}  // namespace

QuantumCircuit embed(const QuantumCircuit& block, const std::vector<Register>& layout,
                     int offset) {
    QuantumCircuit out;
    out.registers = layout;
    emplace_shifted(out, block, offset);
    return out;
}

QuantumCircuit build_V0(double tau, int n_x, double gamma0) {
    if (n_x < 1) throw CircuitError("build_V0: n_x >= 1 required");
    QuantumCircuit c;
    c.registers = {{"x", n_x}};
    for (int j = 1; j <= n_x; ++j) {
        // I^(n_x-j) x W_j: the j-wire block sits on the last j wires.
        emplace_shifted(c, build_W(j, gamma0 * tau, 0.0), n_x - j);
    }
    c.append(Gate::global_phase(-2.0 * gamma0 * tau));
    return c;
}

QuantumCircuit build_U1_wrap(double tau, int n_x, double gamma0) {
    if (n_x < 1) throw CircuitError("build_U1_wrap: n_x >= 1 required");
    // s01^xn + s10^xn maps to the Bell-pair block S under X on wires 1..n-1.
    QuantumCircuit c;
    c.registers = {{"x", n_x}};
    for (int w = 1; w < n_x; ++w) c.append(Gate::x(w));
    emplace_shifted(c, build_W(n_x, gamma0 * tau, 0.0), 0);
    for (int w = 1; w < n_x; ++w) c.append(Gate::x(w));
    return c;
}

QuantumCircuit build_V1_periodic(double tau, int n_x, double gamma0) {
    QuantumCircuit c;
    c.registers = {{"x", n_x}};
    c.append(build_U1_wrap(tau, n_x, gamma0));  // applied first: V1 = V0 * U1^(1)
    c.append(build_V0(tau, n_x, gamma0));
    return c;
}

QuantumCircuit build_V0_tilde(double tau, int n_x, int d, double gamma0, bool periodic) {
    if (d < 1) throw CircuitError("build_V0_tilde: d >= 1 required");
    QuantumCircuit c;
    for (int r = 0; r < d; ++r) c.registers.push_back({"x" + std::to_string(r), n_x});
    const QuantumCircuit block =
        periodic ? build_V1_periodic(tau, n_x, gamma0) : build_V0(tau, n_x, gamma0);
    for (int r = 0; r < d; ++r) emplace_shifted(c, block, r * n_x);
    return c;
}

QuantumCircuit build_Vheat(double tau, int n_x, int n_p, int d, double gamma0, SelectMode mode,
                           bool periodic) {
    if (n_p < 1) throw CircuitError("build_Vheat: n_p >= 1 required");
    QuantumCircuit c;
    for (int r = 0; r < d; ++r) c.registers.push_back({"x" + std::to_string(r), n_x});
    c.registers.push_back({"p", n_p});
    const int p_off = d * n_x;
    if (c.total_wires() > kStatevectorWireCap) throw CircuitError("build_Vheat: wire cap exceeded");

    auto lift = [&](const QuantumCircuit& block) {
        // block is on d*n_x wires; extend to the full layout
        QuantumCircuit full;
        full.registers = c.registers;
        emplace_shifted(full, block, 0);
        return full;
    };

    // significance m = 0 .. n_p-2: controlled on wire value 1
    for (int m = 0; m <= n_p - 2; ++m) {
        const int wire = p_off + (n_p - 1 - m);
        QuantumCircuit sub;
        sub.registers = c.registers;
        if (mode == SelectMode::Modified) {
            sub.append(lift(build_V0_tilde(std::ldexp(tau, m), n_x, d, gamma0, periodic)));
        } else {
            const QuantumCircuit one = lift(build_V0_tilde(tau, n_x, d, gamma0, periodic));
            for (std::int64_t rep = 0; rep < (std::int64_t(1) << m); ++rep) sub.append(one);
        }
        c.append(Gate::controlled(wire, 1, std::move(sub)));
    }

    // top p-wire (significance n_p-1) merged with the leading inverse half
    // power: active on wire value 0, applies V~0^{-N_p/2}.
    {
        const int wire = p_off;  // MSB of the p register
        QuantumCircuit sub;
        sub.registers = c.registers;
        if (mode == SelectMode::Modified) {
            sub.append(lift(build_V0_tilde(std::ldexp(tau, n_p - 1), n_x, d, gamma0, periodic))
                           .adjoint());
        } else {
            const QuantumCircuit inv =
                lift(build_V0_tilde(tau, n_x, d, gamma0, periodic)).adjoint();
            for (std::int64_t rep = 0; rep < (std::int64_t(1) << (n_p - 1)); ++rep) sub.append(inv);
        }
        c.append(Gate::controlled(wire, 0, std::move(sub)));
    }
    return c;
}

QuantumCircuit build_centered_qft(int n) {
    if (n < 1) throw CircuitError("build_centered_qft: n >= 1 required");
    QuantumCircuit c;
    c.registers = {{"q", n}};
    // standard QFT (omega^{jk}/sqrt(N)) ...
    for (int w = 0; w < n; ++w) {
        c.append(Gate::h(w));
        for (int m = w + 1; m < n; ++m) {
            QuantumCircuit sub;
            sub.registers = c.registers;
            sub.append(Gate::phase(M_PI / std::ldexp(1.0, m - w), w));
            c.append(Gate::controlled(m, 1, std::move(sub)));
        }
    }
    for (int w = 0; w < n / 2; ++w) {
        const int v = n - 1 - w;
        c.append(Gate::cnot(w, v));
        c.append(Gate::cnot(v, w));
        c.append(Gate::cnot(w, v));
    }
    // ... then the mode offset l = k - N/2: F = diag((-1)^j) * QFT, and
    // (-1)^j is a Z (= Phase(pi)) on the least significant wire.
    c.append(Gate::phase(M_PI, n - 1));
    return c;
}

double c_heat_bound(int d, Eigen::Index N_p, int n_x, double gamma0) {
    return static_cast<double>(d) * static_cast<double>(N_p) * (n_x - 1) * gamma0 * gamma0 / 4.0;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_gates(std::ostringstream& out, const std::vector<Gate>& gates) {
    for (const auto& g : gates) {
        switch (g.kind) {
            case Gate::Kind::H: out << "H " << g.target << "\n"; break;
            case Gate::Kind::X: out << "X " << g.target << "\n"; break;
            case Gate::Kind::CNOT: out << "CNOT " << g.control << " " << g.target << "\n"; break;
            case Gate::Kind::Rz: out << "RZ " << g.target << " " << fmt(g.param) << "\n"; break;
            case Gate::Kind::Phase:
                out << "PHASE " << g.target << " " << fmt(g.param) << "\n";
                break;
            case Gate::Kind::GlobalPhase: out << "GPHASE " << fmt(g.param) << "\n"; break;
            case Gate::Kind::MultiControlledRz: {
                out << "MCRZ " << g.target << " " << fmt(g.param) << " " << g.controls.size();
                for (int c : g.controls) out << " " << c;
                out << "\n";
                break;
            }
            case Gate::Kind::ControlledSub: {
                out << "CSUB " << g.control << " " << g.control_value << " " << g.sub->gates.size()
                    << "\n";
                print_gates(out, g.sub->gates);
                break;
            }
        }
    }
}

std::vector<Gate> parse_gates(std::istringstream& in, std::size_t count,
                              const std::vector<Register>& regs);

Gate parse_one(std::istringstream& in, const std::string& kind,
               const std::vector<Register>& regs) {
    if (kind == "H") {
        int w;
        in >> w;
        return Gate::h(w);
    }
    if (kind == "X") {
        int w;
        in >> w;
        return Gate::x(w);
    }
    if (kind == "CNOT") {
        int c, t;
        in >> c >> t;
        return Gate::cnot(c, t);
    }
    if (kind == "RZ") {
        int w;
        double th;
        in >> w >> th;
        return Gate::rz(th, w);
    }
    if (kind == "PHASE") {
        int w;
        double th;
        in >> w >> th;
        return Gate::phase(th, w);
    }
    if (kind == "GPHASE") {
        double th;
        in >> th;
        return Gate::global_phase(th);
    }
    if (kind == "MCRZ") {
        int t;
        double th;
        std::size_t k;
        in >> t >> th >> k;
        std::vector<int> controls(k);
        for (auto& c : controls) in >> c;
        return Gate::mcrz(th, std::move(controls), t);
    }
    if (kind == "CSUB") {
        int cw, cv;
        std::size_t k;
        in >> cw >> cv >> k;
        QuantumCircuit sub;
        sub.registers = regs;
        sub.gates = parse_gates(in, k, regs);
        return Gate::controlled(cw, cv, std::move(sub));
    }
    throw CircuitError("circuit_parse: unknown gate kind '" + kind + "'");
}

std::vector<Gate> parse_gates(std::istringstream& in, std::size_t count,
                              const std::vector<Register>& regs) {
    std::vector<Gate> gates;
    gates.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string kind;
        if (!(in >> kind)) throw CircuitError("circuit_parse: unexpected end of input");
        gates.push_back(parse_one(in, kind, regs));
    }
    return gates;
}

}  // namespace

std::string circuit_print(const QuantumCircuit& c) {
    std::ostringstream out;
    out << "registers";
    for (const auto& r : c.registers) out << " " << r.name << ":" << r.width;
    out << "\n";
    print_gates(out, c.gates);
    return out.str();
}

QuantumCircuit circuit_parse(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    if (!(in >> word) || word != "registers") {
        throw CircuitError("circuit_parse: missing registers header");
    }
    QuantumCircuit c;
    std::string line;
    std::getline(in, line);
    std::istringstream hdr(line);
    std::string spec;
    while (hdr >> spec) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) throw CircuitError("circuit_parse: bad register spec");
        c.registers.push_back({spec.substr(0, colon), std::stoi(spec.substr(colon + 1))});
    }
    std::string kind;
    // remaining token stream is count-driven via CSUB headers; read until EOF
    while (in >> kind) {
        c.gates.push_back(parse_one(in, kind, c.registers));
    }
    c.validate();
    return c;
}

}  // namespace schroheat
