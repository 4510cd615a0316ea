#pragma once

// Time-signal grammar used by boundary data and the CLI config:
//   const(c) | poly(c0,c1,...) | sin(amp,freq,phase)  and sums thereof.
// sin(a,w,p) evaluates to a*sin(w*t + p). Signals are closed under the
// grammar so experiments serialize; parse(print(s)) == s.

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace schroheat {

struct SignalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class TimeSignal {
  public:
    struct Const { double c = 0.0; };
    struct Poly { std::vector<double> coeffs; };
    struct Sin { double amp = 0.0, freq = 0.0, phase = 0.0; };
    using Term = std::variant<Const, Poly, Sin>;

    TimeSignal() = default;
    explicit TimeSignal(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static TimeSignal zero() { return TimeSignal(); }
    static TimeSignal constant(double c);
    static TimeSignal poly(std::vector<double> coeffs);
    static TimeSignal sine(double amp, double freq, double phase = 0.0);
    static TimeSignal parse(const std::string& text);

    double operator()(double t) const { return eval(t); }
    double eval(double t) const;
    double derivative(double t) const;

    /// (1/T) * int_0^T f(t)^2 dt. Closed form for pure constants, composite
    /// trapezoid with `samples` points otherwise (the grammar is smooth).
    double mean_square(double T, int samples = 1 << 12) const;

    bool is_zero() const;
    std::string print() const;
    TimeSignal operator+(const TimeSignal& other) const;
    TimeSignal scaled(double a) const;

    const std::vector<Term>& terms() const { return terms_; }

  private:
    std::vector<Term> terms_;
};

}  // namespace schroheat
