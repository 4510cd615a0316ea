#include "schroheat/signals.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace schroheat {

TimeSignal TimeSignal::constant(double c) { return TimeSignal({Const{c}}); }
TimeSignal TimeSignal::poly(std::vector<double> coeffs) { return TimeSignal({Poly{std::move(coeffs)}}); }
TimeSignal TimeSignal::sine(double amp, double freq, double phase) {
    return TimeSignal({Sin{amp, freq, phase}});
}

double TimeSignal::eval(double t) const {
    double v = 0.0;
    for (const auto& term : terms_) {
        if (const auto* c = std::get_if<Const>(&term)) {
            v += c->c;
        } else if (const auto* p = std::get_if<Poly>(&term)) {
            double tp = 1.0;
            for (double coeff : p->coeffs) {
                v += coeff * tp;
                tp *= t;
            }
        } else if (const auto* s = std::get_if<Sin>(&term)) {
            v += s->amp * std::sin(s->freq * t + s->phase);
        }
    }
    return v;
}

double TimeSignal::derivative(double t) const {
    double v = 0.0;
    for (const auto& term : terms_) {
        if (const auto* p = std::get_if<Poly>(&term)) {
            double tp = 1.0;
            for (std::size_t k = 1; k < p->coeffs.size(); ++k) {
                v += static_cast<double>(k) * p->coeffs[k] * tp;
                tp *= t;
            }
        } else if (const auto* s = std::get_if<Sin>(&term)) {
            v += s->amp * s->freq * std::cos(s->freq * t + s->phase);
        }
    }
    return v;
}

double TimeSignal::mean_square(double T, int samples) const {
    if (T <= 0.0) throw SignalError("mean_square: T must be positive");
    bool const_only = true;
    for (const auto& term : terms_) {
        if (!std::holds_alternative<Const>(term)) const_only = false;
    }
    if (const_only) {
        const double c = eval(0.0);
        return c * c;
    }
    if (samples < 2) samples = 2;
    const double h = T / (samples - 1);
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double f = eval(i * h);
        const double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
        acc += w * f * f;
    }
    return acc * h / T;
}

bool TimeSignal::is_zero() const {
    for (const auto& term : terms_) {
        if (const auto* c = std::get_if<Const>(&term)) {
            if (c->c != 0.0) return false;
        } else if (const auto* p = std::get_if<Poly>(&term)) {
            for (double coeff : p->coeffs) {
                if (coeff != 0.0) return false;
            }
        } else if (const auto* s = std::get_if<Sin>(&term)) {
            if (s->amp != 0.0) return false;
        }
    }
    return true;
}

TimeSignal TimeSignal::operator+(const TimeSignal& other) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return TimeSignal(std::move(all));
}

TimeSignal TimeSignal::scaled(double a) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        if (const auto* c = std::get_if<Const>(&term)) {
            out.push_back(Const{c->c * a});
        } else if (const auto* p = std::get_if<Poly>(&term)) {
            auto coeffs = p->coeffs;
            for (double& x : coeffs) x *= a;
            out.push_back(Poly{coeffs});
        } else if (const auto* s = std::get_if<Sin>(&term)) {
            out.push_back(Sin{s->amp * a, s->freq, s->phase});
        }
    }
    return TimeSignal(std::move(out));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        if (peek() != c) throw SignalError("signal parse: expected '" + std::string(1, c) + "' in '" + s + "'");
        ++i;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw SignalError("signal parse: expected term name in '" + s + "'");
        return s.substr(start, i - start);
    }
    double number() {
        skip_ws();
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s.substr(i), &pos);
        } catch (const std::exception&) {
            throw SignalError("signal parse: bad number in '" + s + "'");
        }
        i += pos;
        return v;
    }
};

std::vector<double> parse_args(Cursor& c) {
    c.expect('(');
    std::vector<double> args;
    if (c.peek() != ')') {
        args.push_back(c.number());
        while (c.peek() == ',') {
            c.expect(',');
            args.push_back(c.number());
        }
    }
    c.expect(')');
    return args;
}

}  // namespace

TimeSignal TimeSignal::parse(const std::string& text) {
    Cursor c{text};
    std::vector<Term> terms;
    while (true) {
        const std::string name = c.ident();
        const std::vector<double> args = parse_args(c);
        if (name == "const") {
            if (args.size() != 1) throw SignalError("const(c) takes one argument");
            terms.push_back(Const{args[0]});
        } else if (name == "poly") {
            if (args.empty()) throw SignalError("poly(c0,...) needs at least one coefficient");
            terms.push_back(Poly{args});
        } else if (name == "sin") {
            if (args.size() != 3) throw SignalError("sin(amp,freq,phase) takes three arguments");
            terms.push_back(Sin{args[0], args[1], args[2]});
        } else {
            throw SignalError("unknown signal term '" + name + "'");
        }
        if (c.eof()) break;
        c.expect('+');
    }
    return TimeSignal(std::move(terms));
}

std::string TimeSignal::print() const {
    if (terms_.empty()) return "const(0)";
    std::ostringstream out;
    bool first = true;
    for (const auto& term : terms_) {
        if (!first) out << " + ";
        first = false;
        if (const auto* c = std::get_if<Const>(&term)) {
            out << "const(" << fmt(c->c) << ")";
        } else if (const auto* p = std::get_if<Poly>(&term)) {
            out << "poly(";
            for (std::size_t k = 0; k < p->coeffs.size(); ++k) {
                if (k) out << ",";
                out << fmt(p->coeffs[k]);
            }
            out << ")";
        } else if (const auto* s = std::get_if<Sin>(&term)) {
            out << "sin(" << fmt(s->amp) << "," << fmt(s->freq) << "," << fmt(s->phase) << ")";
        }
    }
    return out.str();
}

}  // namespace schroheat
