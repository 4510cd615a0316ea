#include "schroheat/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace schroheat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string unquote(const std::string& s, const std::string& where) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    throw ConfigError(where + ": expected a quoted string, got '" + s + "'");
}

double to_double(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + s + "'");
    }
}

long to_long(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got '" + s + "'");
    }
}

bool to_bool(const std::string& s, const std::string& where) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(where + ": expected true/false, got '" + s + "'");
}

BoundaryFamily to_family(const std::string& s, const std::string& where) {
    if (s == "dirichlet") return BoundaryFamily::Dirichlet;
    if (s == "neumann") return BoundaryFamily::NeumannMixed;
    if (s == "periodic") return BoundaryFamily::Periodic;
    throw ConfigError(where + ": unknown boundary family '" + s + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void apply_kv(RunConfig& cfg, const std::string& section, const std::string& key,
              const std::string& value) {
    const std::string path = section.empty() ? key : section + "." + key;
    if (section == "problem") {
        if (key == "dimension") cfg.problem.d = static_cast<int>(to_long(value, path));
        else if (key == "n_x") cfg.problem.n_x = static_cast<int>(to_long(value, path));
        else if (key == "diffusion") cfg.problem.a = to_double(value, path);
        else if (key == "domain_min") cfg.problem.domain_min = to_double(value, path);
        else if (key == "domain_max") cfg.problem.domain_max = to_double(value, path);
        else if (key == "boundary") cfg.problem.bc.family = to_family(unquote(value, path), path);
        else if (key == "left") cfg.problem.bc.left = TimeSignal::parse(unquote(value, path));
        else if (key == "right") cfg.problem.bc.right = TimeSignal::parse(unquote(value, path));
        else if (key == "initial") cfg.problem.initial = TimeSignal::parse(unquote(value, path));
        else throw ConfigError("unknown key '" + path + "'");
    } else if (section == "schrodingerize") {
        if (key == "R") cfg.R = to_double(value, path);
        else if (key == "n_p") cfg.n_p = static_cast<int>(to_long(value, path));
        else throw ConfigError("unknown key '" + path + "'");
    } else if (section == "time") {
        if (key == "T") cfg.T = to_double(value, path);
        else if (key == "segments") cfg.segments = static_cast<int>(to_long(value, path));
        else if (key == "delta") cfg.delta = to_double(value, path);
        else throw ConfigError("unknown key '" + path + "'");
    } else if (section == "lcu") {
        if (key == "K") cfg.K = to_long(value, path);
        else if (key == "delta1") cfg.delta1 = to_double(value, path);
        else throw ConfigError("unknown key '" + path + "'");
    } else if (section == "autonomize") {
        if (key == "n_s") cfg.n_s = static_cast<int>(to_long(value, path));
        else if (key == "eps") cfg.eps_override = to_double(value, path);
        else throw ConfigError("unknown key '" + path + "'");
    } else if (section == "run") {
        if (key == "method") cfg.method = unquote(value, path);
        else if (key == "select") cfg.select = unquote(value, path);
        else if (key == "verify") cfg.verify = to_bool(value, path);
        else if (key == "seed") cfg.seed = to_long(value, path);
        else if (key == "threads") cfg.threads = static_cast<int>(to_long(value, path));
        else throw ConfigError("unknown key '" + path + "'");
    } else {
        throw ConfigError("unknown section '" + section + "'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_kv(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string print_config(const RunConfig& cfg) {
    std::ostringstream out;
    const char* family = cfg.problem.bc.family == BoundaryFamily::Dirichlet ? "dirichlet"
                         : cfg.problem.bc.family == BoundaryFamily::NeumannMixed ? "neumann"
                                                                                 : "periodic";
    out << "[problem]\n";
    out << "dimension = " << cfg.problem.d << "\n";
    out << "n_x = " << cfg.problem.n_x << "\n";
    out << "diffusion = " << fmt(cfg.problem.a) << "\n";
    out << "domain_min = " << fmt(cfg.problem.domain_min) << "\n";
    out << "domain_max = " << fmt(cfg.problem.domain_max) << "\n";
    out << "boundary = \"" << family << "\"\n";
    out << "left = \"" << cfg.problem.bc.left.print() << "\"\n";
    out << "right = \"" << cfg.problem.bc.right.print() << "\"\n";
    out << "initial = \"" << cfg.problem.initial.print() << "\"\n";
    out << "\n[schrodingerize]\n";
    out << "R = " << fmt(cfg.R) << "\n";
    out << "n_p = " << cfg.n_p << "\n";
    out << "\n[time]\n";
    out << "T = " << fmt(cfg.T) << "\n";
    out << "segments = " << cfg.segments << "\n";
    out << "delta = " << fmt(cfg.delta) << "\n";
    out << "\n[lcu]\n";
    out << "K = " << cfg.K << "\n";
    out << "delta1 = " << fmt(cfg.delta1) << "\n";
    out << "\n[autonomize]\n";
    out << "n_s = " << cfg.n_s << "\n";
    out << "eps = " << fmt(cfg.eps_override) << "\n";
    out << "\n[run]\n";
    out << "method = \"" << cfg.method << "\"\n";
    out << "select = \"" << cfg.select << "\"\n";
    out << "verify = " << (cfg.verify ? "true" : "false") << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    return out.str();
}

void config_set(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("config_set: key must be section.name");
    apply_kv(cfg, key.substr(0, dot), key.substr(dot + 1), value);
    cfg.validate();
}

void RunConfig::validate() const {
    auto fail = [](const std::string& path, const std::string& why) {
        throw ConfigError(path + ": " + why);
    };
    if (problem.d < 1) fail("problem.dimension", "must be >= 1");
    if (problem.n_x < 1) fail("problem.n_x", "must be >= 1");
    if (!(problem.a > 0)) fail("problem.diffusion", "must be positive");
    if (!(problem.domain_min < problem.domain_max)) fail("problem.domain_min", "must be < domain_max");
    if (!(R > 0)) fail("schrodingerize.R", "must be positive");
    if (n_p < 1) fail("schrodingerize.n_p", "must be >= 1");
    if (!(T > 0)) fail("time.T", "must be positive");
    if (segments < 0) fail("time.segments", "must be >= 0 (0 = derive from bound)");
    if (!(delta > 0)) fail("time.delta", "must be positive");
    if (K < 0 || (K > 0 && !is_power_of_two(K))) fail("lcu.K", "must be 0 or a power of two");
    if (!(delta1 > 0)) fail("lcu.delta1", "must be positive");
    if (n_s < 1) fail("autonomize.n_s", "must be >= 1");
    if (method != "exact" && method != "circuit-homogeneous" && method != "lcu" &&
        method != "autonomise") {
        fail("run.method", "must be one of exact|circuit-homogeneous|lcu|autonomise");
    }
    if (select != "original" && select != "modified") {
        fail("run.select", "must be original|modified");
    }
    if (threads < 1) fail("run.threads", "must be >= 1");
    const int total_wires = problem.d * problem.n_x + n_p;
    if (total_wires > kStatevectorWireCap) {
        fail("problem.n_x", "d*n_x + n_p exceeds the 24-wire statevector cap");
    }
}

}  // namespace schroheat
