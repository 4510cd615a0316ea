#pragma once

// Machine-readable run reports: a versioned JSON document with a stable field
// set (unmeasured quantities stay null), bound certificates carrying both
// sides and the pass margin, and CSV tables for sweeps.

#include "schroheat/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace schroheat {

using Json = nlohmann::json;

struct RunReport {
    Json root;

    static RunReport make(const std::string& command, const RunConfig& cfg);
    void add_warning(const std::string& text);
    /// Certificate: pass iff lhs <= rhs; margin = rhs - lhs.
    void add_bound(const std::string& name, double lhs, double rhs);
    /// Equality-style certificate: pass iff |deviation| <= tol.
    void add_equality(const std::string& name, double deviation, double tol);
    bool all_bounds_pass() const;
    std::string to_json() const;
    std::string summary() const;  // human-readable table
    void write(const std::string& out_dir, const std::string& stem) const;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string to_string() const;
    void write(const std::string& path) const;
};

}  // namespace schroheat
