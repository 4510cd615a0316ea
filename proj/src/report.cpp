#include "schroheat/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace schroheat {

RunReport RunReport::make(const std::string& command, const RunConfig& cfg) {
    RunReport rep;
    Json& r = rep.root;
    r["schema_version"] = 1;
    r["command"] = command;
    r["config"] = print_config(cfg);
    r["warnings"] = Json::array();
    r["errors"] = {{"l2_rel_error_raw", nullptr},
                   {"l2_rel_error_state", nullptr},
                   {"recovery_variance", nullptr},
                   {"reference_certified_error", nullptr}};
    r["probabilities"] = {{"branch_measured", nullptr},
                          {"branch_formula_matrix_path", nullptr},
                          {"branch_formula_unitary_shortcut", nullptr},
                          {"success_formula", nullptr},
                          {"success_measured", nullptr},
                          {"ce0_sq_over_ce_sq", nullptr},
                          {"stage1_measured", nullptr},
                          {"stage1_formula", nullptr},
                          {"stage2_measured", nullptr},
                          {"stage3_measured", nullptr},
                          {"stage3_formula", nullptr}};
    r["gate_counts"] = nullptr;
    r["query_meter"] = nullptr;
    r["predictions"] = {{"C_heat", nullptr}, {"C_auto", nullptr},   {"C_LCU", nullptr},
                        {"Nt_predicted", nullptr}, {"r", nullptr},  {"K", nullptr},
                        {"lambda_plus", nullptr},  {"g_f", nullptr}};
    r["recovery"] = {{"k_star", nullptr}, {"p_star", nullptr}, {"s_offset_slice_error", nullptr}};
    r["bounds"] = Json::array();
    r["wall_time_ms"] = nullptr;
    return rep;
}

void RunReport::add_warning(const std::string& text) { root["warnings"].push_back(text); }

void RunReport::add_bound(const std::string& name, double lhs, double rhs) {
    root["bounds"].push_back({{"name", name},
                              {"lhs", lhs},
                              {"rhs", rhs},
                              {"margin", rhs - lhs},
                              {"pass", lhs <= rhs}});
}

void RunReport::add_equality(const std::string& name, double deviation, double tol) {
    root["bounds"].push_back({{"name", name},
                              {"lhs", std::abs(deviation)},
                              {"rhs", tol},
                              {"margin", tol - std::abs(deviation)},
                              {"pass", std::abs(deviation) <= tol}});
}

bool RunReport::all_bounds_pass() const {
    for (const auto& b : root["bounds"]) {
        if (!b["pass"].get<bool>()) return false;
    }
    return true;
}

std::string RunReport::to_json() const { return root.dump(2); }

std::string RunReport::summary() const {
    std::ostringstream out;
    out << "== " << root["command"].get<std::string>() << " ==\n";
    for (const auto& w : root["warnings"]) {
        out << "warning: " << w.get<std::string>() << "\n";
    }
    auto show = [&](const char* group) {
        for (const auto& [key, val] : root[group].items()) {
            if (!val.is_null()) out << "  " << group << "." << key << " = " << val.dump() << "\n";
        }
    };
    show("errors");
    show("probabilities");
    show("predictions");
    show("recovery");
    if (!root["query_meter"].is_null()) {
        out << "  query_meter = " << root["query_meter"].dump() << "\n";
    }
    if (!root["gate_counts"].is_null()) {
        out << "  gate_counts = " << root["gate_counts"].dump() << "\n";
    }
    int npass = 0;
    for (const auto& b : root["bounds"]) {
        const bool pass = b["pass"].get<bool>();
        npass += pass;
        out << (pass ? "  [pass] " : "  [FAIL] ") << b["name"].get<std::string>()
            << "  lhs=" << b["lhs"].get<double>() << "  rhs=" << b["rhs"].get<double>() << "\n";
    }
    out << "bounds: " << npass << "/" << root["bounds"].size() << " pass\n";
    return out.str();
}

void RunReport::write(const std::string& out_dir, const std::string& stem) const {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / (stem + ".json"));
    f << to_json() << "\n";
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    return out.str();
}

void CsvTable::write(const std::string& path) const {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream f(path);
    f << to_string();
}

}  // namespace schroheat
