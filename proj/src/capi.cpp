#include "schroheat.h"

#include "schroheat/runner.hpp"

#include <cstring>
#include <new>
#include <string>

struct schroheat_config {
    schroheat::RunConfig cfg;
};

struct schroheat_report {
    std::string json;
    std::string summary;
    bool all_pass = false;
};

namespace {

void write_err(char* errbuf, size_t errlen, const char* msg) {
    if (!errbuf || errlen == 0) return;
    std::strncpy(errbuf, msg, errlen - 1);
    errbuf[errlen - 1] = '\0';
}

template <typename Fn>
schroheat_status guarded(Fn&& fn, char* errbuf, size_t errlen) {
    try {
        return fn();
    } catch (const schroheat::ConfigError& e) {
        write_err(errbuf, errlen, e.what());
        return SCHROHEAT_ERR_INVALID;
    } catch (const schroheat::SignalError& e) {
        write_err(errbuf, errlen, e.what());
        return SCHROHEAT_ERR_PARSE;
    } catch (const std::exception& e) {
        write_err(errbuf, errlen, e.what());
        return SCHROHEAT_ERR_RUNTIME;
    }
}

}  // namespace

extern "C" {

const char* schroheat_version(void) { return "0.1.0"; }

schroheat_status schroheat_config_parse(const char* text, schroheat_config** out, char* errbuf,
                                        size_t errlen) {
    if (!text || !out) {
        write_err(errbuf, errlen, "null argument");
        return SCHROHEAT_ERR_INVALID;
    }
    *out = nullptr;
    return guarded(
        [&] {
            auto* handle = new schroheat_config{schroheat::parse_config(text)};
            *out = handle;
            return SCHROHEAT_OK;
        },
        errbuf, errlen);
}

schroheat_status schroheat_config_load(const char* path, schroheat_config** out, char* errbuf,
                                       size_t errlen) {
    if (!path || !out) {
        write_err(errbuf, errlen, "null argument");
        return SCHROHEAT_ERR_INVALID;
    }
    *out = nullptr;
    return guarded(
        [&] {
            auto* handle = new schroheat_config{schroheat::load_config(path)};
            *out = handle;
            return SCHROHEAT_OK;
        },
        errbuf, errlen);
}

schroheat_status schroheat_config_set(schroheat_config* cfg, const char* key, const char* value,
                                      char* errbuf, size_t errlen) {
    if (!cfg || !key || !value) {
        write_err(errbuf, errlen, "null argument");
        return SCHROHEAT_ERR_INVALID;
    }
    return guarded(
        [&] {
            schroheat::config_set(cfg->cfg, key, value);
            return SCHROHEAT_OK;
        },
        errbuf, errlen);
}

char* schroheat_config_print(const schroheat_config* cfg) {
    if (!cfg) return nullptr;
    const std::string text = schroheat::print_config(cfg->cfg);
    char* out = new (std::nothrow) char[text.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

void schroheat_config_free(schroheat_config* cfg) { delete cfg; }

schroheat_status schroheat_run(const schroheat_config* cfg, const char* command,
                               const char* out_dir, schroheat_report** out, char* errbuf,
                               size_t errlen) {
    if (!cfg || !command || !out) {
        write_err(errbuf, errlen, "null argument");
        return SCHROHEAT_ERR_INVALID;
    }
    *out = nullptr;
    return guarded(
        [&] {
            schroheat::RunReport rep =
                schroheat::run_command(cfg->cfg, command, out_dir ? out_dir : "");
            auto* handle = new schroheat_report{rep.to_json(), rep.summary(),
                                                rep.all_bounds_pass()};
            *out = handle;
            return SCHROHEAT_OK;
        },
        errbuf, errlen);
}

const char* schroheat_report_json(const schroheat_report* rep) {
    return rep ? rep->json.c_str() : nullptr;
}

const char* schroheat_report_summary(const schroheat_report* rep) {
    return rep ? rep->summary.c_str() : nullptr;
}

int schroheat_report_all_bounds_pass(const schroheat_report* rep) {
    return rep && rep->all_pass ? 1 : 0;
}

void schroheat_report_free(schroheat_report* rep) { delete rep; }

void schroheat_string_free(char* s) { delete[] s; }

}  // extern "C"
