/* schroheat: statevector simulation and numerical verification toolkit for
 * Schrodingerised heat-equation circuits.
 *
 * C API over the C++ core: opaque handles, integer status codes, and
 * caller-buffered error messages. Reports come back as JSON documents plus a
 * human-readable summary; file outputs (CSV tables, circuit dumps) land in
 * the out_dir passed to schroheat_run.
 */
#ifndef SCHROHEAT_H
#define SCHROHEAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct schroheat_config schroheat_config;
typedef struct schroheat_report schroheat_report;

typedef enum {
    SCHROHEAT_OK = 0,
    SCHROHEAT_ERR_PARSE = 1,    /* malformed config text */
    SCHROHEAT_ERR_INVALID = 2,  /* config validation failed */
    SCHROHEAT_ERR_RUNTIME = 3,  /* caps exceeded, numerical failure, io */
} schroheat_status;

const char* schroheat_version(void);

/* Configs. On failure the handle is NULL and errbuf (when non-NULL) holds a
 * NUL-terminated message truncated to errlen. */
schroheat_status schroheat_config_parse(const char* text, schroheat_config** out, char* errbuf,
                                        size_t errlen);
schroheat_status schroheat_config_load(const char* path, schroheat_config** out, char* errbuf,
                                       size_t errlen);
/* Dotted-path override, e.g. ("time.T", "0.1"). */
schroheat_status schroheat_config_set(schroheat_config* cfg, const char* key, const char* value,
                                      char* errbuf, size_t errlen);
/* Canonical round-trippable text; free with schroheat_string_free. */
char* schroheat_config_print(const schroheat_config* cfg);
void schroheat_config_free(schroheat_config* cfg);

/* Commands: "solve" | "verify-circuits" | "gate-count" | "sweep".
 * out_dir may be NULL or empty (no files written). */
schroheat_status schroheat_run(const schroheat_config* cfg, const char* command,
                               const char* out_dir, schroheat_report** out, char* errbuf,
                               size_t errlen);

/* Owned by the report handle; valid until schroheat_report_free. */
const char* schroheat_report_json(const schroheat_report* rep);
const char* schroheat_report_summary(const schroheat_report* rep);
/* 1 when every bound certificate in the report passed, else 0. */
int schroheat_report_all_bounds_pass(const schroheat_report* rep);
void schroheat_report_free(schroheat_report* rep);

void schroheat_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SCHROHEAT_H */
