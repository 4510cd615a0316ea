// Exercises the shared-library C API the way an external client would:
// only schroheat.h, opaque handles, status codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schroheat.h>

#include <cstring>
#include <string>

namespace {

const char* kConfig =
    "[problem]\n"
    "n_x = 3\n"
    "boundary = \"dirichlet\"\n"
    "initial = \"sin(1,3.141592653589793,0)\"\n"
    "[schrodingerize]\n"
    "R = 2.0\n"
    "n_p = 4\n"
    "[time]\n"
    "T = 0.02\n"
    "[run]\n"
    "method = \"circuit-homogeneous\"\n";

}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(schroheat_version()) == "0.1.0");
}

TEST_CASE("config parse, print round trip, and override") {
    schroheat_config* cfg = nullptr;
    char err[256] = {0};
    REQUIRE(schroheat_config_parse(kConfig, &cfg, err, sizeof err) == SCHROHEAT_OK);
    REQUIRE(cfg != nullptr);

    char* printed = schroheat_config_print(cfg);
    REQUIRE(printed != nullptr);
    schroheat_config* cfg2 = nullptr;
    CHECK(schroheat_config_parse(printed, &cfg2, err, sizeof err) == SCHROHEAT_OK);
    char* printed2 = schroheat_config_print(cfg2);
    CHECK(std::string(printed) == printed2);
    schroheat_string_free(printed);
    schroheat_string_free(printed2);
    schroheat_config_free(cfg2);

    CHECK(schroheat_config_set(cfg, "time.T", "0.01", err, sizeof err) == SCHROHEAT_OK);
    CHECK(schroheat_config_set(cfg, "time.T", "-1", err, sizeof err) == SCHROHEAT_ERR_INVALID);
    CHECK(std::strlen(err) > 0);
    schroheat_config_free(cfg);
}

TEST_CASE("parse errors surface with messages and null handles") {
    schroheat_config* cfg = reinterpret_cast<schroheat_config*>(0x1);
    char err[256] = {0};
    CHECK(schroheat_config_parse("[problem]\nn_x = frog\n", &cfg, err, sizeof err) !=
          SCHROHEAT_OK);
    CHECK(cfg == nullptr);
    CHECK(std::string(err).find("n_x") != std::string::npos);
}

TEST_CASE("solve through the C API returns a report with JSON and summary") {
    schroheat_config* cfg = nullptr;
    char err[256] = {0};
    REQUIRE(schroheat_config_parse(kConfig, &cfg, err, sizeof err) == SCHROHEAT_OK);
    schroheat_report* rep = nullptr;
    REQUIRE(schroheat_run(cfg, "solve", nullptr, &rep, err, sizeof err) == SCHROHEAT_OK);
    REQUIRE(rep != nullptr);
    const std::string json = schroheat_report_json(rep);
    CHECK(json.find("\"schema_version\": 1") != std::string::npos);
    CHECK(json.find("l2_rel_error_raw") != std::string::npos);
    CHECK(std::string(schroheat_report_summary(rep)).find("== solve ==") == 0);
    CHECK(schroheat_report_all_bounds_pass(rep) == 1);
    schroheat_report_free(rep);
    schroheat_config_free(cfg);
}

TEST_CASE("unknown command is a runtime error with a message") {
    schroheat_config* cfg = nullptr;
    char err[256] = {0};
    REQUIRE(schroheat_config_parse(kConfig, &cfg, err, sizeof err) == SCHROHEAT_OK);
    schroheat_report* rep = nullptr;
    CHECK(schroheat_run(cfg, "optimize", nullptr, &rep, err, sizeof err) != SCHROHEAT_OK);
    CHECK(rep == nullptr);
    CHECK(std::string(err).find("optimize") != std::string::npos);
    schroheat_config_free(cfg);
}
