#include <doctest.h>

#include <stdexcept>

#include "hopfsub/verify.hpp"

using namespace hopfsub;

TEST_CASE("tolerances are pinned and overridable") {
    Tolerances tol;
    CHECK(tol.get("oneill") == 1e-6);
    CHECK(tol.get("pi9_conformance") == 1e-12);
    CHECK(tol.get("jacobi_ratio") == 1e-5);
    tol.set("oneill", 1e-5);
    CHECK(tol.get("oneill") == 1e-5);
    CHECK_THROWS_AS(tol.get("no_such"), std::invalid_argument);
    CHECK_THROWS_AS(tol.set("no_such", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tol.set("oneill", -1.0), std::invalid_argument);
}

TEST_CASE("algebra audits pass") {
    Tolerances tol;
    for (const auto& r : algebra_checks(2000, 7, tol)) {
        INFO(r.id, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("pi9 conformance identity") {
    Tolerances tol;
    const IdentityResult r = pi9_conformance(1000, 1, tol);
    CHECK(r.pass);
    CHECK(r.samples == 1000);
    CHECK(r.max_residual <= 1e-12);
}

TEST_CASE("membership checks pass on representative fibrations") {
    Tolerances tol;
    for (const char* id : {"pi4", "pi_A"}) {
        const Fibration f = make_fibration(id, 2, 0);
        for (const auto& r : membership_checks(f, 60, 7, tol)) {
            INFO(id, "/", r.id, " residual ", r.max_residual, " tol ", r.tolerance);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("composite checks pass") {
    Tolerances tol;
    for (const char* id : {"pi_CH", "pi_CB", "pi_AB"}) {
        const Fibration f = make_fibration(id, 2, 1);
        for (const auto& r : composite_checks(f, 40, 7, tol)) {
            INFO(id, "/", r.id, " residual ", r.max_residual);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("driver") {
    RunConfig config;
    config.fibrations = {"pi7"};
    config.samples = 20;
    config.seed = 7;

    SUBCASE("reports are deterministic for a fixed seed") {
        const auto a = run_verify(config);
        const auto b = run_verify(config);
        REQUIRE(a.size() == b.size());
        const Tolerances tol = tolerances_from(config);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(report_to_json(a[i], config, tol) == report_to_json(b[i], config, tol));
        CHECK(summary_to_json(a, config) == summary_to_json(b, config));
    }

    SUBCASE("unknown ids are rejected") {
        config.fibrations = {"pi42"};
        CHECK_THROWS_AS(run_verify(config), std::invalid_argument);
    }

    SUBCASE("tolerance overrides flow into the report") {
        config.tolerance_overrides["oneill"] = 1e-3;
        const Tolerances tol = tolerances_from(config);
        const auto reports = run_verify(config);
        const std::string j = report_to_json(reports.back(), config, tol);
        CHECK(j.find("\"oneill\": 0.001") != std::string::npos);
    }

    SUBCASE("markdown rendering") {
        const auto reports = run_verify(config);
        const std::string md = report_to_markdown(reports.back());
        CHECK(md.find("## pi7") != std::string::npos);
        CHECK(md.find("| identity |") != std::string::npos);
    }
}
