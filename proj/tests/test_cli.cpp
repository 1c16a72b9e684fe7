#include <catch2/catch_amalgamated.hpp>

#include "qlens/report.hpp"

using namespace qlens;

TEST_CASE("identities campaign passes", "[cli]") {
    CampaignOptions opt;
    opt.nmax = 4;
    Report rep = run_identities(opt);
    CAPTURE(rep.to_text());
    REQUIRE(rep.all_pass());
    REQUIRE(!rep.records.empty());
}

TEST_CASE("cover campaign skips on zero trials", "[cli]") {
    CampaignOptions opt;
    opt.trials = 0;
    Report rep = run_cover(opt);
    REQUIRE(rep.records.size() == 1);
    REQUIRE(rep.records[0].status == "skipped");
    REQUIRE(rep.all_pass());  // skipped is not a failure
}

TEST_CASE("small lens campaign passes", "[cli]") {
    CampaignOptions opt;
    opt.betas = {1};
    opt.degree = 4;
    Report rep = run_lens(opt);
    CAPTURE(rep.to_text());
    REQUIRE(rep.all_pass());
}

TEST_CASE("reports are deterministic modulo wall time", "[cli]") {
    CampaignOptions opt;
    opt.trials = 10;
    opt.seed = 99;
    Report a = run_cover(opt), b = run_cover(opt);
    REQUIRE(a.to_json(false).dump() == b.to_json(false).dump());
}

TEST_CASE("json shape", "[cli]") {
    CampaignOptions opt;
    opt.trials = 5;
    Report rep = run_cover(opt);
    auto j = rep.to_json();
    REQUIRE(j.contains("version"));
    REQUIRE(j.contains("seed"));
    REQUIRE(j.contains("all_pass"));
    REQUIRE(j["checks"].is_array());
    for (const auto& c : j["checks"]) {
        REQUIRE(c.contains("id"));
        REQUIRE(c.contains("status"));
        REQUIRE(c.contains("ms"));
    }
}
