#include <stdexcept>
#include <string>

#include "doctest.h"
#include "slabperc/config.hpp"

using namespace slabperc;

namespace {

bool mentions(const std::exception& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config takes desk defaults") {
    RunConfig cfg = parse_config("l0 = 2\nd0 = 3\nL = 3,4,5\nseed = 7\n");
    CHECK(cfg.params.l0 == 2);
    CHECK(cfg.params.d0 == 3);
    CHECK(cfg.params.L == std::vector<std::int64_t>{3, 4, 5});
    CHECK(cfg.params.seed == 7);
    CHECK(cfg.gamma == doctest::Approx(1.0));
    CHECK(cfg.nu0 == 1);
    CHECK(cfg.c == doctest::Approx(0.5));
    CHECK(cfg.trials == 1000);
    CHECK(cfg.viewport_w == 600);
    CHECK(cfg.viewport_h == 600);
    CHECK(cfg.p == std::vector<double>{0.5});
    CHECK(cfg.m.empty());
    CHECK(cfg.out == "runs");
    CHECK_FALSE(cfg.strict);
}

TEST_CASE("empty text also yields pure defaults") {
    RunConfig cfg = parse_config("");
    CHECK(cfg.params.L == std::vector<std::int64_t>{3, 4, 5});
    CHECK(cfg.trials == 1000);
}

TEST_CASE("full config round-trips through its canonical form") {
    std::string text =
        "l0 = 2\n"
        "d0 = 3\n"
        "L = 3,4,5\n"
        "seed = 21\n"
        "viewport = 600x480\n"
        "gamma = 1.5\n"
        "nu0 = 2\n"
        "c = 0.25\n"
        "p = 0.5,0.8,0.95\n"
        "trials = 250\n"
        "m = 1,1,1,1,1,3\n"
        "experiments = road,fkg\n"
        "out = artifacts\n"
        "strict = true\n"
        "span_mode = h\n"
        "arena = top_band\n"
        "view = assembly\n";
    RunConfig cfg = parse_config(text);
    CHECK(cfg.viewport_w == 600);
    CHECK(cfg.viewport_h == 480);
    CHECK(cfg.p.size() == 3);
    CHECK(cfg.m == std::vector<std::uint32_t>{1, 1, 1, 1, 1, 3});
    CHECK(cfg.experiments == std::vector<std::string>{"road", "fkg"});
    CHECK(cfg.strict);
    CHECK(cfg.span_mode == "h");
    CHECK(cfg.arena == "top_band");
    CHECK(cfg.view == "assembly");

    std::string canon = serialize_config(cfg);
    RunConfig again = parse_config(canon);
    CHECK(serialize_config(again) == canon);
}

TEST_CASE("comments and blank lines are ignored") {
    RunConfig cfg = parse_config("# run setup\n\nseed = 3  # master seed\n\n");
    CHECK(cfg.params.seed == 3);
}

TEST_CASE("unknown keys are rejected with their line") {
    try {
        parse_config("seed = 1\nbogus = 4\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(mentions(e, "line 2"));
        CHECK(mentions(e, "bogus"));
    }
}

TEST_CASE("bad values name the key") {
    CHECK_THROWS_WITH_AS(parse_config("gamma = -1\n"),
                         doctest::Contains("gamma must be positive"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("p = 1.5\n"),
                         doctest::Contains("p entries must lie in [0, 1]"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("trials = 0\n"),
                         doctest::Contains("trials must be at least 1"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("L = 3,1\n"),
                         doctest::Contains("L entries must be at least 2"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("viewport = 0\n"),
                         doctest::Contains("viewport sides must be positive"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("trials = soon\n"),
                         doctest::Contains("expects an integer"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("strict = maybe\n"),
                         doctest::Contains("expects true or false"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("experiments = karaoke\n"),
                         doctest::Contains("unknown experiment"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("just a line\n"),
                         doctest::Contains("expected key = value"),
                         std::invalid_argument);
}

TEST_CASE("plan_from_config applies multiplicities and re-validates") {
    RunConfig cfg = parse_config("seed = 21\nm = 1,1,1,1,1,3\n");
    ConfiguredPlan cp = plan_from_config(cfg);
    CHECK(cp.plan.m == std::vector<std::uint32_t>{1, 1, 1, 1, 1, 3});
    CHECK(cp.report.pass);

    RunConfig bad = parse_config("seed = 21\nm = 1,1,1,1,2,3\n");
    ConfiguredPlan seam = plan_from_config(bad);
    CHECK_FALSE(seam.report.pass);
    CHECK(seam.report.seam_risk);

    RunConfig wrong_len = parse_config("seed = 21\nm = 1,2\n");
    CHECK_THROWS_WITH_AS(plan_from_config(wrong_len), doctest::Contains("2 entries"),
                         std::invalid_argument);
}

TEST_CASE("config viewport builds the run rectangle") {
    RunConfig cfg = parse_config("viewport = 40x30\n");
    PlanarRect r = config_viewport(cfg);
    CHECK(r.h.lo == 0);
    CHECK(r.h.hi == 40);
    CHECK(r.v.lo == 0);
    CHECK(r.v.hi == 30);
}
