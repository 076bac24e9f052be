#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "dynrmat/runner.hpp"

using namespace dynrmat;

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("0.3") == cplx(0.3, 0.0));
    CHECK(parse_complex("-1.5") == cplx(-1.5, 0.0));
    CHECK(parse_complex("0.31+1.27i") == cplx(0.31, 1.27));
    CHECK(parse_complex("0.17-0.03i") == cplx(0.17, -0.03));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("2i") == cplx(0.0, 2.0));
    CHECK(parse_complex("1e-3+2e-4i") == cplx(1e-3, 2e-4));
    CHECK(parse_complex("-1.2e-3i") == cplx(0.0, -1.2e-3));
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1+2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
}

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (double x : {0.1, -1.27, 3.141592653589793, 1e-300, 7.0 / 3.0}) {
        CHECK(std::stod(fmt17(x)) == x);
    }
}

TEST_CASE("lattice distance") {
    cplx tau(0.31, 1.27);
    CHECK(lattice_distance(cplx(0.0, 0.0), tau) < 1e-15);
    CHECK(lattice_distance(cplx(1.0, 0.0) + tau, tau) < 1e-12);
    CHECK(lattice_distance(cplx(0.5, 0.2), tau) > 0.1);
}

TEST_CASE("independent streams per relation and sample") {
    Rng a = stream_for(1, "QYB", 0);
    Rng b = stream_for(1, "QYB", 1);
    Rng c = stream_for(1, "GG", 0);
    CHECK(a.next() != b.next());
    Rng a2 = stream_for(1, "QYB", 0);
    CHECK(a2.next() == stream_for(1, "QYB", 0).next());
    CHECK(a2.state != c.state);
}

namespace {
SampleConfig small_cfg() {
    SampleConfig cfg;
    cfg.samples = 5;
    cfg.suites = {"elliptic"};
    return cfg;
}
}  // namespace

TEST_CASE("reports are byte-identical across repeated runs and thread counts") {
    SampleConfig cfg = small_cfg();
    std::string r1 = report_to_json(run(cfg));
    std::string r2 = report_to_json(run(cfg));
    CHECK(r1 == r2);
    setenv("DYNRMAT_THREADS", "1", 1);
    std::string r3 = report_to_json(run(cfg));
    setenv("DYNRMAT_THREADS", "4", 1);
    std::string r4 = report_to_json(run(cfg));
    unsetenv("DYNRMAT_THREADS");
    CHECK(r3 == r1);
    CHECK(r4 == r1);
}

TEST_CASE("changing the seed changes residuals but not verdicts") {
    SampleConfig cfg = small_cfg();
    Report a = run(cfg);
    cfg.seed += 1;
    Report b = run(cfg);
    REQUIRE(a.relations.size() == b.relations.size());
    bool any_residual_changed = false;
    for (std::size_t k = 0; k < a.relations.size(); ++k) {
        CHECK(a.relations[k].pass == b.relations[k].pass);
        if (a.relations[k].max_residual != b.relations[k].max_residual) any_residual_changed = true;
    }
    CHECK(any_residual_changed);
}

TEST_CASE("suite and relation filters select the right rows") {
    SampleConfig cfg;
    cfg.samples = 3;
    cfg.suites = {"quantum"};
    cfg.relations = {"UNIT", "WZ"};
    Report r = run(cfg);
    REQUIRE(r.relations.size() == 2);
    CHECK(r.relations[0].id == "UNIT");
    CHECK(r.relations[1].id == "WZ");
    CHECK(r.all_pass);
}

TEST_CASE("config validation") {
    SampleConfig cfg;
    cfg.tau = cplx(0.3, -1.0);
    CHECK_THROWS_AS(run(cfg), std::invalid_argument);
    SampleConfig cfg2;
    cfg2.samples = 0;
    CHECK_THROWS_AS(run(cfg2), std::invalid_argument);
}

TEST_CASE("negative controls are reported as defect detectors and pass") {
    SampleConfig cfg;
    cfg.suites = {"controls"};
    Report r = run(cfg);
    REQUIRE(r.relations.size() == 2);
    for (const auto& rel : r.relations) {
        CHECK(rel.negative);
        CHECK(rel.max_residual > rel.tol);
        CHECK(rel.pass);
    }
}

TEST_CASE("config hash tracks content") {
    SampleConfig a, b;
    b.seed += 1;
    CHECK(fnv1a(config_to_json(a)) != fnv1a(config_to_json(b)));
    CHECK(config_to_json(a) == config_to_json(SampleConfig{}));
}
