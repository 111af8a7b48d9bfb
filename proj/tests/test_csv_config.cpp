#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "fkdem/config.hpp"
#include "fkdem/csv.hpp"
#include "fkdem/process.hpp"

namespace fk = fkdem;

namespace {

std::string render(const fk::Trajectory& traj) {
    std::ostringstream os;
    fk::write_trajectory_csv(os, traj);
    return os.str();
}

fk::ScenarioConfig parse(const std::string& text) {
    std::istringstream is(text);
    return fk::parse_scenario_config(is);
}

const std::string kBaseConfig =
    "name = dioxin\n"
    "theta = 0.006418\n"
    "alpha = 0.5\n"
    "initial_burden = 10\n"
    "gap_months = 1\n"
    "exposure_mean = 5\n"
    "horizon_months = 600\n"
    "sample_step = 1\n";

}  // namespace

TEST_CASE("doubles survive the round trip", "[csv]") {
    for (double v : {0.1, 1.0 / 3.0, 1e300, 5e-324, 0.0, 123456.789,
                     0.6931471805599453094}) {
        const std::string s = fk::format_double(v);
        double back = 0.0;
        const auto ec = std::from_chars(s.data(), s.data() + s.size(), back).ec;
        REQUIRE(ec == std::errc());
        CHECK(back == v);
    }
}

TEST_CASE("trajectory files round trip exactly", "[csv]") {
    fk::Trajectory traj;
    traj.times = {0.0, 0.1, 0.2, 0.30000000000000004};
    traj.burdens = {10.0, 9.5, 1.0 / 3.0, 5e-324};
    const std::string text = render(traj);
    std::istringstream is(text);
    const fk::TrajectoryFile back = fk::read_trajectory_csv(is);
    CHECK(back.times == traj.times);
    CHECK(back.burdens == traj.burdens);
    CHECK(text.rfind("time,burden\n", 0) == 0);
}

TEST_CASE("trajectory reader rejects malformed input", "[csv]") {
    auto read = [](const std::string& text) {
        std::istringstream is(text);
        return fk::read_trajectory_csv(is);
    };
    CHECK_THROWS_AS(read("wrong,header\n0,1\n"), fk::csv_error);
    CHECK_THROWS_AS(read("time,burden\n0\n"), fk::csv_error);
    CHECK_THROWS_AS(read("time,burden\n0,1,2\n"), fk::csv_error);
    CHECK_THROWS_AS(read("time,burden\n0,abc\n"), fk::csv_error);
    CHECK_THROWS_AS(read("time,burden\n1,1\n0,1\n"), fk::csv_error);
    CHECK_THROWS_WITH(read("time,burden\n0,1\n2,oops\n"),
                      Catch::Matchers::ContainsSubstring("row 3"));
    // carriage returns and trailing blank lines are tolerated
    const fk::TrajectoryFile ok = read("time,burden\r\n0,1\r\n1,0.5\r\n\n");
    CHECK(ok.times.size() == 2);
}

TEST_CASE("three-component trajectories share one time column", "[csv]") {
    std::array<fk::Trajectory, 3> trajs;
    for (int j = 0; j < 3; ++j) {
        trajs[j].times = {0.0, 1.0};
        trajs[j].burdens = {static_cast<double>(j), static_cast<double>(j) + 0.5};
    }
    std::ostringstream os;
    fk::write_trajectory_csv(os, trajs);
    CHECK(os.str() ==
          "time,burden1,burden2,burden3\n"
          "0,0,1,2\n"
          "1,0.5,1.5,2.5\n");
}

TEST_CASE("summary files carry the quantile columns", "[csv]") {
    fk::MonteCarloSummary s;
    s.times = {0.0};
    s.mean = {1.0};
    s.p05 = {0.5};
    s.p50 = {1.0};
    s.p95 = {1.5};
    std::ostringstream os;
    fk::write_mc_summary_csv(os, s);
    CHECK(os.str() == "time,mean,p05,p50,p95\n0,1,0.5,1,1.5\n");
}

TEST_CASE("survey records parse and validate", "[csv]") {
    std::istringstream is(
        "product,contamination_q,consumption_c\n"
        "fish,2.5,0.25\n"
        "\n"
        "dairy,0.75,1.5\n");
    const auto records = fk::read_food_records(is);
    REQUIRE(records.size() == 2);
    CHECK(records[0].product == "fish");
    CHECK(records[0].contamination_q == 2.5);
    CHECK(records[1].consumption_c == 1.5);

    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return fk::read_food_records(in);
    };
    CHECK_THROWS_AS(read("bad,header,here\nx,1,1\n"), fk::csv_error);
    CHECK_THROWS_AS(read("product,contamination_q,consumption_c\nx,1\n"), fk::csv_error);
    CHECK_THROWS_WITH(read("product,contamination_q,consumption_c\nx,1,1\ny,-2,1\n"),
                      Catch::Matchers::ContainsSubstring("row 3"));
    CHECK_THROWS_AS(fk::read_food_records_file("/nonexistent/path.csv"), fk::csv_error);
}

TEST_CASE("scenario files parse with defaults", "[config]") {
    const fk::ScenarioConfig cfg = parse(kBaseConfig +
                                         "# comment line\n"
                                         "\n"
                                         "threshold = 70\n"
                                         "seed = 12345\n"
                                         "intake_mode = uniform\n");
    REQUIRE(cfg.contaminants.size() == 1);
    CHECK(!cfg.multivariate());
    CHECK(cfg.contaminants[0].name == "dioxin");
    CHECK(cfg.contaminants[0].theta == 0.006418);
    CHECK(cfg.contaminants[0].alpha == 0.5);
    CHECK(cfg.contaminants[0].initial_burden == 10.0);
    CHECK(cfg.gap_months == 1.0);
    CHECK(cfg.exposure_mean == 5.0);
    CHECK(cfg.horizon_months == 600.0);
    CHECK(cfg.threshold == 70.0);
    CHECK(cfg.seed == 12345);
    CHECK(cfg.exposure_model == fk::ExposureModel::Uniform);

    const fk::ScenarioConfig defaults = parse(kBaseConfig);
    CHECK(std::isinf(defaults.threshold));
    CHECK(defaults.seed == 0);
    CHECK(defaults.exposure_model == fk::ExposureModel::Constant);
}

TEST_CASE("half-life is accepted instead of theta", "[config]") {
    const fk::ScenarioConfig cfg = parse(
        "dv_months = 108\n"
        "alpha = 1\n"
        "initial_burden = 15\n"
        "gap_months = 1\n"
        "exposure_mean = 0\n"
        "horizon_months = 10\n"
        "sample_step = 0.5\n");
    CHECK(std::abs(cfg.contaminants[0].theta - 0.6931471805599453094 / 108.0) < 1e-18);
    CHECK(cfg.contaminants[0].half_life == 108.0);
}

TEST_CASE("scenario files reject malformed input", "[config]") {
    CHECK_THROWS_AS(parse(kBaseConfig + "unknown_key = 1\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "theta = 0.5\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "threshold =\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "no equals sign\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "dv_months = 108\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "intake_mode = gaussian\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "threshold = seventy\n"), fk::config_error);
    CHECK_THROWS_AS(parse(""), fk::config_error);
    // missing alpha
    CHECK_THROWS_AS(parse("theta = 0.1\ninitial_burden = 1\ngap_months = 1\n"
                          "exposure_mean = 1\nhorizon_months = 10\nsample_step = 1\n"),
                    fk::config_error);
    // positivity
    CHECK_THROWS_AS(parse("theta = 0.1\nalpha = 1\ninitial_burden = 1\ngap_months = 0\n"
                          "exposure_mean = 1\nhorizon_months = 10\nsample_step = 1\n"),
                    fk::config_error);
    CHECK_THROWS_AS(parse("theta = 0.1\nalpha = 1\ninitial_burden = 1\ngap_months = 1\n"
                          "exposure_mean = -1\nhorizon_months = 10\nsample_step = 1\n"),
                    fk::config_error);
    CHECK_THROWS_AS(parse("theta = 0.1\nalpha = 2\ninitial_burden = 1\ngap_months = 1\n"
                          "exposure_mean = 1\nhorizon_months = 10\nsample_step = 1\n"),
                    fk::config_error);
    CHECK_THROWS_AS(fk::parse_scenario_config_file("/nonexistent/scenario.cfg"),
                    fk::config_error);
}

TEST_CASE("suffixed keys switch to the coupled form", "[config]") {
    const std::string multi = kBaseConfig +
        "name2 = pcb\n"
        "theta2 = 0.01\n"
        "alpha2 = 1\n"
        "initial_burden2 = 4\n"
        "name3 = lead\n"
        "dv_months3 = 50\n"
        "alpha3 = 0.75\n"
        "initial_burden3 = 2\n"
        "coupling_a = 0.001\n"
        "coupling_f = 0.002\n";
    const fk::ScenarioConfig cfg = parse(multi);
    REQUIRE(cfg.multivariate());
    REQUIRE(cfg.contaminants.size() == 3);
    CHECK(cfg.contaminants[1].name == "pcb");
    CHECK(cfg.contaminants[2].alpha == 0.75);
    CHECK(cfg.couplings.a == 0.001);
    CHECK(cfg.couplings.f == 0.002);
    CHECK(cfg.couplings.b == 0.0);

    // any suffixed key demands complete second and third blocks
    CHECK_THROWS_AS(parse(kBaseConfig + "theta2 = 0.01\n"), fk::config_error);
    CHECK_THROWS_AS(parse(kBaseConfig + "coupling_a = 0.1\n"), fk::config_error);
}
