#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclt/errors.hpp"
#include "tclt/rmt_sim.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace tclt;

TEST_CASE("gaussian stream is deterministic and roughly standard") {
    GaussianStream a(12345), b(12345);
    double mean = 0, var = 0;
    const int N = 20000;
    for (int i = 0; i < N; ++i) {
        double x = a.next();
        CHECK(x == b.next());
        mean += x;
        var += x * x;
    }
    mean /= N;
    var = var / N - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("splitmix64 substreams differ") {
    CHECK(splitmix64_at(1, 0) != splitmix64_at(1, 1));
    CHECK(splitmix64_at(1, 0) != splitmix64_at(2, 0));
    CHECK(splitmix64_at(7, 3) == splitmix64_at(7, 3));
}

TEST_CASE("wigner sample shape") {
    GaussianStream g(99);
    Eigen::MatrixXd w = sample_wigner(40, g);
    CHECK(w.rows() == 40);
    CHECK(w == w.transpose().eval());
    // tr(W^2)/d estimates 1 exactly in expectation for this ensemble
    double m2 = w.squaredNorm() / 40.0;
    CHECK(m2 > 0.7);
    CHECK(m2 < 1.4);
}

TEST_CASE("delta matrix is symmetric with near-vanishing mean") {
    SimConfig cfg;
    cfg.d = 8;
    cfg.n = 5;
    cfg.seed = 3;
    Eigen::MatrixXd delta = build_delta(cfg, 0);
    CHECK(delta.rows() == 64);
    CHECK((delta - delta.transpose()).norm() == 0.0);
    CHECK(std::abs(delta.trace() / 64.0) < 0.5);
}

TEST_CASE("simulation is reproducible and thread-invariant") {
    SimConfig cfg;
    cfg.d = 6;
    cfg.n = 8;
    cfg.trials = 4;
    cfg.seed = 11;
    cfg.pmax = 5;
    SimResult a = empirical_moments(cfg);
    SimResult b = empirical_moments(cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.z_score == b.z_score);

    cfg.threads = 3;
    SimResult c = empirical_moments(cfg);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);

    cfg.threads = 1;
    cfg.seed = 12;
    SimResult d = empirical_moments(cfg);
    CHECK(a.mean != d.mean);

    CHECK(a.generator == "splitmix64-substream/mt19937_64/marsaglia-polar");
    CHECK(a.orders.front() == 0);
    CHECK(a.mean.front() == 1.0);
    CHECK(a.std_error.front() == 0.0);
    CHECK(a.reference_exact.front() == "1");
    CHECK(a.reference_exact[2] == "1"); // m_2 of the limit law
}

TEST_CASE("moderate-size run lands near the limit law") {
    SimConfig cfg;
    cfg.d = 24;
    cfg.n = 40;
    cfg.trials = 4;
    cfg.seed = 2024;
    cfg.pmax = 4;
    SimResult r = empirical_moments(cfg);
    // q = 2/3: m_2 = 1, m_4 = 20/9; wide tolerances, the run is pinned anyway
    CHECK(std::abs(r.mean[2] - 1.0) < 0.1);
    CHECK(std::abs(r.mean[4] - 20.0 / 9.0) < 0.4);
    CHECK(std::abs(r.mean[1]) < 0.1);
    CHECK(std::abs(r.mean[3]) < 0.6);
}

TEST_CASE("csv and json serialization") {
    SimConfig cfg;
    cfg.d = 4;
    cfg.n = 3;
    cfg.trials = 2;
    cfg.pmax = 3;
    cfg.seed = 5;
    SimResult r = empirical_moments(cfg);

    std::string csv = sim_result_csv(r);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == cfg.pmax + 2); // header + p = 0..pmax
    CHECK(csv.rfind("p,empirical_mean,std_error,reference_exact,reference_decimal,z_score", 0) == 0);

    nlohmann::json j = nlohmann::json::parse(sim_result_json(r));
    CHECK(j["format_version"] == "1");
    CHECK(j["rows"].size() == size_t(cfg.pmax) + 1);
    CHECK(j["rows"][0]["empirical_mean"]["approx"] == 1.0);
    CHECK(j["rows"][2]["reference"]["exact"] == "1");
    CHECK(j["config"]["d"] == 4);
}

TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.d = 0;
    CHECK_THROWS_AS(empirical_moments(cfg), std::invalid_argument);
    cfg.d = 100; // above the default dimension cap
    CHECK_THROWS_AS(empirical_moments(cfg), CapExceededError);
    cfg.d = 4;
    cfg.trials = 0;
    CHECK_THROWS_AS(empirical_moments(cfg), std::invalid_argument);
    cfg.trials = 1;
    cfg.sigma = 0.0;
    CHECK_THROWS_AS(empirical_moments(cfg), std::invalid_argument);
}
