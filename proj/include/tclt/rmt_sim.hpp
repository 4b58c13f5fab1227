#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tclt {

// Deterministic Gaussian source. The engine/seeding/transform triple is
// pinned (and recorded in SimResult::generator) so results are bit-stable
// across platforms; std::normal_distribution is avoided on purpose since
// its algorithm is implementation-defined.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// n-th output of the splitmix64 sequence started at `seed`; used to derive
// independent per-trial substreams.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n);

struct SimConfig {
    int d = 50; // factor dimension; the simulated matrices are d^2 x d^2
    int n = 100;
    double lambda = 1.0;
    double sigma = 1.0;
    int trials = 20;
    std::uint64_t seed = 1;
    int pmax = 4;
    int threads = 1;
    int dim_cap = 64; // d above this would need >= several GiB of workspace
};

struct SimResult {
    SimConfig config;
    std::string generator;
    std::vector<int> orders;             // 0..pmax
    std::vector<double> mean;            // empirical average of tr(Delta^p)/d^2
    std::vector<double> std_error;       // sample stddev / sqrt(trials)
    std::vector<double> reference;       // limit-law moment at the config's q
    std::vector<std::string> reference_exact;
    std::vector<double> z_score;         // (mean - reference) / std_error
};

// Real symmetric Wigner matrix, every entry (diagonal included) mean 0 and
// variance 1/d. The uniform-variance convention keeps the finite-d moment
// corrections an order smaller than the doubled-diagonal one. Upper triangle
// is drawn row-major.
Eigen::MatrixXd sample_wigner(int d, GaussianStream& g);

// One summand-sum: Delta = (delta sqrt(n))^{-1} sum_k (M_k (x) M_k -
// E[M_k (x) M_k]), M_k = lambda I + sigma W_k, centered by the exact
// finite-d expectation. Deterministic in (seed, trial).
Eigen::MatrixXd build_delta(const SimConfig& cfg, int trial);

SimResult empirical_moments(const SimConfig& cfg);

std::string sim_result_csv(const SimResult& r);
std::string sim_result_json(const SimResult& r); // serialized, format_version "1"

} // namespace tclt
