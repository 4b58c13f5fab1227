#include "tclt/rmt_sim.hpp"

#include "tclt/errors.hpp"
#include "tclt/limit_law.hpp"
#include "tclt/table_io.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tclt {

namespace {

constexpr const char* kGeneratorId = "splitmix64-substream/mt19937_64/marsaglia-polar";

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t n) {
    std::uint64_t state = seed;
    std::uint64_t out = 0;
    for (std::uint64_t i = 0; i <= n; ++i) out = splitmix64_next(state);
    return out;
}

double GaussianStream::uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

Eigen::MatrixXd sample_wigner(int d, GaussianStream& g) {
    Eigen::MatrixXd w(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        w(i, i) = scale * g.next();
        for (int j = i + 1; j < d; ++j) {
            double x = scale * g.next();
            w(i, j) = x;
            w(j, i) = x;
        }
    }
    return w;
}

namespace {

void validate(const SimConfig& cfg) {
    if (cfg.d < 1) throw std::invalid_argument("simulation: d must be >= 1");
    if (cfg.d > cfg.dim_cap) {
        throw CapExceededError("simulation: d=" + std::to_string(cfg.d) + " exceeds cap " +
                               std::to_string(cfg.dim_cap) + " (workspace is O(d^4))");
    }
    if (cfg.n < 1) throw std::invalid_argument("simulation: n must be >= 1");
    if (cfg.trials < 1) throw std::invalid_argument("simulation: trials must be >= 1");
    if (cfg.pmax < 1 || cfg.pmax > kPairEnumerationCap) {
        throw std::invalid_argument("simulation: pmax must lie in 1.." +
                                    std::to_string(kPairEnumerationCap));
    }
    if (!(cfg.sigma > 0)) throw std::invalid_argument("simulation: sigma must be positive");
    if (cfg.threads < 1) throw std::invalid_argument("simulation: threads must be >= 1");
}

} // namespace

Eigen::MatrixXd build_delta(const SimConfig& cfg, int trial) {
    validate(cfg);
    GaussianStream g(splitmix64_at(cfg.seed, static_cast<std::uint64_t>(trial)));
    int d = cfg.d;
    int d2 = d * d;
    double lambda2 = cfg.lambda * cfg.lambda;
    double delta = cfg.sigma * std::sqrt(cfg.sigma * cfg.sigma + 2.0 * lambda2);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d2, d2);
    for (int k = 0; k < cfg.n; ++k) {
        Eigen::MatrixXd m = cfg.sigma * sample_wigner(d, g);
        m.diagonal().array() += cfg.lambda;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sum.block(i * d, j * d, d, d) += m(i, j) * m;
    }
    // exact centering: for this ensemble E[W (x) W]_{(i,j),(i',j')} =
    // (d_{ij} d_{i'j'} + d_{ij'} d_{i'j} - [i=j=i'=j'])/d, so E[M (x) M] =
    // lambda^2 I + (sigma^2/d)(vec(I)vec(I)^T + SWAP - D). Subtracting only
    // lambda^2 I (the limit centering) would leave a deterministic component
    // that the n-sum amplifies into a spectral outlier of size sqrt(n)/delta.
    sum.diagonal().array() -= static_cast<double>(cfg.n) * lambda2;
    double c = static_cast<double>(cfg.n) * cfg.sigma * cfg.sigma / static_cast<double>(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            sum(i * d + i, j * d + j) -= c;
            sum(i * d + j, j * d + i) -= c;
        }
        sum(i * d + i, i * d + i) += c;
    }
    sum /= delta * std::sqrt(static_cast<double>(cfg.n));
    return sum;
}

namespace {

// tr(Delta^p)/d^2 for p = 0..pmax; symmetric powers let every trace come
// from a Frobenius product of half powers
std::vector<double> normalized_traces(const Eigen::MatrixXd& delta, int pmax) {
    double d2 = static_cast<double>(delta.rows());
    std::vector<double> t(static_cast<size_t>(pmax) + 1, 0.0);
    t[0] = 1.0;
    if (pmax >= 1) t[1] = delta.trace() / d2;
    Eigen::MatrixXd power = delta; // Delta^k
    for (int k = 1; 2 * k <= pmax || 2 * k + 1 <= pmax; ++k) {
        if (2 * k <= pmax) t[static_cast<size_t>(2 * k)] = power.squaredNorm() / d2;
        bool need_next = 2 * k + 1 <= pmax || 2 * (k + 1) <= pmax;
        if (!need_next) break;
        Eigen::MatrixXd next = power * delta; // Delta^{k+1}
        if (2 * k + 1 <= pmax) {
            t[static_cast<size_t>(2 * k + 1)] = power.cwiseProduct(next).sum() / d2;
        }
        power = std::move(next);
    }
    return t;
}

} // namespace

SimResult empirical_moments(const SimConfig& cfg) {
    validate(cfg);
    std::vector<std::vector<double>> per_trial(static_cast<size_t>(cfg.trials));
    int threads = std::min(cfg.threads, cfg.trials);
    auto worker = [&](int tid) {
        for (int t = tid; t < cfg.trials; t += threads) {
            per_trial[static_cast<size_t>(t)] = normalized_traces(build_delta(cfg, t), cfg.pmax);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    SimResult r;
    r.config = cfg;
    r.generator = kGeneratorId;
    QParam q = QParam::from_mean_variance(Rational(cfg.lambda), Rational(cfg.sigma * cfg.sigma));
    for (int p = 0; p <= cfg.pmax; ++p) {
        double mean = 0.0;
        for (const auto& row : per_trial) mean += row[static_cast<size_t>(p)];
        mean /= cfg.trials;
        double var = 0.0;
        for (const auto& row : per_trial) {
            double dd = row[static_cast<size_t>(p)] - mean;
            var += dd * dd;
        }
        double se = cfg.trials > 1 ? std::sqrt(var / (cfg.trials - 1)) / std::sqrt(double(cfg.trials))
                                   : 0.0;
        Rational ref = limit_moment_enumerated(p, q);
        r.orders.push_back(p);
        r.mean.push_back(mean);
        r.std_error.push_back(se);
        r.reference.push_back(to_double(ref));
        r.reference_exact.push_back(format_rational(ref));
        r.z_score.push_back(se > 0 ? (mean - to_double(ref)) / se : 0.0);
    }
    return r;
}

std::string sim_result_csv(const SimResult& r) {
    CsvWriter csv({"p", "empirical_mean", "std_error", "reference_exact", "reference_decimal",
                   "z_score"});
    for (size_t i = 0; i < r.orders.size(); ++i) {
        csv.row({csv_field(r.orders[i]), csv_field(r.mean[i]), csv_field(r.std_error[i]),
                 csv_field(r.reference_exact[i]), csv_field(r.reference[i]),
                 csv_field(r.z_score[i])});
    }
    return csv.str();
}

std::string sim_result_json(const SimResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < r.orders.size(); ++i) {
        rows.push_back({{"p", r.orders[i]},
                        {"empirical_mean", approx_json(r.mean[i])},
                        {"std_error", approx_json(r.std_error[i])},
                        {"reference", rational_json(parse_rational(r.reference_exact[i]))},
                        {"z_score", approx_json(r.z_score[i])}});
    }
    nlohmann::json j{
        {"format_version", kFormatVersion},
        {"kind", "simulation"},
        {"config",
         {{"d", r.config.d},
          {"n", r.config.n},
          {"lambda", approx_json(r.config.lambda)},
          {"sigma", approx_json(r.config.sigma)},
          {"trials", r.config.trials},
          {"seed", r.config.seed},
          {"pmax", r.config.pmax}}},
        {"generator", r.generator},
        {"rows", rows},
    };
    return j.dump(2) + "\n";
}

} // namespace tclt
