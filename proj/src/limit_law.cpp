#include "tclt/limit_law.hpp"

#include "tclt/errors.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tclt {

QParam::QParam(Rational q) : q_(std::move(q)) {
    if (q_ < 0 || q_ > 1) throw std::invalid_argument("q must lie in [0,1]");
}

QParam QParam::from_mean_variance(const Rational& lambda, const Rational& sigma2) {
    if (sigma2 <= 0) throw std::invalid_argument("variance must be positive");
    Rational l2 = 2 * lambda * lambda;
    return QParam(l2 / (sigma2 + l2));
}

namespace {

// (cc, cr) -> number of bipartite pairings of [order] with those stats
using CcCrHistogram = std::map<std::pair<int, int>, std::int64_t>;

const CcCrHistogram& bipartite_histogram(int order, int cap) {
    static std::map<int, CcCrHistogram> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    CcCrHistogram h;
    for_each_pairing(
        order,
        [&](const std::vector<std::pair<int, int>>& pairs) {
            PairingClass c = classify_pairing(pairs);
            if (!c.bipartite) return;
            ++h[{c.components, c.crossing_blocks}];
        },
        cap);
    return cache.emplace(order, std::move(h)).first->second;
}

} // namespace

Rational limit_moment_enumerated(int order, const QParam& q, int cap) {
    if (order < 0) throw std::invalid_argument("moment order must be >= 0");
    if (order == 0) return Rational(1);
    if (order % 2 == 1) return Rational(0);
    int k = order / 2;
    Rational sum(0);
    for (const auto& [stats, count] : bipartite_histogram(order, cap)) {
        auto [cc, cr] = stats;
        sum += Rational(count) * rational_pow(Rational(2), cc - k) * rational_pow(q.value(), cr);
    }
    return sum;
}

Rational limit_cumulant(int n, const QParam& q, int cap) {
    if (n < 1) throw std::invalid_argument("cumulant order must be >= 1");
    if (n % 2 == 1) return Rational(0);
    if (n == 2) return Rational(1);
    Rational half_q = q.value() / 2;
    return 2 * rational_pow(half_q, n / 2) * Rational(count_bipartite_connected_pairings(n, cap));
}

namespace {

// cumulants of the two-semicircle pair-sum law, by inversion of its moment
// formula (independent of the pairing-count route)
const Rational& pair_sum_cumulant(int n) {
    static std::vector<Rational> cache; // cache[i] = kappa_{i+1}
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (n > static_cast<int>(cache.size())) {
        CumulantSpec inv = free_cumulants_from_moments(semicircle_pair_sum_moments(n), n);
        cache = inv.values();
    }
    return cache[static_cast<size_t>(n - 1)];
}

} // namespace

Rational limit_cumulant_additive(int n, const QParam& q, int /*cap*/) {
    if (n < 1) throw std::invalid_argument("cumulant order must be >= 1");
    if (n % 2 == 1) return Rational(0);
    int k = n / 2;
    Rational semicircle_part = (n == 2) ? (1 - q.value()) : Rational(0);
    return rational_pow(q.value(), k) * pair_sum_cumulant(n) + semicircle_part;
}

Rational limit_moment_via_cumulants(int order, const QParam& q, int cap) {
    if (order < 0) throw std::invalid_argument("moment order must be >= 0");
    if (order == 0) return Rational(1);
    return limit_moment_table(q, order, cap).moment(order);
}

CumulantSpec limit_cumulant_spec(const QParam& q, int max_order, int cap) {
    if (max_order < 2) throw std::invalid_argument("cumulant spec needs order >= 2");
    std::vector<Rational> kappas;
    kappas.reserve(static_cast<size_t>(max_order));
    for (int n = 1; n <= max_order; ++n) kappas.push_back(limit_cumulant(n, q, cap));
    return CumulantSpec(std::move(kappas));
}

MomentTable limit_moment_table(const QParam& q, int max_order, int cap) {
    return moments_from_free_cumulants(limit_cumulant_spec(q, std::max(2, max_order), cap), max_order);
}

bool catalan_product_identity(int pmax) {
    for (int p = 0; p <= pmax; ++p) {
        Integer lhs(0);
        for (int l = 0; l <= p; ++l) {
            lhs += binomial(static_cast<unsigned long>(2 * p), static_cast<unsigned long>(2 * l)) *
                   catalan_number(static_cast<unsigned long>(l)) *
                   catalan_number(static_cast<unsigned long>(p - l));
        }
        Integer rhs = catalan_number(static_cast<unsigned long>(p)) *
                      catalan_number(static_cast<unsigned long>(p + 1));
        if (lhs != rhs) return false;
    }
    return true;
}

bool hankel_psd(const MomentTable& moments, int K) {
    if (K < 0) throw std::invalid_argument("hankel_psd: K must be >= 0");
    int n = K + 1;
    std::vector<std::vector<Rational>> h(static_cast<size_t>(n),
                                         std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[static_cast<size_t>(i)][static_cast<size_t>(j)] = moments.moment(i + j);

    // symmetric elimination: PSD iff every pivot is >= 0 and zero pivots
    // only occur on fully zero residual rows
    for (int c = 0; c < n; ++c) {
        const Rational& pivot = h[static_cast<size_t>(c)][static_cast<size_t>(c)];
        if (pivot < 0) return false;
        if (pivot == 0) {
            for (int r = c + 1; r < n; ++r)
                if (h[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) return false;
            continue;
        }
        for (int r = c + 1; r < n; ++r) {
            if (h[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
            Rational factor = h[static_cast<size_t>(r)][static_cast<size_t>(c)] / pivot;
            for (int j = c; j < n; ++j) {
                h[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
                    factor * h[static_cast<size_t>(c)][static_cast<size_t>(j)];
            }
        }
    }
    return true;
}

} // namespace tclt
