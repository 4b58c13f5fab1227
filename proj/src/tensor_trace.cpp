#include "tclt/tensor_trace.hpp"

#include "tclt/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace tclt {

TensorParams::TensorParams(Rational lambda_, Rational sigma2_)
    : lambda(std::move(lambda_)), sigma2(std::move(sigma2_)) {
    if (sigma2 <= 0) throw std::invalid_argument("tensor params: variance must be positive");
}

TensorParams TensorParams::from_spec(const CumulantSpec& spec) {
    return TensorParams(spec.mean(), spec.variance());
}

Rational TensorParams::delta2() const { return sigma2 * (sigma2 + 2 * lambda * lambda); }

Rational TensorParams::q() const {
    Rational l2 = 2 * lambda * lambda;
    return l2 / (sigma2 + l2);
}

Rational tensor_trace_closed_form(const PairPartition& p, const TensorParams& params) {
    ClosureDecomposition d = noncrossing_closure(p);
    Rational half_q = params.q() / 2;
    Rational value(1);
    for (const auto& comp : d.components) {
        int k = comp.partition().block_count();
        if (k == 1) continue; // lone noncrossing pair: factor 1
        if (!is_bipartite(comp.partition())) return Rational(0);
        value *= 2 * rational_pow(half_q, k);
    }
    return value;
}

namespace {

// pairs over points 1..p; relabel an arbitrary sorted point subset to 1..m
std::vector<std::pair<int, int>> relabel_pairs(const std::vector<std::pair<int, int>>& pairs,
                                               const std::vector<int>& points) {
    std::vector<int> pos(points.empty() ? 1 : static_cast<size_t>(points.back()) + 1, 0);
    for (size_t i = 0; i < points.size(); ++i) pos[static_cast<size_t>(points[i])] = static_cast<int>(i) + 1;
    std::vector<std::pair<int, int>> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) out.emplace_back(pos[static_cast<size_t>(a)], pos[static_cast<size_t>(b)]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

Rational tensor_trace_reduced(const PairPartition& p, const TensorParams& params) {
    Rational value(1);
    std::vector<std::vector<std::pair<int, int>>> work{p.pairs()};
    std::vector<int> grounds{p.ground_size()};
    while (!work.empty()) {
        std::vector<std::pair<int, int>> pairs = std::move(work.back());
        int n = grounds.back();
        work.pop_back();
        grounds.pop_back();
        if (pairs.empty()) continue;

        // cyclically adjacent pair {l, l+1} (indices mod n): drop it
        auto adjacent = std::find_if(pairs.begin(), pairs.end(), [n](const std::pair<int, int>& pr) {
            return pr.second == pr.first + 1 || (pr.first == 1 && pr.second == n);
        });
        if (adjacent != pairs.end()) {
            auto removed = *adjacent;
            pairs.erase(adjacent);
            std::vector<int> keep;
            keep.reserve(static_cast<size_t>(n) - 2);
            for (int x = 1; x <= n; ++x)
                if (x != removed.first && x != removed.second) keep.push_back(x);
            work.push_back(relabel_pairs(pairs, keep));
            grounds.push_back(n - 2);
            continue;
        }

        // split pair {r,s}: every point strictly between r and s matched
        // inside; the trace factors over inside and outside, {r,s} drops out
        bool split_done = false;
        for (const auto& pr : pairs) {
            auto [r, s] = pr;
            bool interior_closed = true;
            for (const auto& other : pairs) {
                if (other == pr) continue;
                bool a_in = other.first > r && other.first < s;
                bool b_in = other.second > r && other.second < s;
                if (a_in != b_in) {
                    interior_closed = false;
                    break;
                }
            }
            if (!interior_closed) continue;
            std::vector<std::pair<int, int>> inside, outside;
            for (const auto& other : pairs) {
                if (other == pr) continue;
                if (other.first > r && other.first < s)
                    inside.push_back(other);
                else
                    outside.push_back(other);
            }
            std::vector<int> in_pts, out_pts;
            for (int x = r + 1; x < s; ++x) in_pts.push_back(x);
            for (int x = 1; x <= n; ++x)
                if (x < r || x > s) out_pts.push_back(x);
            work.push_back(relabel_pairs(inside, in_pts));
            grounds.push_back(static_cast<int>(in_pts.size()));
            work.push_back(relabel_pairs(outside, out_pts));
            grounds.push_back(static_cast<int>(out_pts.size()));
            split_done = true;
            break;
        }
        if (split_done) continue;

        value *= tensor_trace_closed_form(PairPartition::from_pairs(n, pairs), params);
        if (value == 0) return value;
    }
    return value;
}

Rational tensor_trace_expansion(const Partition& pi, WordMomentEvaluator& eval) {
    int p = pi.ground_size();
    if (p == 0) return Rational(1);
    if (p > kExpansionCap) {
        throw CapExceededError("tensor trace expansion: ground size " + std::to_string(p) +
                               " exceeds cap " + std::to_string(kExpansionCap));
    }
    TensorParams params = TensorParams::from_spec(eval.spec());
    Rational lambda2 = params.lambda * params.lambda;
    std::vector<int> kernel = pi.kernel();

    Rational sum(0);
    std::vector<int> word;
    word.reserve(static_cast<size_t>(p));
    if (params.lambda == 0) {
        // only the full word survives the centring expansion
        sum = eval.moment(kernel);
        sum *= sum;
    } else {
        const std::uint32_t full = (p == 32) ? ~0u : ((1u << p) - 1);
        for (std::uint32_t kept = 0;; ++kept) {
            word.clear();
            for (int i = 0; i < p; ++i)
                if (kept & (1u << i)) word.push_back(kernel[static_cast<size_t>(i)]);
            Rational m = eval.moment(word);
            if (m != 0) {
                int dropped = p - static_cast<int>(word.size());
                Rational sign = (dropped % 2 == 0) ? Rational(1) : Rational(-1);
                sum += sign * rational_pow(lambda2, dropped) * m * m;
            }
            if (kept == full) break;
        }
    }
    return sum / rational_pow(params.delta2(), p / 2);
}

Rational tensor_trace_expansion(const Partition& pi, const CumulantSpec& spec) {
    WordMomentEvaluator eval(spec);
    return tensor_trace_expansion(pi, eval);
}

Rational pairing_trace_sum(int p, WordMomentEvaluator& eval, int cap) {
    if (p % 2 != 0) return Rational(0); // no pairings of an odd set
    Rational sum(0);
    for_each_pairing(
        p,
        [&](const std::vector<std::pair<int, int>>& pairs) {
            sum += tensor_trace_expansion(PairPartition::from_pairs(p, pairs).partition(), eval);
        },
        cap);
    return sum;
}

Rational pairing_trace_sum(int p, const CumulantSpec& spec, int cap) {
    WordMomentEvaluator eval(spec);
    return pairing_trace_sum(p, eval, cap);
}

UniversalityResult universality_check(int p, const CumulantSpec& a, const CumulantSpec& b, int cap) {
    if (a.mean() != b.mean() || a.variance() != b.variance()) {
        throw std::invalid_argument("universality check: specs must share kappa_1 and kappa_2");
    }
    UniversalityResult r;
    r.first = pairing_trace_sum(p, a, cap);
    r.second = pairing_trace_sum(p, b, cap);
    r.match = r.first == r.second;
    return r;
}

} // namespace tclt
