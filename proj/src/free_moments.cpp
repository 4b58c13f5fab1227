#include "tclt/free_moments.hpp"

#include "tclt/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tclt {

CumulantSpec::CumulantSpec(std::vector<Rational> kappas) : kappas_(std::move(kappas)) {
    if (kappas_.size() < 2)
        throw std::invalid_argument("cumulant spec: need at least kappa_1 and kappa_2");
}

CumulantSpec CumulantSpec::parse(const std::string& text) {
    std::vector<Rational> kappas;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) kappas.push_back(parse_rational(token));
    if (!is.eof() && is.fail()) throw std::invalid_argument("cumulant spec: bad list '" + text + "'");
    return CumulantSpec(std::move(kappas));
}

const Rational& CumulantSpec::kappa(int n) const {
    if (n < 1) throw std::invalid_argument("cumulant index must be >= 1");
    if (n > order()) {
        throw TruncationError("cumulant kappa_" + std::to_string(n) +
                              " requested but spec is truncated at order " +
                              std::to_string(order()) + "; supply cumulants up to order " +
                              std::to_string(n));
    }
    return kappas_[static_cast<size_t>(n - 1)];
}

CumulantSpec CumulantSpec::extended_with_zeros(int order) const {
    std::vector<Rational> k = kappas_;
    while (static_cast<int>(k.size()) < order) k.emplace_back(0);
    return CumulantSpec(std::move(k));
}

MomentTable::MomentTable(std::vector<Rational> moments) : moments_(std::move(moments)) {
    if (moments_.empty() || moments_[0] != 1)
        throw std::invalid_argument("moment table: m_0 must be present and equal to 1");
}

const Rational& MomentTable::moment(int k) const {
    if (k < 0 || k > order()) {
        throw TruncationError("moment m_" + std::to_string(k) + " requested but table stops at order " +
                              std::to_string(order()));
    }
    return moments_[static_cast<size_t>(k)];
}

namespace {

// C(s,k) = sum over compositions k = i_1+...+i_s (parts >= 0) of
// prod m_{i_j}; the gap weights of a first block of size s.
class CompositionSums {
public:
    explicit CompositionSums(const std::vector<Rational>* m) : m_(m) {}

    const Rational& at(int s, int k) {
        auto key = std::make_pair(s, k);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Rational v(0);
        if (s == 0) {
            v = (k == 0) ? 1 : 0;
        } else {
            for (int j = 0; j <= k; ++j) v += (*m_)[static_cast<size_t>(j)] * at(s - 1, k - j);
        }
        return memo_.emplace(key, std::move(v)).first->second;
    }

private:
    const std::vector<Rational>* m_;
    std::map<std::pair<int, int>, Rational> memo_;
};

} // namespace

MomentTable moments_from_free_cumulants(const CumulantSpec& spec, int max_order) {
    if (max_order < 0) throw std::invalid_argument("moments_from_free_cumulants: negative order");
    if (max_order > spec.order()) {
        throw TruncationError("moment of order " + std::to_string(max_order) +
                              " needs cumulants up to the same order; spec stops at " +
                              std::to_string(spec.order()));
    }
    std::vector<Rational> m;
    m.reserve(static_cast<size_t>(max_order) + 1);
    m.emplace_back(1);
    CompositionSums comp(&m);
    for (int n = 1; n <= max_order; ++n) {
        Rational v(0);
        // first block of 1 has size s, leaving s gaps with total size n - s
        for (int s = 1; s <= n; ++s) v += spec.kappa(s) * comp.at(s, n - s);
        m.push_back(std::move(v));
    }
    return MomentTable(std::move(m));
}

CumulantSpec free_cumulants_from_moments(const MomentTable& moments, int max_order) {
    if (max_order < 2) throw std::invalid_argument("free_cumulants_from_moments: order must be >= 2");
    if (max_order > moments.order()) {
        throw TruncationError("cumulants up to order " + std::to_string(max_order) +
                              " need moments up to the same order; table stops at " +
                              std::to_string(moments.order()));
    }
    const std::vector<Rational>& m = moments.values();
    CompositionSums comp(&m);
    std::vector<Rational> kappa;
    kappa.reserve(static_cast<size_t>(max_order));
    for (int n = 1; n <= max_order; ++n) {
        Rational v = m[static_cast<size_t>(n)];
        for (int s = 1; s < n; ++s) v -= kappa[static_cast<size_t>(s - 1)] * comp.at(s, n - s);
        kappa.push_back(std::move(v));
    }
    return CumulantSpec(std::move(kappa));
}

MomentTable semicircle_pair_sum_moments(int max_order) {
    if (max_order < 0) throw std::invalid_argument("semicircle_pair_sum_moments: negative order");
    std::vector<Rational> m;
    m.reserve(static_cast<size_t>(max_order) + 1);
    m.emplace_back(1);
    for (int n = 1; n <= max_order; ++n) {
        if (n % 2 == 1) {
            m.emplace_back(0);
            continue;
        }
        int p = n / 2;
        Integer num(0);
        for (int l = 0; l <= p; ++l) {
            num += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(2 * l)) *
                   catalan_number(static_cast<unsigned long>(l)) *
                   catalan_number(static_cast<unsigned long>(p - l));
        }
        Integer den(1);
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(p));
        Rational v(num, den);
        v.canonicalize();
        m.push_back(std::move(v));
    }
    return MomentTable(std::move(m));
}

WordMomentEvaluator::WordMomentEvaluator(CumulantSpec spec) : spec_(std::move(spec)) {}

namespace {

std::vector<int> canonical_kernel(std::span<const int> word) {
    std::vector<int> kernel;
    kernel.reserve(word.size());
    std::map<int, int> relabel;
    for (int x : word) {
        auto [it, inserted] = relabel.emplace(x, static_cast<int>(relabel.size()));
        kernel.push_back(it->second);
    }
    return kernel;
}

// 4-bit labels after a 4-bit length field: valid for kernels of length <= 15
std::optional<std::uint64_t> pack_kernel(const std::vector<int>& kernel) {
    if (kernel.size() > 15) return std::nullopt;
    std::uint64_t key = kernel.size();
    int shift = 4;
    for (int label : kernel) {
        key |= static_cast<std::uint64_t>(label) << shift;
        shift += 4;
    }
    return key;
}

// Noncrossing-partition dynamic programming on a kernel word. Blocks are
// constrained to constant kernel label; the block of the leftmost point
// splits the rest into independent intervals.
class IntervalDp {
public:
    IntervalDp(const std::vector<int>& kernel, const CumulantSpec& spec)
        : w_(kernel), spec_(spec), m_(static_cast<int>(kernel.size())) {
        a_.assign(static_cast<size_t>(m_ * m_), std::nullopt);
        p_.assign(static_cast<size_t>(m_ * m_ * (m_ + 1)), std::nullopt);
    }

    Rational run() { return interval(0, m_ - 1); }

private:
    // sum over noncrossing label-constant partitions of positions l..r
    const Rational& interval(int l, int r) {
        static const Rational one(1);
        if (l > r) return one;
        auto& slot = a_[static_cast<size_t>(l * m_ + r)];
        if (!slot) slot = chain(l, r, 1);
        return *slot;
    }

    // chain ending at position j with t elements picked so far, extendable
    // up to position r by further positions with the same label
    const Rational& chain(int j, int r, int t) {
        auto& slot = p_[static_cast<size_t>((j * m_ + r) * (m_ + 1) + t)];
        if (slot) return *slot;
        Rational v = spec_.kappa(t) * interval(j + 1, r);
        for (int u = j + 1; u <= r; ++u) {
            if (w_[static_cast<size_t>(u)] != w_[static_cast<size_t>(j)]) continue;
            v += interval(j + 1, u - 1) * chain(u, r, t + 1);
        }
        slot = std::move(v);
        return *slot;
    }

    const std::vector<int>& w_;
    const CumulantSpec& spec_;
    int m_;
    std::vector<std::optional<Rational>> a_;
    std::vector<std::optional<Rational>> p_;
};

} // namespace

Rational WordMomentEvaluator::evaluate(const std::vector<int>& kernel) {
    // largest achievable block = highest label multiplicity
    std::vector<int> mult(kernel.size(), 0);
    int needed = 0;
    for (int label : kernel) needed = std::max(needed, ++mult[static_cast<size_t>(label)]);
    if (needed > spec_.order()) {
        throw TruncationError("word moment needs cumulants up to order " + std::to_string(needed) +
                              "; spec stops at order " + std::to_string(spec_.order()));
    }
    return IntervalDp(kernel, spec_).run();
}

Rational WordMomentEvaluator::moment(std::span<const int> word) {
    if (word.empty()) return Rational(1);
    std::vector<int> kernel = canonical_kernel(word);
    auto key = pack_kernel(kernel);
    if (!key) return evaluate(kernel);
    auto it = cache_.find(*key);
    if (it != cache_.end()) return it->second;
    Rational v = evaluate(kernel);
    cache_.emplace(*key, v);
    return v;
}

Rational mixed_moment(std::span<const int> word, const CumulantSpec& spec) {
    WordMomentEvaluator ev(spec);
    return ev.moment(word);
}

} // namespace tclt
