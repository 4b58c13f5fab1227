#pragma once

#include "tclt/rational.hpp"

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tclt {

// Truncated free cumulant sequence kappa_1..kappa_K of a single law.
// Requests beyond K raise TruncationError; missing cumulants are never
// silently treated as zero.
class CumulantSpec {
public:
    explicit CumulantSpec(std::vector<Rational> kappas);
    // "1,1,0,0" -> kappa_1=1, kappa_2=1, kappa_3=0, kappa_4=0
    static CumulantSpec parse(const std::string& text);

    int order() const { return static_cast<int>(kappas_.size()); }
    const Rational& kappa(int n) const; // 1-based
    const Rational& mean() const { return kappas_[0]; }
    const Rational& variance() const { return kappas_[1]; }
    const std::vector<Rational>& values() const { return kappas_; }
    // zero-extend to at least `order` entries (explicit, for CLI convenience)
    CumulantSpec extended_with_zeros(int order) const;

    bool operator==(const CumulantSpec& o) const { return kappas_ == o.kappas_; }

private:
    std::vector<Rational> kappas_;
};

// Moments m_0..m_N of a single law, m_0 = 1.
class MomentTable {
public:
    explicit MomentTable(std::vector<Rational> moments);

    int order() const { return static_cast<int>(moments_.size()) - 1; }
    const Rational& moment(int k) const; // 0-based
    const std::vector<Rational>& values() const { return moments_; }

    bool operator==(const MomentTable& o) const { return moments_ == o.moments_; }

private:
    std::vector<Rational> moments_;
};

// Moment-cumulant formula, summed through the first-block decomposition of
// noncrossing partitions: m_n = sum_{s>=1} kappa_s * [coefficient of the
// s-fold moment convolution at n-s].
MomentTable moments_from_free_cumulants(const CumulantSpec& spec, int max_order);

// Triangular inversion of the same recursion.
CumulantSpec free_cumulants_from_moments(const MomentTable& moments, int max_order);

// Moments of (x_1 + x_2)/sqrt(2) for classically independent standard
// semicircles: odd 0, m_{2p} = 2^{-p} sum_l binom(2p,2l) C_l C_{p-l}.
MomentTable semicircle_pair_sum_moments(int max_order);

// tau(a_{w_1} ... a_{w_m}) for a free family {a_i} of identically
// distributed variables with the given cumulants. Computed by dynamic
// programming over the first-block decomposition of noncrossing partitions
// (blocks must sit inside a single letter of the word's kernel), with a
// cache keyed by the kernel so repeated shapes are evaluated once.
// Instances are independent; share one per spec for cache reuse, do not
// share across threads.
class WordMomentEvaluator {
public:
    explicit WordMomentEvaluator(CumulantSpec spec);

    const CumulantSpec& spec() const { return spec_; }
    Rational moment(std::span<const int> word);

private:
    Rational evaluate(const std::vector<int>& kernel);

    CumulantSpec spec_;
    std::unordered_map<std::uint64_t, Rational> cache_; // packed kernels, length <= 16
};

// One-shot convenience wrapper around WordMomentEvaluator.
Rational mixed_moment(std::span<const int> word, const CumulantSpec& spec);

} // namespace tclt
