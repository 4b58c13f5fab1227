#pragma once

#include "tclt/free_moments.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"

namespace tclt {

// Interpolation parameter of the limit family: q = 0 is the semicircle law,
// q = 1 the classical convolution of two semicircles scaled by 1/sqrt(2).
class QParam {
public:
    explicit QParam(Rational q);
    static QParam from_mean_variance(const Rational& lambda, const Rational& sigma2);

    const Rational& value() const { return q_; }

private:
    Rational q_;
};

// Even moment m_{2k} as the sum over bipartite pairings of 2^{cc-k} q^{cr},
// cc = crossing-graph components, cr = crossing blocks. The integer
// histogram over (cc, cr) is enumerated once per order and cached.
Rational limit_moment_enumerated(int order, const QParam& q, int cap = kPairEnumerationCap);

// Free cumulants: kappa_2 = 1, kappa_{2k} = 2 (q/2)^k * #{bipartite
// connected pairings of 2k points} for k >= 2, odd orders 0.
Rational limit_cumulant(int n, const QParam& q, int cap = kPairEnumerationCap);

// Same cumulants through additivity of the R-transform for a free sum:
// kappa_n = q^{n/2} kappa_n(pair-sum law) + (1-q)^{n/2} kappa_n(semicircle),
// with the pair-sum cumulants obtained by inverting its moment formula.
Rational limit_cumulant_additive(int n, const QParam& q, int cap = kPairEnumerationCap);

// Moments through the cumulant route; agrees with limit_moment_enumerated.
Rational limit_moment_via_cumulants(int order, const QParam& q, int cap = kPairEnumerationCap);

CumulantSpec limit_cumulant_spec(const QParam& q, int max_order, int cap = kPairEnumerationCap);
MomentTable limit_moment_table(const QParam& q, int max_order, int cap = kPairEnumerationCap);

// sum_l binom(2p, 2l) C_l C_{p-l} == C_p C_{p+1} for all p <= pmax.
bool catalan_product_identity(int pmax);

// Positive semidefiniteness of the (K+1)x(K+1) Hankel matrix H_{ij} =
// m_{i+j}, decided exactly by symmetric Gaussian elimination.
bool hankel_psd(const MomentTable& moments, int K);

} // namespace tclt
