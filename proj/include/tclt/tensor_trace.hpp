#pragma once

#include "tclt/free_moments.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"

namespace tclt {

// Model parameters: each factor has mean lambda and variance sigma2; the
// tensor square a (x) a is centred by lambda^2 and scaled by delta so the
// summands have mean 0 and variance 1.
struct TensorParams {
    TensorParams(Rational lambda_, Rational sigma2_);
    static TensorParams from_spec(const CumulantSpec& spec); // lambda = kappa_1, sigma2 = kappa_2

    Rational lambda;
    Rational sigma2;

    Rational delta2() const; // sigma2 * (sigma2 + 2 lambda^2)
    Rational q() const;      // 2 lambda^2 / (sigma2 + 2 lambda^2), always in [0,1]
};

// Expansion cost is 2^p words; hard ceiling for the defining evaluation.
inline constexpr int kExpansionCap = 16;

// Normalized tensor trace of the pairing word, evaluated through the
// noncrossing closure: single pairs contribute 1, larger (necessarily
// crossing-connected) components contribute 2(q/2)^{k} when their crossing
// graph is bipartite and 0 otherwise.
Rational tensor_trace_closed_form(const PairPartition& p, const TensorParams& params);

// Same value by step-wise reduction: cyclically adjacent pairs are deleted,
// pairs whose interior is self-matched split the word into two independent
// factors; the irreducible remainder goes through the closed form. Exists to
// exercise the reduction rules, not for speed.
Rational tensor_trace_reduced(const PairPartition& p, const TensorParams& params);

// Defining evaluation for an arbitrary partition pi of {1,...,p}: expand the
// centring binomially over subsets, evaluate each sub-word in the free
// family given by `spec`, square (two independent tensor legs), and divide
// by delta^p. For odd p the exact value carries one factor 1/delta; the
// returned rational is the coefficient, i.e. value * delta. It is exactly 0
// whenever lambda = 0 and the spec is even.
Rational tensor_trace_expansion(const Partition& pi, const CumulantSpec& spec);
Rational tensor_trace_expansion(const Partition& pi, WordMomentEvaluator& eval);

// Sum of tensor_trace_expansion over all pairings of {1,...,p}: the order-p
// coefficient of the limiting law of the normalized sums.
Rational pairing_trace_sum(int p, WordMomentEvaluator& eval, int cap = kPairEnumerationCap);
Rational pairing_trace_sum(int p, const CumulantSpec& spec, int cap = kPairEnumerationCap);

// The limit extraction only sees kappa_1 and kappa_2: two specs sharing
// those produce identical pairing sums.
struct UniversalityResult {
    bool match = false;
    Rational first;
    Rational second;
};
UniversalityResult universality_check(int p, const CumulantSpec& a, const CumulantSpec& b,
                                      int cap = kPairEnumerationCap);

} // namespace tclt
