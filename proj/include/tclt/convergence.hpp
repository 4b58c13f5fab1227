#pragma once

#include "tclt/free_moments.hpp"
#include "tclt/rational.hpp"
#include "tclt/tensor_trace.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tclt {

// Exact moment of the normalized sum of n i.i.d. free tensor squares:
// n^{-p/2} sum over singleton-free partitions pi of [p] of trace(pi) times
// n(n-1)...(n-|pi|+1). Even p only carries a plain value; for odd p the
// result is the coefficient v with moment = v * sqrt(n) / delta (exactly 0
// for even specs), mirroring the tensor_trace_expansion convention.
Rational finite_sum_moment(int order, std::int64_t n, const CumulantSpec& spec,
                           int set_cap = kSetEnumerationCap, int expansion_guard = kExpansionCap);

// n -> infinity value of the same moment: only pairings survive.
Rational finite_sum_limit(int order, const CumulantSpec& spec, int cap = kPairEnumerationCap);

struct ConvergenceRow {
    int order = 0;
    std::int64_t n = 0;
    Rational value; // finite-n moment
    Rational limit; // limit-law moment at q = 2 kappa_1^2 / (kappa_2 + 2 kappa_1^2)
    Rational gap;   // value - limit
};

// Rows for even orders 2..pmax, each n in ns, in (order, n) order.
std::vector<ConvergenceRow> convergence_table(int pmax, std::span<const std::int64_t> ns,
                                              const CumulantSpec& spec,
                                              int set_cap = kSetEnumerationCap);

} // namespace tclt
