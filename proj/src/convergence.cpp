#include "tclt/convergence.hpp"

#include "tclt/errors.hpp"
#include "tclt/limit_law.hpp"
#include "tclt/partitions.hpp"

#include <stdexcept>

namespace tclt {

Rational finite_sum_moment(int order, std::int64_t n, const CumulantSpec& spec, int set_cap,
                           int expansion_guard) {
    if (order < 0) throw std::invalid_argument("finite_sum_moment: order must be >= 0");
    if (n < 1) throw std::invalid_argument("finite_sum_moment: n must be >= 1");
    if (order == 0) return Rational(1);
    if (order > expansion_guard) {
        throw CapExceededError("finite_sum_moment: order " + std::to_string(order) +
                               " exceeds expansion guard " + std::to_string(expansion_guard));
    }
    WordMomentEvaluator eval(spec);
    Rational raw(0);
    // partitions with a singleton vanish; distinct blocks get distinct
    // summand indices, n(n-1)...(n-|pi|+1) choices in total
    for_each_set_partition(
        order, 2,
        [&](const std::vector<std::vector<int>>& blocks) {
            Rational t = tensor_trace_expansion(
                Partition::from_blocks(order, blocks), eval);
            if (t == 0) return;
            raw += t * Rational(falling_factorial(n, blocks.size()));
        },
        set_cap);
    Integer den(1);
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>((order + 1) / 2));
    Rational out = raw / Rational(den);
    out.canonicalize();
    return out;
}

Rational finite_sum_limit(int order, const CumulantSpec& spec, int cap) {
    if (order < 0) throw std::invalid_argument("finite_sum_limit: order must be >= 0");
    if (order == 0) return Rational(1);
    if (order % 2 == 1) return Rational(0);
    return pairing_trace_sum(order, spec, cap);
}

std::vector<ConvergenceRow> convergence_table(int pmax, std::span<const std::int64_t> ns,
                                              const CumulantSpec& spec, int set_cap) {
    QParam q = QParam::from_mean_variance(spec.mean(), spec.variance());
    std::vector<ConvergenceRow> rows;
    for (int p = 2; p <= pmax; p += 2) {
        Rational limit = limit_moment_enumerated(p, q);
        for (std::int64_t n : ns) {
            ConvergenceRow row;
            row.order = p;
            row.n = n;
            row.value = finite_sum_moment(p, n, spec, set_cap);
            row.limit = limit;
            row.gap = row.value - row.limit;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace tclt
