// Acceptance gate for the exact engine: each numbered check prints one
// PASS/FAIL line; the exit code is the number of failures.
#include "tclt/convergence.hpp"
#include "tclt/free_moments.hpp"
#include "tclt/limit_law.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"
#include "tclt/rmt_sim.hpp"
#include "tclt/tensor_trace.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

using namespace tclt;

namespace {

int g_failures = 0;

// body fills `detail` and returns pass/fail; a time budget of 0 means none
void criterion(int idx, const char* label, double budget_s,
               const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs >= budget_s) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += "exceeded " + std::to_string(int(budget_s)) + "s budget";
    }
    if (!ok) ++g_failures;
    std::string line = std::string(ok ? "[PASS] " : "[FAIL] ") + (idx < 10 ? " " : "") +
                       std::to_string(idx) + ". " + label;
    if (!detail.empty()) line += " — " + detail;
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2fs)", secs);
    line += buf;
    std::puts(line.c_str());
    std::fflush(stdout);
}

bool expect_eq(const Rational& got, const Rational& want, const char* what, std::string& detail) {
    if (got == want) return true;
    detail = std::string(what) + ": got " + format_rational(got) + ", want " + format_rational(want);
    return false;
}

} // namespace

int main() {
    const CumulantSpec std_spec({Rational(1), Rational(1), Rational(0), Rational(0)});
    const CumulantSpec sc_spec({Rational(0), Rational(1), Rational(0), Rational(0)});

    criterion(1, "q=1 moments equal 2^-p C_p C_{p+1} by enumeration and by cumulants (p <= 7)", 60,
              [](std::string& detail) {
                  QParam q1{Rational(1)};
                  for (int p = 1; p <= 7; ++p) {
                      Rational want = Rational(catalan_number(p) * catalan_number(p + 1)) /
                                      rational_pow(Rational(2), p);
                      if (!expect_eq(limit_moment_enumerated(2 * p, q1, 14), want,
                                     ("enumerated m_" + std::to_string(2 * p)).c_str(), detail))
                          return false;
                      if (!expect_eq(limit_moment_via_cumulants(2 * p, q1, 14), want,
                                     ("cumulant-route m_" + std::to_string(2 * p)).c_str(), detail))
                          return false;
                      if (!expect_eq(semicircle_pair_sum_moments(2 * p).moment(2 * p), want,
                                     ("binomial-sum m_" + std::to_string(2 * p)).c_str(), detail))
                          return false;
                  }
                  detail = "orders 2..14, three routes";
                  return true;
              });

    criterion(2, "q=0 moments are the Catalan numbers (orders <= 12)", 0, [](std::string& detail) {
        QParam q0{Rational(0)};
        for (int p = 1; 2 * p <= 12; ++p) {
            if (!expect_eq(limit_moment_enumerated(2 * p, q0), Rational(catalan_number(p)),
                           ("m_" + std::to_string(2 * p)).c_str(), detail))
                return false;
        }
        return true;
    });

    criterion(3, "moment and cumulant routes agree for orders <= 12, q in {0,1/4,1/2,3/4,1}", 0,
              [](std::string& detail) {
                  const Rational grid[] = {Rational(0), make_rational(1, 4), make_rational(1, 2),
                                           make_rational(3, 4), Rational(1)};
                  for (const Rational& qv : grid) {
                      QParam q{qv};
                      std::string at = " at q=" + format_rational(qv);
                      for (int m = 2; m <= 12; m += 2) {
                          if (!expect_eq(limit_moment_enumerated(m, q),
                                         limit_moment_via_cumulants(m, q),
                                         ("m_" + std::to_string(m) + at).c_str(), detail))
                              return false;
                      }
                      for (int n = 1; n <= 12; ++n) {
                          if (!expect_eq(limit_cumulant(n, q), limit_cumulant_additive(n, q),
                                         ("kappa_" + std::to_string(n) + at).c_str(), detail))
                              return false;
                      }
                  }
                  return true;
              });

    criterion(4, "closed-form, reduction and expansion traces agree on every pairing of 4, 6, 8",
              30, [&](std::string& detail) {
                  TensorParams params = TensorParams::from_spec(std_spec);
                  WordMomentEvaluator eval(std_spec);
                  int checked = 0;
                  bool ok = true;
                  for (int p : {4, 6, 8}) {
                      for_each_pairing(p, [&](const std::vector<std::pair<int, int>>& pairs) {
                          if (!ok) return;
                          PairPartition pp = PairPartition::from_pairs(p, pairs);
                          Rational closed = tensor_trace_closed_form(pp, params);
                          Rational reduced = tensor_trace_reduced(pp, params);
                          Rational oracle = tensor_trace_expansion(pp.partition(), eval);
                          if (closed != reduced || closed != oracle) {
                              detail = pp.to_string() + ": closed " + format_rational(closed) +
                                       ", reduced " + format_rational(reduced) + ", expansion " +
                                       format_rational(oracle);
                              ok = false;
                              return;
                          }
                          ++checked;
                      });
                  }
                  if (ok) detail = std::to_string(checked) + " pairings, three evaluators";
                  return ok && checked == 3 + 15 + 105;
              });

    criterion(5, "pairing sums depend only on mean and variance (p in {4,6,8})", 0,
              [&](std::string& detail) {
                  const CumulantSpec centered[] = {sc_spec, CumulantSpec::parse("0,1,0,-1"),
                                                   CumulantSpec::parse("0,1,0,2")};
                  const CumulantSpec two_point = CumulantSpec::parse("1,1,0,-1,0,2,0,-5");
                  for (int p : {4, 6, 8}) {
                      Rational base = pairing_trace_sum(p, centered[0]);
                      for (int i = 1; i < 3; ++i) {
                          if (!expect_eq(pairing_trace_sum(p, centered[i]), base,
                                         ("centered spec " + std::to_string(i) + " at p=" +
                                          std::to_string(p))
                                             .c_str(),
                                         detail))
                              return false;
                      }
                      if (!expect_eq(pairing_trace_sum(p, two_point),
                                     pairing_trace_sum(p, std_spec),
                                     ("two-point law vs (1,1,0,0) at p=" + std::to_string(p))
                                         .c_str(),
                                     detail))
                          return false;
                  }
                  return true;
              });

    criterion(6, "fourth moment of S_n is 2 + 2/n; limit extraction matches the limit law", 0,
              [&](std::string& detail) {
                  for (long n : {1L, 10L, 100L}) {
                      Rational want = Rational(2) + make_rational(2, n);
                      if (!expect_eq(finite_sum_moment(4, n, sc_spec), want,
                                     ("m_4 at n=" + std::to_string(n)).c_str(), detail))
                          return false;
                  }
                  for (const CumulantSpec& spec : {sc_spec, std_spec}) {
                      QParam q = QParam::from_mean_variance(spec.mean(), spec.variance());
                      for (int p = 2; p <= 8; p += 2) {
                          if (!expect_eq(finite_sum_limit(p, spec), limit_moment_enumerated(p, q),
                                         ("limit at p=" + std::to_string(p) + ", q=" +
                                          format_rational(q.value()))
                                             .c_str(),
                                         detail))
                              return false;
                      }
                  }
                  return true;
              });

    criterion(7, "at q=2/3: noncrossing pairings give 1, crossed pair q^2/2, crossing triple 0", 0,
              [&](std::string& detail) {
                  TensorParams params{Rational(1), Rational(1)}; // q = 2/3
                  WordMomentEvaluator eval(std_spec);
                  bool ok = true;
                  long seen = 0;
                  for (int p = 2; p <= 10; p += 2) {
                      for_each_pairing(p, [&](const std::vector<std::pair<int, int>>& pairs) {
                          if (!ok) return;
                          PairPartition pp = PairPartition::from_pairs(p, pairs);
                          if (!is_noncrossing(pp.partition())) return;
                          ++seen;
                          if (tensor_trace_closed_form(pp, params) != 1 ||
                              tensor_trace_reduced(pp, params) != 1 ||
                              (p <= 8 && tensor_trace_expansion(pp.partition(), eval) != 1)) {
                              detail = "noncrossing " + pp.to_string() + " != 1";
                              ok = false;
                          }
                      });
                      if (!ok) return false;
                  }
                  if (seen != 1 + 2 + 5 + 14 + 42) {
                      detail = "noncrossing pairing count " + std::to_string(seen);
                      return false;
                  }
                  PairPartition crossed = PairPartition::parse("1,3|2,4");
                  PairPartition triple = PairPartition::parse("1,4|2,5|3,6");
                  for (auto [pp, want] :
                       {std::pair{crossed, make_rational(2, 9)}, std::pair{triple, Rational(0)}}) {
                      if (tensor_trace_closed_form(pp, params) != want ||
                          tensor_trace_reduced(pp, params) != want ||
                          tensor_trace_expansion(pp.partition(), eval) != want) {
                          detail = pp.to_string() + " != " + format_rational(want);
                          return false;
                      }
                  }
                  detail = "62 noncrossing pairings and both reference values";
                  return true;
              });

    criterion(8, "connected counts 1,1,4,27 and bipartite-connected 1,1,3 by two strategies", 0,
              [](std::string& detail) {
                  const long want_conn[] = {1, 1, 4, 27};
                  const long want_bip[] = {1, 1, 3};
                  for (int i = 0; i < 4; ++i) {
                      int p = 2 * (i + 1);
                      long by_graph = 0, by_interval = 0, bip = 0;
                      for_each_pairing(p, [&](const std::vector<std::pair<int, int>>& pairs) {
                          PairPartition pp = PairPartition::from_pairs(p, pairs);
                          PartitionStats st = stats(pp.partition());
                          if (st.connected) {
                              ++by_graph;
                              if (st.bipartite) ++bip;
                          }
                          if (is_connected_interval_definition(pp.partition())) ++by_interval;
                      });
                      if (by_graph != want_conn[i] || by_interval != want_conn[i] ||
                          count_connected_pairings(p) != want_conn[i]) {
                          detail = "connected(" + std::to_string(p) + "): graph " +
                                   std::to_string(by_graph) + ", interval " +
                                   std::to_string(by_interval);
                          return false;
                      }
                      if (i < 3 && (bip != want_bip[i] ||
                                    count_bipartite_connected_pairings(p) != want_bip[i])) {
                          detail = "bipartite-connected(" + std::to_string(p) + "): " +
                                   std::to_string(bip);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(9, "limit-law moments pass the exact Hankel PSD check to K=5 (q = 0, 1/10, ..., 1)",
              0, [](std::string& detail) {
                  for (int i = 0; i <= 10; ++i) {
                      QParam q{make_rational(i, 10)};
                      if (!hankel_psd(limit_moment_table(q, 10), 5)) {
                          detail = "failed at q=" + format_rational(q.value());
                          return false;
                      }
                  }
                  return true;
              });

    criterion(10, "matrix simulation at d=50, n=100, 20 trials, seed 1 lands on m_2 and m_4", 300,
              [](std::string& detail) {
                  SimConfig cfg; // defaults are exactly this scenario
                  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
                  SimResult r = empirical_moments(cfg);
                  double m2 = r.mean[2], m4 = r.mean[4];
                  double want4 = 20.0 / 9.0;
                  char buf[128];
                  std::snprintf(buf, sizeof buf, "m_2 = %.4f (ref 1, tol 0.05), m_4 = %.4f (ref %.4f, tol 0.15)",
                                m2, m4, want4);
                  detail = buf;
                  return std::abs(m2 - 1.0) <= 0.05 && std::abs(m4 - want4) <= 0.15;
              });

    criterion(11, "binomial Catalan convolution identity holds for p <= 7", 0,
              [](std::string& detail) {
                  if (!catalan_product_identity(7)) {
                      detail = "identity violated";
                      return false;
                  }
                  return true;
              });

    if (g_failures == 0) {
        std::puts("all 11 criteria passed");
    } else {
        std::printf("%d of 11 criteria failed\n", g_failures);
    }
    return g_failures;
}
