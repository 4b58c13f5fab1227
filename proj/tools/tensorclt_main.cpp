#include "tclt/checks.hpp"
#include "tclt/convergence.hpp"
#include "tclt/errors.hpp"
#include "tclt/free_moments.hpp"
#include "tclt/limit_law.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"
#include "tclt/rmt_sim.hpp"
#include "tclt/table_io.hpp"
#include "tclt/tensor_trace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace tclt;

constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitInvariant = 4;

struct QSource {
    std::string q_text;
    std::string lambda_text;
    std::string sigma2_text;

    QParam resolve() const {
        bool have_q = !q_text.empty();
        bool have_ls = !lambda_text.empty() || !sigma2_text.empty();
        if (have_q == have_ls) {
            throw std::invalid_argument("give either --q or both --lambda and --sigma2");
        }
        if (have_q) return QParam(parse_rational(q_text));
        if (lambda_text.empty() || sigma2_text.empty()) {
            throw std::invalid_argument("--lambda and --sigma2 must be given together");
        }
        return QParam::from_mean_variance(parse_rational(lambda_text), parse_rational(sigma2_text));
    }
};

void add_q_options(CLI::App* cmd, QSource& src) {
    cmd->add_option("--q", src.q_text, "interpolation parameter q in [0,1], exact (e.g. 1/2)");
    cmd->add_option("--lambda", src.lambda_text, "factor mean (alternative to --q)");
    cmd->add_option("--sigma2", src.sigma2_text, "factor variance (alternative to --q)");
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer list entry '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

int run_moments(const QSource& src, int max_order, int cap, const std::string& format) {
    QParam q = src.resolve();
    bool all_agree = true;
    CsvWriter csv({"order", "enumerated_exact", "enumerated_decimal", "via_cumulants_exact", "agree"});
    json rows = json::array();
    for (int order = 2; order <= max_order; order += 2) {
        Rational a = limit_moment_enumerated(order, q, cap);
        Rational b = limit_moment_via_cumulants(order, q, cap);
        bool agree = a == b;
        all_agree &= agree;
        csv.row({csv_field(order), csv_field(a), csv_field(to_double(a)), csv_field(b),
                 csv_field(agree ? "yes" : "no")});
        rows.push_back({{"order", order},
                        {"enumerated", rational_json(a)},
                        {"via_cumulants", rational_json(b)},
                        {"agree", agree}});
    }
    if (format == "json") {
        json j{{"format_version", kFormatVersion},
               {"kind", "moments"},
               {"q", rational_json(q.value())},
               {"rows", rows}};
        emit(j.dump(2) + "\n");
    } else {
        emit(csv.str());
    }
    if (!all_agree) {
        std::cerr << "moment routes disagree\n";
        return kExitInvariant;
    }
    return 0;
}

int run_cumulants(const QSource& src, int max_order, int cap, const std::string& format) {
    QParam q = src.resolve();
    bool all_agree = true;
    CsvWriter csv({"n", "value_exact", "value_decimal", "additive_exact", "agree"});
    json rows = json::array();
    for (int n = 1; n <= max_order; ++n) {
        Rational a = limit_cumulant(n, q, cap);
        Rational b = limit_cumulant_additive(n, q, cap);
        bool agree = a == b;
        all_agree &= agree;
        csv.row({csv_field(n), csv_field(a), csv_field(to_double(a)), csv_field(b),
                 csv_field(agree ? "yes" : "no")});
        rows.push_back({{"n", n},
                        {"value", rational_json(a)},
                        {"additive", rational_json(b)},
                        {"agree", agree}});
    }
    if (format == "json") {
        json j{{"format_version", kFormatVersion},
               {"kind", "cumulants"},
               {"q", rational_json(q.value())},
               {"rows", rows}};
        emit(j.dump(2) + "\n");
    } else {
        emit(csv.str());
    }
    if (!all_agree) {
        std::cerr << "cumulant routes disagree\n";
        return kExitInvariant;
    }
    return 0;
}

int run_tau(const std::string& pairing_text, const std::string& lambda_text,
            const std::string& sigma2_text, const std::string& cumulants_text,
            const std::string& format) {
    PairPartition pairing = PairPartition::parse(pairing_text);
    int p = pairing.ground_size();

    std::unique_ptr<CumulantSpec> spec;
    if (!cumulants_text.empty()) {
        spec = std::make_unique<CumulantSpec>(
            CumulantSpec::parse(cumulants_text).extended_with_zeros(p));
    } else {
        if (lambda_text.empty() || sigma2_text.empty()) {
            throw std::invalid_argument("give --cumulants or both --lambda and --sigma2");
        }
        std::vector<Rational> k{parse_rational(lambda_text), parse_rational(sigma2_text)};
        spec = std::make_unique<CumulantSpec>(CumulantSpec(k).extended_with_zeros(p));
    }
    if (!lambda_text.empty() && spec->mean() != parse_rational(lambda_text)) {
        throw std::invalid_argument("--lambda conflicts with kappa_1 from --cumulants");
    }
    if (!sigma2_text.empty() && spec->variance() != parse_rational(sigma2_text)) {
        throw std::invalid_argument("--sigma2 conflicts with kappa_2 from --cumulants");
    }

    TensorParams params = TensorParams::from_spec(*spec);
    Rational closed = tensor_trace_closed_form(pairing, params);
    Rational reduced = tensor_trace_reduced(pairing, params);
    Rational expanded = tensor_trace_expansion(pairing.partition(), *spec);
    bool agree = closed == reduced && closed == expanded;

    if (format == "json") {
        json j{{"format_version", kFormatVersion},
               {"kind", "tau"},
               {"pairing", pairing.to_string()},
               {"q", rational_json(params.q())},
               {"closed_form", rational_json(closed)},
               {"reduced", rational_json(reduced)},
               {"expansion", rational_json(expanded)},
               {"agree", agree}};
        emit(j.dump(2) + "\n");
    } else {
        CsvWriter csv({"method", "value_exact", "value_decimal"});
        csv.row({csv_field("closed_form"), csv_field(closed), csv_field(to_double(closed))});
        csv.row({csv_field("reduced"), csv_field(reduced), csv_field(to_double(reduced))});
        csv.row({csv_field("expansion"), csv_field(expanded), csv_field(to_double(expanded))});
        csv.row({csv_field("agree"), csv_field(agree ? "yes" : "no"), csv_field("")});
        emit(csv.str());
    }
    if (!agree) {
        std::cerr << "tensor trace routes disagree\n";
        return kExitInvariant;
    }
    return 0;
}

int run_converge(int pmax, const std::string& n_list, const std::string& cumulants_text,
                 int set_cap, const std::string& format) {
    // listed cumulants are exact; unlisted ones are taken as explicit zeros
    CumulantSpec spec = CumulantSpec::parse(cumulants_text).extended_with_zeros(std::max(2, pmax));
    std::vector<std::int64_t> ns = parse_int_list(n_list);
    std::vector<ConvergenceRow> rows = convergence_table(pmax, ns, spec, set_cap);

    if (format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            jrows.push_back({{"order", r.order},
                             {"n", r.n},
                             {"value", rational_json(r.value)},
                             {"limit", rational_json(r.limit)},
                             {"gap", rational_json(r.gap)}});
        }
        json j{{"format_version", kFormatVersion}, {"kind", "convergence"}, {"rows", jrows}};
        emit(j.dump(2) + "\n");
    } else {
        CsvWriter csv({"order", "n", "value_exact", "value_decimal", "limit_exact", "gap_exact",
                       "gap_decimal"});
        for (const auto& r : rows) {
            csv.row({csv_field(r.order), csv_field(r.n), csv_field(r.value),
                     csv_field(to_double(r.value)), csv_field(r.limit), csv_field(r.gap),
                     csv_field(to_double(r.gap))});
        }
        emit(csv.str());
    }
    return 0;
}

int run_counts(int max_order, int cap, const std::string& format) {
    CsvWriter csv({"p", "pairings", "noncrossing", "connected", "bipartite_connected"});
    json rows = json::array();
    for (int p = 2; p <= max_order; p += 2) {
        std::int64_t total = count_pair_partitions(p);
        std::int64_t nc = count_noncrossing_pairings(p, cap);
        std::int64_t conn = count_connected_pairings(p, cap);
        std::int64_t bconn = count_bipartite_connected_pairings(p, cap);
        csv.row({csv_field(p), csv_field(total), csv_field(nc), csv_field(conn), csv_field(bconn)});
        rows.push_back({{"p", p},
                        {"pairings", total},
                        {"noncrossing", nc},
                        {"connected", conn},
                        {"bipartite_connected", bconn}});
    }
    if (format == "json") {
        json j{{"format_version", kFormatVersion}, {"kind", "counts"}, {"rows", rows}};
        emit(j.dump(2) + "\n");
    } else {
        emit(csv.str());
    }
    return 0;
}

int run_check(const std::string& level_text, const std::string& format) {
    CheckLevel level = level_text == "full" ? CheckLevel::full : CheckLevel::quick;
    std::vector<CheckResult> results = run_invariant_checks(level);
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : results)
            rows.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        json j{{"format_version", kFormatVersion},
               {"kind", "check"},
               {"level", level_text},
               {"passed", all_passed(results)},
               {"rows", rows}};
        emit(j.dump(2) + "\n");
    } else if (format == "csv") {
        CsvWriter csv({"name", "passed", "detail"});
        for (const auto& r : results)
            csv.row({csv_field(r.name), csv_field(r.passed ? "yes" : "no"), csv_field(r.detail)});
        emit(csv.str());
    } else {
        for (const auto& r : results) {
            emit((r.passed ? "PASS " : "FAIL ") + r.name +
                 (r.detail.empty() ? "" : ": " + r.detail) + "\n");
        }
    }
    return all_passed(results) ? 0 : kExitInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact engine for the central limit law of sums of free tensor squares"};
    app.require_subcommand(1);

    std::string format = "csv";

    // moments
    auto* moments = app.add_subcommand("moments", "limit-law moments by two independent routes");
    QSource m_src;
    add_q_options(moments, m_src);
    int m_order = 8;
    int m_cap = kPairEnumerationCap;
    moments->add_option("--max-order", m_order, "largest moment order")->check(CLI::Range(2, 64));
    moments->add_option("--cap", m_cap, "pair-partition enumeration cap");
    moments->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // cumulants
    auto* cumulants =
        app.add_subcommand("cumulants", "limit-law free cumulants by two independent routes");
    QSource c_src;
    add_q_options(cumulants, c_src);
    int c_order = 8;
    int c_cap = kPairEnumerationCap;
    cumulants->add_option("--max-order", c_order)->check(CLI::Range(1, 64));
    cumulants->add_option("--cap", c_cap, "pair-partition enumeration cap");
    cumulants->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // tau
    auto* tau = app.add_subcommand("tau", "tensor trace of a pairing by all three evaluators");
    std::string t_pairing, t_lambda, t_sigma2, t_cumulants;
    tau->add_option("--pairing", t_pairing, "pairing, e.g. \"1,3|2,4\"")->required();
    tau->add_option("--lambda", t_lambda, "factor mean");
    tau->add_option("--sigma2", t_sigma2, "factor variance");
    tau->add_option("--cumulants", t_cumulants,
                    "factor free cumulants kappa_1,kappa_2,... (unlisted = 0)");
    tau->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // converge
    auto* converge = app.add_subcommand("converge", "exact finite-n moments against the limit");
    int v_pmax = 4;
    std::string v_nlist = "10,20,40";
    std::string v_cumulants;
    int v_setcap = kSetEnumerationCap;
    converge->add_option("--pmax", v_pmax, "largest (even) moment order")->check(CLI::Range(2, 64));
    converge->add_option("--n-list", v_nlist, "comma-separated summand counts");
    converge->add_option("--cumulants", v_cumulants, "factor free cumulants (unlisted = 0)")
        ->required();
    converge->add_option("--set-cap", v_setcap, "set-partition enumeration cap");
    converge->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "random-matrix check of the limit law");
    SimConfig sim;
    sim.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    simulate->add_option("--d", sim.d, "factor matrix dimension")->check(CLI::Range(1, 4096));
    simulate->add_option("--n", sim.n, "summands per trial")->check(CLI::Range(1, 1 << 20));
    simulate->add_option("--lambda", sim.lambda, "factor mean");
    simulate->add_option("--sigma", sim.sigma, "factor standard deviation");
    simulate->add_option("--trials", sim.trials)->check(CLI::Range(1, 1 << 20));
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--pmax", sim.pmax, "largest trace power")->check(CLI::Range(1, 16));
    simulate->add_option("--threads", sim.threads)->check(CLI::Range(1, 256));
    simulate->add_option("--dim-cap", sim.dim_cap, "guard on d (workspace is O(d^4))");
    simulate->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // counts
    auto* counts = app.add_subcommand("counts", "pairing counts by class");
    int k_max = 8;
    int k_cap = kPairEnumerationCap;
    counts->add_option("--max", k_max, "largest (even) p")->check(CLI::Range(2, 64));
    counts->add_option("--cap", k_cap, "pair-partition enumeration cap");
    counts->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // check
    auto* check = app.add_subcommand("check", "run the invariant suite");
    std::string h_level = "quick";
    std::string h_format = "text";
    check->add_option("--level", h_level)->check(CLI::IsMember({"quick", "full"}));
    check->add_option("--format", h_format)->check(CLI::IsMember({"csv", "json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (moments->parsed()) return run_moments(m_src, m_order, m_cap, format);
        if (cumulants->parsed()) return run_cumulants(c_src, c_order, c_cap, format);
        if (tau->parsed()) return run_tau(t_pairing, t_lambda, t_sigma2, t_cumulants, format);
        if (converge->parsed()) return run_converge(v_pmax, v_nlist, v_cumulants, v_setcap, format);
        if (simulate->parsed()) {
            emit(format == "json" ? sim_result_json(empirical_moments(sim))
                                  : sim_result_csv(empirical_moments(sim)));
            return 0;
        }
        if (counts->parsed()) return run_counts(k_max, k_cap, format);
        if (check->parsed()) return run_check(h_level, h_format);
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
