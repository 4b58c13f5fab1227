#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclt/errors.hpp"
#include "tclt/free_moments.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"

using namespace tclt;

namespace {

// independent reference: sum over all noncrossing label-constant partitions
Rational word_moment_reference(const std::vector<int>& word, const CumulantSpec& spec) {
    if (word.empty()) return Rational(1);
    Rational sum(0);
    for_each_set_partition(static_cast<int>(word.size()), 1,
                           [&](const std::vector<std::vector<int>>& blocks) {
                               for (const auto& b : blocks)
                                   for (int x : b)
                                       if (word[size_t(x - 1)] != word[size_t(b[0] - 1)]) return;
                               if (!is_noncrossing(Partition::from_blocks(int(word.size()), blocks)))
                                   return;
                               Rational prod(1);
                               for (const auto& b : blocks) prod *= spec.kappa(int(b.size()));
                               sum += prod;
                           });
    return sum;
}

std::vector<Rational> rats(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(parse_rational(x));
    return out;
}

} // namespace

TEST_CASE("cumulant spec parsing and access") {
    CumulantSpec spec = CumulantSpec::parse("1, 1, 0, -1/2");
    CHECK(spec.order() == 4);
    CHECK(spec.mean() == 1);
    CHECK(spec.variance() == 1);
    CHECK(spec.kappa(4) == make_rational(-1, 2));
    CHECK_THROWS_AS(spec.kappa(5), TruncationError);
    CHECK_THROWS_AS(spec.kappa(0), std::invalid_argument);
    CHECK_THROWS_AS(CumulantSpec::parse("1"), std::invalid_argument);
    CHECK(spec.extended_with_zeros(6).order() == 6);
    CHECK(spec.extended_with_zeros(6).kappa(6) == 0);
    CHECK(spec.extended_with_zeros(2) == spec); // never truncates
}

TEST_CASE("semicircle moments are Catalan") {
    MomentTable m = moments_from_free_cumulants(CumulantSpec::parse("0,1").extended_with_zeros(10), 10);
    CHECK(m.values() == rats({"1", "0", "1", "0", "2", "0", "5", "0", "14", "0", "42"}));
}

TEST_CASE("free Poisson moments count noncrossing partitions") {
    MomentTable m = moments_from_free_cumulants(CumulantSpec::parse("1,1,1,1,1,1"), 6);
    CHECK(m.values() == rats({"1", "1", "2", "5", "14", "42", "132"}));
}

TEST_CASE("shifted semicircle gives Motzkin numbers") {
    MomentTable m = moments_from_free_cumulants(CumulantSpec::parse("1,1").extended_with_zeros(6), 6);
    CHECK(m.values() == rats({"1", "1", "2", "4", "9", "21", "51"}));
}

TEST_CASE("moment/cumulant round trip") {
    CumulantSpec spec = CumulantSpec::parse("1/2,2,-1,1/3,0,5,-1/7,2").extended_with_zeros(10);
    MomentTable m = moments_from_free_cumulants(spec, 10);
    CHECK(free_cumulants_from_moments(m, 10) == spec);
}

TEST_CASE("two-point law cumulants from its moments") {
    // values {0,2} with equal weight: m_k = 2^{k-1} for k >= 1
    std::vector<Rational> m{Rational(1)};
    Rational pw(1);
    for (int k = 1; k <= 8; ++k) {
        m.push_back(pw);
        pw *= 2;
    }
    CumulantSpec spec = free_cumulants_from_moments(MomentTable(m), 8);
    CHECK(spec.values() == rats({"1", "1", "0", "-1", "0", "2", "0", "-5"}));
}

TEST_CASE("pair-sum law: moments and inverted cumulants") {
    MomentTable m = semicircle_pair_sum_moments(14);
    CHECK(m.moment(2) == 1);
    CHECK(m.moment(4) == make_rational(5, 2));
    CHECK(m.moment(6) == make_rational(35, 4));
    CHECK(m.moment(8) == make_rational(147, 4));
    CHECK(m.moment(10) == make_rational(693, 4));
    CHECK(m.moment(12) == make_rational(14157, 16));
    CHECK(m.moment(14) == make_rational(306735, 64));
    CHECK(m.moment(7) == 0);

    // closed product form: m_{2p} = C_p C_{p+1} / 2^p
    for (int p = 1; p <= 7; ++p) {
        Rational expect =
            Rational(catalan_number(unsigned(p)) * catalan_number(unsigned(p + 1)));
        expect /= rational_pow(Rational(2), p);
        CHECK(m.moment(2 * p) == expect);
    }

    CumulantSpec kappa = free_cumulants_from_moments(m, 8);
    CHECK(kappa.values() == rats({"0", "1", "0", "1/2", "0", "3/4", "0", "7/4"}));
}

TEST_CASE("truncation is an error, not zero") {
    CumulantSpec spec = CumulantSpec::parse("0,1");
    CHECK_THROWS_AS(moments_from_free_cumulants(spec, 4), TruncationError);
    CHECK_THROWS_AS(mixed_moment(std::vector<int>{0, 0, 0}, spec), TruncationError);
    // max label multiplicity 2: fine even though the word is longer than the spec
    CHECK(mixed_moment(std::vector<int>{0, 1, 1, 0}, spec) == 1);
}

TEST_CASE("specific word moments") {
    CumulantSpec sc = CumulantSpec::parse("0,1,0,0");
    CHECK(mixed_moment(std::vector<int>{0, 1, 1, 0}, sc) == 1);  // nested pairing
    CHECK(mixed_moment(std::vector<int>{0, 1, 0, 1}, sc) == 0);  // crossing only
    CHECK(mixed_moment(std::vector<int>{0, 0, 1, 1}, sc) == 1);
    CHECK(mixed_moment(std::vector<int>{0, 0, 0, 0}, sc) == 2);  // Catalan C_2
    CHECK(mixed_moment(std::vector<int>{}, sc) == 1);
    CHECK(mixed_moment(std::vector<int>{5}, CumulantSpec::parse("3,1")) == 3);
}

TEST_CASE("interval DP agrees with direct enumeration") {
    CumulantSpec spec = CumulantSpec::parse("1,2,-1,1/2,1/3,0,2,0");
    WordMomentEvaluator eval(spec);
    for (int m = 0; m <= 7; ++m) {
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> word;
            for (int i = 0; i < m; ++i) word.push_back((mask >> i) & 1);
            CAPTURE(mask);
            CHECK(eval.moment(word) == word_moment_reference(word, spec));
        }
    }
    std::vector<int> w3 = {0, 1, 2, 1, 0, 2, 2};
    CHECK(eval.moment(w3) == word_moment_reference(w3, spec));
    std::vector<int> w4 = {3, 1, 4, 1, 5, 179, 3, 1};
    CHECK(eval.moment(w4) == word_moment_reference(w4, spec));
}

TEST_CASE("evaluator cache is transparent") {
    CumulantSpec spec = CumulantSpec::parse("1,1,1,1,1,1,1,1");
    WordMomentEvaluator eval(spec);
    std::vector<int> w = {0, 1, 0, 1, 2, 2};
    Rational first = eval.moment(w);
    CHECK(eval.moment(w) == first);
    // same kernel, different labels
    std::vector<int> w2 = {7, 3, 7, 3, 9, 9};
    CHECK(eval.moment(w2) == first);
}

TEST_CASE("moment table validation") {
    CHECK_THROWS_AS(MomentTable({Rational(2)}), std::invalid_argument);
    CHECK_THROWS_AS(MomentTable({}), std::invalid_argument);
    MomentTable m({Rational(1), Rational(0), Rational(1)});
    CHECK_THROWS_AS(m.moment(3), TruncationError);
    CHECK_THROWS_AS(free_cumulants_from_moments(m, 4), TruncationError);
}
