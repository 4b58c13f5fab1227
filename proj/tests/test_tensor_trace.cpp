#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tclt/errors.hpp"
#include "tclt/partitions.hpp"
#include "tclt/rational.hpp"
#include "tclt/tensor_trace.hpp"

using namespace tclt;

namespace {
const CumulantSpec kStd = CumulantSpec::parse("1,1,0,0,0,0,0,0"); // lambda=1, sigma2=1, q=2/3
}

TEST_CASE("tensor params") {
    TensorParams p(Rational(1), Rational(1));
    CHECK(p.delta2() == 3);
    CHECK(p.q() == make_rational(2, 3));

    TensorParams centred(Rational(0), Rational(2));
    CHECK(centred.q() == 0);
    CHECK(centred.delta2() == 4);

    TensorParams other(make_rational(1, 2), make_rational(3, 4));
    CHECK(other.q() == make_rational(2, 5));

    CHECK_THROWS_AS(TensorParams(Rational(1), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(TensorParams(Rational(1), Rational(-1)), std::invalid_argument);
}

TEST_CASE("closed form on canonical shapes") {
    TensorParams p = TensorParams::from_spec(kStd); // q = 2/3
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,2"), p) == 1);
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,4|2,3"), p) == 1);
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,2|3,4"), p) == 1);
    // crossing square: q^2/2 = 2/9
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,3|2,4"), p) == make_rational(2, 9));
    // pairwise-crossing triple: odd cycle in the crossing graph
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,4|2,5|3,6"), p) == 0);
    // path of three crossing pairs: bipartite, 2 (q/2)^3 = q^3/4
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,3|2,5|4,6"), p) == make_rational(2, 27));
    // product over components: square times square = (q^2/2)^2
    CHECK(tensor_trace_closed_form(PairPartition::parse("1,3|2,4|5,7|6,8"), p) ==
          make_rational(4, 81));
}

TEST_CASE("reduction walkthroughs") {
    TensorParams p = TensorParams::from_spec(kStd);
    // nested intervals collapse to the empty pairing
    CHECK(tensor_trace_reduced(PairPartition::parse("1,4|2,3"), p) == 1);
    CHECK(tensor_trace_reduced(PairPartition::parse("1,6|2,3|4,5"), p) == 1);
    // {1,6} is cyclically adjacent via p+1 == 1; interior square remains
    CHECK(tensor_trace_reduced(PairPartition::parse("1,6|2,4|3,5"), p) == make_rational(2, 9));
    // split pair around a self-matched interior
    CHECK(tensor_trace_reduced(PairPartition::parse("1,8|2,4|3,5|6,7"), p) == make_rational(2, 9));
    CHECK(tensor_trace_reduced(PairPartition::parse("1,4|2,5|3,6"), p) == 0);
}

TEST_CASE("expansion on frozen values") {
    CHECK(tensor_trace_expansion(PairPartition::parse("1,3|2,4").partition(), kStd) ==
          make_rational(2, 9));
    CHECK(tensor_trace_expansion(PairPartition::parse("1,6|2,4|3,5").partition(), kStd) ==
          make_rational(2, 9));
    CHECK(tensor_trace_expansion(PairPartition::parse("1,4|2,5|3,6").partition(), kStd) == 0);
    // non-pairing blocks are allowed: single 4-block under the semicircle
    CHECK(tensor_trace_expansion(Partition::from_blocks(4, {{1, 2, 3, 4}}),
                                 CumulantSpec::parse("0,1,0,0")) == 4);
    // singleton blocks vanish
    CHECK(tensor_trace_expansion(Partition::from_blocks(3, {{1}, {2, 3}}), kStd) == 0);
    // empty product
    CHECK(tensor_trace_expansion(Partition::from_blocks(0, {}), kStd) == 1);
}

TEST_CASE("three evaluators agree on every pairing") {
    for (const char* spec_text : {"1,1,0,0,0,0,0,0", "0,1,0,0,0,0,0,0", "1/2,3/4,1,-1,0,0,0,0"}) {
        CumulantSpec spec = CumulantSpec::parse(spec_text);
        WordMomentEvaluator eval(spec);
        TensorParams params = TensorParams::from_spec(spec);
        for (int p = 2; p <= 8; p += 2) {
            for_each_pairing(p, [&](const std::vector<std::pair<int, int>>& pairs) {
                PairPartition pp = PairPartition::from_pairs(p, pairs);
                Rational closed = tensor_trace_closed_form(pp, params);
                CAPTURE(pp.to_string());
                CHECK(closed == tensor_trace_reduced(pp, params));
                CHECK(closed == tensor_trace_expansion(pp.partition(), eval));
            });
        }
    }
}

TEST_CASE("noncrossing pairings all evaluate to 1") {
    TensorParams p(make_rational(2, 3), make_rational(5, 7));
    for (int n = 2; n <= 10; n += 2) {
        for_each_pairing(n, [&](const std::vector<std::pair<int, int>>& pairs) {
            if (classify_pairing(pairs).crossing_blocks != 0) return;
            CHECK(tensor_trace_closed_form(PairPartition::from_pairs(n, pairs), p) == 1);
        });
    }
}

TEST_CASE("universality of the pairing sums") {
    // centred specs: the sums are the semicircle moments (Catalan)
    for (const char* text : {"0,1,0,0", "0,1,0,-1", "0,1,0,2", "0,1,0,-1,0,2"}) {
        CumulantSpec spec = CumulantSpec::parse(text).extended_with_zeros(6);
        CHECK(pairing_trace_sum(4, spec) == 2);
        CHECK(pairing_trace_sum(6, spec) == 5);
    }
    // lambda = 1: q = 2/3
    CHECK(pairing_trace_sum(4, kStd) == make_rational(20, 9));
    CHECK(pairing_trace_sum(6, kStd) == make_rational(59, 9));

    UniversalityResult r =
        universality_check(6, CumulantSpec::parse("0,1,0,0,0,0"), CumulantSpec::parse("0,1,0,2,0,0"));
    CHECK(r.match);
    CHECK(r.first == 5);

    // two-point law at lambda = sigma = 1 against the zero-extended spec
    r = universality_check(6, kStd, CumulantSpec::parse("1,1,0,-1,0,2,0,-5"));
    CHECK(r.match);
    CHECK(r.first == make_rational(59, 9));

    CHECK_THROWS_AS(universality_check(4, CumulantSpec::parse("0,1,0,0"),
                                       CumulantSpec::parse("0,2,0,0")),
                    std::invalid_argument);
}

TEST_CASE("expansion guard") {
    std::vector<std::vector<int>> blocks;
    for (int i = 1; i <= 18; i += 2) blocks.push_back({i, i + 1});
    Partition big = Partition::from_blocks(18, blocks);
    CHECK_THROWS_AS(tensor_trace_expansion(big, kStd), CapExceededError);
}
