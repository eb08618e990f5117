#include "doctest.h"

#include <array>
#include <vector>

#include "opacity/constructs.hpp"
#include "opacity/gen.hpp"
#include "opacity/properties.hpp"

using namespace opacity;

namespace {

OutcomeId o(int v) { return OutcomeId{v}; }

std::vector<OutcomeId> values(std::vector<int> raw) {
    std::vector<OutcomeId> converted;
    for (int v : raw)
        converted.push_back(o(v));
    return converted;
}

} // namespace

TEST_SUITE("constructs") {

TEST_CASE("the two-individual assignment example is laid out canonically") {
    const IntroExample intro = build_intro_example();
    const Environment& env = *intro.env;
    CHECK(env.num_outcomes() == 2);
    CHECK(env.outcome_label(o(0)) == "x");
    CHECK(env.outcome_label(o(1)) == "y");
    CHECK(env.individual_label(0) == "A");
    CHECK(env.individual_label(1) == "B");
    REQUIRE(env.domain().size() == 4);

    // Profile order: (A:x>y, B:x>y), (A:x>y, B:y>x), (A:y>x, B:x>y),
    // (A:y>x, B:y>x). The image favors whoever can be served: both
    // prefer x -> {x}; both prefer y -> {y}; split -> {x, y}.
    const Ranking xy = Ranking::strict({0, 1});
    const Ranking yx = Ranking::strict({1, 0});
    CHECK(env.domain().profile(0) == Profile({xy, xy}));
    CHECK(env.domain().profile(1) == Profile({xy, yx}));
    CHECK(env.domain().profile(2) == Profile({yx, xy}));
    CHECK(env.domain().profile(3) == Profile({yx, yx}));

    const Announcement& ann = intro.announcement;
    CHECK(ann.image(0) == std::vector<OutcomeId>{o(0)});
    CHECK(ann.image(1) == (std::vector<OutcomeId>{o(0), o(1)}));
    CHECK(ann.image(2) == (std::vector<OutcomeId>{o(0), o(1)}));
    CHECK(ann.image(3) == std::vector<OutcomeId>{o(1)});
    CHECK(ann.is_opaque());
    CHECK(ann.selection_count() == 4);
}

TEST_CASE("every selection of the assignment example is strategy-proof") {
    const Announcement ann = build_intro_example().announcement;
    const auto selections = enumerate_selections(ann);
    REQUIRE(selections.size() == 4);
    for (const Selection& sel : selections)
        CHECK(check_sp(sel).passed);
    CHECK(guarantee_pairwise(ann, Property::StrategyProofness).guaranteed);
    CHECK(guarantee_bruteforce(ann, Property::StrategyProofness).guaranteed);
}

TEST_CASE("the assignment example's domain explains itself") {
    const auto env = build_intro_example().env;
    CHECK(check_no_universal_indifference(env->domain()).passed);
    const auto richness = check_richness(env->domain());
    REQUIRE(!richness.passed);
    // Individual A's very first obligation already has no deviation:
    // with two outcomes, keeping x above y pins the entire ranking.
    CHECK(richness.counterexample->profile == 0);
    CHECK(richness.counterexample->individual == 0);
    CHECK(richness.counterexample->preferred == o(0));
    CHECK(richness.counterexample->dispreferred == o(1));
}

TEST_CASE("the reference ranking is the identity order") {
    CHECK(reference_ranking(3) == Ranking::strict({0, 1, 2}));
    CHECK(reference_ranking(5) == Ranking::strict({0, 1, 2, 3, 4}));
    CHECK_THROWS_AS(reference_ranking(2), std::invalid_argument);
}

TEST_CASE("improved outcomes are those that climbed past the reference rank") {
    // x1 > x5 > x4 > x2 > x3: x5 climbs from rank 4 to 1 and x4 from
    // 3 to 2; everything else stays or falls. The best improved
    // outcome under the new ranking is x5.
    const Ranking footnote = Ranking::strict({0, 4, 3, 1, 2});
    CHECK(improved_outcomes(footnote) == (std::vector<OutcomeId>{o(3), o(4)}));
    CHECK(best_improved_outcome(footnote) == o(4));
}

TEST_CASE("improved outcomes on the three-outcome domain") {
    CHECK(improved_outcomes(Ranking::strict({0, 2, 1})) == std::vector<OutcomeId>{o(2)});
    CHECK(improved_outcomes(Ranking::strict({1, 0, 2})) == std::vector<OutcomeId>{o(1)});
    CHECK(improved_outcomes(Ranking::strict({1, 2, 0})) ==
          (std::vector<OutcomeId>{o(1), o(2)}));
    CHECK(best_improved_outcome(Ranking::strict({1, 2, 0})) == o(1));
    CHECK(improved_outcomes(Ranking::strict({2, 0, 1})) == std::vector<OutcomeId>{o(2)});
    // Full reversal: only the bottom outcome reaches a strictly better
    // rank; the middle one merely keeps its class.
    CHECK(improved_outcomes(Ranking::strict({2, 1, 0})) == std::vector<OutcomeId>{o(2)});
    CHECK(best_improved_outcome(Ranking::strict({2, 1, 0})) == o(2));
}

TEST_CASE("improved outcomes reject the reference itself and weak rankings") {
    CHECK_THROWS_AS(improved_outcomes(Ranking::strict({0, 1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(improved_outcomes(Ranking({{o(0), o(1)}, {o(2)}})), std::invalid_argument);
}

TEST_CASE("every non-reference strict ranking improves something") {
    for (int n : {3, 4, 5}) {
        const Ranking reference = reference_ranking(n);
        for (const Ranking& p : all_strict_rankings(n)) {
            if (p == reference)
                continue;
            const auto improved = improved_outcomes(p);
            CHECK(!improved.empty());
            const OutcomeId best = best_improved_outcome(p);
            for (OutcomeId x : improved) {
                CHECK(p.class_of(x) < reference.class_of(x));
                CHECK(p.weakly_prefers(best, x));
            }
        }
    }
}

TEST_CASE("the monotonicity example is opaque only at the reference profile") {
    const WmmExample example = build_wmm_example(3);
    const Announcement& ann = example.announcement;
    REQUIRE(ann.domain_size() == 6);
    CHECK(example.reference == Ranking::strict({0, 1, 2}));
    CHECK(example.env->domain().profile(0) == Profile({example.reference}));

    CHECK(ann.image(0) == (std::vector<OutcomeId>{o(1), o(2)})); // the two worst
    CHECK(ann.image(1) == std::vector<OutcomeId>{o(2)});
    CHECK(ann.image(2) == std::vector<OutcomeId>{o(1)});
    CHECK(ann.image(3) == std::vector<OutcomeId>{o(1)});
    CHECK(ann.image(4) == std::vector<OutcomeId>{o(2)});
    CHECK(ann.image(5) == std::vector<OutcomeId>{o(2)});
    CHECK(ann.non_singleton_images() == 1);
    CHECK(ann.selection_count() == 2);

    CHECK(example.choose_second_worst.values() == values({1, 2, 1, 1, 2, 2}));
    CHECK(example.choose_worst.values() == values({2, 2, 1, 1, 2, 2}));
}

TEST_CASE("both completions of the monotonicity example pass the checker") {
    for (int n : {3, 4, 5}) {
        const WmmExample example = build_wmm_example(n);
        CHECK(check_wmm(example.choose_second_worst).passed);
        CHECK(check_wmm(example.choose_worst).passed);
        CHECK(guarantee_pairwise(example.announcement,
                                 Property::WeakMaskinMonotonicity).guaranteed);
        CHECK(guarantee_bruteforce(example.announcement,
                                   Property::WeakMaskinMonotonicity).guaranteed);
        // The same opacity kills strategy-proofness, which is the point
        // of announcing two outcomes at the reference profile.
        CHECK(!guarantee_pairwise(example.announcement,
                                  Property::StrategyProofness).guaranteed);
    }
}

TEST_CASE("the two completions are exactly the enumerated selections") {
    const WmmExample example = build_wmm_example(4);
    const auto selections = enumerate_selections(example.announcement);
    REQUIRE(selections.size() == 2);
    CHECK(selections[0] == example.choose_second_worst);
    CHECK(selections[1] == example.choose_worst);
    CHECK_THROWS_AS(build_wmm_example(2), std::invalid_argument);
}

TEST_CASE("two-outcome announcements guarantee non-bossiness by construction") {
    const auto env = build_intro_example().env;
    const auto x = env->outcome_by_label("x").value();
    const auto y = env->outcome_by_label("y").value();

    // Sweep all 3^4 per-profile image assignments over {x}, {y}, {x,y}.
    const std::array<PairImage, 3> choices{PairImage::First, PairImage::Second, PairImage::Both};
    for (int code = 0; code < 81; ++code) {
        std::vector<PairImage> rule;
        for (int p = 0, rest = code; p < 4; ++p, rest /= 3)
            rule.push_back(choices[static_cast<std::size_t>(rest % 3)]);
        const Announcement ann = build_two_outcome_announcement(env, x, y, rule);
        for (NonBossyReading reading : {NonBossyReading::EitherSide, NonBossyReading::BaseOnly}) {
            CHECK(guarantee_pairwise(ann, Property::NonBossiness, {reading}).guaranteed);
            CHECK(guarantee_bruteforce(ann, Property::NonBossiness, kDefaultSelectionCap,
                                       {reading}).guaranteed);
        }
    }
}

TEST_CASE("the uniform two-outcome overload widens every image") {
    const auto env = build_intro_example().env;
    const auto x = env->outcome_by_label("x").value();
    const auto y = env->outcome_by_label("y").value();
    const Announcement ann = build_two_outcome_announcement(env, x, y, PairImage::Both);
    for (int p = 0; p < ann.domain_size(); ++p)
        CHECK(ann.image(p) == (std::vector<OutcomeId>{x, y}));
    CHECK(ann.selection_count() == 16);

    const Announcement only_x = build_two_outcome_announcement(env, x, y, PairImage::First);
    CHECK(only_x.is_fully_transparent());
    for (int p = 0; p < only_x.domain_size(); ++p)
        CHECK(only_x.image(p) == std::vector<OutcomeId>{x});
}

TEST_CASE("two-outcome announcements require a strict comparison everywhere") {
    // A profile where individual i2 is indifferent between the chosen
    // pair disqualifies the construction, and the error says where.
    const Ranking strict = Ranking::strict({0, 1, 2});
    const Ranking tied({{o(0), o(1)}, {o(2)}});
    const Domain dom({Profile({strict, strict}), Profile({strict, tied})});
    const auto env = standard_environment(dom);
    CHECK_NOTHROW(build_two_outcome_announcement(env, o(0), o(2), PairImage::Both));
    try {
        build_two_outcome_announcement(env, o(0), o(1), PairImage::Both);
        FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
        const std::string message = e.what();
        CHECK(message.find("profile 1") != std::string::npos);
        CHECK(message.find("i2") != std::string::npos);
    }

    CHECK_THROWS_AS(build_two_outcome_announcement(env, o(0), o(0), PairImage::Both),
                    std::invalid_argument); // the pair must be distinct
    CHECK_THROWS_AS(build_two_outcome_announcement(env, o(0), o(2),
                                                   std::vector<PairImage>{PairImage::Both}),
                    std::invalid_argument); // one entry per profile
}

TEST_CASE("mixed per-profile rules map onto the expected images") {
    const auto env = build_intro_example().env;
    const auto x = env->outcome_by_label("x").value();
    const auto y = env->outcome_by_label("y").value();
    const Announcement ann = build_two_outcome_announcement(
        env, x, y, {PairImage::First, PairImage::Both, PairImage::Second, PairImage::Both});
    CHECK(ann.image(0) == std::vector<OutcomeId>{x});
    CHECK(ann.image(1) == (std::vector<OutcomeId>{x, y}));
    CHECK(ann.image(2) == std::vector<OutcomeId>{y});
    CHECK(ann.image(3) == (std::vector<OutcomeId>{x, y}));
}

} // TEST_SUITE("constructs")
