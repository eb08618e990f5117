#include "opacity/constructs.hpp"

#include <stdexcept>

namespace opacity {

IntroExample build_intro_example() {
    const Ranking prefers_x = Ranking::strict({0, 1});
    const Ranking prefers_y = Ranking::strict({1, 0});
    std::vector<Profile> profiles{
        Profile({prefers_x, prefers_x}),
        Profile({prefers_x, prefers_y}),
        Profile({prefers_y, prefers_x}),
        Profile({prefers_y, prefers_y}),
    };
    auto env = std::make_shared<const Environment>(std::vector<std::string>{"x", "y"},
                                                   std::vector<std::string>{"A", "B"},
                                                   Domain(std::move(profiles)));
    std::vector<std::vector<OutcomeId>> images{
        {OutcomeId{0}},
        {OutcomeId{0}, OutcomeId{1}},
        {OutcomeId{0}, OutcomeId{1}},
        {OutcomeId{1}},
    };
    return {env, Announcement(env, std::move(images))};
}

Ranking reference_ranking(int num_outcomes) {
    if (num_outcomes < 3)
        throw std::invalid_argument("reference_ranking: at least three outcomes required");
    std::vector<int> order(static_cast<std::size_t>(num_outcomes));
    for (int x = 0; x < num_outcomes; ++x)
        order[static_cast<std::size_t>(x)] = x;
    return Ranking::strict(order);
}

std::vector<OutcomeId> improved_outcomes(const Ranking& p) {
    if (p.num_outcomes() < 3)
        throw std::invalid_argument("improved_outcomes: at least three outcomes required");
    if (!p.is_strict())
        throw std::invalid_argument("improved_outcomes: ranking must be strict");
    // Under the reference ranking, outcome k has exactly k outcomes
    // above it, so "improved" means a class position below k.
    std::vector<OutcomeId> improved;
    for (int x = 0; x < p.num_outcomes(); ++x)
        if (p.class_of(OutcomeId{x}) < x)
            improved.push_back(OutcomeId{x});
    if (improved.empty())
        throw std::invalid_argument("improved_outcomes: ranking equals the reference ranking");
    return improved;
}

OutcomeId best_improved_outcome(const Ranking& p) {
    const std::vector<OutcomeId> improved = improved_outcomes(p);
    OutcomeId best = improved.front();
    for (OutcomeId x : improved)
        if (p.prefers(x, best))
            best = x;
    return best;
}

WmmExample build_wmm_example(int num_outcomes, std::size_t max_profiles) {
    const Ranking reference = reference_ranking(num_outcomes);
    auto env = standard_environment(full_strict_domain(1, num_outcomes, max_profiles));
    const Domain& dom = env->domain();
    const int reference_index = dom.find(Profile({reference})).value();

    const OutcomeId second_worst{num_outcomes - 2};
    const OutcomeId worst{num_outcomes - 1};

    std::vector<std::vector<OutcomeId>> images;
    images.reserve(static_cast<std::size_t>(dom.size()));
    for (int p = 0; p < dom.size(); ++p) {
        const Ranking& ranking = dom.profile(p).ranking(0);
        if (ranking == reference)
            images.push_back({second_worst, worst});
        else
            images.push_back({best_improved_outcome(ranking)});
    }
    Announcement announcement(env, std::move(images));

    auto completion = [&](OutcomeId at_reference) {
        std::vector<OutcomeId> values;
        values.reserve(static_cast<std::size_t>(dom.size()));
        for (int p = 0; p < dom.size(); ++p)
            values.push_back(p == reference_index ? at_reference : announcement.image(p).front());
        return Selection(env, std::move(values));
    };

    return {env, reference, announcement, completion(second_worst), completion(worst)};
}

Announcement build_two_outcome_announcement(std::shared_ptr<const Environment> env,
                                            OutcomeId first, OutcomeId second,
                                            const std::vector<PairImage>& images) {
    if (!env)
        throw std::invalid_argument("build_two_outcome_announcement: environment must not be null");
    if (first == second)
        throw std::invalid_argument("build_two_outcome_announcement: the two outcomes must differ");
    const Domain& dom = env->domain();
    for (int p = 0; p < dom.size(); ++p)
        for (int i = 0; i < env->num_individuals(); ++i)
            if (dom.profile(p).ranking(i).indifferent(first, second))
                throw std::invalid_argument(
                    "build_two_outcome_announcement: profile " + std::to_string(p) +
                    ", individual " + env->individual_label(i) + " is indifferent between " +
                    env->outcome_label(first) + " and " + env->outcome_label(second));
    if (static_cast<int>(images.size()) != dom.size())
        throw std::invalid_argument("build_two_outcome_announcement: " +
                                    std::to_string(images.size()) + " image choices for " +
                                    std::to_string(dom.size()) + " profiles");
    std::vector<std::vector<OutcomeId>> resolved;
    resolved.reserve(images.size());
    for (PairImage choice : images) {
        switch (choice) {
        case PairImage::First: resolved.push_back({first}); break;
        case PairImage::Second: resolved.push_back({second}); break;
        case PairImage::Both: resolved.push_back({first, second}); break;
        }
    }
    return Announcement(std::move(env), std::move(resolved));
}

Announcement build_two_outcome_announcement(std::shared_ptr<const Environment> env,
                                            OutcomeId first, OutcomeId second, PairImage uniform) {
    const std::vector<PairImage> images(static_cast<std::size_t>(env ? env->domain().size() : 0),
                                        uniform);
    return build_two_outcome_announcement(std::move(env), first, second, images);
}

} // namespace opacity
