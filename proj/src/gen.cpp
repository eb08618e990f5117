#include "opacity/gen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "opacity/properties.hpp"

namespace opacity {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Profile NM where some outcome pair is unranked by every individual.
bool universally_indifferent_somewhere(const Profile& profile) {
    const int n = profile.num_outcomes();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            bool strict = false;
            for (int i = 0; i < profile.num_individuals() && !strict; ++i)
                strict = !profile.ranking(i).indifferent(OutcomeId{x}, OutcomeId{y});
            if (!strict)
                return true;
        }
    return false;
}

Domain cross_product_domain(const std::vector<Ranking>& rankings, int individuals,
                            std::size_t max_profiles, bool filter_universal_indifference) {
    if (individuals < 1)
        throw std::invalid_argument("domain generation: at least one individual required");
    BigCount total = 1;
    for (int i = 0; i < individuals; ++i)
        total *= static_cast<unsigned>(rankings.size());
    if (total > max_profiles)
        throw std::invalid_argument("domain generation: " + total.str() +
                                    " profiles exceed the limit of " + std::to_string(max_profiles));

    std::vector<Profile> profiles;
    std::vector<std::size_t> cursor(static_cast<std::size_t>(individuals), 0);
    while (true) {
        std::vector<Ranking> coordinates;
        coordinates.reserve(cursor.size());
        for (std::size_t idx : cursor)
            coordinates.push_back(rankings[idx]);
        Profile profile(std::move(coordinates));
        if (!filter_universal_indifference || !universally_indifferent_somewhere(profile))
            profiles.push_back(std::move(profile));
        int i = individuals - 1;
        for (; i >= 0; --i) {
            if (++cursor[static_cast<std::size_t>(i)] < rankings.size())
                break;
            cursor[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0)
            break;
    }
    return Domain(std::move(profiles));
}

} // namespace

std::uint64_t SplitMix64::next() {
    state_ += kGamma;
    return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("SplitMix64::below: bound must be positive");
    // Rejection sampling avoids modulo bias.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t draw;
    do {
        draw = next();
    } while (draw >= limit);
    return draw % bound;
}

double SplitMix64::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + kGamma * (index + 1));
}

std::vector<Ranking> all_strict_rankings(int num_outcomes) {
    if (num_outcomes < 1)
        throw std::invalid_argument("all_strict_rankings: at least one outcome required");
    std::vector<int> order(static_cast<std::size_t>(num_outcomes));
    std::iota(order.begin(), order.end(), 0);
    std::vector<Ranking> rankings;
    do {
        rankings.push_back(Ranking::strict(order));
    } while (std::next_permutation(order.begin(), order.end()));
    return rankings;
}

std::vector<Ranking> all_weak_rankings(int num_outcomes) {
    if (num_outcomes < 1)
        throw std::invalid_argument("all_weak_rankings: at least one outcome required");
    if (num_outcomes > 12)
        throw std::invalid_argument("all_weak_rankings: too many outcomes to enumerate");
    std::vector<Ranking> rankings;
    std::vector<std::vector<OutcomeId>> classes;
    auto members = [&](unsigned mask) {
        std::vector<OutcomeId> outcomes;
        for (int x = 0; x < num_outcomes; ++x)
            if (mask & (1u << x))
                outcomes.push_back(OutcomeId{x});
        return outcomes;
    };
    auto recurse = [&](auto&& self, unsigned remaining) -> void {
        if (remaining == 0) {
            rankings.push_back(Ranking(classes));
            return;
        }
        for (unsigned sub = 1; sub <= remaining; ++sub) {
            if ((sub & remaining) != sub)
                continue;
            classes.push_back(members(sub));
            self(self, remaining & ~sub);
            classes.pop_back();
        }
    };
    recurse(recurse, (1u << num_outcomes) - 1);
    return rankings;
}

Domain full_strict_domain(int individuals, int num_outcomes, std::size_t max_profiles) {
    return cross_product_domain(all_strict_rankings(num_outcomes), individuals, max_profiles, false);
}

Domain full_weak_domain(int individuals, int num_outcomes, std::size_t max_profiles) {
    return cross_product_domain(all_weak_rankings(num_outcomes), individuals, max_profiles, true);
}

std::shared_ptr<const Environment> standard_environment(Domain domain) {
    std::vector<std::string> outcomes;
    for (int x = 0; x < domain.num_outcomes(); ++x)
        outcomes.push_back("x" + std::to_string(x + 1));
    std::vector<std::string> individuals;
    for (int i = 0; i < domain.num_individuals(); ++i)
        individuals.push_back("i" + std::to_string(i + 1));
    return std::make_shared<const Environment>(std::move(outcomes), std::move(individuals),
                                               std::move(domain));
}

std::shared_ptr<const Environment> environment_for(const GenConfig& config) {
    switch (config.domain_kind) {
    case DomainKind::FullStrict:
        return standard_environment(full_strict_domain(config.num_individuals, config.num_outcomes));
    case DomainKind::FullWeak:
        return standard_environment(full_weak_domain(config.num_individuals, config.num_outcomes));
    case DomainKind::Explicit:
        throw std::invalid_argument("environment_for: an explicit domain needs a caller-built environment");
    }
    throw std::invalid_argument("environment_for: unknown domain kind");
}

Announcement random_announcement(const std::shared_ptr<const Environment>& env,
                                 const GenConfig& config) {
    if (!env)
        throw std::invalid_argument("random_announcement: environment must not be null");
    if (config.opacity_rate < 0.0 || config.opacity_rate > 1.0)
        throw std::invalid_argument("random_announcement: opacity_rate must lie in [0, 1]");
    if (config.max_image_size < 1)
        throw std::invalid_argument("random_announcement: max_image_size must be positive");

    const int n = env->num_outcomes();
    const int limit = std::min(config.max_image_size, n);
    SplitMix64 rng(config.seed);
    std::vector<std::vector<OutcomeId>> images;
    images.reserve(static_cast<std::size_t>(env->domain().size()));
    for (int p = 0; p < env->domain().size(); ++p) {
        std::vector<OutcomeId> image{OutcomeId{static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))}};
        if (limit >= 2 && rng.unit() < config.opacity_rate) {
            const int extra = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(limit - 1)));
            std::vector<OutcomeId> candidates;
            for (int x = 0; x < n; ++x)
                if (OutcomeId{x} != image.front())
                    candidates.push_back(OutcomeId{x});
            for (int k = 0; k < extra; ++k) {
                const auto pick = static_cast<std::size_t>(rng.below(candidates.size()));
                image.push_back(candidates[pick]);
                candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
            }
        }
        images.push_back(std::move(image));
    }
    return Announcement(env, std::move(images));
}

CampaignReport run_sp_campaign(const GenConfig& config, int trials) {
    return run_sp_campaign(environment_for(config), config, trials);
}

CampaignReport run_sp_campaign(const std::shared_ptr<const Environment>& env,
                               const GenConfig& config, int trials) {
    if (!env)
        throw std::invalid_argument("run_sp_campaign: environment must not be null");
    if (trials < 1)
        throw std::invalid_argument("run_sp_campaign: at least one trial required");
    if (env->num_outcomes() < 3)
        throw std::invalid_argument("run_sp_campaign: at least three outcomes required");
    if (!check_no_universal_indifference(env->domain()).passed)
        throw std::invalid_argument("run_sp_campaign: domain has universally indifferent outcome pairs");
    if (!check_richness(env->domain()).passed)
        throw std::invalid_argument("run_sp_campaign: domain is not rich");

    CampaignReport report;
    report.config = config;
    report.trials = trials;

    for (int trial = 0; trial < trials; ++trial) {
        auto anomaly = [&](const std::string& message, int* counter) {
            report.anomalies.push_back({trial, message});
            if (counter)
                ++*counter;
        };
        try {
            GenConfig trial_config = config;
            trial_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
            Announcement announcement = random_announcement(env, trial_config);
            report.non_singleton_images += announcement.non_singleton_images();
            report.image_excess += announcement.image_excess();

            if (announcement.is_fully_transparent()) {
                ++report.transparent_trials;
                std::vector<OutcomeId> values;
                values.reserve(static_cast<std::size_t>(announcement.domain_size()));
                for (int p = 0; p < announcement.domain_size(); ++p)
                    values.push_back(announcement.image(p).front());
                const Selection unique(env, std::move(values));
                const bool passes = check_sp(unique).passed;
                const auto verdict = guarantee_pairwise(announcement, Property::StrategyProofness);
                if (verdict.guaranteed != passes)
                    anomaly("transparent announcement: guarantee verdict disagrees with its unique selection",
                            &report.verdict_anomalies);
                continue;
            }

            ++report.opaque_trials;
            const auto verdict = guarantee_pairwise(announcement, Property::StrategyProofness);
            if (verdict.guaranteed) {
                anomaly("opaque announcement reported as guaranteeing strategy-proofness",
                        &report.verdict_anomalies);
                continue;
            }
            ++report.opaque_not_guaranteed;
            if (!verdict.witness || !verdict.violation ||
                !violation_holds(*verdict.witness, *verdict.violation))
                anomaly("pairwise witness failed to revalidate", &report.verdict_anomalies);

            const SpWitness witness = sp_violation_witness(announcement);
            if (check_sp(witness.selection).passed)
                anomaly("constructed witness selection passes the strategy-proofness check",
                        &report.witness_anomalies);
            else if (!violation_holds(witness.selection, witness.violation))
                anomaly("constructed witness violation failed to revalidate",
                        &report.witness_anomalies);
        } catch (const std::exception& e) {
            anomaly(std::string("exception: ") + e.what(), &report.witness_anomalies);
        }
    }
    return report;
}

} // namespace opacity
