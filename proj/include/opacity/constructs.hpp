#pragma once

#include <memory>
#include <vector>

#include "opacity/announcement.hpp"
#include "opacity/gen.hpp"

namespace opacity {

// Two individuals A and B, two outcomes x and y (x gives A its first
// object, y gives B its first object), all four strict profiles, and
// the announcement promising an outcome that maximizes the number of
// individuals receiving their top object: {x}, {x,y}, {x,y}, {y}.
struct IntroExample {
    std::shared_ptr<const Environment> env;
    Announcement announcement;
};

IntroExample build_intro_example();

// The fixed strict ranking x1 > x2 > ... > xN. Requires N >= 3.
Ranking reference_ranking(int num_outcomes);

// Outcomes whose rank strictly improves in `p` relative to the
// reference ranking (fewer outcomes above them). `p` must be strict and
// different from the reference; the result is then never empty.
std::vector<OutcomeId> improved_outcomes(const Ranking& p);

// The p-highest member of improved_outcomes(p).
OutcomeId best_improved_outcome(const Ranking& p);

// Single-individual full strict domain with an announcement that is
// opaque only at the reference profile: there it promises the two
// worst reference outcomes {x_{N-1}, x_N}, everywhere else the
// singleton best improved outcome. Both completions at the reference
// profile satisfy weak Maskin monotonicity.
struct WmmExample {
    std::shared_ptr<const Environment> env;
    Ranking reference;
    Announcement announcement;
    Selection choose_second_worst; // picks x_{N-1} at the reference profile
    Selection choose_worst;        // picks x_N at the reference profile
};

WmmExample build_wmm_example(int num_outcomes,
                             std::size_t max_profiles = kDefaultMaxDomainProfiles);

// Per-profile image choice for announcements confined to a fixed
// outcome pair.
enum class PairImage {
    First,
    Second,
    Both,
};

// Announcement with every image inside {first, second}. Requires every
// individual in every profile to rank the two outcomes strictly; any
// such announcement guarantees non-bossiness.
Announcement build_two_outcome_announcement(std::shared_ptr<const Environment> env,
                                            OutcomeId first, OutcomeId second,
                                            const std::vector<PairImage>& images);
Announcement build_two_outcome_announcement(std::shared_ptr<const Environment> env,
                                            OutcomeId first, OutcomeId second, PairImage uniform);

} // namespace opacity
