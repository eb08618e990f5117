#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "opacity/announcement.hpp"

namespace opacity {

// Full cross-product domains refuse to materialize past this many
// profiles unless the caller raises the limit explicitly.
inline constexpr std::size_t kDefaultMaxDomainProfiles = std::size_t{1} << 17;

// SplitMix64 stream (Steele/Lea/Flood mixing constants). Bounded draws
// use rejection sampling on the raw 64-bit outputs, so identical seeds
// reproduce identical draws on every platform, independent of the
// standard library's distribution implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound); // uniform in [0, bound)
    double unit();                            // uniform in [0, 1), 53-bit

private:
    std::uint64_t state_;
};

// The (index + 1)-th raw output of a SplitMix64 stream seeded with
// `seed`, computed in O(1). Used to derive independent per-trial seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class DomainKind {
    FullStrict, // every combination of strict rankings
    FullWeak,   // every combination of weak rankings, minus profiles
                // where some outcome pair is unranked by everyone
    Explicit,   // caller supplies the environment
};

struct GenConfig {
    std::uint64_t seed = 0;
    int num_outcomes = 3;
    int num_individuals = 1;
    DomainKind domain_kind = DomainKind::FullStrict;
    double opacity_rate = 0.5; // probability that a profile's image is widened
    int max_image_size = 2;    // widened images never exceed this
};

// All strict rankings of n outcomes in lexicographic permutation order
// (the identity permutation first).
std::vector<Ranking> all_strict_rankings(int num_outcomes);

// All weak rankings (ordered partitions) of n outcomes, deterministic
// order: first class chosen by ascending bitmask, then recurse.
std::vector<Ranking> all_weak_rankings(int num_outcomes);

Domain full_strict_domain(int individuals, int num_outcomes,
                          std::size_t max_profiles = kDefaultMaxDomainProfiles);
Domain full_weak_domain(int individuals, int num_outcomes,
                        std::size_t max_profiles = kDefaultMaxDomainProfiles);

// Wraps a domain with generated labels x1..xN and i1..iK.
std::shared_ptr<const Environment> standard_environment(Domain domain);

// Environment described by the config (FullStrict or FullWeak).
std::shared_ptr<const Environment> environment_for(const GenConfig& config);

// Seeded announcement: each profile draws a uniform singleton, then
// with probability opacity_rate widens it by 1..max_image_size-1
// distinct extra outcomes (uniform without replacement). Identical
// (environment, config) inputs yield identical announcements.
Announcement random_announcement(const std::shared_ptr<const Environment>& env,
                                 const GenConfig& config);

struct CampaignAnomaly {
    int trial = 0;
    std::string message;
};

struct CampaignReport {
    GenConfig config;
    int trials = 0;
    int opaque_trials = 0;
    int transparent_trials = 0;
    int opaque_not_guaranteed = 0;  // must equal opaque_trials
    int witness_anomalies = 0;      // witness construction or validation failures
    int verdict_anomalies = 0;      // guarantee verdicts contradicting the expectation
    std::int64_t non_singleton_images = 0; // aggregate over all trials
    std::int64_t image_excess = 0;         // aggregate sum of |image|-1
    std::vector<CampaignAnomaly> anomalies;

    bool ok() const { return anomalies.empty(); }
};

// Replicated refutation experiment: per trial, draw an announcement
// with a derived seed; opaque ones must be reported not guaranteed for
// strategy-proofness with a validated constructive witness, transparent
// ones must match the verdict of their unique selection. The domain
// must be rich, pass the universal-indifference check, and have at
// least three outcomes.
CampaignReport run_sp_campaign(const GenConfig& config, int trials);
CampaignReport run_sp_campaign(const std::shared_ptr<const Environment>& env,
                               const GenConfig& config, int trials);

} // namespace opacity
