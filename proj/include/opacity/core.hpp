#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace opacity {

// Index into an environment's outcome table.
struct OutcomeId {
    int value = 0;
    constexpr auto operator<=>(const OutcomeId&) const = default;
};

// A weak order over outcomes, stored as an ordered partition into
// indifference classes (earlier class = strictly more preferred).
// Canonical form sorts each class by outcome index, so structural
// equality coincides with relational equality. Completeness and
// transitivity hold by construction of the partition.
class Ranking {
public:
    // `classes` must partition {0..N-1} where N is the total number of
    // outcome ids mentioned; every class must be non-empty.
    explicit Ranking(std::vector<std::vector<OutcomeId>> classes);

    // Strict ranking given best-to-worst outcome indices.
    static Ranking strict(std::span<const int> best_to_worst);
    static Ranking strict(std::initializer_list<int> best_to_worst);

    int num_outcomes() const { return static_cast<int>(class_of_.size()); }
    int num_classes() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<OutcomeId>>& classes() const { return classes_; }

    // Position of x's indifference class; 0 is the most preferred class.
    int class_of(OutcomeId x) const;

    bool prefers(OutcomeId x, OutcomeId y) const;        // x strictly above y
    bool weakly_prefers(OutcomeId x, OutcomeId y) const; // x at least as high as y
    bool indifferent(OutcomeId x, OutcomeId y) const;    // same class
    bool is_strict() const;                              // all classes singletons

    bool operator==(const Ranking&) const = default;

private:
    std::vector<std::vector<OutcomeId>> classes_;
    std::vector<int> class_of_; // outcome index -> class position
};

// One ranking per individual.
class Profile {
public:
    explicit Profile(std::vector<Ranking> rankings);

    int num_individuals() const { return static_cast<int>(rankings_.size()); }
    int num_outcomes() const { return rankings_.front().num_outcomes(); }
    const Ranking& ranking(int individual) const;
    const std::vector<Ranking>& rankings() const { return rankings_; }

    bool operator==(const Profile&) const = default;

private:
    std::vector<Ranking> rankings_;
};

// A finite ordered set of distinct profiles. Duplicates are removed on
// construction; iteration order is insertion order, which fixes the
// canonical order used by every "first counterexample" report.
class Domain {
public:
    explicit Domain(std::vector<Profile> profiles);

    int size() const { return static_cast<int>(profiles_.size()); }
    const Profile& profile(int index) const;
    const std::vector<Profile>& profiles() const { return profiles_; }
    std::optional<int> find(const Profile& p) const;

    int num_outcomes() const { return profiles_.front().num_outcomes(); }
    int num_individuals() const { return profiles_.front().num_individuals(); }

    bool operator==(const Domain& other) const { return profiles_ == other.profiles_; }

private:
    std::vector<Profile> profiles_;
    std::unordered_map<std::string, int> index_;
};

// Outcome and individual label tables plus the preference domain.
// At least two outcomes are required; richness and other operation
// preconditions are checked by the operations, never assumed here.
class Environment {
public:
    Environment(std::vector<std::string> outcome_labels,
                std::vector<std::string> individual_labels,
                Domain domain);

    int num_outcomes() const { return static_cast<int>(outcome_labels_.size()); }
    int num_individuals() const { return static_cast<int>(individual_labels_.size()); }
    const std::string& outcome_label(OutcomeId x) const;
    const std::string& individual_label(int individual) const;
    std::optional<OutcomeId> outcome_by_label(std::string_view label) const;
    std::optional<int> individual_by_label(std::string_view label) const;
    const Domain& domain() const { return domain_; }

    bool operator==(const Environment&) const = default;

private:
    std::vector<std::string> outcome_labels_;
    std::vector<std::string> individual_labels_;
    Domain domain_;
};

// Individual whose ranking is the only one differing between the two
// profiles; empty when the profiles are equal or differ in more than
// one coordinate. Symmetric in its arguments.
std::optional<int> adjacent_individual(const Profile& a, const Profile& b);

// True iff every outcome that x strictly beats under `base` is still
// strictly beaten under `transformed`, for every individual.
bool is_monotonic_transformation(const Profile& base, const Profile& transformed, OutcomeId x);

struct UniversalIndifference {
    int profile = 0;
    OutcomeId first;
    OutcomeId second;
};

struct UniversalIndifferenceReport {
    bool passed = true;
    std::optional<UniversalIndifference> counterexample;
};

// Every profile and every distinct outcome pair must have a strict
// comparison by some individual. First offender in canonical order.
UniversalIndifferenceReport check_no_universal_indifference(const Domain& domain);

struct RichnessGap {
    int profile = 0;
    int individual = 0;
    OutcomeId preferred;    // x with x P_i y
    OutcomeId dispreferred; // the y witnessing the strict comparison
};

struct RichnessReport {
    bool passed = true;
    std::optional<RichnessGap> counterexample;
};

// A domain is rich when for every profile, individual i, and pair
// x P_i y there is a different ranking for i, available in the domain
// with everyone else unchanged, under which x still strictly beats
// everything it strictly beat before.
RichnessReport check_richness(const Domain& domain);

// First profile (domain order) equal to `profile`'s except individual
// `individual`'s ranking, which differs and keeps x's strict lower
// contour intact. This is the existential inside check_richness and the
// deviation used by the witness construction; sharing it keeps the two
// consistent.
std::optional<int> find_contour_preserving_deviation(const Domain& domain, int profile,
                                                     int individual, OutcomeId x);

} // namespace opacity
