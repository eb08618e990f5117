#include "opacity/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace opacity {

namespace {

// Byte encoding of a profile, used for O(1) structural lookup.
std::string encode(const Profile& p) {
    std::string key;
    key.reserve(static_cast<std::size_t>(p.num_individuals()) * (p.num_outcomes() + 1));
    for (const Ranking& r : p.rankings()) {
        for (int x = 0; x < r.num_outcomes(); ++x)
            key.push_back(static_cast<char>(r.class_of(OutcomeId{x})));
        key.push_back('\x7f');
    }
    return key;
}

} // namespace

Ranking::Ranking(std::vector<std::vector<OutcomeId>> classes) : classes_(std::move(classes)) {
    std::size_t total = 0;
    for (const auto& cls : classes_) {
        if (cls.empty())
            throw std::invalid_argument("Ranking: empty indifference class");
        total += cls.size();
    }
    if (total == 0)
        throw std::invalid_argument("Ranking: at least one outcome required");

    class_of_.assign(total, -1);
    for (int ci = 0; ci < static_cast<int>(classes_.size()); ++ci) {
        std::sort(classes_[ci].begin(), classes_[ci].end());
        for (OutcomeId x : classes_[ci]) {
            if (x.value < 0 || x.value >= static_cast<int>(total))
                throw std::invalid_argument("Ranking: outcome index " + std::to_string(x.value) +
                                            " outside 0.." + std::to_string(total - 1));
            if (class_of_[static_cast<std::size_t>(x.value)] != -1)
                throw std::invalid_argument("Ranking: outcome index " + std::to_string(x.value) +
                                            " appears twice");
            class_of_[static_cast<std::size_t>(x.value)] = ci;
        }
    }
}

Ranking Ranking::strict(std::span<const int> best_to_worst) {
    std::vector<std::vector<OutcomeId>> classes;
    classes.reserve(best_to_worst.size());
    for (int v : best_to_worst)
        classes.push_back({OutcomeId{v}});
    return Ranking(std::move(classes));
}

Ranking Ranking::strict(std::initializer_list<int> best_to_worst) {
    return strict(std::span<const int>(best_to_worst.begin(), best_to_worst.size()));
}

int Ranking::class_of(OutcomeId x) const {
    if (x.value < 0 || x.value >= num_outcomes())
        throw std::out_of_range("Ranking: outcome index " + std::to_string(x.value) +
                                " outside 0.." + std::to_string(num_outcomes() - 1));
    return class_of_[static_cast<std::size_t>(x.value)];
}

bool Ranking::prefers(OutcomeId x, OutcomeId y) const {
    return class_of(x) < class_of(y);
}

bool Ranking::weakly_prefers(OutcomeId x, OutcomeId y) const {
    return class_of(x) <= class_of(y);
}

bool Ranking::indifferent(OutcomeId x, OutcomeId y) const {
    return class_of(x) == class_of(y);
}

bool Ranking::is_strict() const {
    return num_classes() == num_outcomes();
}

Profile::Profile(std::vector<Ranking> rankings) : rankings_(std::move(rankings)) {
    if (rankings_.empty())
        throw std::invalid_argument("Profile: at least one individual required");
    const int n = rankings_.front().num_outcomes();
    for (const Ranking& r : rankings_)
        if (r.num_outcomes() != n)
            throw std::invalid_argument("Profile: rankings disagree on the number of outcomes");
}

const Ranking& Profile::ranking(int individual) const {
    if (individual < 0 || individual >= num_individuals())
        throw std::out_of_range("Profile: individual index " + std::to_string(individual) +
                                " outside 0.." + std::to_string(num_individuals() - 1));
    return rankings_[static_cast<std::size_t>(individual)];
}

Domain::Domain(std::vector<Profile> profiles) {
    if (profiles.empty())
        throw std::invalid_argument("Domain: at least one profile required");
    const int n = profiles.front().num_outcomes();
    const int k = profiles.front().num_individuals();
    profiles_.reserve(profiles.size());
    for (Profile& p : profiles) {
        if (p.num_outcomes() != n || p.num_individuals() != k)
            throw std::invalid_argument("Domain: profiles disagree on environment shape");
        std::string key = encode(p);
        if (index_.contains(key))
            continue; // structural duplicate
        index_.emplace(std::move(key), static_cast<int>(profiles_.size()));
        profiles_.push_back(std::move(p));
    }
}

const Profile& Domain::profile(int index) const {
    if (index < 0 || index >= size())
        throw std::out_of_range("Domain: profile index " + std::to_string(index) +
                                " outside 0.." + std::to_string(size() - 1));
    return profiles_[static_cast<std::size_t>(index)];
}

std::optional<int> Domain::find(const Profile& p) const {
    if (p.num_outcomes() != num_outcomes() || p.num_individuals() != num_individuals())
        return std::nullopt;
    auto it = index_.find(encode(p));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Environment::Environment(std::vector<std::string> outcome_labels,
                         std::vector<std::string> individual_labels, Domain domain)
    : outcome_labels_(std::move(outcome_labels)),
      individual_labels_(std::move(individual_labels)),
      domain_(std::move(domain)) {
    if (outcome_labels_.size() < 2)
        throw std::invalid_argument("Environment: at least two outcomes required");
    if (individual_labels_.empty())
        throw std::invalid_argument("Environment: at least one individual required");
    std::unordered_set<std::string> seen;
    for (const auto& label : outcome_labels_)
        if (label.empty() || !seen.insert(label).second)
            throw std::invalid_argument("Environment: outcome labels must be unique and non-empty");
    seen.clear();
    for (const auto& label : individual_labels_)
        if (label.empty() || !seen.insert(label).second)
            throw std::invalid_argument("Environment: individual labels must be unique and non-empty");
    if (domain_.num_outcomes() != num_outcomes())
        throw std::invalid_argument("Environment: domain ranks " + std::to_string(domain_.num_outcomes()) +
                                    " outcomes but " + std::to_string(num_outcomes()) + " are labelled");
    if (domain_.num_individuals() != num_individuals())
        throw std::invalid_argument("Environment: domain has " + std::to_string(domain_.num_individuals()) +
                                    " individuals but " + std::to_string(num_individuals()) + " are labelled");
}

const std::string& Environment::outcome_label(OutcomeId x) const {
    if (x.value < 0 || x.value >= num_outcomes())
        throw std::out_of_range("Environment: outcome index " + std::to_string(x.value) +
                                " outside 0.." + std::to_string(num_outcomes() - 1));
    return outcome_labels_[static_cast<std::size_t>(x.value)];
}

const std::string& Environment::individual_label(int individual) const {
    if (individual < 0 || individual >= num_individuals())
        throw std::out_of_range("Environment: individual index " + std::to_string(individual) +
                                " outside 0.." + std::to_string(num_individuals() - 1));
    return individual_labels_[static_cast<std::size_t>(individual)];
}

std::optional<OutcomeId> Environment::outcome_by_label(std::string_view label) const {
    for (int x = 0; x < num_outcomes(); ++x)
        if (outcome_labels_[static_cast<std::size_t>(x)] == label)
            return OutcomeId{x};
    return std::nullopt;
}

std::optional<int> Environment::individual_by_label(std::string_view label) const {
    for (int i = 0; i < num_individuals(); ++i)
        if (individual_labels_[static_cast<std::size_t>(i)] == label)
            return i;
    return std::nullopt;
}

std::optional<int> adjacent_individual(const Profile& a, const Profile& b) {
    if (a.num_individuals() != b.num_individuals() || a.num_outcomes() != b.num_outcomes())
        throw std::invalid_argument("adjacent_individual: profiles live in different environments");
    std::optional<int> differing;
    for (int i = 0; i < a.num_individuals(); ++i) {
        if (a.ranking(i) == b.ranking(i))
            continue;
        if (differing)
            return std::nullopt; // differs in at least two coordinates
        differing = i;
    }
    return differing; // empty when the profiles are identical
}

bool is_monotonic_transformation(const Profile& base, const Profile& transformed, OutcomeId x) {
    if (base.num_individuals() != transformed.num_individuals() ||
        base.num_outcomes() != transformed.num_outcomes())
        throw std::invalid_argument("is_monotonic_transformation: profiles live in different environments");
    const int n = base.num_outcomes();
    for (int i = 0; i < base.num_individuals(); ++i) {
        const Ranking& before = base.ranking(i);
        const Ranking& after = transformed.ranking(i);
        for (int y = 0; y < n; ++y)
            if (before.prefers(x, OutcomeId{y}) && !after.prefers(x, OutcomeId{y}))
                return false;
    }
    return true;
}

UniversalIndifferenceReport check_no_universal_indifference(const Domain& domain) {
    const int n = domain.num_outcomes();
    for (int p = 0; p < domain.size(); ++p) {
        const Profile& profile = domain.profile(p);
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                bool strict = false;
                for (int i = 0; i < profile.num_individuals() && !strict; ++i)
                    strict = !profile.ranking(i).indifferent(OutcomeId{x}, OutcomeId{y});
                if (!strict)
                    return {false, UniversalIndifference{p, OutcomeId{x}, OutcomeId{y}}};
            }
        }
    }
    return {};
}

std::optional<int> find_contour_preserving_deviation(const Domain& domain, int profile,
                                                     int individual, OutcomeId x) {
    const Profile& base = domain.profile(profile);
    if (individual < 0 || individual >= base.num_individuals())
        throw std::out_of_range("find_contour_preserving_deviation: individual index out of range");
    const Ranking& own = base.ranking(individual);
    const int n = base.num_outcomes();
    for (int s = 0; s < domain.size(); ++s) {
        if (s == profile)
            continue;
        const Profile& cand = domain.profile(s);
        if (cand.ranking(individual) == own)
            continue;
        bool same_elsewhere = true;
        for (int j = 0; j < base.num_individuals() && same_elsewhere; ++j)
            if (j != individual)
                same_elsewhere = cand.ranking(j) == base.ranking(j);
        if (!same_elsewhere)
            continue;
        const Ranking& dev = cand.ranking(individual);
        bool preserved = true;
        for (int z = 0; z < n && preserved; ++z)
            if (own.prefers(x, OutcomeId{z}) && !dev.prefers(x, OutcomeId{z}))
                preserved = false;
        if (preserved)
            return s;
    }
    return std::nullopt;
}

RichnessReport check_richness(const Domain& domain) {
    const int n = domain.num_outcomes();
    for (int p = 0; p < domain.size(); ++p) {
        const Profile& profile = domain.profile(p);
        for (int i = 0; i < profile.num_individuals(); ++i) {
            const Ranking& own = profile.ranking(i);
            for (int x = 0; x < n; ++x) {
                // The existence requirement depends only on x, so the first
                // y with x P_i y settles the whole row of pairs.
                int first_below = -1;
                for (int y = 0; y < n; ++y) {
                    if (y != x && own.prefers(OutcomeId{x}, OutcomeId{y})) {
                        first_below = y;
                        break;
                    }
                }
                if (first_below < 0)
                    continue;
                if (!find_contour_preserving_deviation(domain, p, i, OutcomeId{x}))
                    return {false, RichnessGap{p, i, OutcomeId{x}, OutcomeId{first_below}}};
            }
        }
    }
    return {};
}

} // namespace opacity
