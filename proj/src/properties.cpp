#include "opacity/properties.hpp"

#include <array>
#include <span>
#include <stdexcept>

namespace opacity {

namespace {

std::string sp_note(const Environment& env, int r, int s, int i, OutcomeId a, OutcomeId b) {
    return "individual " + env.individual_label(i) + " with true profile " + std::to_string(r) +
           " obtains " + env.outcome_label(b) + " by reporting as in profile " +
           std::to_string(s) + ", strictly better than " + env.outcome_label(a);
}

std::string wmm_note(const Environment& env, int r, int s, int i, OutcomeId a, OutcomeId b) {
    return "profile " + std::to_string(s) + " is a monotonic transformation of profile " +
           std::to_string(r) + " at " + env.outcome_label(a) + ", yet individual " +
           env.individual_label(i) + " strictly prefers " + env.outcome_label(a) + " to " +
           env.outcome_label(b) + " afterwards";
}

std::string nonbossy_note(const Environment& env, int r, int s, int i, OutcomeId a, OutcomeId b) {
    return "individual " + env.individual_label(i) + "'s deviation from profile " +
           std::to_string(r) + " to profile " + std::to_string(s) + " moves the outcome from " +
           env.outcome_label(a) + " to " + env.outcome_label(b) +
           ", a strict change for another individual but not for the deviator";
}

// Precomputed scan structure shared by the single-mechanism checkers
// and the brute-force guarantee, so every caller sees the same
// canonical violation order.
struct ScanContext {
    const Environment* env = nullptr;
    Property property = Property::StrategyProofness;
    CheckOptions options;
    int profiles = 0;
    int outcomes = 0;
    std::vector<std::array<int, 3>> adjacent; // ordered (r, s, i), canonical order
    std::vector<std::uint8_t> mt;             // [(r * profiles + s) * outcomes + x]
    bool mt_table = false;

    bool monotone(int r, int s, OutcomeId x) const {
        if (mt_table)
            return mt[(static_cast<std::size_t>(r) * profiles + s) * outcomes + x.value] != 0;
        const Domain& dom = env->domain();
        return is_monotonic_transformation(dom.profile(r), dom.profile(s), x);
    }
};

ScanContext build_context(const Environment& env, Property property, const CheckOptions& options) {
    ScanContext ctx;
    ctx.env = &env;
    ctx.property = property;
    ctx.options = options;
    ctx.profiles = env.domain().size();
    ctx.outcomes = env.num_outcomes();
    const Domain& dom = env.domain();
    if (property == Property::WeakMaskinMonotonicity) {
        const std::size_t cells = static_cast<std::size_t>(ctx.profiles) * ctx.profiles * ctx.outcomes;
        if (cells <= (std::size_t{1} << 26)) {
            ctx.mt.assign(cells, 0);
            ctx.mt_table = true;
            for (int r = 0; r < ctx.profiles; ++r)
                for (int s = 0; s < ctx.profiles; ++s) {
                    if (r == s)
                        continue;
                    for (int x = 0; x < ctx.outcomes; ++x)
                        ctx.mt[(static_cast<std::size_t>(r) * ctx.profiles + s) * ctx.outcomes + x] =
                            is_monotonic_transformation(dom.profile(r), dom.profile(s), OutcomeId{x})
                                ? 1
                                : 0;
                }
        }
    } else {
        for (int r = 0; r < ctx.profiles; ++r)
            for (int s = 0; s < ctx.profiles; ++s) {
                if (r == s)
                    continue;
                if (auto i = adjacent_individual(dom.profile(r), dom.profile(s)))
                    ctx.adjacent.push_back({r, s, *i});
            }
    }
    return ctx;
}

// Whether the deviator ranks a vs b strictly, under the reading chosen
// for the non-bossiness consequent.
bool deviator_strict(const Domain& dom, int r, int s, int i, OutcomeId a, OutcomeId b,
                     NonBossyReading reading) {
    const bool base = !dom.profile(r).ranking(i).indifferent(a, b);
    if (reading == NonBossyReading::BaseOnly)
        return base;
    return base || !dom.profile(s).ranking(i).indifferent(a, b);
}

// Scans the mechanism given by `values` in canonical order. Returns the
// first violation, or collects all of them when `all` is given.
std::optional<Violation> scan(const ScanContext& ctx, std::span<const OutcomeId> values,
                              std::uint64_t& pairs_checked, std::vector<Violation>* all = nullptr) {
    const Environment& env = *ctx.env;
    const Domain& dom = env.domain();
    std::optional<Violation> first;
    auto report = [&](Violation v) {
        if (all) {
            all->push_back(std::move(v));
            return false; // keep scanning
        }
        first = std::move(v);
        return true;
    };

    switch (ctx.property) {
    case Property::StrategyProofness:
        for (const auto& [r, s, i] : ctx.adjacent) {
            ++pairs_checked;
            const OutcomeId a = values[static_cast<std::size_t>(r)];
            const OutcomeId b = values[static_cast<std::size_t>(s)];
            if (dom.profile(r).ranking(i).prefers(b, a)) {
                if (report({Property::StrategyProofness, r, s, i, a, b, sp_note(env, r, s, i, a, b)}))
                    return first;
            }
        }
        break;
    case Property::WeakMaskinMonotonicity:
        for (int r = 0; r < ctx.profiles; ++r) {
            const OutcomeId a = values[static_cast<std::size_t>(r)];
            for (int s = 0; s < ctx.profiles; ++s) {
                if (r == s)
                    continue;
                ++pairs_checked;
                if (!ctx.monotone(r, s, a))
                    continue;
                const OutcomeId b = values[static_cast<std::size_t>(s)];
                for (int i = 0; i < env.num_individuals(); ++i) {
                    if (dom.profile(s).ranking(i).prefers(a, b)) {
                        if (report({Property::WeakMaskinMonotonicity, r, s, std::nullopt, a, b,
                                    wmm_note(env, r, s, i, a, b)}))
                            return first;
                        break; // collecting: one violation per (r, s) pair
                    }
                }
            }
        }
        break;
    case Property::NonBossiness:
        for (const auto& [r, s, i] : ctx.adjacent) {
            ++pairs_checked;
            const OutcomeId a = values[static_cast<std::size_t>(r)];
            const OutcomeId b = values[static_cast<std::size_t>(s)];
            if (a == b)
                continue;
            bool other_strict = false;
            for (int j = 0; j < env.num_individuals() && !other_strict; ++j)
                if (j != i)
                    other_strict = !dom.profile(r).ranking(j).indifferent(a, b);
            if (!other_strict)
                continue;
            if (!deviator_strict(dom, r, s, i, a, b, ctx.options.nonbossy_reading)) {
                if (report({Property::NonBossiness, r, s, i, a, b, nonbossy_note(env, r, s, i, a, b)}))
                    return first;
            }
        }
        break;
    }
    return first;
}

CheckResult run_check(const Selection& mechanism, Property property, const CheckOptions& options) {
    ScanContext ctx = build_context(mechanism.environment(), property, options);
    CheckResult result;
    auto violation = scan(ctx, mechanism.values(), result.pairs_checked);
    if (violation) {
        result.passed = false;
        result.violation = std::move(violation);
    }
    return result;
}

} // namespace

std::string_view property_name(Property p) {
    switch (p) {
    case Property::StrategyProofness: return "sp";
    case Property::WeakMaskinMonotonicity: return "wmm";
    case Property::NonBossiness: return "nonbossy";
    }
    return "unknown";
}

std::optional<Property> property_from_name(std::string_view name) {
    if (name == "sp")
        return Property::StrategyProofness;
    if (name == "wmm")
        return Property::WeakMaskinMonotonicity;
    if (name == "nonbossy")
        return Property::NonBossiness;
    return std::nullopt;
}

CheckResult check_sp(const Selection& mechanism) {
    return run_check(mechanism, Property::StrategyProofness, {});
}

CheckResult check_wmm(const Selection& mechanism) {
    return run_check(mechanism, Property::WeakMaskinMonotonicity, {});
}

CheckResult check_nonbossy(const Selection& mechanism, NonBossyReading reading) {
    return run_check(mechanism, Property::NonBossiness, {reading});
}

CheckResult check_property(const Selection& mechanism, Property property,
                           const CheckOptions& options) {
    return run_check(mechanism, property, options);
}

std::vector<Violation> collect_violations(const Selection& mechanism, Property property,
                                          const CheckOptions& options) {
    ScanContext ctx = build_context(mechanism.environment(), property, options);
    std::vector<Violation> violations;
    std::uint64_t pairs = 0;
    scan(ctx, mechanism.values(), pairs, &violations);
    return violations;
}

bool violation_holds(const Selection& mechanism, const Violation& violation,
                     const CheckOptions& options) {
    const Environment& env = mechanism.environment();
    const Domain& dom = env.domain();
    const int r = violation.profile;
    const int s = violation.other_profile;
    if (r < 0 || r >= dom.size() || s < 0 || s >= dom.size() || r == s)
        return false;
    if (mechanism.value(r) != violation.value || mechanism.value(s) != violation.other_value)
        return false;
    const OutcomeId a = violation.value;
    const OutcomeId b = violation.other_value;
    switch (violation.property) {
    case Property::StrategyProofness: {
        if (!violation.individual)
            return false;
        auto i = adjacent_individual(dom.profile(r), dom.profile(s));
        if (!i || *i != *violation.individual)
            return false;
        return dom.profile(r).ranking(*i).prefers(b, a);
    }
    case Property::WeakMaskinMonotonicity: {
        if (!is_monotonic_transformation(dom.profile(r), dom.profile(s), a))
            return false;
        for (int i = 0; i < env.num_individuals(); ++i)
            if (dom.profile(s).ranking(i).prefers(a, b))
                return true;
        return false;
    }
    case Property::NonBossiness: {
        if (!violation.individual || a == b)
            return false;
        auto i = adjacent_individual(dom.profile(r), dom.profile(s));
        if (!i || *i != *violation.individual)
            return false;
        bool other_strict = false;
        for (int j = 0; j < env.num_individuals() && !other_strict; ++j)
            if (j != *i)
                other_strict = !dom.profile(r).ranking(j).indifferent(a, b);
        if (!other_strict)
            return false;
        return !deviator_strict(dom, r, s, *i, a, b, options.nonbossy_reading);
    }
    }
    return false;
}

GuaranteeReport guarantee_pairwise(const Announcement& announcement, Property property,
                                   const CheckOptions& options) {
    const Environment& env = announcement.environment();
    const Domain& dom = env.domain();
    ScanContext ctx = build_context(env, property, options);
    GuaranteeReport report;
    report.method = GuaranteeMethod::Pairwise;

    auto fail = [&](Violation violation, int r, OutcomeId x, int s, OutcomeId y) {
        report.guaranteed = false;
        report.witness = restrict_pairwise(announcement, r, x, s, y);
        report.violation = std::move(violation);
    };

    switch (property) {
    case Property::StrategyProofness:
        for (const auto& [r, s, i] : ctx.adjacent) {
            ++report.stats.pairs_checked;
            const Ranking& own = dom.profile(r).ranking(i);
            for (OutcomeId x : announcement.image(r))
                for (OutcomeId y : announcement.image(s))
                    if (own.prefers(y, x)) {
                        fail({property, r, s, i, x, y, sp_note(env, r, s, i, x, y)}, r, x, s, y);
                        return report;
                    }
        }
        break;
    case Property::WeakMaskinMonotonicity:
        for (int r = 0; r < dom.size(); ++r) {
            for (int s = 0; s < dom.size(); ++s) {
                if (r == s)
                    continue;
                ++report.stats.pairs_checked;
                for (OutcomeId x : announcement.image(r)) {
                    if (!ctx.monotone(r, s, x))
                        continue;
                    for (OutcomeId y : announcement.image(s))
                        for (int i = 0; i < env.num_individuals(); ++i)
                            if (dom.profile(s).ranking(i).prefers(x, y)) {
                                fail({property, r, s, std::nullopt, x, y, wmm_note(env, r, s, i, x, y)},
                                     r, x, s, y);
                                return report;
                            }
                }
            }
        }
        break;
    case Property::NonBossiness:
        for (const auto& [r, s, i] : ctx.adjacent) {
            ++report.stats.pairs_checked;
            for (OutcomeId x : announcement.image(r)) {
                for (OutcomeId y : announcement.image(s)) {
                    if (x == y)
                        continue;
                    bool other_strict = false;
                    for (int j = 0; j < env.num_individuals() && !other_strict; ++j)
                        if (j != i)
                            other_strict = !dom.profile(r).ranking(j).indifferent(x, y);
                    if (!other_strict)
                        continue;
                    if (!deviator_strict(dom, r, s, i, x, y, options.nonbossy_reading)) {
                        fail({property, r, s, i, x, y, nonbossy_note(env, r, s, i, x, y)}, r, x, s, y);
                        return report;
                    }
                }
            }
        }
        break;
    }
    return report;
}

GuaranteeReport guarantee_bruteforce(const Announcement& announcement, Property property,
                                     std::uint64_t cap, const CheckOptions& options) {
    ScanContext ctx = build_context(announcement.environment(), property, options);
    GuaranteeReport report;
    report.method = GuaranteeMethod::BruteForce;
    SelectionEnumerator stream(announcement, cap); // throws CapExceededError when too large
    while (auto selection = stream.next()) {
        ++report.stats.selections_enumerated;
        auto violation = scan(ctx, selection->values(), report.stats.pairs_checked);
        if (violation) {
            report.guaranteed = false;
            report.violation = std::move(violation);
            report.witness = std::move(*selection);
            break;
        }
    }
    return report;
}

SpWitness sp_violation_witness(const Announcement& announcement) {
    const Environment& env = announcement.environment();
    const Domain& dom = env.domain();
    if (env.num_outcomes() < 3)
        throw WitnessPreconditionError(WitnessPrecondition::TooFewOutcomes,
                                       std::to_string(env.num_outcomes()) + " outcomes");
    if (announcement.is_fully_transparent())
        throw WitnessPreconditionError(WitnessPrecondition::Transparent);
    if (auto report = check_no_universal_indifference(dom); !report.passed) {
        const auto& ce = *report.counterexample;
        throw WitnessPreconditionError(WitnessPrecondition::UniversalIndifference,
                                       "profile " + std::to_string(ce.profile) + ", outcomes " +
                                           env.outcome_label(ce.first) + " and " +
                                           env.outcome_label(ce.second));
    }
    if (auto report = check_richness(dom); !report.passed) {
        const auto& ce = *report.counterexample;
        throw WitnessPreconditionError(WitnessPrecondition::NotRich,
                                       "profile " + std::to_string(ce.profile) + ", individual " +
                                           env.individual_label(ce.individual));
    }

    int r = 0;
    while (announcement.image(r).size() < 2)
        ++r;
    const OutcomeId first = announcement.image(r)[0];
    const OutcomeId second = announcement.image(r)[1];

    int individual = -1;
    for (int i = 0; i < env.num_individuals(); ++i)
        if (!dom.profile(r).ranking(i).indifferent(first, second)) {
            individual = i;
            break;
        }
    // Guaranteed by the universal-indifference precondition.
    if (individual < 0)
        throw std::logic_error("sp_violation_witness: no strict comparison despite the precondition");

    const Ranking& own = dom.profile(r).ranking(individual);
    const OutcomeId better = own.prefers(first, second) ? first : second;
    const OutcomeId worse = better == first ? second : first;

    // Guaranteed by richness, since `better` strictly beats `worse`.
    auto deviation = find_contour_preserving_deviation(dom, r, individual, better);
    if (!deviation)
        throw std::logic_error("sp_violation_witness: no contour-preserving deviation despite richness");
    const int s = *deviation;
    const OutcomeId fallback = announcement.image(s).front();
    const Ranking& deviated = dom.profile(s).ranking(individual);

    const bool gain_at_opaque = own.prefers(fallback, worse);          // fallback beats `worse` truthfully
    const bool gain_at_deviation = deviated.prefers(better, fallback); // `better` beats fallback there
    // Exactly this disjunction makes the construction total; it must
    // hold whenever the preconditions do.
    if (!gain_at_opaque && !gain_at_deviation)
        throw std::logic_error("sp_violation_witness: branch totality violated");

    const auto branch = gain_at_opaque ? SpWitness::Branch::DeviateAtOpaqueProfile
                                       : SpWitness::Branch::DeviateAtAlternativeProfile;
    Violation violation =
        gain_at_opaque
            ? Violation{Property::StrategyProofness, r,        s, individual, worse,
                        fallback,                    sp_note(env, r, s, individual, worse, fallback)}
            : Violation{Property::StrategyProofness, s,      r, individual, fallback,
                        better,                      sp_note(env, s, r, individual, fallback, better)};
    Selection selection = gain_at_opaque ? restrict_pairwise(announcement, r, worse, s, fallback)
                                         : restrict_pairwise(announcement, r, better, s, fallback);

    SpWitness witness{r,        s,      individual,           better,
                      worse,    fallback, branch,             std::move(violation),
                      std::move(selection)};
    if (!violation_holds(witness.selection, witness.violation))
        throw std::logic_error("sp_violation_witness: constructed violation failed to revalidate");
    return witness;
}

} // namespace opacity
