#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opacity/announcement.hpp"

namespace opacity {

enum class Property {
    StrategyProofness,
    WeakMaskinMonotonicity,
    NonBossiness,
};

std::string_view property_name(Property p); // "sp" | "wmm" | "nonbossy"
std::optional<Property> property_from_name(std::string_view name);

// Non-bossiness compares the deviator's own valuation of the two
// outcomes, but the deviator holds a different ranking on each side of
// the deviation, and the written definition does not say which one
// applies. EitherSide accepts a strict comparison under either ranking;
// BaseOnly insists on the ranking held at the pair's first (true)
// profile. The readings coincide whenever the deviator ranks the two
// outcomes strictly under both rankings — in particular on strict
// domains.
enum class NonBossyReading {
    EitherSide,
    BaseOnly,
};

// A failed two-profile comparison. `profile` is the base/true profile
// of the comparison and `other_profile` the deviation or transformed
// profile; `value`/`other_value` are the mechanism's outcomes there.
// `individual` is the deviator for strategy-proofness and
// non-bossiness; monotonicity violations quantify over all individuals,
// so the field stays empty and the note names the failing one.
struct Violation {
    Property property = Property::StrategyProofness;
    int profile = 0;
    int other_profile = 0;
    std::optional<int> individual;
    OutcomeId value;
    OutcomeId other_value;
    std::string note;

    bool same_comparison(const Violation& other) const {
        return property == other.property && profile == other.profile &&
               other_profile == other.other_profile && individual == other.individual &&
               value == other.value && other_value == other.other_value;
    }
};

struct CheckOptions {
    NonBossyReading nonbossy_reading = NonBossyReading::EitherSide;
};

struct CheckResult {
    bool passed = true;
    std::optional<Violation> violation; // first in canonical scan order
    std::uint64_t pairs_checked = 0;
};

// Single-mechanism checkers. All scan ordered profile pairs (r, s),
// r != s, in domain order with r outermost; the reported violation is
// the first one in that order.
CheckResult check_sp(const Selection& mechanism);
CheckResult check_wmm(const Selection& mechanism);
CheckResult check_nonbossy(const Selection& mechanism,
                           NonBossyReading reading = NonBossyReading::EitherSide);
CheckResult check_property(const Selection& mechanism, Property property,
                           const CheckOptions& options = {});

// Every violation of the mechanism, in canonical order.
std::vector<Violation> collect_violations(const Selection& mechanism, Property property,
                                          const CheckOptions& options = {});

// Re-evaluates the recorded comparison against the mechanism: the
// mechanism takes the recorded values at the recorded profiles and the
// comparison indeed fails. Violations are self-validating this way.
bool violation_holds(const Selection& mechanism, const Violation& violation,
                     const CheckOptions& options = {});

enum class GuaranteeMethod {
    Pairwise,
    BruteForce,
};

struct GuaranteeStats {
    std::uint64_t pairs_checked = 0;
    std::uint64_t selections_enumerated = 0;
};

struct GuaranteeReport {
    bool guaranteed = true;
    GuaranteeMethod method = GuaranteeMethod::Pairwise;
    std::optional<Violation> violation;
    std::optional<Selection> witness; // a selection reproducing the violation
    GuaranteeStats stats;
};

// Decides whether every selection of the announcement satisfies the
// property, by reduction to two-profile constraints over the images.
// Never enumerates selections; on failure the witness is the canonical
// completion from restrict_pairwise, and the single-mechanism checker
// finds exactly the reported violation first.
GuaranteeReport guarantee_pairwise(const Announcement& announcement, Property property,
                                   const CheckOptions& options = {});

// Decides the same question by enumerating every selection (up to cap,
// else CapExceededError) and running the single-mechanism checker on
// each; the witness is the lexicographically first failing selection.
GuaranteeReport guarantee_bruteforce(const Announcement& announcement, Property property,
                                     std::uint64_t cap = kDefaultSelectionCap,
                                     const CheckOptions& options = {});

// Constructive refutation of strategy-proofness for an opaque
// announcement on a rich domain without universal indifference and at
// least three outcomes: picks the first profile with a widened image,
// two image members strictly ranked by some individual, a
// contour-preserving deviation for that individual, and derives a
// profitable misreport in one of two branches. The disjunction backing
// the branch split is asserted on every invocation.
struct SpWitness {
    enum class Branch {
        DeviateAtOpaqueProfile,      // truth at the widened profile, misreport the deviation
        DeviateAtAlternativeProfile, // truth at the deviation, misreport the widened profile
    };

    int opaque_profile = 0;      // first profile with |image| >= 2
    int alternative_profile = 0; // the contour-preserving deviation
    int individual = 0;          // the manipulator
    OutcomeId better;            // image member the manipulator strictly prefers
    OutcomeId worse;             // the image member it beats
    OutcomeId alternative_value; // smallest image member at the deviation
    Branch branch = Branch::DeviateAtOpaqueProfile;
    Violation violation;
    Selection selection; // canonical completion; fails check_sp
};

SpWitness sp_violation_witness(const Announcement& announcement);

} // namespace opacity
