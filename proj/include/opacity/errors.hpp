#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace opacity {

// Exact selection counts can overflow any fixed-width integer (one
// doubled image per profile already gives 2^|domain|), so counting is
// done in arbitrary precision.
using BigCount = boost::multiprecision::cpp_int;

// Enumeration was refused because the exact number of selections
// exceeds the configured cap. Carries the exact count so callers can
// report it and fall back to the pairwise checker.
class CapExceededError : public std::runtime_error {
public:
    CapExceededError(BigCount count, std::uint64_t cap)
        : std::runtime_error("selection count " + count.str() + " exceeds cap " +
                             std::to_string(cap)),
          count_(std::move(count)),
          cap_(cap) {}

    const BigCount& count() const { return count_; }
    std::uint64_t cap() const { return cap_; }

private:
    BigCount count_;
    std::uint64_t cap_;
};

enum class WitnessPrecondition {
    Transparent,            // nothing to witness: every image is a singleton
    NotRich,                // the domain fails the richness check
    UniversalIndifference,  // some outcome pair is unranked by everyone somewhere
    TooFewOutcomes,         // fewer than three outcomes
};

constexpr std::string_view witness_precondition_name(WitnessPrecondition kind) {
    switch (kind) {
    case WitnessPrecondition::Transparent: return "transparent";
    case WitnessPrecondition::NotRich: return "not-rich";
    case WitnessPrecondition::UniversalIndifference: return "universal-indifference";
    case WitnessPrecondition::TooFewOutcomes: return "N<3";
    }
    return "unknown";
}

class WitnessPreconditionError : public std::runtime_error {
public:
    explicit WitnessPreconditionError(WitnessPrecondition kind, const std::string& detail = "")
        : std::runtime_error("witness precondition failed: " +
                             std::string(witness_precondition_name(kind)) +
                             (detail.empty() ? "" : " (" + detail + ")")),
          kind_(kind) {}

    WitnessPrecondition kind() const { return kind_; }

private:
    WitnessPrecondition kind_;
};

// Malformed interchange files; the message carries a field-path diagnostic.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace opacity
