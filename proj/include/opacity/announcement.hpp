#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "opacity/core.hpp"
#include "opacity/errors.hpp"

namespace opacity {

// Enumeration refuses to run past this many selections unless told
// otherwise; callers are expected to switch to the pairwise checker.
inline constexpr std::uint64_t kDefaultSelectionCap = std::uint64_t{1} << 20;

// A non-empty set of possible outcomes for every profile in the domain,
// stored extensionally and in parallel with the domain's profile order.
// Images are kept sorted by outcome index.
class Announcement {
public:
    Announcement(std::shared_ptr<const Environment> env,
                 std::vector<std::vector<OutcomeId>> images);

    const Environment& environment() const { return *env_; }
    const std::shared_ptr<const Environment>& environment_ptr() const { return env_; }
    int domain_size() const { return static_cast<int>(images_.size()); }
    const std::vector<OutcomeId>& image(int profile) const;
    const std::vector<std::vector<OutcomeId>>& images() const { return images_; }
    bool contains(int profile, OutcomeId x) const;

    // Fully transparent = every image is a singleton; opaque otherwise.
    bool is_fully_transparent() const;
    bool is_opaque() const { return !is_fully_transparent(); }

    int non_singleton_images() const;
    std::int64_t image_excess() const; // sum over profiles of |image| - 1
    BigCount selection_count() const;  // product of image sizes, exact

    bool operator==(const Announcement& other) const {
        return images_ == other.images_ && *env_ == *other.env_;
    }

private:
    std::shared_ptr<const Environment> env_;
    std::vector<std::vector<OutcomeId>> images_;
};

// One outcome per profile: a mechanism on the domain. Selections are
// free-standing; consistency with an announcement matters only when one
// is derived from it.
class Selection {
public:
    Selection(std::shared_ptr<const Environment> env, std::vector<OutcomeId> values);

    const Environment& environment() const { return *env_; }
    const std::shared_ptr<const Environment>& environment_ptr() const { return env_; }
    int domain_size() const { return static_cast<int>(values_.size()); }
    OutcomeId value(int profile) const;
    const std::vector<OutcomeId>& values() const { return values_; }

    bool operator==(const Selection& other) const { return values_ == other.values_; }

private:
    std::shared_ptr<const Environment> env_;
    std::vector<OutcomeId> values_;
};

// Streams every selection of an announcement in lexicographic order:
// profiles in domain order, outcomes within an image in index order.
// Construction throws CapExceededError when the exact count exceeds cap.
class SelectionEnumerator {
public:
    explicit SelectionEnumerator(const Announcement& announcement,
                                 std::uint64_t cap = kDefaultSelectionCap);

    std::optional<Selection> next();
    std::uint64_t yielded() const { return yielded_; }

private:
    const Announcement* announcement_;
    std::vector<int> cursor_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t yielded_ = 0;
};

// Materialized convenience wrapper around SelectionEnumerator.
std::vector<Selection> enumerate_selections(const Announcement& announcement,
                                            std::uint64_t cap = kDefaultSelectionCap);

// The canonical selection fixing two profiles' values: x at profile_a,
// y at profile_b, and the lexicographically smallest image member
// everywhere else. Both values must belong to their images and the two
// profiles must differ.
Selection restrict_pairwise(const Announcement& announcement, int profile_a, OutcomeId x,
                            int profile_b, OutcomeId y);

} // namespace opacity
