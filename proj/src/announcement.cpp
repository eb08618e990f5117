#include "opacity/announcement.hpp"

#include <algorithm>
#include <stdexcept>

namespace opacity {

Announcement::Announcement(std::shared_ptr<const Environment> env,
                           std::vector<std::vector<OutcomeId>> images)
    : env_(std::move(env)), images_(std::move(images)) {
    if (!env_)
        throw std::invalid_argument("Announcement: environment must not be null");
    const int profiles = env_->domain().size();
    if (static_cast<int>(images_.size()) != profiles)
        throw std::invalid_argument("Announcement: " + std::to_string(images_.size()) +
                                    " images for " + std::to_string(profiles) + " profiles");
    const int n = env_->num_outcomes();
    for (auto& image : images_) {
        if (image.empty())
            throw std::invalid_argument("Announcement: empty image");
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        for (OutcomeId x : image)
            if (x.value < 0 || x.value >= n)
                throw std::invalid_argument("Announcement: outcome index " +
                                            std::to_string(x.value) + " outside 0.." +
                                            std::to_string(n - 1));
    }
}

const std::vector<OutcomeId>& Announcement::image(int profile) const {
    if (profile < 0 || profile >= domain_size())
        throw std::out_of_range("Announcement: profile index " + std::to_string(profile) +
                                " outside 0.." + std::to_string(domain_size() - 1));
    return images_[static_cast<std::size_t>(profile)];
}

bool Announcement::contains(int profile, OutcomeId x) const {
    const auto& img = image(profile);
    return std::binary_search(img.begin(), img.end(), x);
}

bool Announcement::is_fully_transparent() const {
    return std::all_of(images_.begin(), images_.end(),
                       [](const auto& image) { return image.size() == 1; });
}

int Announcement::non_singleton_images() const {
    return static_cast<int>(std::count_if(images_.begin(), images_.end(),
                                          [](const auto& image) { return image.size() > 1; }));
}

std::int64_t Announcement::image_excess() const {
    std::int64_t excess = 0;
    for (const auto& image : images_)
        excess += static_cast<std::int64_t>(image.size()) - 1;
    return excess;
}

BigCount Announcement::selection_count() const {
    BigCount count = 1;
    for (const auto& image : images_)
        count *= static_cast<unsigned>(image.size());
    return count;
}

Selection::Selection(std::shared_ptr<const Environment> env, std::vector<OutcomeId> values)
    : env_(std::move(env)), values_(std::move(values)) {
    if (!env_)
        throw std::invalid_argument("Selection: environment must not be null");
    if (static_cast<int>(values_.size()) != env_->domain().size())
        throw std::invalid_argument("Selection: " + std::to_string(values_.size()) +
                                    " values for " + std::to_string(env_->domain().size()) +
                                    " profiles");
    for (OutcomeId x : values_)
        if (x.value < 0 || x.value >= env_->num_outcomes())
            throw std::invalid_argument("Selection: outcome index " + std::to_string(x.value) +
                                        " outside 0.." + std::to_string(env_->num_outcomes() - 1));
}

OutcomeId Selection::value(int profile) const {
    if (profile < 0 || profile >= domain_size())
        throw std::out_of_range("Selection: profile index " + std::to_string(profile) +
                                " outside 0.." + std::to_string(domain_size() - 1));
    return values_[static_cast<std::size_t>(profile)];
}

SelectionEnumerator::SelectionEnumerator(const Announcement& announcement, std::uint64_t cap)
    : announcement_(&announcement), cursor_(static_cast<std::size_t>(announcement.domain_size()), 0) {
    if (cap == 0)
        throw std::invalid_argument("SelectionEnumerator: cap must be positive");
    BigCount count = announcement.selection_count();
    if (count > cap)
        throw CapExceededError(std::move(count), cap);
}

std::optional<Selection> SelectionEnumerator::next() {
    if (done_)
        return std::nullopt;
    if (!started_) {
        started_ = true;
    } else {
        // Odometer increment, last profile fastest: lexicographic order
        // with the first profile as the most significant position.
        int p = static_cast<int>(cursor_.size()) - 1;
        for (; p >= 0; --p) {
            const auto size = static_cast<int>(announcement_->image(p).size());
            if (++cursor_[static_cast<std::size_t>(p)] < size)
                break;
            cursor_[static_cast<std::size_t>(p)] = 0;
        }
        if (p < 0) {
            done_ = true;
            return std::nullopt;
        }
    }
    std::vector<OutcomeId> values(cursor_.size());
    for (std::size_t p = 0; p < cursor_.size(); ++p)
        values[p] = announcement_->image(static_cast<int>(p))[static_cast<std::size_t>(cursor_[p])];
    ++yielded_;
    return Selection(announcement_->environment_ptr(), std::move(values));
}

std::vector<Selection> enumerate_selections(const Announcement& announcement, std::uint64_t cap) {
    SelectionEnumerator stream(announcement, cap);
    std::vector<Selection> selections;
    while (auto selection = stream.next())
        selections.push_back(std::move(*selection));
    return selections;
}

Selection restrict_pairwise(const Announcement& announcement, int profile_a, OutcomeId x,
                            int profile_b, OutcomeId y) {
    if (profile_a == profile_b)
        throw std::invalid_argument("restrict_pairwise: the two profiles must differ");
    if (!announcement.contains(profile_a, x))
        throw std::invalid_argument("restrict_pairwise: first value is not in its image");
    if (!announcement.contains(profile_b, y))
        throw std::invalid_argument("restrict_pairwise: second value is not in its image");
    std::vector<OutcomeId> values(static_cast<std::size_t>(announcement.domain_size()));
    for (int p = 0; p < announcement.domain_size(); ++p)
        values[static_cast<std::size_t>(p)] = announcement.image(p).front();
    values[static_cast<std::size_t>(profile_a)] = x;
    values[static_cast<std::size_t>(profile_b)] = y;
    return Selection(announcement.environment_ptr(), std::move(values));
}

} // namespace opacity
