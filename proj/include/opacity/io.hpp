#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"

#include "opacity/constructs.hpp"
#include "opacity/gen.hpp"
#include "opacity/properties.hpp"

namespace opacity {

// Order-preserving JSON everywhere: canonical serialization means keys
// appear in the documented order and dumps are byte-stable round trips.
using Json = nlohmann::ordered_json;

// Environment file: {"outcomes": [...], "individuals": [...],
// "profiles": [...]} where a profile is one ranking per individual and
// a ranking is a list of indifference classes of outcome labels, best
// class first.
Json environment_to_json(const Environment& env);
std::shared_ptr<const Environment> environment_from_json(const Json& j);

// Announcement file: {"environment": <inline object or relative path>,
// "images": [[labels...], ...]} with images parallel to the profile list.
Json announcement_to_json(const Announcement& announcement);
Announcement announcement_from_json(const Json& j, const std::filesystem::path& base_dir = {});

// Two-space indent, LF line endings, trailing newline.
std::string canonical_dump(const Json& j);

Json parse_file(const std::filesystem::path& path);
std::shared_ptr<const Environment> load_environment(const std::filesystem::path& path);
Announcement load_announcement(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Report serialization. Profiles are referenced by index into the
// profile list; outcomes and individuals by label.
Json selection_to_json(const Selection& selection);
Json violation_to_json(const Violation& violation, const Environment& env);
Json check_result_to_json(const CheckResult& result, const Selection& mechanism);
Json guarantee_report_to_json(const GuaranteeReport& report, const Announcement& announcement,
                              Property property);
Json sp_witness_to_json(const SpWitness& witness, const Environment& env);
Json campaign_report_to_json(const CampaignReport& report);

} // namespace opacity
