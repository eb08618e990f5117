#include "opacity/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace opacity {

namespace {

const Json& expect(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object())
        throw ParseError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(where + ": missing key \"" + key + "\"");
    return *it;
}

std::vector<std::string> label_list(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ParseError(where + ": expected a non-empty array of strings");
    std::vector<std::string> labels;
    labels.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& entry = j[k];
        if (!entry.is_string())
            throw ParseError(where + "[" + std::to_string(k) + "]: expected a string");
        labels.push_back(entry.get<std::string>());
    }
    return labels;
}

OutcomeId outcome_ref(const Json& j, const Environment* env,
                      const std::vector<std::string>& outcomes, const std::string& where) {
    if (!j.is_string())
        throw ParseError(where + ": expected an outcome label");
    const std::string label = j.get<std::string>();
    for (std::size_t x = 0; x < outcomes.size(); ++x)
        if (outcomes[x] == label)
            return OutcomeId{static_cast<int>(x)};
    (void)env;
    throw ParseError(where + ": unknown outcome label \"" + label + "\"");
}

Ranking ranking_from_json(const Json& j, const std::vector<std::string>& outcomes,
                          const std::string& where) {
    if (!j.is_array() || j.empty())
        throw ParseError(where + ": expected a non-empty array of indifference classes");
    std::vector<std::vector<OutcomeId>> classes;
    classes.reserve(j.size());
    for (std::size_t c = 0; c < j.size(); ++c) {
        const Json& cls = j[c];
        const std::string cls_where = where + "[" + std::to_string(c) + "]";
        if (!cls.is_array() || cls.empty())
            throw ParseError(cls_where + ": expected a non-empty array of outcome labels");
        std::vector<OutcomeId> members;
        members.reserve(cls.size());
        for (std::size_t m = 0; m < cls.size(); ++m)
            members.push_back(outcome_ref(cls[m], nullptr, outcomes,
                                          cls_where + "[" + std::to_string(m) + "]"));
        classes.push_back(std::move(members));
    }
    try {
        return Ranking(std::move(classes));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

Json environment_to_json(const Environment& env) {
    Json j = Json::object();
    j["outcomes"] = Json::array();
    for (int x = 0; x < env.num_outcomes(); ++x)
        j["outcomes"].push_back(env.outcome_label(OutcomeId{x}));
    j["individuals"] = Json::array();
    for (int i = 0; i < env.num_individuals(); ++i)
        j["individuals"].push_back(env.individual_label(i));
    j["profiles"] = Json::array();
    for (const Profile& profile : env.domain().profiles()) {
        Json jp = Json::array();
        for (const Ranking& ranking : profile.rankings()) {
            Json jr = Json::array();
            for (const auto& cls : ranking.classes()) {
                Json jc = Json::array();
                for (OutcomeId x : cls)
                    jc.push_back(env.outcome_label(x));
                jr.push_back(std::move(jc));
            }
            jp.push_back(std::move(jr));
        }
        j["profiles"].push_back(std::move(jp));
    }
    return j;
}

std::shared_ptr<const Environment> environment_from_json(const Json& j) {
    const std::vector<std::string> outcomes = label_list(expect(j, "outcomes", "environment"),
                                                         "environment.outcomes");
    const std::vector<std::string> individuals = label_list(expect(j, "individuals", "environment"),
                                                            "environment.individuals");
    const Json& jprofiles = expect(j, "profiles", "environment");
    if (!jprofiles.is_array() || jprofiles.empty())
        throw ParseError("environment.profiles: expected a non-empty array");

    std::vector<Profile> profiles;
    profiles.reserve(jprofiles.size());
    for (std::size_t p = 0; p < jprofiles.size(); ++p) {
        const Json& jp = jprofiles[p];
        const std::string where = "environment.profiles[" + std::to_string(p) + "]";
        if (!jp.is_array() || jp.size() != individuals.size())
            throw ParseError(where + ": expected one ranking per individual (" +
                             std::to_string(individuals.size()) + ")");
        std::vector<Ranking> rankings;
        rankings.reserve(individuals.size());
        for (std::size_t i = 0; i < jp.size(); ++i)
            rankings.push_back(ranking_from_json(jp[i], outcomes,
                                                 where + "[" + std::to_string(i) + "]"));
        profiles.push_back(Profile(std::move(rankings)));
    }

    // Reports reference profiles by index into this list, so duplicates
    // would make those indices ambiguous.
    Domain domain(profiles);
    if (domain.size() != static_cast<int>(profiles.size())) {
        for (std::size_t p = 0; p < profiles.size(); ++p) {
            auto at = domain.find(profiles[p]);
            if (at && *at != static_cast<int>(p))
                throw ParseError("environment.profiles[" + std::to_string(p) +
                                 "]: duplicates profiles[" + std::to_string(*at) + "]");
        }
    }

    try {
        return std::make_shared<const Environment>(outcomes, individuals, std::move(domain));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("environment: ") + e.what());
    }
}

Json announcement_to_json(const Announcement& announcement) {
    const Environment& env = announcement.environment();
    Json j = Json::object();
    j["environment"] = environment_to_json(env);
    j["images"] = Json::array();
    for (int p = 0; p < announcement.domain_size(); ++p) {
        Json image = Json::array();
        for (OutcomeId x : announcement.image(p))
            image.push_back(env.outcome_label(x));
        j["images"].push_back(std::move(image));
    }
    return j;
}

Announcement announcement_from_json(const Json& j, const std::filesystem::path& base_dir) {
    const Json& jenv = expect(j, "environment", "announcement");
    std::shared_ptr<const Environment> env;
    if (jenv.is_string()) {
        std::filesystem::path ref = jenv.get<std::string>();
        if (ref.is_relative())
            ref = base_dir / ref;
        env = load_environment(ref);
    } else {
        env = environment_from_json(jenv);
    }

    const Json& jimages = expect(j, "images", "announcement");
    if (!jimages.is_array() || static_cast<int>(jimages.size()) != env->domain().size())
        throw ParseError("announcement.images: expected exactly " +
                         std::to_string(env->domain().size()) + " images, one per profile");

    std::vector<std::string> outcomes;
    for (int x = 0; x < env->num_outcomes(); ++x)
        outcomes.push_back(env->outcome_label(OutcomeId{x}));

    std::vector<std::vector<OutcomeId>> images;
    images.reserve(jimages.size());
    for (std::size_t p = 0; p < jimages.size(); ++p) {
        const Json& jimage = jimages[p];
        const std::string where = "announcement.images[" + std::to_string(p) + "]";
        if (!jimage.is_array() || jimage.empty())
            throw ParseError(where + ": expected a non-empty array of outcome labels");
        std::vector<OutcomeId> image;
        image.reserve(jimage.size());
        for (std::size_t m = 0; m < jimage.size(); ++m)
            image.push_back(outcome_ref(jimage[m], env.get(), outcomes,
                                        where + "[" + std::to_string(m) + "]"));
        images.push_back(std::move(image));
    }
    try {
        return Announcement(std::move(env), std::move(images));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("announcement: ") + e.what());
    }
}

std::string canonical_dump(const Json& j) {
    return j.dump(2) + "\n";
}

Json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::shared_ptr<const Environment> load_environment(const std::filesystem::path& path) {
    return environment_from_json(parse_file(path));
}

Announcement load_announcement(const std::filesystem::path& path) {
    return announcement_from_json(parse_file(path), path.parent_path());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open file for writing");
    out << text;
    if (!out)
        throw std::runtime_error(path.string() + ": write failed");
}

Json selection_to_json(const Selection& selection) {
    Json values = Json::array();
    for (int p = 0; p < selection.domain_size(); ++p)
        values.push_back(selection.environment().outcome_label(selection.value(p)));
    return values;
}

Json violation_to_json(const Violation& violation, const Environment& env) {
    Json j = Json::object();
    j["property"] = std::string(property_name(violation.property));
    j["profile"] = violation.profile;
    j["other_profile"] = violation.other_profile;
    j["individual"] = violation.individual ? Json(env.individual_label(*violation.individual))
                                           : Json(nullptr);
    j["value"] = env.outcome_label(violation.value);
    j["other_value"] = env.outcome_label(violation.other_value);
    j["note"] = violation.note;
    return j;
}

Json check_result_to_json(const CheckResult& result, const Selection& mechanism) {
    Json j = Json::object();
    j["passed"] = result.passed;
    j["pairs_checked"] = result.pairs_checked;
    if (result.violation)
        j["violation"] = violation_to_json(*result.violation, mechanism.environment());
    return j;
}

Json guarantee_report_to_json(const GuaranteeReport& report, const Announcement& announcement,
                              Property property) {
    Json j = Json::object();
    j["property"] = std::string(property_name(property));
    j["method"] = report.method == GuaranteeMethod::Pairwise ? "pairwise" : "bruteforce";
    j["verdict"] = report.guaranteed ? "guaranteed" : "not-guaranteed";
    j["stats"] = Json::object();
    j["stats"]["pairs_checked"] = report.stats.pairs_checked;
    j["stats"]["selections_enumerated"] = report.stats.selections_enumerated;
    if (!report.guaranteed && report.violation && report.witness) {
        j["witness"] = violation_to_json(*report.violation, announcement.environment());
        j["witness"]["selection"] = selection_to_json(*report.witness);
    }
    return j;
}

Json sp_witness_to_json(const SpWitness& witness, const Environment& env) {
    Json j = Json::object();
    j["opaque_profile"] = witness.opaque_profile;
    j["alternative_profile"] = witness.alternative_profile;
    j["individual"] = env.individual_label(witness.individual);
    j["better"] = env.outcome_label(witness.better);
    j["worse"] = env.outcome_label(witness.worse);
    j["alternative_value"] = env.outcome_label(witness.alternative_value);
    j["branch"] = witness.branch == SpWitness::Branch::DeviateAtOpaqueProfile
                      ? "deviate-at-opaque-profile"
                      : "deviate-at-alternative-profile";
    j["violation"] = violation_to_json(witness.violation, env);
    j["selection"] = selection_to_json(witness.selection);
    return j;
}

Json campaign_report_to_json(const CampaignReport& report) {
    Json j = Json::object();
    Json config = Json::object();
    config["seed"] = report.config.seed;
    config["outcomes"] = report.config.num_outcomes;
    config["individuals"] = report.config.num_individuals;
    switch (report.config.domain_kind) {
    case DomainKind::FullStrict: config["domain"] = "full-strict"; break;
    case DomainKind::FullWeak: config["domain"] = "full-weak"; break;
    case DomainKind::Explicit: config["domain"] = "explicit"; break;
    }
    config["opacity_rate"] = report.config.opacity_rate;
    config["max_image_size"] = report.config.max_image_size;
    j["config"] = std::move(config);
    j["trials"] = report.trials;
    j["opaque"] = report.opaque_trials;
    j["transparent"] = report.transparent_trials;
    j["opaque_not_guaranteed"] = report.opaque_not_guaranteed;
    j["witness_anomalies"] = report.witness_anomalies;
    j["verdict_anomalies"] = report.verdict_anomalies;
    j["non_singleton_images"] = report.non_singleton_images;
    j["image_excess"] = report.image_excess;
    j["anomalies"] = Json::array();
    for (const CampaignAnomaly& anomaly : report.anomalies) {
        Json ja = Json::object();
        ja["trial"] = anomaly.trial;
        ja["message"] = anomaly.message;
        j["anomalies"].push_back(std::move(ja));
    }
    j["ok"] = report.ok();
    return j;
}

} // namespace opacity
