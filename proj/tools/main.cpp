#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "opacity/io.hpp"

namespace {

using namespace opacity;

enum ExitCode : int {
    kOk = 0,
    kNotGuaranteed = 1,
    kInputError = 2,
    kOracleDisagreement = 3,
    kCapExceeded = 4,
};

// --cap beats OPACITY_AUDIT_CAP beats the built-in default.
std::uint64_t effective_cap(const std::optional<std::uint64_t>& flag) {
    if (flag)
        return *flag;
    if (const char* var = std::getenv("OPACITY_AUDIT_CAP")) {
        try {
            std::size_t used = 0;
            const std::string text(var);
            const unsigned long long parsed = std::stoull(text, &used);
            if (used != text.size() || parsed == 0)
                throw std::invalid_argument(text);
            return parsed;
        } catch (const std::exception&) {
            throw std::invalid_argument("OPACITY_AUDIT_CAP must be a positive integer, got \"" +
                                        std::string(var) + "\"");
        }
    }
    return kDefaultSelectionCap;
}

std::string describe_counterexample(const Environment& env, const UniversalIndifference& ce) {
    return "profile " + std::to_string(ce.profile) + ": no individual ranks " +
           env.outcome_label(ce.first) + " and " + env.outcome_label(ce.second) + " strictly";
}

std::string describe_counterexample(const Environment& env, const RichnessGap& ce) {
    return "profile " + std::to_string(ce.profile) + ", individual " +
           env.individual_label(ce.individual) + ": no alternative ranking keeps " +
           env.outcome_label(ce.preferred) + " strictly above its lower contour (witnessed by " +
           env.outcome_label(ce.dispreferred) + ")";
}

int cmd_validate(const std::vector<std::string>& paths, bool as_json) {
    Json reports = Json::array();
    for (const std::string& path : paths) {
        const Json parsed = parse_file(path);
        const bool is_announcement = parsed.is_object() && parsed.contains("images");
        std::shared_ptr<const Environment> env;
        std::optional<Announcement> announcement;
        if (is_announcement) {
            announcement = announcement_from_json(parsed, std::filesystem::path(path).parent_path());
            env = announcement->environment_ptr();
        } else {
            env = environment_from_json(parsed);
        }

        const auto indifference = check_no_universal_indifference(env->domain());
        const auto richness = check_richness(env->domain());

        Json report = Json::object();
        report["file"] = path;
        report["kind"] = is_announcement ? "announcement" : "environment";
        report["outcomes"] = env->num_outcomes();
        report["individuals"] = env->num_individuals();
        report["profiles"] = env->domain().size();
        report["no_universal_indifference"] = Json::object();
        report["no_universal_indifference"]["pass"] = indifference.passed;
        if (!indifference.passed)
            report["no_universal_indifference"]["counterexample"] =
                describe_counterexample(*env, *indifference.counterexample);
        report["richness"] = Json::object();
        report["richness"]["pass"] = richness.passed;
        if (!richness.passed)
            report["richness"]["counterexample"] =
                describe_counterexample(*env, *richness.counterexample);
        if (announcement) {
            report["announcement"] = Json::object();
            report["announcement"]["transparent"] = announcement->is_fully_transparent();
            report["announcement"]["selection_count"] = announcement->selection_count().str();
            report["announcement"]["non_singleton_images"] = announcement->non_singleton_images();
            report["announcement"]["image_excess"] = announcement->image_excess();
        }
        reports.push_back(std::move(report));

        if (!as_json) {
            std::cout << path << ": " << (is_announcement ? "announcement" : "environment") << " ("
                      << env->domain().size() << " profiles, " << env->num_outcomes()
                      << " outcomes, " << env->num_individuals() << " individuals)\n";
            std::cout << "  no-universal-indifference: " << (indifference.passed ? "pass" : "fail");
            if (!indifference.passed)
                std::cout << " (" << describe_counterexample(*env, *indifference.counterexample) << ")";
            std::cout << "\n";
            std::cout << "  richness: " << (richness.passed ? "pass" : "fail");
            if (!richness.passed)
                std::cout << " (" << describe_counterexample(*env, *richness.counterexample) << ")";
            std::cout << "\n";
            if (announcement)
                std::cout << "  transparent: " << (announcement->is_fully_transparent() ? "yes" : "no")
                          << ", selection count " << announcement->selection_count().str()
                          << ", non-singleton images " << announcement->non_singleton_images()
                          << ", image excess " << announcement->image_excess() << "\n";
        }
    }
    if (as_json)
        std::cout << canonical_dump(reports);
    return kOk;
}

int cmd_check(const std::string& path, const std::string& property_token,
              const std::string& method, const std::optional<std::uint64_t>& cap_flag,
              const std::string& reading_token, bool as_json) {
    const auto property = property_from_name(property_token);
    if (!property)
        throw std::invalid_argument("unknown property \"" + property_token +
                                    "\" (expected sp, wmm, or nonbossy)");
    CheckOptions options;
    if (reading_token == "base")
        options.nonbossy_reading = NonBossyReading::BaseOnly;
    else if (reading_token != "either")
        throw std::invalid_argument("unknown non-bossiness reading \"" + reading_token +
                                    "\" (expected either or base)");

    const Announcement announcement = load_announcement(path);
    const std::uint64_t cap = effective_cap(cap_flag);

    std::optional<GuaranteeReport> pairwise;
    std::optional<GuaranteeReport> bruteforce;
    if (method == "pairwise" || method == "both")
        pairwise = guarantee_pairwise(announcement, *property, options);
    if (method == "bruteforce" || method == "both")
        bruteforce = guarantee_bruteforce(announcement, *property, cap, options);
    if (method != "pairwise" && method != "bruteforce" && method != "both")
        throw std::invalid_argument("unknown method \"" + method +
                                    "\" (expected pairwise, bruteforce, or both)");

    if (pairwise && bruteforce && pairwise->guaranteed != bruteforce->guaranteed) {
        std::cerr << "oracle disagreement: pairwise says "
                  << (pairwise->guaranteed ? "guaranteed" : "not-guaranteed")
                  << ", brute force says "
                  << (bruteforce->guaranteed ? "guaranteed" : "not-guaranteed") << "\n";
        std::cout << canonical_dump(guarantee_report_to_json(*pairwise, announcement, *property));
        std::cout << canonical_dump(guarantee_report_to_json(*bruteforce, announcement, *property));
        return kOracleDisagreement;
    }

    const GuaranteeReport& primary = pairwise ? *pairwise : *bruteforce;
    Json report = guarantee_report_to_json(primary, announcement, *property);
    if (pairwise && bruteforce) {
        report["method"] = "both";
        report["stats"]["selections_enumerated"] = bruteforce->stats.selections_enumerated;
    }

    if (as_json) {
        std::cout << canonical_dump(report);
    } else {
        std::cout << "property: " << property_token << "\n";
        std::cout << "method: " << report["method"].get<std::string>() << "\n";
        std::cout << "verdict: " << (primary.guaranteed ? "guaranteed" : "not-guaranteed") << "\n";
        if (!primary.guaranteed)
            std::cout << canonical_dump(report["witness"]);
    }
    return primary.guaranteed ? kOk : kNotGuaranteed;
}

int cmd_witness(const std::string& path, bool as_json) {
    const Announcement announcement = load_announcement(path);
    const SpWitness witness = sp_violation_witness(announcement);
    const Json report = sp_witness_to_json(witness, announcement.environment());
    if (as_json) {
        std::cout << canonical_dump(report);
    } else {
        std::cout << "strategy-proofness refuted for every completion at profiles "
                  << witness.opaque_profile << " and " << witness.alternative_profile << "\n";
        std::cout << canonical_dump(report);
    }
    return kOk;
}

std::vector<PairImage> parse_rule(const std::string& rule, int profiles) {
    auto token_image = [](const std::string& token) -> PairImage {
        if (token == "x")
            return PairImage::First;
        if (token == "y")
            return PairImage::Second;
        if (token == "both")
            return PairImage::Both;
        throw std::invalid_argument("unknown image rule token \"" + token +
                                    "\" (expected x, y, or both)");
    };
    if (rule.find(',') == std::string::npos)
        return std::vector<PairImage>(static_cast<std::size_t>(profiles), token_image(rule));
    std::vector<PairImage> images;
    std::size_t start = 0;
    while (start <= rule.size()) {
        const std::size_t comma = rule.find(',', start);
        const std::size_t end = comma == std::string::npos ? rule.size() : comma;
        images.push_back(token_image(rule.substr(start, end - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (static_cast<int>(images.size()) != profiles)
        throw std::invalid_argument("image rule lists " + std::to_string(images.size()) +
                                    " entries for " + std::to_string(profiles) + " profiles");
    return images;
}

int cmd_build(const std::string& construction, int n, const std::string& env_path,
              const std::string& x_label, const std::string& y_label, const std::string& rule,
              std::string out_path, const std::string& env_out, bool as_json) {
    std::optional<Announcement> announcement;
    if (construction == "intro") {
        announcement = build_intro_example().announcement;
    } else if (construction == "thm2") {
        announcement = build_wmm_example(n).announcement;
    } else if (construction == "thm3") {
        if (env_path.empty())
            throw std::invalid_argument("thm3 needs --environment");
        auto env = load_environment(env_path);
        const auto x = env->outcome_by_label(x_label);
        const auto y = env->outcome_by_label(y_label);
        if (!x)
            throw std::invalid_argument("unknown outcome label \"" + x_label + "\"");
        if (!y)
            throw std::invalid_argument("unknown outcome label \"" + y_label + "\"");
        announcement = build_two_outcome_announcement(env, *x, *y,
                                                      parse_rule(rule, env->domain().size()));
    } else {
        throw std::invalid_argument("unknown construction \"" + construction +
                                    "\" (expected intro, thm2, or thm3)");
    }

    if (out_path.empty())
        out_path = construction + ".json";
    write_text_file(out_path, canonical_dump(announcement_to_json(*announcement)));
    std::vector<std::string> written{out_path};
    if (!env_out.empty()) {
        write_text_file(env_out, canonical_dump(environment_to_json(announcement->environment())));
        written.push_back(env_out);
    }

    if (as_json) {
        Json report = Json::object();
        report["construction"] = construction;
        report["written"] = written;
        std::cout << canonical_dump(report);
    } else {
        for (const std::string& path : written)
            std::cout << "wrote " << path << "\n";
    }
    return kOk;
}

int cmd_campaign(const GenConfig& config, int trials, const std::string& env_path, bool as_json) {
    CampaignReport report;
    if (!env_path.empty()) {
        GenConfig explicit_config = config;
        explicit_config.domain_kind = DomainKind::Explicit;
        report = run_sp_campaign(load_environment(env_path), explicit_config, trials);
    } else {
        report = run_sp_campaign(config, trials);
    }
    if (as_json) {
        std::cout << canonical_dump(campaign_report_to_json(report));
    } else {
        std::cout << "trials: " << report.trials << " (opaque " << report.opaque_trials
                  << ", transparent " << report.transparent_trials << ")\n";
        std::cout << "opaque not guaranteed: " << report.opaque_not_guaranteed << "\n";
        std::cout << "non-singleton images: " << report.non_singleton_images << ", image excess: "
                  << report.image_excess << "\n";
        std::cout << "anomalies: " << report.anomalies.size() << "\n";
        for (const CampaignAnomaly& anomaly : report.anomalies)
            std::cout << "  trial " << anomaly.trial << ": " << anomaly.message << "\n";
    }
    return report.ok() ? kOk : kNotGuaranteed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"audit which properties an opaque outcome announcement forces on every selection"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "parse files and run the domain checks");
    std::vector<std::string> validate_paths;
    bool validate_json = false;
    validate->add_option("paths", validate_paths, "environment or announcement files")
        ->required()
        ->expected(-1);
    validate->add_flag("--json", validate_json, "machine-readable report");

    auto* check = app.add_subcommand("check", "decide whether an announcement guarantees a property");
    std::string check_path;
    std::string check_property;
    std::string check_method = "pairwise";
    std::string check_reading = "either";
    std::optional<std::uint64_t> check_cap;
    bool check_json = false;
    check->add_option("announcement", check_path, "announcement file")->required();
    check->add_option("--property", check_property, "sp | wmm | nonbossy")->required();
    check->add_option("--method", check_method, "pairwise | bruteforce | both (default pairwise)");
    check->add_option("--cap", check_cap, "selection enumeration cap (default 2^20 or OPACITY_AUDIT_CAP)");
    check->add_option("--nonbossy-reading", check_reading,
                      "either | base: which of the deviator's rankings may certify her own strict comparison");
    check->add_flag("--json", check_json, "machine-readable report");

    auto* witness = app.add_subcommand("witness",
                                       "construct a strategy-proofness refutation for an opaque announcement");
    std::string witness_path;
    bool witness_json = false;
    witness->add_option("announcement", witness_path, "announcement file")->required();
    witness->add_flag("--json", witness_json, "machine-readable report");

    auto* build = app.add_subcommand("build", "emit a canonical example as announcement/environment files");
    std::string build_construction;
    int build_n = 3;
    std::string build_env;
    std::string build_x;
    std::string build_y;
    std::string build_rule = "both";
    std::string build_out;
    std::string build_env_out;
    bool build_json = false;
    build->add_option("--construction", build_construction, "intro | thm2 | thm3")->required();
    build->add_option("--n", build_n, "number of outcomes (thm2)");
    build->add_option("--environment", build_env, "environment file (thm3)");
    build->add_option("--x", build_x, "first outcome label (thm3)");
    build->add_option("--y", build_y, "second outcome label (thm3)");
    build->add_option("--rule", build_rule,
                      "x | y | both, or a comma list with one entry per profile (thm3)");
    build->add_option("--out", build_out, "announcement output path (default <construction>.json)");
    build->add_option("--env-out", build_env_out, "also write the environment to this path");
    build->add_flag("--json", build_json, "machine-readable report");

    auto* campaign = app.add_subcommand("campaign", "replicated seeded refutation experiment");
    GenConfig config;
    int campaign_trials = 1000;
    std::string campaign_domain = "full-strict";
    std::string campaign_env;
    bool campaign_json = false;
    campaign->add_option("--seed", config.seed, "base seed (default 0)");
    campaign->add_option("--outcomes", config.num_outcomes, "number of outcomes (default 3)");
    campaign->add_option("--individuals", config.num_individuals, "number of individuals (default 1)");
    campaign->add_option("--trials", campaign_trials, "number of trials (default 1000)");
    campaign->add_option("--opacity-rate", config.opacity_rate,
                         "probability of widening an image (default 0.5)");
    campaign->add_option("--max-image-size", config.max_image_size,
                         "largest image a widening may produce (default 2)");
    campaign->add_option("--domain", campaign_domain, "full-strict | full-weak (default full-strict)");
    campaign->add_option("--environment", campaign_env, "explicit environment file");
    campaign->add_flag("--json", campaign_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate)
            return cmd_validate(validate_paths, validate_json);
        if (*check)
            return cmd_check(check_path, check_property, check_method, check_cap, check_reading,
                             check_json);
        if (*witness)
            return cmd_witness(witness_path, witness_json);
        if (*build)
            return cmd_build(build_construction, build_n, build_env, build_x, build_y, build_rule,
                             build_out, build_env_out, build_json);
        if (*campaign) {
            if (campaign_domain == "full-strict")
                config.domain_kind = DomainKind::FullStrict;
            else if (campaign_domain == "full-weak")
                config.domain_kind = DomainKind::FullWeak;
            else
                throw std::invalid_argument("unknown domain \"" + campaign_domain +
                                            "\" (expected full-strict or full-weak)");
            return cmd_campaign(config, campaign_trials, campaign_env, campaign_json);
        }
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const WitnessPreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
