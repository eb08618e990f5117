// End-to-end tests of the command line tool: every documented exit code
// and output contract, exercised through a real process spawn.
// Usage: cli_tests <path-to-cli-binary>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "opacity/io.hpp"

namespace {

using opacity::Json;

int failures = 0;
std::string cli;
std::filesystem::path workdir;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const auto out_path = workdir / "stdout.txt";
    const auto err_path = workdir / "stderr.txt";
    const std::string command = env_prefix + (env_prefix.empty() ? "" : " ") + cli + " " + args +
                                " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

void expect(bool condition, const std::string& label, const std::string& detail = "") {
    if (condition) {
        std::cout << "ok: " << label << "\n";
    } else {
        ++failures;
        std::cout << "FAILED: " << label << (detail.empty() ? "" : " -- " + detail) << "\n";
    }
}

void expect_exit(const RunResult& result, int wanted, const std::string& label) {
    expect(result.exit_code == wanted, label,
           "exit " + std::to_string(result.exit_code) + " wanted " + std::to_string(wanted) +
               "; stderr: " + result.err);
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::filesystem::path write(const std::string& name, const std::string& text) {
    const auto path = workdir / name;
    opacity::write_text_file(path, text);
    return path;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <cli-binary>\n";
        return 2;
    }
    cli = argv[1];
    workdir = std::filesystem::temp_directory_path() /
              ("opacity_cli_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(workdir);

    const std::string intro = (workdir / "intro.json").string();
    const std::string intro_env = (workdir / "intro_env.json").string();
    const std::string thm2 = (workdir / "thm2.json").string();
    const std::string thm3 = (workdir / "thm3.json").string();

    // ---- argument handling -------------------------------------------------
    expect_exit(run(""), 2, "no subcommand is a usage error");
    expect_exit(run("--help"), 0, "--help exits cleanly");
    expect_exit(run("frobnicate"), 2, "unknown subcommand is a usage error");
    expect_exit(run("check"), 2, "check without arguments is a usage error");
    expect_exit(run("check missing.json --property sp --method warp"), 2,
                "unknown method is a usage error");

    // ---- build -------------------------------------------------------------
    expect_exit(run("build --construction intro --out " + intro + " --env-out " + intro_env), 0,
                "build intro writes files");
    expect_exit(run("build --construction thm2 --n 3 --out " + thm2), 0, "build thm2");
    expect_exit(run("build --construction thm3 --environment " + intro_env +
                    " --x x --y y --rule both --out " + thm3),
                0, "build thm3 from an environment file");
    expect_exit(run("build --construction thm2 --n 2"), 2, "thm2 needs three outcomes");
    expect_exit(run("build --construction nosuch"), 2, "unknown construction");
    expect_exit(run("build --construction thm3 --x x --y y"), 2, "thm3 needs an environment");
    expect_exit(run("build --construction thm3 --environment " + intro_env +
                    " --x x --y q --rule both"),
                2, "unknown outcome label");
    expect_exit(run("build --construction thm3 --environment " + intro_env +
                    " --x x --y y --rule x,both"),
                2, "rule list must match the profile count");

    {
        const RunResult twice =
            run("build --construction intro --out " + (workdir / "intro2.json").string());
        expect_exit(twice, 0, "build intro twice");
        expect(slurp(intro) == slurp(workdir / "intro2.json"),
               "canonical builds are byte-identical");
        const opacity::Announcement in_process = opacity::build_intro_example().announcement;
        expect(slurp(intro) ==
                   opacity::canonical_dump(opacity::announcement_to_json(in_process)),
               "file bytes equal the library's canonical dump");
    }

    // ---- validate ----------------------------------------------------------
    {
        const RunResult result = run("validate " + intro);
        expect_exit(result, 0, "validate intro announcement");
        expect(contains(result.out, "no-universal-indifference: pass"),
               "intro passes the indifference check", result.out);
        expect(contains(result.out, "richness: fail"), "intro fails richness", result.out);
        expect(contains(result.out, "transparent: no"), "intro is opaque", result.out);
    }
    {
        const RunResult result = run("validate " + intro_env + " " + intro + " --json");
        expect_exit(result, 0, "validate accepts several files with --json");
        const Json parsed = Json::parse(result.out);
        expect(parsed.is_array() && parsed.size() == 2, "one report per file");
        expect(parsed[0]["kind"] == "environment" && parsed[1]["kind"] == "announcement",
               "file kinds are detected from their keys");
        expect(parsed[1]["announcement"]["selection_count"] == "4",
               "selection counts are serialized as exact strings");
    }
    {
        const auto thm2_env = workdir / "thm2_env.json";
        run("build --construction thm2 --n 3 --out " + (workdir / "ignore.json").string() +
            " --env-out " + thm2_env.string());
        const RunResult result = run("validate " + thm2_env.string());
        expect_exit(result, 0, "validate a rich environment");
        expect(contains(result.out, "richness: pass"), "full strict domain is rich", result.out);
    }
    expect_exit(run("validate " + write("broken.json", "{").string()), 2,
                "malformed JSON is an input error");
    expect_exit(run("validate " + (workdir / "absent.json").string()), 2,
                "a missing file is an input error");
    {
        Json bad = Json::parse(slurp(intro));
        bad["images"][0][0] = "zzz";
        const RunResult result =
            run("validate " + write("badlabel.json", opacity::canonical_dump(bad)).string());
        expect_exit(result, 2, "unknown labels are an input error");
        expect(contains(result.err, "images[0][0]"), "the error names the field path",
               result.err);
    }

    // ---- check -------------------------------------------------------------
    {
        const RunResult result = run("check " + intro + " --property sp --method both");
        expect_exit(result, 0, "intro guarantees strategy-proofness");
        expect(contains(result.out, "verdict: guaranteed"), "human verdict line", result.out);
    }
    {
        const RunResult result = run("check " + thm2 + " --property wmm --method both --json");
        expect_exit(result, 0, "thm2 guarantees weak Maskin monotonicity");
        const Json parsed = Json::parse(result.out);
        expect(parsed["verdict"] == "guaranteed" && parsed["method"] == "both",
               "JSON verdict carries the merged method");
        expect(parsed["stats"]["selections_enumerated"] == 2,
               "brute-force stats are merged in", result.out);
    }
    {
        const RunResult result = run("check " + thm2 + " --property sp --json");
        expect_exit(result, 1, "thm2 does not guarantee strategy-proofness");
        const Json parsed = Json::parse(result.out);
        expect(parsed["method"] == "pairwise", "the default method is pairwise");
        expect(parsed["witness"]["property"] == "sp" && parsed["witness"]["selection"].is_array(),
               "failure reports include a witness selection");
        // The witness must be a genuine selection of the announcement.
        const opacity::Announcement ann = opacity::load_announcement(thm2);
        bool member = true;
        for (int p = 0; p < ann.domain_size(); ++p) {
            const auto label = parsed["witness"]["selection"][static_cast<std::size_t>(p)]
                                   .get<std::string>();
            member = member &&
                     ann.contains(p, ann.environment().outcome_by_label(label).value());
        }
        expect(member, "the witness selection stays inside the images");
    }
    {
        const RunResult result = run("check " + thm2 + " --property sp");
        expect_exit(result, 1, "human mode shares the exit code");
        expect(contains(result.out, "\"note\""), "human mode still prints the witness JSON",
               result.out);
    }
    expect_exit(run("check " + intro + " --property nonbossy --method both"), 0,
                "intro guarantees non-bossiness");
    expect_exit(run("check " + thm3 + " --property nonbossy --method both"), 0,
                "two-outcome announcements guarantee non-bossiness");
    expect_exit(run("check " + thm3 + " --property sp"), 1,
                "the same announcement fails strategy-proofness");
    expect_exit(run("check " + intro + " --property zz"), 2, "unknown property");

    // ---- cap handling ------------------------------------------------------
    expect_exit(run("check " + thm3 + " --property sp --method bruteforce --cap 2"), 4,
                "a breached cap is its own exit code");
    expect_exit(run("check " + thm3 + " --property sp --method both --cap 2"), 4,
                "both-methods runs surface the breached cap");
    expect_exit(run("check " + thm3 + " --property sp --method pairwise --cap 2"), 1,
                "pairwise never enumerates, so the cap is moot");
    expect_exit(run("check " + thm3 + " --property sp --method bruteforce", "OPACITY_AUDIT_CAP=2"),
                4, "OPACITY_AUDIT_CAP lowers the default cap");
    expect_exit(run("check " + thm3 + " --property sp --method bruteforce --cap 100",
                    "OPACITY_AUDIT_CAP=2"),
                1, "--cap beats the environment variable");
    expect_exit(run("check " + thm3 + " --property sp --method bruteforce",
                    "OPACITY_AUDIT_CAP=banana"),
                2, "a malformed cap variable is a config error");

    // ---- nonbossy reading switch --------------------------------------------
    {
        // Transparent announcement whose unique selection separates the
        // two readings: the deviator is strict at one profile and
        // indifferent at the other.
        const Json env_doc = Json::parse(R"({
          "outcomes": ["x1", "x2", "x3"],
          "individuals": ["i1", "i2"],
          "profiles": [
            [[["x1"], ["x2"], ["x3"]], [["x1"], ["x2"], ["x3"]]],
            [[["x1", "x2"], ["x3"]], [["x1"], ["x2"], ["x3"]]]
          ]
        })");
        Json ann_doc = Json::object();
        ann_doc["environment"] = env_doc;
        ann_doc["images"] = Json::parse(R"([["x1"], ["x2"]])");
        const auto path = write("reading.json", opacity::canonical_dump(ann_doc));
        expect_exit(run("check " + path.string() + " --property nonbossy"), 0,
                    "the default reading accepts either side");
        expect_exit(run("check " + path.string() +
                        " --property nonbossy --nonbossy-reading either"),
                    0, "explicit either matches the default");
        expect_exit(run("check " + path.string() +
                        " --property nonbossy --nonbossy-reading base"),
                    1, "the base-only reading rejects one-sided strictness");
        expect_exit(run("check " + path.string() +
                        " --property nonbossy --nonbossy-reading sideways"),
                    2, "unknown reading");
    }

    // ---- witness -----------------------------------------------------------
    {
        const RunResult result = run("witness " + thm2 + " --json");
        expect_exit(result, 0, "witness succeeds on an opaque rich announcement");
        const Json parsed = Json::parse(result.out);
        expect(parsed["branch"] == "deviate-at-opaque-profile" &&
                   parsed["violation"]["property"] == "sp",
               "witness JSON is structured", result.out);
    }
    {
        const RunResult result = run("witness " + intro);
        expect_exit(result, 2, "two outcomes cannot feed the construction");
        expect(contains(result.err, "N<3"), "the precondition is named", result.err);
    }
    {
        // Built on a three-outcome domain, otherwise the outcome-count
        // precondition fires first.
        const auto transparent = workdir / "transparent.json";
        run("build --construction thm3 --environment " + (workdir / "thm2_env.json").string() +
            " --x x1 --y x2 --rule x --out " + transparent.string());
        const RunResult result = run("witness " + transparent.string());
        expect_exit(result, 2, "transparent announcements have nothing to refute");
        expect(contains(result.err, "transparent"), "the precondition is named", result.err);
    }
    {
        const Json env_doc = Json::parse(R"({
          "outcomes": ["x1", "x2", "x3"],
          "individuals": ["i1"],
          "profiles": [[[["x1"], ["x2"], ["x3"]]]]
        })");
        Json ann_doc = Json::object();
        ann_doc["environment"] = env_doc;
        ann_doc["images"] = Json::parse(R"([["x1", "x2"]])");
        const auto path = write("lonely.json", opacity::canonical_dump(ann_doc));
        const RunResult result = run("witness " + path.string());
        expect_exit(result, 2, "a single-profile domain is not rich");
        expect(contains(result.err, "not-rich"), "the precondition is named", result.err);
    }
    {
        const Json env_doc = Json::parse(R"({
          "outcomes": ["x1", "x2", "x3"],
          "individuals": ["i1"],
          "profiles": [
            [[["x1"], ["x2"], ["x3"]]],
            [[["x1", "x2"], ["x3"]]]
          ]
        })");
        Json ann_doc = Json::object();
        ann_doc["environment"] = env_doc;
        ann_doc["images"] = Json::parse(R"([["x1", "x2"], ["x3"]])");
        const auto path = write("unranked.json", opacity::canonical_dump(ann_doc));
        const RunResult result = run("witness " + path.string());
        expect_exit(result, 2, "an unranked pair blocks the construction");
        expect(contains(result.err, "universal-indifference"), "the precondition is named",
               result.err);
    }

    // ---- campaign ----------------------------------------------------------
    {
        const RunResult result = run("campaign --seed 5 --trials 50 --json");
        expect_exit(result, 0, "a default campaign passes");
        const Json parsed = Json::parse(result.out);
        expect(parsed["ok"] == true && parsed["trials"] == 50, "campaign JSON totals");
        expect(parsed["opaque_not_guaranteed"] == parsed["opaque"],
               "every opaque draw is refuted");
        const RunResult rerun = run("campaign --seed 5 --trials 50 --json");
        expect(result.out == rerun.out, "campaigns are reproducible");
    }
    {
        const auto thm2_env = workdir / "thm2_env.json";
        const RunResult result =
            run("campaign --environment " + thm2_env.string() + " --seed 5 --trials 30");
        expect_exit(result, 0, "campaigns accept explicit environments");
        expect(contains(result.out, "anomalies: 0"), "no anomalies on the explicit domain",
               result.out);
    }
    expect_exit(run("campaign --outcomes 2 --trials 5"), 2,
                "campaign preconditions are config errors");
    expect_exit(run("campaign --domain banana"), 2, "unknown domain kind");
    expect_exit(run("campaign --environment " + intro_env + " --trials 5"), 2,
                "a two-outcome environment cannot host a campaign");

    // ---- summary -----------------------------------------------------------
    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
    if (failures == 0) {
        std::cout << "cli_tests: all passed\n";
        return 0;
    }
    std::cout << "cli_tests: " << failures << " failure(s)\n";
    return 1;
}
