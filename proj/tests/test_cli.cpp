#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const auto dir = fs::temp_directory_path() / "diatopics_test_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Runs the CLI through the shell and returns its exit code.
int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

// Like run_cli, but with an environment prefix and output captured so the
// reported thread count is checkable.
int run_env(const std::string& env, const std::string& args,
            const fs::path& log) {
    const std::string cmd = env + " " + std::string(CLI_PATH) + " " + args +
                            " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -2;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

std::string write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

const std::string kSample = std::string(DATA_DIR) + "/sample/corpus.jsonl";
const std::string kProfiles = std::string(DATA_DIR) + "/profiles";
const std::string kStopwords = std::string(DATA_DIR) + "/stopwords/de.txt";

// Shared pipeline artifacts: built once, reused by the later cases.
struct Pipeline {
    fs::path dir;
    fs::path bow;
    fs::path model;

    Pipeline() : dir(work_dir()), bow(dir / "bow.json"), model(dir / "model.bin") {
        REQUIRE(run_cli("ingest --corpus " + kSample + " --lang de --profiles " +
                        kProfiles + " --stopwords " + kStopwords + " --out " +
                        q(bow)) == 0);
        REQUIRE(run_cli("train --corpus " + q(bow) +
                        " --topics 3 --passes 5 --seed 11 --out " + q(model)) ==
                0);
    }
};

Pipeline& pipeline() {
    static Pipeline instance;
    return instance;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
    CHECK(run_cli("--version") == 0);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("train --help") == 0);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("") == 1);                       // no subcommand
    CHECK(run_cli("no-such-command") == 1);
    CHECK(run_cli("train") == 1);                  // missing --corpus
    CHECK(run_cli("ingest --corpus " + kSample + " --format bogus") == 1);
    CHECK(run_cli("ingest --corpus " + kSample + " --lang de") == 1);  // no profiles
    CHECK(run_cli("histogram --corpus " + kSample + " --slot-width 0") == 1);
    CHECK(run_cli("histogram --corpus " + kSample + " --merge 1800") == 1);
    CHECK(run_cli("align --model only-one.bin") == 1);  // needs two models
}

TEST_CASE("missing input files exit with code 2") {
    CHECK(run_cli("ingest --corpus /nonexistent/corpus.jsonl") == 2);
    CHECK(run_cli("train --corpus /nonexistent/bow.json") == 2);
    CHECK(run_cli("topics --model /nonexistent/model.bin") == 2);
}

TEST_CASE("malformed data exits with code 3") {
    const auto dir = fs::temp_directory_path() / "diatopics_test_cli_data";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto dup = write_file(dir / "dup.jsonl",
                                "{\"id\": \"a\", \"text\": \"eins zwei\"}\n"
                                "{\"id\": \"a\", \"text\": \"drei vier\"}\n");
    CHECK(run_cli("ingest --corpus " + dup) == 3);

    const auto junk = write_file(dir / "junk.json", "not a bow file\n");
    CHECK(run_cli("train --corpus " + junk) == 3);

    const auto short_model = write_file(dir / "model.bin", "DTLDAMD");
    CHECK(run_cli("topics --model " + short_model) == 3);
}

TEST_CASE("the ingest -> train pipeline writes its artifacts") {
    auto& p = pipeline();
    CHECK(fs::exists(p.bow));
    CHECK(fs::exists(p.model));
    CHECK(fs::exists(p.dir / "bow.report.json"));
    CHECK(fs::exists(p.dir / "topics.json"));

    std::ifstream report_in(p.dir / "bow.report.json");
    const auto report = nlohmann::json::parse(report_in);
    CHECK(report.at("documents_loaded") == 12);
    CHECK(report.at("dropped_foreign") == 2);
    CHECK(report.at("dropped_foreign_ids").size() == 2);
    CHECK(report.at("documents_kept") == 10);
    CHECK(report.at("vocabulary_size").get<int>() > 50);

    std::ifstream topics_in(p.dir / "topics.json");
    const auto topics = nlohmann::json::parse(topics_in);
    CHECK(topics.at("model_label") == "de");
    CHECK(topics.at("topics").size() == 3);
}

TEST_CASE("training twice with the same seed is byte-identical") {
    auto& p = pipeline();
    const auto again = p.dir / "model_again.bin";
    REQUIRE(run_cli("train --corpus " + q(p.bow) +
                    " --topics 3 --passes 5 --seed 11 --out " + q(again)) == 0);
    CHECK(read_bytes(p.model) == read_bytes(again));

    const auto other = p.dir / "model_seed12.bin";
    REQUIRE(run_cli("train --corpus " + q(p.bow) +
                    " --topics 3 --passes 5 --seed 12 --out " + q(other)) == 0);
    CHECK(read_bytes(p.model) != read_bytes(other));
}

TEST_CASE("the thread count is tunable via DIACHRONY_THREADS without "
          "changing results") {
    auto& p = pipeline();
    const auto threaded = p.dir / "model_threads.bin";
    const auto log = p.dir / "train_env.log";
    REQUIRE(run_env("DIACHRONY_THREADS=4",
                    "train --corpus " + q(p.bow) +
                        " --topics 3 --passes 5 --seed 11 --out " +
                        q(threaded),
                    log) == 0);
    CHECK(read_bytes(log).find("threads: 4") != std::string::npos);
    CHECK(read_bytes(p.model) == read_bytes(threaded));

    // An unusable value falls back to the default instead of failing.
    REQUIRE(run_env("DIACHRONY_THREADS=0",
                    "train --corpus " + q(p.bow) +
                        " --topics 3 --passes 5 --seed 11 --out " +
                        q(p.dir / "x.bin"),
                    log) == 0);
    CHECK(read_bytes(log).find("threads: 1") != std::string::npos);

    // On the command line the same value is rejected outright.
    CHECK(run_cli("train --corpus " + q(p.bow) +
                  " --topics 3 --passes 5 --threads 0 --out " +
                  q(p.dir / "y.bin")) == 1);
}

TEST_CASE("options can come from a config file") {
    auto& p = pipeline();
    const auto cfg = write_file(p.dir / "train.ini",
                                "[train]\n"
                                "topics=4\n"
                                "passes=5\n"
                                "seed=11\n");
    // --config belongs to the top-level command, before the subcommand.
    const auto from_cfg = p.dir / "model_cfg.bin";
    REQUIRE(run_cli("--config " + cfg + " train --corpus " + q(p.bow) +
                    " --out " + q(from_cfg) + " --topics-out " +
                    q(p.dir / "topics_cfg.json")) == 0);
    std::ifstream topics_in(p.dir / "topics_cfg.json");
    const auto topics = nlohmann::json::parse(topics_in);
    CHECK(topics.at("topics").size() == 4);  // from the config file

    // Command line wins over the config file.
    const auto override_model = p.dir / "model_cfg2.bin";
    REQUIRE(run_cli("--config " + cfg + " train --corpus " + q(p.bow) +
                    " --topics 2 --out " + q(override_model) +
                    " --topics-out " + q(p.dir / "topics_cfg2.json")) == 0);
    std::ifstream topics2_in(p.dir / "topics_cfg2.json");
    const auto topics2 = nlohmann::json::parse(topics2_in);
    CHECK(topics2.at("topics").size() == 2);

    // A config file that does not exist is an input error.
    CHECK(run_cli("--config /nonexistent.ini train --corpus " + q(p.bow) +
                  " --out " + q(p.dir / "z.bin")) != 0);
}

TEST_CASE("trajectories command produces csv and per-topic charts") {
    auto& p = pipeline();
    const auto csv = p.dir / "traj.csv";
    const auto charts = p.dir / "charts";
    REQUIRE(run_cli("trajectories --model " + q(p.model) + " --corpus " +
                    kSample + " --slot-width 25 --out " + q(csv) + " --svg " +
                    q(charts) + " --topic 0 --topic 2") == 0);
    CHECK(fs::exists(csv));
    CHECK(fs::exists(charts / "topic_0.svg"));
    CHECK(fs::exists(charts / "topic_2.svg"));
    CHECK_FALSE(fs::exists(charts / "topic_1.svg"));  // not selected

    const auto bytes = read_bytes(csv);
    CHECK(bytes.rfind("corpus,topic,slot_start,slot_end,mean_probability,"
                      "doc_count\n", 0) == 0);

    // Unknown topic id is a usage error.
    CHECK(run_cli("trajectories --model " + q(p.model) + " --corpus " +
                  kSample + " --out " + q(csv) + " --svg " + q(charts) +
                  " --topic 99") == 1);
    // Mismatched corpus/model counts too.
    CHECK(run_cli("trajectories --model " + q(p.model) + " --model " +
                  q(p.model) + " --model " + q(p.model) + " --corpus " +
                  kSample + " --corpus " + kSample + " --out " + q(csv)) == 1);
}

TEST_CASE("overlaying a model with itself dedups the series labels") {
    auto& p = pipeline();
    const auto csv = p.dir / "overlay.csv";
    REQUIRE(run_cli("trajectories --model " + q(p.model) + " --model " +
                    q(p.model) + " --corpus " + kSample + " --out " +
                    q(csv)) == 0);
    const auto bytes = read_bytes(csv);
    CHECK(bytes.find("de,0,") != std::string::npos);
    CHECK(bytes.find("de-2,0,") != std::string::npos);
}

TEST_CASE("histogram runs on jsonl and plaintext corpora") {
    auto& p = pipeline();
    const auto csv = p.dir / "hist.csv";
    const auto svg = p.dir / "hist.svg";
    REQUIRE(run_cli("histogram --corpus " + kSample + " --slot-width 25 --out " +
                    q(csv) + " --svg " + q(svg) + " --log") == 0);
    const auto bytes = read_bytes(csv);
    CHECK(bytes.rfind("corpus,slot_start,slot_end,doc_count\n", 0) == 0);
    CHECK(read_bytes(svg).find("<svg") != std::string::npos);

    // Plaintext directory via format auto-detection.
    const std::string plain = std::string(FIXTURES_DIR) + "/plaintext_corpus";
    REQUIRE(run_cli("histogram --corpus " + plain + " --slot-width 50 --out " +
                    q(p.dir / "hist_dir.csv")) == 0);
}

TEST_CASE("align writes a report and checks lexicon languages") {
    auto& p = pipeline();
    const auto out = p.dir / "align.json";
    REQUIRE(run_cli("align --model " + q(p.model) + " " + q(p.model) +
                    " --top-k 10 --out " + q(out)) == 0);
    std::ifstream in(out);
    const auto report = nlohmann::json::parse(in);
    CHECK(report.at("pairs").size() == 3);  // self-alignment matches all topics
    for (const auto& pair : report.at("pairs")) {
        CHECK(pair.at("score").get<double>() == 1.0);
        CHECK(pair.at("source_topic") == pair.at("target_topic"));
    }

    // The lexicon declares cs -> en, but both models are labeled "de".
    const auto lex = write_file(p.dir / "lex.tsv",
                                "# languages: cs -> en\nles\tforest\n");
    CHECK(run_cli("align --model " + q(p.model) + " " + q(p.model) +
                  " --lexicon " + lex + " --out " + q(out)) == 1);
}

TEST_CASE("topics prints to stdout or exports json") {
    auto& p = pipeline();
    CHECK(run_cli("topics --model " + q(p.model) + " --top-k 5") == 0);
    const auto out = p.dir / "topics_export.json";
    REQUIRE(run_cli("topics --model " + q(p.model) + " --top-k 5 --out " +
                    q(out)) == 0);
    std::ifstream in(out);
    const auto data = nlohmann::json::parse(in);
    REQUIRE(data.at("topics").size() == 3);
    CHECK(data.at("topics")[0].at("top_words").size() == 5);
}
