#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "diatopics/align.hpp"
#include "diatopics/errors.hpp"
#include "diatopics/rng.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace diatopics;

namespace {

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "diatopics_test_align";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

TopicSummary make_topic(int32_t id,
                        std::vector<std::pair<std::string, double>> words) {
    TopicSummary topic;
    topic.topic_id = id;
    topic.top_words = std::move(words);
    return topic;
}

// Exhaustive assignment oracle: maximum total score over all injective
// row -> column mappings, found by recursion.
double best_assignment(const std::vector<std::vector<double>>& scores) {
    const size_t rows = scores.size();
    const size_t cols = scores[0].size();
    std::vector<char> used(cols, 0);
    double best = -1.0;
    double current = 0.0;
    const size_t depth_goal = std::min(rows, cols);
    std::function<void(size_t, size_t)> recurse = [&](size_t row, size_t taken) {
        if (taken == depth_goal || row == rows) {
            best = std::max(best, current);
            return;
        }
        const size_t remaining_rows = rows - row;
        const size_t needed = depth_goal - taken;
        for (size_t j = 0; j < cols; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            current += scores[row][j];
            recurse(row + 1, taken + 1);
            current -= scores[row][j];
            used[j] = 0;
        }
        // Skipping a row is only allowed if enough rows remain to fill the
        // matching (happens when rows > cols).
        if (remaining_rows > needed) recurse(row + 1, taken);
    };
    recurse(0, 0);
    return best;
}

std::vector<std::vector<double>> random_scores(size_t rows, size_t cols,
                                               uint64_t seed) {
    Xoshiro256ss rng(seed);
    std::vector<std::vector<double>> scores(rows, std::vector<double>(cols));
    for (auto& row : scores) {
        for (auto& v : row) v = 0.05 + 0.9 * rng.next_double();
    }
    return scores;
}

double total_score(const std::vector<TopicAlignment>& pairs) {
    double total = 0.0;
    for (const auto& p : pairs) total += p.score;
    return total;
}

}  // namespace

TEST_CASE("lexicon fixture loads with multi-target entries") {
    const auto lex =
        load_lexicon(std::string(FIXTURES_DIR) + "/lexicon_de_en.tsv");
    CHECK(lex.targets.size() >= 30);
    REQUIRE(lex.targets.count("wald"));
    CHECK(lex.targets.at("wald") == std::vector<std::string>{"forest", "wood"});
    REQUIRE(lex.targets.count("stadt"));
    CHECK(lex.targets.at("stadt") == std::vector<std::string>{"town", "city"});
    // The fixture's comment is not a language declaration.
    CHECK(lex.source_lang.empty());
    CHECK(lex.target_lang.empty());
}

TEST_CASE("translations always start with the word itself") {
    const auto lex =
        load_lexicon(std::string(FIXTURES_DIR) + "/lexicon_de_en.tsv");
    CHECK(lex.translations("wald") ==
          std::vector<std::string>{"wald", "forest", "wood"});
    CHECK(lex.translations("zeppelin") == std::vector<std::string>{"zeppelin"});
    CHECK(Lexicon{}.translations("x") == std::vector<std::string>{"x"});
}

TEST_CASE("lexicon parsing: header, case folding, dedup, errors") {
    const auto dir = temp_dir();
    const auto good = write_file(dir / "lex.tsv",
                                 "# languages: DE -> en\n"
                                 "\n"
                                 "Wald\tForest\n"
                                 "wald\tforest\n"
                                 "wald\twood\n");
    const auto lex = load_lexicon(good);
    CHECK(lex.source_lang == "de");
    CHECK(lex.target_lang == "en");
    CHECK(lex.targets.at("wald") == std::vector<std::string>{"forest", "wood"});

    CHECK_THROWS_AS(load_lexicon(write_file(dir / "notab.tsv", "wald forest\n")),
                    DataError);
    CHECK_THROWS_AS(load_lexicon(write_file(dir / "empty.tsv", "wald\t\n")),
                    DataError);
    CHECK_THROWS_AS(load_lexicon("/nonexistent/lex.tsv"), IoError);
}

TEST_CASE("topic_similarity hand-computed example") {
    const auto dir = temp_dir();
    const auto lex = load_lexicon(write_file(dir / "lex.tsv",
                                             "wald\tforest\n"
                                             "stern\tstar\n"));
    const auto a = make_topic(0, {{"wald", 0.4}, {"meer", 0.4}, {"stern", 0.2}});
    const auto b = make_topic(0, {{"forest", 0.5}, {"hill", 0.4}, {"star", 0.1}});
    // wald covers min(0.4, 0.5) = 0.4; meer translates to nothing in b;
    // stern covers min(0.2, 0.1) = 0.1. Total mass of a is 1.0.
    CHECK(topic_similarity(a.top_words, b.top_words, lex) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // Without the lexicon only shared surface forms count: none here.
    CHECK(topic_similarity(a.top_words, b.top_words, Lexicon{}) == 0.0);
}

TEST_CASE("a topic is always perfectly similar to itself") {
    const auto topics = {
        make_topic(0, {{"wald", 0.41}, {"baum", 0.3}, {"moos", 0.29}}),
        make_topic(1, {{"a", 0.9}, {"b", 0.05}, {"c", 0.05}}),
    };
    for (const auto& t : topics) {
        // Exact equality, not approximate: min(p, p) = p for every word.
        CHECK(topic_similarity(t.top_words, t.top_words, Lexicon{}) == 1.0);
    }
}

TEST_CASE("similarity is zero for disjoint vocabularies and empty input") {
    const auto a = make_topic(0, {{"wald", 0.6}, {"baum", 0.4}});
    const auto b = make_topic(0, {{"sea", 0.6}, {"ship", 0.4}});
    CHECK(topic_similarity(a.top_words, b.top_words, Lexicon{}) == 0.0);
    CHECK(topic_similarity({}, b.top_words, Lexicon{}) == 0.0);
}

TEST_CASE("similarity_matrix computes every pair") {
    const auto dir = temp_dir();
    const auto lex =
        load_lexicon(write_file(dir / "lex.tsv", "wald\tforest\n"));
    const std::vector<TopicSummary> as = {
        make_topic(0, {{"wald", 1.0}}),
        make_topic(1, {{"meer", 1.0}}),
    };
    const std::vector<TopicSummary> bs = {
        make_topic(0, {{"forest", 1.0}}),
        make_topic(1, {{"meer", 0.5}, {"salz", 0.5}}),
    };
    const auto m = similarity_matrix(as, bs, lex);
    REQUIRE(m.size() == 2);
    REQUIRE(m[0].size() == 2);
    CHECK(m[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m[0][1] == 0.0);
    CHECK(m[1][0] == 0.0);
    CHECK(m[1][1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("optimal matching equals the exhaustive oracle") {
    // Square and rectangular shapes, both orientations.
    const std::vector<std::pair<size_t, size_t>> shapes = {
        {2, 2}, {3, 3}, {4, 4}, {5, 5}, {3, 5}, {5, 3}, {1, 4}, {4, 1}};
    uint64_t seed = 100;
    for (const auto& [rows, cols] : shapes) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto scores = random_scores(rows, cols, seed++);
            const auto pairs = align_matrix(scores, AlignMethod::kOptimal, 0.0);
            REQUIRE(pairs.size() == std::min(rows, cols));
            CHECK(total_score(pairs) ==
                  doctest::Approx(best_assignment(scores)).epsilon(1e-12));
        }
    }
}

TEST_CASE("optimal total is never below greedy total") {
    for (uint64_t seed = 0; seed < 50; ++seed) {
        const auto scores = random_scores(8, 8, 9000 + seed);
        const auto greedy = align_matrix(scores, AlignMethod::kGreedy, 0.0);
        const auto optimal = align_matrix(scores, AlignMethod::kOptimal, 0.0);
        CHECK(total_score(optimal) >= total_score(greedy) - 1e-12);
    }
}

TEST_CASE("matchings are injective on both sides and sorted by score") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        for (const auto method : {AlignMethod::kGreedy, AlignMethod::kOptimal}) {
            const auto scores = random_scores(6, 9, 777 + seed);
            const auto pairs = align_matrix(scores, method, 0.0);
            std::set<int32_t> as, bs;
            for (const auto& p : pairs) {
                CHECK(as.insert(p.topic_a).second);
                CHECK(bs.insert(p.topic_b).second);
                CHECK(p.score == scores[p.topic_a][p.topic_b]);
            }
            for (size_t i = 1; i < pairs.size(); ++i) {
                CHECK(pairs[i].score <= pairs[i - 1].score);
            }
        }
    }
}

TEST_CASE("total matched score is invariant under row relabeling") {
    const auto scores = random_scores(7, 7, 314);
    auto shuffled = scores;
    std::rotate(shuffled.begin(), shuffled.begin() + 3, shuffled.end());
    const auto a = align_matrix(scores, AlignMethod::kOptimal, 0.0);
    const auto b = align_matrix(shuffled, AlignMethod::kOptimal, 0.0);
    CHECK(total_score(a) == doctest::Approx(total_score(b)).epsilon(1e-12));
}

TEST_CASE("min_score filters pairs after matching") {
    const std::vector<std::vector<double>> scores = {{0.9, 0.1}, {0.8, 0.2}};
    const auto all = align_matrix(scores, AlignMethod::kOptimal, 0.0);
    REQUIRE(all.size() == 2);
    CHECK(all[0].topic_a == 0);
    CHECK(all[0].topic_b == 0);
    CHECK(all[0].score == 0.9);
    CHECK(all[1].score == 0.2);

    const auto some = align_matrix(scores, AlignMethod::kOptimal, 0.5);
    REQUIRE(some.size() == 1);
    CHECK(some[0].score == 0.9);

    // Nothing clears a 0.95 threshold here.
    CHECK(align_matrix(scores, AlignMethod::kOptimal, 0.95).empty());
}

TEST_CASE("zero-score pairs are dropped even with min_score 0") {
    const std::vector<std::vector<double>> scores = {{0.0, 0.7}, {0.0, 0.0}};
    for (const auto method : {AlignMethod::kGreedy, AlignMethod::kOptimal}) {
        const auto pairs = align_matrix(scores, method, 0.0);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].topic_a == 0);
        CHECK(pairs[0].topic_b == 1);
        CHECK(pairs[0].score == 0.7);
    }
    // All-zero matrix: no pairs at all.
    CHECK(align_matrix({{0.0, 0.0}, {0.0, 0.0}}, AlignMethod::kOptimal, 0.0)
              .empty());
}

TEST_CASE("align_matrix validates its input") {
    CHECK_THROWS_AS(align_matrix({}, AlignMethod::kOptimal, 0.0), ConfigError);
    CHECK_THROWS_AS(align_matrix({{}}, AlignMethod::kOptimal, 0.0), ConfigError);
    CHECK_THROWS_AS(
        align_matrix({{0.1, 0.2}, {0.3}}, AlignMethod::kOptimal, 0.0),
        DataError);
}

TEST_CASE("align_topics matches same-language models on shared words") {
    const std::vector<TopicSummary> as = {
        make_topic(0, {{"wald", 0.6}, {"baum", 0.4}}),
        make_topic(1, {{"meer", 0.7}, {"sturm", 0.3}}),
    };
    const std::vector<TopicSummary> bs = {
        make_topic(0, {{"meer", 0.6}, {"sturm", 0.4}}),
        make_topic(1, {{"wald", 0.5}, {"baum", 0.5}}),
    };
    const auto pairs =
        align_topics(as, bs, Lexicon{}, AlignMethod::kOptimal, 0.0);
    REQUIRE(pairs.size() == 2);
    // Cross pairing: a0 <-> b1, a1 <-> b0.
    CHECK(pairs[0].score >= pairs[1].score);
    for (const auto& p : pairs) {
        CHECK(p.topic_a != p.topic_b);
        CHECK(p.score == doctest::Approx(0.9).epsilon(1e-12));
    }
    CHECK_THROWS_AS(align_topics({}, bs, Lexicon{}, AlignMethod::kOptimal, 0.0),
                    ConfigError);
}

TEST_CASE("alignment report round-trips through JSON with translations") {
    const auto dir = temp_dir();
    const auto lex = load_lexicon(
        write_file(dir / "lex.tsv", "# languages: de -> en\nwald\tforest\n"));
    const std::vector<TopicSummary> as = {
        make_topic(0, {{"wald", 0.7}, {"baum", 0.3}}),
    };
    const std::vector<TopicSummary> bs = {
        make_topic(0, {{"forest", 0.6}, {"tree", 0.4}}),
        make_topic(1, {{"sea", 1.0}}),
    };
    const auto pairs = align_topics(as, bs, lex, AlignMethod::kOptimal, 0.0);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].topic_b == 0);

    const auto path = (dir / "alignment.json").string();
    save_alignment_json(pairs, "de", "en", as, bs, lex, AlignMethod::kOptimal,
                        0.25, path);

    std::ifstream in(path);
    const auto data = nlohmann::json::parse(in);
    CHECK(data.at("source_corpus") == "de");
    CHECK(data.at("target_corpus") == "en");
    CHECK(data.at("method") == "optimal");
    CHECK(data.at("min_score") == 0.25);
    REQUIRE(data.at("pairs").size() == 1);
    const auto& entry = data.at("pairs")[0];
    CHECK(entry.at("source_topic") == 0);
    CHECK(entry.at("target_topic") == 0);
    // min(0.7, 0.6) covered out of source mass 1.0.
    CHECK(entry.at("score").get<double>() == doctest::Approx(0.6).epsilon(1e-12));
    REQUIRE(entry.at("source_top_words").size() == 2);
    CHECK(entry.at("source_top_words")[0].at("word") == "wald");
    CHECK(entry.at("source_top_words")[0].at("probability").get<double>() ==
          doctest::Approx(0.7).epsilon(1e-12));
    REQUIRE(entry.at("target_top_words").size() == 2);
    // "wald" translates to "forest", which sits in the target's top words.
    REQUIRE(entry.at("translated_words").size() == 1);
    CHECK(entry.at("translated_words")[0] == "forest");
}
