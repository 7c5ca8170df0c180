#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diatopics/lda.hpp"

namespace diatopics {

// Translation lexicon: source lemma -> target lemmas. Lookups always
// include the source word itself, so shared vocabulary (names, loanwords,
// same-language comparisons) matches without an explicit entry.
struct Lexicon {
    std::unordered_map<std::string, std::vector<std::string>> targets;
    std::string source_lang;  // optional, from a "# languages: a -> b" header
    std::string target_lang;

    // Translations of `word`, identity first.
    std::vector<std::string> translations(const std::string& word) const;
};

// Tab-separated `source<TAB>target`, one pair per line; '#' comments and
// blank lines are skipped; both sides are lowercased. A comment of the form
// `# languages: de -> en` declares the language pair.
Lexicon load_lexicon(const std::string& path);

// Overlap of topic `a` with topic `b` under the lexicon: each of a's top
// words contributes min(p_a(w), best translated mass in b), normalized by
// a's own top-word mass. 1.0 means b covers a completely; a topic compared
// with itself scores exactly 1.0.
double topic_similarity(const std::vector<std::pair<std::string, double>>& a,
                        const std::vector<std::pair<std::string, double>>& b,
                        const Lexicon& lexicon);

enum class AlignMethod { kGreedy, kOptimal };

struct TopicAlignment {
    int32_t topic_a = 0;
    int32_t topic_b = 0;
    double score = 0.0;
};

// Full pairwise similarity matrix, rows = topics of a, cols = topics of b.
std::vector<std::vector<double>> similarity_matrix(
    const std::vector<TopicSummary>& topics_a,
    const std::vector<TopicSummary>& topics_b, const Lexicon& lexicon);

// One-to-one matching over a score matrix. kGreedy repeatedly takes the
// highest remaining cell; kOptimal maximizes the total score (Hungarian
// method). Pairs scoring 0 or below min_score are dropped afterwards. The
// result is sorted by descending score and never matches a topic twice on
// either side.
std::vector<TopicAlignment> align_matrix(
    const std::vector<std::vector<double>>& scores, AlignMethod method,
    double min_score = 0.0);

std::vector<TopicAlignment> align_topics(
    const std::vector<TopicSummary>& topics_a,
    const std::vector<TopicSummary>& topics_b, const Lexicon& lexicon,
    AlignMethod method, double min_score = 0.0);

// JSON report: one entry per matched pair with source_topic, target_topic,
// score, source_top_words, translated_words (the lexicon translations of
// source words that landed in the target's top words) and target_top_words.
void save_alignment_json(const std::vector<TopicAlignment>& pairs,
                         const std::string& corpus_a,
                         const std::string& corpus_b,
                         const std::vector<TopicSummary>& topics_a,
                         const std::vector<TopicSummary>& topics_b,
                         const Lexicon& lexicon, AlignMethod method,
                         double min_score, const std::string& path);

}  // namespace diatopics
