#include "diatopics/align.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "diatopics/errors.hpp"
#include "diatopics/text.hpp"
#include "json.hpp"

namespace diatopics {

std::vector<std::string> Lexicon::translations(const std::string& word) const {
    std::vector<std::string> result{word};
    auto it = targets.find(word);
    if (it != targets.end()) {
        for (const auto& t : it->second) {
            if (t != word) result.push_back(t);
        }
    }
    return result;
}

namespace {

// Recognizes "# languages: de -> en" (spacing flexible).
void parse_language_header(std::string_view comment, Lexicon& lex) {
    const size_t key = comment.find("languages:");
    if (key == std::string_view::npos) return;
    std::string rest(comment.substr(key + 10));
    const size_t arrow = rest.find("->");
    if (arrow == std::string::npos) return;
    const std::string src(trim(rest.substr(0, arrow)));
    const std::string tgt(trim(rest.substr(arrow + 2)));
    if (!src.empty() && !tgt.empty()) {
        lex.source_lang = lowercase(src);
        lex.target_lang = lowercase(tgt);
    }
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon: " + path);
    Lexicon lex;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            parse_language_header(stripped, lex);
            continue;
        }
        const size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError("lexicon line " + std::to_string(line_no) +
                            " has no tab separator");
        }
        const std::string source =
            lowercase(std::string(trim(line.substr(0, tab))));
        const std::string target =
            lowercase(std::string(trim(line.substr(tab + 1))));
        if (source.empty() || target.empty()) {
            throw DataError("lexicon line " + std::to_string(line_no) +
                            " has an empty side");
        }
        auto& list = lex.targets[source];
        if (std::find(list.begin(), list.end(), target) == list.end()) {
            list.push_back(target);
        }
    }
    return lex;
}

double topic_similarity(const std::vector<std::pair<std::string, double>>& a,
                        const std::vector<std::pair<std::string, double>>& b,
                        const Lexicon& lexicon) {
    std::unordered_map<std::string, double> b_mass;
    for (const auto& [word, prob] : b) {
        auto [it, inserted] = b_mass.emplace(word, prob);
        if (!inserted) it->second = std::max(it->second, prob);
    }
    double covered = 0.0;
    double total = 0.0;
    for (const auto& [word, prob] : a) {
        double best = 0.0;
        for (const auto& t : lexicon.translations(word)) {
            auto it = b_mass.find(t);
            if (it != b_mass.end()) best = std::max(best, it->second);
        }
        covered += std::min(prob, best);
        total += prob;
    }
    if (!(total > 0.0)) return 0.0;
    return covered / total;
}

std::vector<std::vector<double>> similarity_matrix(
    const std::vector<TopicSummary>& topics_a,
    const std::vector<TopicSummary>& topics_b, const Lexicon& lexicon) {
    std::vector<std::vector<double>> scores(
        topics_a.size(), std::vector<double>(topics_b.size(), 0.0));
    for (size_t i = 0; i < topics_a.size(); ++i) {
        for (size_t j = 0; j < topics_b.size(); ++j) {
            scores[i][j] = topic_similarity(topics_a[i].top_words,
                                            topics_b[j].top_words, lexicon);
        }
    }
    return scores;
}

namespace {

std::vector<TopicAlignment> greedy_match(
    const std::vector<std::vector<double>>& scores) {
    const size_t rows = scores.size();
    const size_t cols = scores[0].size();
    std::vector<char> row_done(rows, 0), col_done(cols, 0);
    std::vector<TopicAlignment> pairs;
    const size_t n_pairs = std::min(rows, cols);
    while (pairs.size() < n_pairs) {
        double best = -std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 0;
        for (size_t i = 0; i < rows; ++i) {
            if (row_done[i]) continue;
            for (size_t j = 0; j < cols; ++j) {
                if (col_done[j]) continue;
                if (scores[i][j] > best) {
                    best = scores[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        row_done[bi] = 1;
        col_done[bj] = 1;
        pairs.push_back({static_cast<int32_t>(bi), static_cast<int32_t>(bj),
                         best});
    }
    return pairs;
}

// Assignment problem on an n x m cost matrix (n <= m), minimizing total
// cost via shortest augmenting paths with potentials. Returns for each row
// the assigned column.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const int m = static_cast<int>(cost[0].size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= m; ++j) {
        if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
    }
    return row_to_col;
}

std::vector<TopicAlignment> optimal_match(
    const std::vector<std::vector<double>>& scores) {
    const size_t rows = scores.size();
    const size_t cols = scores[0].size();
    std::vector<TopicAlignment> pairs;
    if (rows <= cols) {
        std::vector<std::vector<double>> cost(rows,
                                              std::vector<double>(cols));
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) cost[i][j] = -scores[i][j];
        }
        const auto row_to_col = hungarian_min(cost);
        for (size_t i = 0; i < rows; ++i) {
            pairs.push_back({static_cast<int32_t>(i),
                             static_cast<int32_t>(row_to_col[i]),
                             scores[i][row_to_col[i]]});
        }
    } else {
        std::vector<std::vector<double>> cost(cols,
                                              std::vector<double>(rows));
        for (size_t j = 0; j < cols; ++j) {
            for (size_t i = 0; i < rows; ++i) cost[j][i] = -scores[i][j];
        }
        const auto col_to_row = hungarian_min(cost);
        for (size_t j = 0; j < cols; ++j) {
            pairs.push_back({static_cast<int32_t>(col_to_row[j]),
                             static_cast<int32_t>(j),
                             scores[col_to_row[j]][j]});
        }
    }
    return pairs;
}

}  // namespace

std::vector<TopicAlignment> align_matrix(
    const std::vector<std::vector<double>>& scores, AlignMethod method,
    double min_score) {
    if (scores.empty() || scores[0].empty()) {
        throw ConfigError("empty score matrix");
    }
    for (const auto& row : scores) {
        if (row.size() != scores[0].size()) {
            throw DataError("ragged score matrix");
        }
    }
    auto pairs = method == AlignMethod::kGreedy ? greedy_match(scores)
                                                : optimal_match(scores);
    // A zero score means no lexical evidence at all, so such pairs never
    // count as aligned no matter how low the threshold.
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [min_score](const TopicAlignment& p) {
                                   return p.score < min_score ||
                                          !(p.score > 0.0);
                               }),
                pairs.end());
    std::sort(pairs.begin(), pairs.end(),
              [](const TopicAlignment& a, const TopicAlignment& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.topic_a < b.topic_a;
              });
    return pairs;
}

std::vector<TopicAlignment> align_topics(
    const std::vector<TopicSummary>& topics_a,
    const std::vector<TopicSummary>& topics_b, const Lexicon& lexicon,
    AlignMethod method, double min_score) {
    if (topics_a.empty() || topics_b.empty()) {
        throw ConfigError("cannot align an empty topic list");
    }
    return align_matrix(similarity_matrix(topics_a, topics_b, lexicon), method,
                        min_score);
}

void save_alignment_json(const std::vector<TopicAlignment>& pairs,
                         const std::string& corpus_a,
                         const std::string& corpus_b,
                         const std::vector<TopicSummary>& topics_a,
                         const std::vector<TopicSummary>& topics_b,
                         const Lexicon& lexicon, AlignMethod method,
                         double min_score, const std::string& path) {
    auto find_topic = [](const std::vector<TopicSummary>& topics,
                         int32_t id) -> const TopicSummary* {
        for (const auto& t : topics) {
            if (t.topic_id == id) return &t;
        }
        return nullptr;
    };
    auto words_of = [&](const TopicSummary* topic) {
        nlohmann::ordered_json words = nlohmann::json::array();
        if (topic) {
            for (const auto& [word, prob] : topic->top_words) {
                words.push_back(
                    nlohmann::ordered_json{{"word", word}, {"probability", prob}});
            }
        }
        return words;
    };
    // Lexicon translations of the source topic's words that actually appear
    // among the target topic's top words — the mechanized counterpart of
    // translating a topic by hand.
    auto translated = [&](const TopicSummary* src, const TopicSummary* tgt) {
        nlohmann::ordered_json words = nlohmann::json::array();
        if (!src || !tgt) return words;
        std::vector<std::string> seen;
        for (const auto& [word, prob] : src->top_words) {
            for (const auto& t : lexicon.translations(word)) {
                const bool in_target =
                    std::any_of(tgt->top_words.begin(), tgt->top_words.end(),
                                [&](const auto& bw) { return bw.first == t; });
                if (in_target &&
                    std::find(seen.begin(), seen.end(), t) == seen.end()) {
                    seen.push_back(t);
                    words.push_back(t);
                }
            }
        }
        return words;
    };

    nlohmann::ordered_json root;
    root["source_corpus"] = corpus_a;
    root["target_corpus"] = corpus_b;
    root["method"] = method == AlignMethod::kGreedy ? "greedy" : "optimal";
    root["min_score"] = min_score;
    nlohmann::ordered_json arr = nlohmann::json::array();
    for (const auto& p : pairs) {
        const TopicSummary* src = find_topic(topics_a, p.topic_a);
        const TopicSummary* tgt = find_topic(topics_b, p.topic_b);
        nlohmann::ordered_json entry;
        entry["source_topic"] = p.topic_a;
        entry["target_topic"] = p.topic_b;
        entry["score"] = p.score;
        entry["source_top_words"] = words_of(src);
        entry["translated_words"] = translated(src, tgt);
        entry["target_top_words"] = words_of(tgt);
        arr.push_back(std::move(entry));
    }
    root["pairs"] = std::move(arr);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << root.dump(1) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace diatopics
