#include "diatopics/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "diatopics/errors.hpp"
#include "diatopics/text.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace diatopics {

namespace {

constexpr int kMinYear = 1000;
constexpr int kMaxYear = 2100;
constexpr size_t kMinDetectChars = 20;
constexpr size_t kMinSampleChars = 2000;
constexpr int kProfileVersion = 1;
constexpr int kMaxGram = 3;

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    return in;
}

// Accepts an integer year in range; anything else yields absent plus a
// warning so a stray "unknown" in the metadata never kills a load.
std::optional<int> parse_year_json(const nlohmann::json& value,
                                   const std::string& doc_id, size_t line_no,
                                   std::vector<std::string>& warnings) {
    if (value.is_null()) return std::nullopt;
    if (value.is_number_integer()) {
        const int year = value.get<int>();
        if (year >= kMinYear && year <= kMaxYear) return year;
        warnings.push_back("line " + std::to_string(line_no) + " (id " + doc_id +
                           "): year " + std::to_string(year) +
                           " outside [1000, 2100], treated as unknown");
        return std::nullopt;
    }
    warnings.push_back("line " + std::to_string(line_no) + " (id " + doc_id +
                       "): unparseable year " + value.dump() +
                       ", treated as unknown");
    return std::nullopt;
}

CorpusLoad load_jsonl(const std::string& path) {
    auto in = open_or_throw(path);
    CorpusLoad result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": malformed JSON, record skipped");
            ++result.skipped;
            continue;
        }
        if (!record.contains("id") || !record["id"].is_string() ||
            record["id"].get<std::string>().empty()) {
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": missing or invalid id, record skipped");
            ++result.skipped;
            continue;
        }
        RawDocument doc;
        doc.id = record["id"].get<std::string>();
        if (!record.contains("text") || !record["text"].is_string() ||
            is_blank(record["text"].get<std::string>())) {
            result.warnings.push_back("line " + std::to_string(line_no) + " (id " +
                                      doc.id + "): missing or blank text, record skipped");
            ++result.skipped;
            continue;
        }
        doc.text = record["text"].get<std::string>();
        if (record.contains("year")) {
            doc.year = parse_year_json(record["year"], doc.id, line_no,
                                       result.warnings);
        }
        if (record.contains("author") && record["author"].is_string()) {
            doc.author = record["author"].get<std::string>();
        }
        if (record.contains("lang") && record["lang"].is_string()) {
            doc.declared_lang = record["lang"].get<std::string>();
        }
        if (!seen_ids.insert(doc.id).second) {
            throw DataError("duplicate document id '" + doc.id + "' at line " +
                            std::to_string(line_no) + " of " + path);
        }
        result.docs.push_back(std::move(doc));
    }
    return result;
}

// RFC-4180-ish row splitter; handles quoted fields with "" escapes.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

CorpusLoad load_plaintext_dir(const std::string& path) {
    const fs::path dir(path);
    const fs::path meta_path = dir / "metadata.csv";
    if (!fs::exists(meta_path)) {
        throw IoError("plaintext-dir corpus requires " + meta_path.string());
    }
    auto in = open_or_throw(meta_path.string());
    CorpusLoad result;
    std::unordered_set<std::string> seen_ids;
    std::unordered_set<std::string> listed_files;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (line_no == 1) {
            if (fields != std::vector<std::string>{"file", "id", "year", "author",
                                                   "lang"}) {
                throw DataError("metadata.csv header must be file,id,year,author,lang");
            }
            continue;
        }
        if (fields.size() != 5) {
            result.warnings.push_back("metadata.csv line " + std::to_string(line_no) +
                                      ": expected 5 fields, got " +
                                      std::to_string(fields.size()) + ", row skipped");
            ++result.skipped;
            continue;
        }
        const std::string& file = fields[0];
        RawDocument doc;
        doc.id = fields[1];
        if (doc.id.empty()) {
            result.warnings.push_back("metadata.csv line " + std::to_string(line_no) +
                                      ": empty id, row skipped");
            ++result.skipped;
            continue;
        }
        listed_files.insert(file);
        if (!fields[2].empty()) {
            try {
                size_t used = 0;
                const int year = std::stoi(fields[2], &used);
                if (used == fields[2].size() && year >= kMinYear && year <= kMaxYear) {
                    doc.year = year;
                } else {
                    result.warnings.push_back("metadata.csv line " +
                                              std::to_string(line_no) + " (id " + doc.id +
                                              "): unparseable year '" + fields[2] +
                                              "', treated as unknown");
                }
            } catch (const std::exception&) {
                result.warnings.push_back("metadata.csv line " + std::to_string(line_no) +
                                          " (id " + doc.id + "): unparseable year '" +
                                          fields[2] + "', treated as unknown");
            }
        }
        if (!fields[3].empty()) doc.author = fields[3];
        if (!fields[4].empty()) doc.declared_lang = fields[4];

        auto text_in = open_or_throw((dir / file).string());
        std::ostringstream text;
        text << text_in.rdbuf();
        doc.text = text.str();
        if (is_blank(doc.text)) {
            result.warnings.push_back("file " + file + " (id " + doc.id +
                                      "): blank text, row skipped");
            ++result.skipped;
            continue;
        }
        if (!seen_ids.insert(doc.id).second) {
            throw DataError("duplicate document id '" + doc.id +
                            "' in metadata.csv of " + path);
        }
        result.docs.push_back(std::move(doc));
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".txt" &&
            !listed_files.count(entry.path().filename().string())) {
            result.warnings.push_back("file " + entry.path().filename().string() +
                                      " has no metadata.csv row, ignored");
        }
    }
    return result;
}

// Lowercases and collapses whitespace runs into single spaces; the result is
// the codepoint sequence n-grams are read from.
std::vector<char32_t> normalize_for_ngrams(std::string_view text) {
    std::vector<char32_t> out;
    bool pending_space = false;
    for (char32_t cp : decode_utf8(text)) {
        if (is_whitespace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(to_lower(cp));
    }
    return out;
}

template <typename Fn>
void for_each_ngram(const std::vector<char32_t>& cps, Fn&& fn) {
    std::string gram;
    for (int n = 1; n <= kMaxGram; ++n) {
        if (cps.size() < static_cast<size_t>(n)) break;
        for (size_t i = 0; i + n <= cps.size(); ++i) {
            bool all_space = true;
            for (int j = 0; j < n; ++j) {
                if (cps[i + j] != U' ') {
                    all_space = false;
                    break;
                }
            }
            if (all_space) continue;
            gram.clear();
            for (int j = 0; j < n; ++j) append_utf8(gram, cps[i + j]);
            fn(gram);
        }
    }
}

size_t count_non_space(const std::vector<char32_t>& cps) {
    size_t n = 0;
    for (char32_t cp : cps) {
        if (cp != U' ') ++n;
    }
    return n;
}

double score_against(const std::vector<char32_t>& cps,
                     const LanguageProfile& profile) {
    double total = 0.0;
    for_each_ngram(cps, [&](const std::string& gram) {
        auto it = profile.ngram_logfreq.find(gram);
        total += (it != profile.ngram_logfreq.end()) ? it->second
                                                     : profile.fallback_logfreq;
    });
    return total;
}

}  // namespace

CorpusLoad load_corpus(const std::string& path, CorpusFormat format) {
    switch (format) {
        case CorpusFormat::kJsonl:
            return load_jsonl(path);
        case CorpusFormat::kPlaintextDir:
            return load_plaintext_dir(path);
    }
    throw ConfigError("unknown corpus format");
}

void write_corpus_jsonl(const std::vector<RawDocument>& docs,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    for (const auto& doc : docs) {
        nlohmann::ordered_json record;
        record["id"] = doc.id;
        record["text"] = doc.text;
        record["year"] = doc.year ? nlohmann::json(*doc.year) : nlohmann::json();
        record["author"] =
            doc.author ? nlohmann::json(*doc.author) : nlohmann::json();
        record["lang"] = doc.declared_lang ? nlohmann::json(*doc.declared_lang)
                                           : nlohmann::json();
        out << record.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<LanguageProfile> train_profiles(
    const std::vector<std::pair<std::string, std::string>>& samples) {
    if (samples.empty()) throw ConfigError("no language samples given");

    std::map<std::string, std::string> concatenated;
    for (const auto& [lang, text] : samples) {
        auto& buf = concatenated[lang];
        if (!buf.empty()) buf.push_back('\n');
        buf += text;
    }

    std::vector<LanguageProfile> profiles;
    for (const auto& [lang, text] : concatenated) {
        const auto cps = normalize_for_ngrams(text);
        if (count_non_space(cps) < kMinSampleChars) {
            throw ConfigError("language '" + lang + "' has fewer than " +
                              std::to_string(kMinSampleChars) +
                              " sample characters");
        }
        std::unordered_map<std::string, int64_t> counts;
        std::array<int64_t, kMaxGram + 1> total{};
        for_each_ngram(cps, [&](const std::string& gram) {
            ++counts[gram];
            ++total[decode_utf8(gram).size()];
        });
        // Distinct gram inventory per n, for add-one smoothing denominators.
        std::array<int64_t, kMaxGram + 1> inventory{};
        for (const auto& [gram, count] : counts) {
            ++inventory[decode_utf8(gram).size()];
        }
        LanguageProfile profile;
        profile.lang = lang;
        double fallback = 0.0;
        for (int n = 1; n <= kMaxGram; ++n) {
            if (total[n] > 0) {
                fallback = std::min(
                    fallback, -std::log(static_cast<double>(total[n] + inventory[n])));
            }
        }
        profile.fallback_logfreq = fallback;
        for (const auto& [gram, count] : counts) {
            const size_t n = decode_utf8(gram).size();
            profile.ngram_logfreq[gram] =
                std::log(static_cast<double>(count + 1)) -
                std::log(static_cast<double>(total[n] + inventory[n]));
        }
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

LanguageProfile load_profile(const std::string& path) {
    auto in = open_or_throw(path);
    nlohmann::json data = nlohmann::json::parse(in, nullptr, false);
    if (data.is_discarded() || !data.is_object()) {
        throw DataError("malformed language profile: " + path);
    }
    if (!data.contains("version") || data["version"].get<int>() != kProfileVersion) {
        throw DataError("unsupported profile version in " + path);
    }
    LanguageProfile profile;
    profile.lang = data.at("lang").get<std::string>();
    profile.fallback_logfreq = data.at("fallback").get<double>();
    for (const auto& [gram, value] : data.at("grams").items()) {
        profile.ngram_logfreq[gram] = value.get<double>();
    }
    if (profile.ngram_logfreq.empty()) {
        throw DataError("empty language profile: " + path);
    }
    return profile;
}

void save_profile(const LanguageProfile& profile, const std::string& path) {
    nlohmann::ordered_json data;
    data["version"] = kProfileVersion;
    data["lang"] = profile.lang;
    data["n"] = kMaxGram;
    nlohmann::ordered_json grams;
    for (const auto& [gram, value] : profile.ngram_logfreq) grams[gram] = value;
    data["grams"] = std::move(grams);
    data["fallback"] = profile.fallback_logfreq;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << data.dump(1) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::vector<LanguageProfile> load_profiles_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("profile directory not found: " + dir);
    }
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<LanguageProfile> profiles;
    for (const auto& path : paths) profiles.push_back(load_profile(path));
    std::sort(profiles.begin(), profiles.end(),
              [](const auto& a, const auto& b) { return a.lang < b.lang; });
    return profiles;
}

Detection detect_language(const std::string& text,
                          const std::vector<LanguageProfile>& profiles) {
    if (profiles.size() < 2) {
        throw ConfigError("language detection needs at least 2 profiles");
    }
    Detection result;
    const auto cps = normalize_for_ngrams(text);
    const size_t chars = count_non_space(cps);
    if (chars < kMinDetectChars) return result;  // indeterminate

    for (const auto& profile : profiles) {
        result.all_scores.emplace_back(
            profile.lang, score_against(cps, profile) / static_cast<double>(chars));
    }
    std::sort(result.all_scores.begin(), result.all_scores.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto best = std::max_element(
        result.all_scores.begin(), result.all_scores.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    result.lang = best->first;
    result.score = best->second;
    return result;
}

FilterResult filter_foreign(const std::vector<RawDocument>& docs,
                            const std::string& expected,
                            const std::vector<LanguageProfile>& profiles,
                            double margin) {
    if (margin < 0.0) throw ConfigError("filter margin must be >= 0");
    FilterResult result;
    for (const auto& doc : docs) {
        const Detection detection = detect_language(doc.text, profiles);
        if (!detection.lang) {
            result.warnings.push_back("document " + doc.id +
                                      ": too short for language detection, kept");
            ++result.indeterminate;
            result.kept.push_back(doc);
            continue;
        }
        if (*detection.lang == expected) {
            result.kept.push_back(doc);
            continue;
        }
        double expected_score = -std::numeric_limits<double>::infinity();
        for (const auto& [lang, score] : detection.all_scores) {
            if (lang == expected) expected_score = score;
        }
        if (detection.score - expected_score < margin) {
            result.kept.push_back(doc);
        } else {
            result.dropped.push_back(doc);
        }
    }
    return result;
}

}  // namespace diatopics
