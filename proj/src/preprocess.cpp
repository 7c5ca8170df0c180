#include "diatopics/preprocess.hpp"

#include <algorithm>
#include <fstream>

#include "diatopics/errors.hpp"
#include "diatopics/text.hpp"
#include "json.hpp"

namespace diatopics {

namespace {

constexpr int kBowVersion = 1;

bool has_letter(std::string_view s) {
    for (char32_t cp : decode_utf8(s)) {
        if (is_letter(cp)) return true;
    }
    return false;
}

Upos parse_upos(const std::string& tag, size_t line_no,
                std::vector<std::string>& warnings) {
    if (tag == "NOUN" || tag == "PROPN") return Upos::kNoun;
    if (tag == "ADJ") return Upos::kAdj;
    if (tag == "VERB") return Upos::kVerb;
    // Remaining Universal POS inventory maps to OTHER without noise.
    static const std::set<std::string> known_other = {
        "ADP", "ADV", "AUX",  "CCONJ", "DET", "INTJ", "NUM",
        "PART", "PRON", "PUNCT", "SCONJ", "SYM", "X", "OTHER"};
    if (!known_other.count(tag)) {
        warnings.push_back("line " + std::to_string(line_no) +
                           ": unknown POS tag '" + tag + "', mapped to OTHER");
    }
    return Upos::kOther;
}

}  // namespace

StopList load_stoplist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword file: " + path);
    StopList stops;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto entry = trim(line);
        if (entry.empty()) continue;
        stops.entries.insert(lowercase(entry));
    }
    return stops;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::vector<char32_t> current;
    auto flush = [&]() {
        if (current.size() >= 2) tokens.push_back(encode_utf8(current));
        current.clear();
    };
    for (char32_t cp : decode_utf8(text)) {
        if (is_letter(cp)) {
            current.push_back(to_lower(cp));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

AnnotationLoad load_annotations(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open annotation file: " + path);
    AnnotationLoad result;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        size_t start = 0;
        while (true) {
            const auto tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cols.size() != 4) {
            throw DataError("annotation file " + path + " line " +
                            std::to_string(line_no) + ": expected 4 columns, got " +
                            std::to_string(cols.size()));
        }
        AnnotatedToken token;
        token.surface = cols[1];
        if (token.surface.empty()) {
            throw DataError("annotation file " + path + " line " +
                            std::to_string(line_no) + ": empty surface form");
        }
        token.lemma = cols[2].empty() ? lowercase(token.surface) : cols[2];
        token.upos = parse_upos(cols[3], line_no, result.warnings);
        result.by_doc[cols[0]].push_back(std::move(token));
    }
    return result;
}

Document reduce_document(const RawDocument& raw,
                         const std::vector<AnnotatedToken>* annotations,
                         const StopList& stops, bool pos_filter) {
    Document doc;
    doc.id = raw.id;
    doc.year = raw.year;
    doc.lang = raw.declared_lang.value_or("");

    std::vector<std::string> lemmas;
    if (annotations) {
        for (const auto& token : *annotations) {
            if (pos_filter && token.upos == Upos::kOther) continue;
            std::string lemma = lowercase(token.lemma);
            if (!has_letter(lemma)) continue;
            lemmas.push_back(std::move(lemma));
        }
    } else {
        lemmas = tokenize(raw.text);
    }
    for (auto& lemma : lemmas) {
        if (!stops.contains(lemma)) doc.lemmas.push_back(std::move(lemma));
    }
    return doc;
}

Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df,
                            double max_df_ratio) {
    if (min_df < 1) throw ConfigError("min_df must be >= 1");
    if (max_df_ratio <= 0.0 || max_df_ratio > 1.0) {
        throw ConfigError("max_df_ratio must be in (0, 1]");
    }
    std::map<std::string, int32_t> df;
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.lemmas.begin(), doc.lemmas.end());
        for (const auto& lemma : seen) ++df[lemma];
    }
    const double max_df = max_df_ratio * static_cast<double>(docs.size());
    std::vector<std::pair<std::string, int32_t>> kept;
    for (const auto& [lemma, freq] : df) {
        if (freq >= min_df && static_cast<double>(freq) <= max_df) {
            kept.emplace_back(lemma, freq);
        }
    }
    if (kept.empty()) {
        throw ConfigError("vocabulary is empty after min_df/max_df pruning");
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Vocabulary vocab;
    vocab.id_to_token.reserve(kept.size());
    vocab.doc_freq.reserve(kept.size());
    for (const auto& [lemma, freq] : kept) {
        vocab.token_to_id.emplace(lemma, static_cast<int32_t>(vocab.id_to_token.size()));
        vocab.id_to_token.push_back(lemma);
        vocab.doc_freq.push_back(freq);
    }
    return vocab;
}

BowResult to_bow(const std::vector<Document>& docs, const Vocabulary& vocab) {
    BowResult result;
    result.corpus.vocab_size = vocab.size();
    for (const auto& doc : docs) {
        std::map<int32_t, int32_t> counts;
        for (const auto& lemma : doc.lemmas) {
            auto it = vocab.token_to_id.find(lemma);
            if (it != vocab.token_to_id.end()) ++counts[it->second];
        }
        if (counts.empty()) {
            result.empty_doc_ids.push_back(doc.id);
            continue;
        }
        std::vector<std::pair<int32_t, int32_t>> row(counts.begin(), counts.end());
        result.corpus.docs.push_back(std::move(row));
        result.corpus.doc_ids.push_back(doc.id);
    }
    return result;
}

void save_bow(const BowCorpus& corpus, const Vocabulary& vocab,
              const std::string& lang, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    nlohmann::ordered_json header;
    header["format"] = "diatopics-bow";
    header["version"] = kBowVersion;
    header["lang"] = lang;
    header["V"] = corpus.vocab_size;
    header["vocab"] = vocab.id_to_token;
    header["doc_freq"] = vocab.doc_freq;
    header["doc_ids"] = corpus.doc_ids;
    out << header.dump() << '\n';
    for (const auto& doc : corpus.docs) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& [id, count] : doc) {
            row.push_back(nlohmann::json::array({id, count}));
        }
        out << row.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

BowFile load_bow(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty bow file: " + path);
    nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object() ||
        header.value("format", "") != "diatopics-bow") {
        throw DataError("not a bow corpus file: " + path);
    }
    if (header.value("version", -1) != kBowVersion) {
        throw DataError("unsupported bow version " +
                        std::to_string(header.value("version", -1)) + " in " + path +
                        " (expected " + std::to_string(kBowVersion) + ")");
    }
    BowFile file;
    file.lang = header.value("lang", "");
    file.corpus.vocab_size = header.at("V").get<int32_t>();
    file.vocab.id_to_token = header.at("vocab").get<std::vector<std::string>>();
    file.vocab.doc_freq = header.at("doc_freq").get<std::vector<int32_t>>();
    if (file.vocab.id_to_token.size() !=
            static_cast<size_t>(file.corpus.vocab_size) ||
        file.vocab.doc_freq.size() != file.vocab.id_to_token.size()) {
        throw DataError("inconsistent vocabulary in bow file: " + path);
    }
    for (size_t i = 0; i < file.vocab.id_to_token.size(); ++i) {
        file.vocab.token_to_id.emplace(file.vocab.id_to_token[i],
                                       static_cast<int32_t>(i));
    }
    file.corpus.doc_ids = header.at("doc_ids").get<std::vector<std::string>>();
    size_t row_no = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.is_array()) {
            throw DataError("malformed bow row " + std::to_string(row_no + 1) +
                            " in " + path);
        }
        std::vector<std::pair<int32_t, int32_t>> doc;
        int32_t prev_id = -1;
        for (const auto& cell : row) {
            const int32_t id = cell.at(0).get<int32_t>();
            const int32_t count = cell.at(1).get<int32_t>();
            if (id <= prev_id || id >= file.corpus.vocab_size || count < 1) {
                throw DataError("invalid bow entry in row " +
                                std::to_string(row_no + 1) + " of " + path);
            }
            prev_id = id;
            doc.emplace_back(id, count);
        }
        file.corpus.docs.push_back(std::move(doc));
        ++row_no;
    }
    if (file.corpus.docs.size() != file.corpus.doc_ids.size()) {
        throw DataError("bow file row count does not match doc_ids: " + path);
    }
    return file;
}

}  // namespace diatopics
