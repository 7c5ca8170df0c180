#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "diatopics/ingest.hpp"

namespace diatopics {

enum class Upos { kNoun, kAdj, kVerb, kOther };

struct AnnotatedToken {
    std::string surface;
    std::string lemma;   // falls back to the lowercased surface
    Upos upos = Upos::kOther;
};

// A document after lemma reduction, POS filtering and stopword removal.
struct Document {
    std::string id;
    std::vector<std::string> lemmas;   // lowercase, each contains a letter
    std::optional<int> year;
    std::string lang;
};

struct StopList {
    std::set<std::string> entries;     // lowercase lemmas

    bool contains(const std::string& lemma) const {
        return entries.count(lemma) != 0;
    }
};

// One lemma per line; '#' starts a comment.
StopList load_stoplist(const std::string& path);

// Splits on non-letter codepoints, lowercases, and keeps only tokens of
// at least two letters. Digit-bearing tokens can never form (digits are
// split boundaries).
std::vector<std::string> tokenize(const std::string& text);

struct AnnotationLoad {
    std::unordered_map<std::string, std::vector<AnnotatedToken>> by_doc;
    std::vector<std::string> warnings;
};

// TSV sidecar with columns doc_id, surface, lemma, upos; rows for one
// document are contiguous. Wrong column counts are fatal; unknown POS tags
// map to OTHER with a warning.
AnnotationLoad load_annotations(const std::string& path);

// Reduces a raw document to lemmas. With annotations: keep NOUN/ADJ/VERB
// when pos_filter is set, take the lemma, lowercase. Without: fall back to
// tokenize(raw.text). Stopwords are removed afterwards; the result may be
// empty (callers exclude such documents from training).
Document reduce_document(const RawDocument& raw,
                         const std::vector<AnnotatedToken>* annotations,
                         const StopList& stops, bool pos_filter);

struct Vocabulary {
    std::unordered_map<std::string, int32_t> token_to_id;
    std::vector<std::string> id_to_token;
    std::vector<int32_t> doc_freq;     // per id, always >= 1

    int32_t size() const { return static_cast<int32_t>(id_to_token.size()); }
};

// Keeps lemmas with document frequency in [min_df, max_df_ratio * docs].
// Ids are dense, assigned by descending document frequency with
// lexicographic tie-break, so vocabularies are reproducible.
Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_df,
                            double max_df_ratio);

struct BowCorpus {
    // Per document: (token id, count) pairs with strictly increasing ids.
    std::vector<std::vector<std::pair<int32_t, int32_t>>> docs;
    std::vector<std::string> doc_ids;
    int32_t vocab_size = 0;

    int64_t total_tokens() const {
        int64_t total = 0;
        for (const auto& doc : docs) {
            for (const auto& [id, count] : doc) total += count;
        }
        return total;
    }
};

struct BowResult {
    BowCorpus corpus;
    std::vector<std::string> empty_doc_ids;  // dropped: no in-vocab lemmas
};

// Counts in-vocabulary lemmas per document; out-of-vocabulary lemmas are
// dropped silently and documents left empty are excluded (ids reported).
BowResult to_bow(const std::vector<Document>& docs, const Vocabulary& vocab);

// Versioned JSON serialization: header line with vocab/doc ids, then one
// sparse row per document. Also carries the corpus language label.
void save_bow(const BowCorpus& corpus, const Vocabulary& vocab,
              const std::string& lang, const std::string& path);

struct BowFile {
    BowCorpus corpus;
    Vocabulary vocab;
    std::string lang;
};

BowFile load_bow(const std::string& path);

}  // namespace diatopics
