#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace diatopics {

// A poem (or other document) as it arrives from disk, before any
// linguistic normalization.
struct RawDocument {
    std::string id;                          // unique within the corpus
    std::string text;                        // UTF-8
    std::optional<int> year;                 // Gregorian, in [1000, 2100]
    std::optional<std::string> author;
    std::optional<std::string> declared_lang;  // ISO 639-1, as found in metadata
};

enum class CorpusFormat { kJsonl, kPlaintextDir };

struct CorpusLoad {
    std::vector<RawDocument> docs;
    size_t skipped = 0;                      // malformed records
    std::vector<std::string> warnings;
};

// Loads a corpus. JSONL: one object per line with fields id, text, year,
// author, lang. plaintext-dir: *.txt files plus a metadata.csv with header
// file,id,year,author,lang. Malformed records are skipped with a warning;
// duplicate ids and unreadable files are fatal.
CorpusLoad load_corpus(const std::string& path, CorpusFormat format);

// Canonical JSONL serialization; load_corpus(write_corpus_jsonl(docs)) is
// the identity on the document list.
void write_corpus_jsonl(const std::vector<RawDocument>& docs,
                        const std::string& path);

// Character n-gram model (n = 1..3) for one language. Values are log
// relative frequencies with add-one smoothing; every value is finite and
// <= 0 and the fallback lies strictly below the smallest stored value.
struct LanguageProfile {
    std::string lang;                         // ISO 639-1
    std::map<std::string, double> ngram_logfreq;
    double fallback_logfreq = 0.0;
};

// Trains one profile per language from (lang, text) samples. Requires at
// least 2000 characters of concatenated sample text per language.
std::vector<LanguageProfile> train_profiles(
    const std::vector<std::pair<std::string, std::string>>& samples);

LanguageProfile load_profile(const std::string& path);
void save_profile(const LanguageProfile& profile, const std::string& path);

// Loads every *.json profile in a directory, sorted by language code.
std::vector<LanguageProfile> load_profiles_dir(const std::string& dir);

struct Detection {
    std::optional<std::string> lang;          // absent => indeterminate
    double score = 0.0;                       // log likelihood per character
    std::vector<std::pair<std::string, double>> all_scores;  // per language
};

// Argmax-likelihood language of `text` under the profiles; deterministic,
// ties broken by language code. Texts with fewer than 20 non-whitespace
// characters come back indeterminate.
Detection detect_language(const std::string& text,
                          const std::vector<LanguageProfile>& profiles);

struct FilterResult {
    std::vector<RawDocument> kept;
    std::vector<RawDocument> dropped;
    size_t indeterminate = 0;                 // kept, but flagged
    std::vector<std::string> warnings;
};

// Partitions docs into kept/dropped. A document is kept when it is detected
// as `expected`, when the per-character score gap between the winning
// language and `expected` stays below `margin`, or when detection is
// indeterminate (kept with a warning).
FilterResult filter_foreign(const std::vector<RawDocument>& docs,
                            const std::string& expected,
                            const std::vector<LanguageProfile>& profiles,
                            double margin);

}  // namespace diatopics
