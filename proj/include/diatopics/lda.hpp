#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diatopics/preprocess.hpp"

namespace diatopics {

struct LdaHyperparams {
    int32_t topics = 100;     // K
    double alpha = 0.5;       // symmetric Dirichlet prior on doc-topic
    double beta = 0.01;       // symmetric Dirichlet prior on topic-word
    int32_t passes = 100;     // full Gibbs sweeps over the corpus
    uint64_t seed = 0;
};

// Collapsed Gibbs state. phi/theta derive from these count matrices:
//   phi[k][w]   = (word_topic[w*K+k] + beta)  / (topic_total[k] + V*beta)
//   theta[d][k] = (doc_topic[d*K+k]  + alpha) / (doc_total[d]   + K*alpha)
struct LdaModel {
    int32_t K = 0;
    int32_t V = 0;
    std::vector<int32_t> word_topic;   // V x K, word-major for sampling locality
    std::vector<int64_t> topic_total;  // K
    std::vector<int32_t> doc_topic;    // D x K
    std::vector<int64_t> doc_total;    // D
    // Per-token topic labels, aligned with expand_doc() of each bow row.
    std::vector<std::vector<int32_t>> assignments;
    LdaHyperparams hyper;

    size_t num_docs() const { return doc_total.size(); }
    int64_t total_tokens() const {
        int64_t total = 0;
        for (int64_t n : topic_total) total += n;
        return total;
    }
};

struct TopicSummary {
    int32_t topic_id = 0;
    // (lemma, probability), probability non-increasing, ties lexicographic.
    std::vector<std::pair<std::string, double>> top_words;
    std::optional<std::string> label;
};

// Token ids of a sparse bow row repeated by count, in canonical id order.
std::vector<int32_t> expand_doc(
    const std::vector<std::pair<int32_t, int32_t>>& doc);

// Assigns every token a uniformly random topic from its document's seeded
// stream and builds all count matrices. Same corpus and seed give a
// bit-identical model.
LdaModel init_model(const BowCorpus& corpus, const LdaHyperparams& hyper);

// One full resampling of every token (collapsed Gibbs). `pass` selects the
// per-document RNG streams; train() uses pass = 1, 2, ....
//
// Every document samples against the sweep-start counts plus its own
// in-document updates; per-document deltas merge into the model at sweep
// end. Merging is integer addition, so the result is independent of both
// document order and thread count, and count conservation is exact.
void gibbs_sweep(LdaModel& model, const BowCorpus& corpus, int pass,
                 int threads = 1);

// init_model followed by hyper.passes sweeps.
LdaModel train(const BowCorpus& corpus, const LdaHyperparams& hyper,
               int threads = 1);

// Row-normalized estimators; every row sums to 1 and is strictly positive.
std::vector<std::vector<double>> phi(const LdaModel& model);
std::vector<std::vector<double>> theta(const LdaModel& model);
std::vector<double> theta_row(const LdaModel& model, size_t doc);

// The k most probable words of a topic, ties broken lexicographically.
TopicSummary top_words(const LdaModel& model, const Vocabulary& vocab,
                       int32_t topic_id, int32_t k);
TopicSummary top_words(const LdaModel& model,
                       const std::vector<std::string>& id_to_token,
                       int32_t topic_id, int32_t k);

// Gibbs fold-in for a document that was not part of training: topic-word
// counts stay fixed, only the document's own topic counts resample.
// Deterministic given the seed. An empty document yields the uniform
// distribution.
std::vector<double> infer_theta(
    const LdaModel& model, const std::vector<std::pair<int32_t, int32_t>>& doc,
    int iterations, uint64_t seed);

// exp of the per-token cross-entropy of the model on held-out text, with
// document mixtures obtained by fold-in.
double perplexity(const LdaModel& model, const BowCorpus& heldout,
                  int iterations, uint64_t seed);

// Throws DataError if any count invariant fails or the matrices cannot be
// reconstructed from the assignments.
void check_consistency(const LdaModel& model, const BowCorpus& corpus);

// Model container with everything needed to interpret the counts.
struct ModelBundle {
    LdaModel model;
    std::string label;                 // corpus label, e.g. "de"
    std::vector<std::string> vocab;    // token id -> lemma
    std::vector<std::string> doc_ids;  // row -> document id
};

// Versioned binary container (layout documented in the README). Round-trips
// bit-exactly; unknown versions and truncated files are rejected.
void save_model(const ModelBundle& bundle, const std::string& path);
ModelBundle load_model(const std::string& path);

// TopicSummary export for all topics, as written to topics.json.
void save_topics_json(const ModelBundle& bundle, int32_t top_k,
                      const std::string& path);

}  // namespace diatopics
