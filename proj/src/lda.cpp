#include "diatopics/lda.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <thread>

#include "diatopics/errors.hpp"
#include "diatopics/rng.hpp"
#include "json.hpp"

namespace diatopics {

namespace {

// Stream tags feeding mix_seed; pass p uses tag p (p >= 1).
constexpr uint64_t kInitStream = 0;

uint64_t doc_stream_seed(uint64_t seed, uint64_t stream, std::string_view doc_id) {
    return mix_seed(mix_seed(seed, stream), fnv1a64(doc_id));
}

void validate_hyper(const LdaHyperparams& hyper) {
    if (hyper.topics < 1) throw ConfigError("topic count must be >= 1");
    if (!(hyper.alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (!(hyper.beta > 0.0)) throw ConfigError("beta must be > 0");
    if (hyper.passes < 1) throw ConfigError("passes must be >= 1");
}

// Per-worker scratch reused across documents.
struct SweepBuffers {
    std::vector<double> weight;        // K
    std::vector<int64_t> local_nk;     // K, document-local view of topic totals
    std::vector<int32_t> cols;         // unique-words x K column copies
};

// Resamples one document against the sweep-start snapshot. The document's
// own moves are tracked in local column copies, so nothing here reads
// another document's in-sweep updates. Deltas accumulate into `delta_wk`
// and `delta_k`.
void sample_document(const LdaModel& model, const BowCorpus& corpus, size_t d,
                     int pass, std::vector<int32_t>& assignment,
                     int32_t* doc_topic_row, SweepBuffers& buf,
                     std::atomic<int32_t>* delta_wk,
                     std::atomic<int64_t>* delta_k) {
    const int32_t K = model.K;
    const auto& sparse = corpus.docs[d];
    const size_t uniq = sparse.size();
    const double alpha = model.hyper.alpha;
    const double beta = model.hyper.beta;
    const double v_beta = static_cast<double>(model.V) * beta;

    buf.local_nk.assign(model.topic_total.begin(), model.topic_total.end());
    buf.cols.resize(uniq * static_cast<size_t>(K));
    for (size_t u = 0; u < uniq; ++u) {
        const int32_t w = sparse[u].first;
        std::memcpy(buf.cols.data() + u * K, model.word_topic.data() +
                        static_cast<size_t>(w) * K,
                    sizeof(int32_t) * static_cast<size_t>(K));
    }

    Xoshiro256ss rng(doc_stream_seed(model.hyper.seed, static_cast<uint64_t>(pass),
                                     corpus.doc_ids[d]));
    size_t pos = 0;
    for (size_t u = 0; u < uniq; ++u) {
        int32_t* col = buf.cols.data() + u * K;
        const int32_t count = sparse[u].second;
        for (int32_t rep = 0; rep < count; ++rep, ++pos) {
            const int32_t old_z = assignment[pos];
            --col[old_z];
            --buf.local_nk[old_z];
            --doc_topic_row[old_z];

            double total = 0.0;
            for (int32_t k = 0; k < K; ++k) {
                const double w_part = (static_cast<double>(col[k]) + beta) /
                                      (static_cast<double>(buf.local_nk[k]) + v_beta);
                total += w_part * (static_cast<double>(doc_topic_row[k]) + alpha);
                buf.weight[k] = total;  // running cumulative sum
            }
            const double u01 = rng.next_double() * total;
            int32_t new_z = 0;
            while (new_z < K - 1 && buf.weight[new_z] <= u01) ++new_z;

            assignment[pos] = new_z;
            ++col[new_z];
            ++buf.local_nk[new_z];
            ++doc_topic_row[new_z];
        }
    }

    for (size_t u = 0; u < uniq; ++u) {
        const int32_t w = sparse[u].first;
        const int32_t* col = buf.cols.data() + u * K;
        const int32_t* base = model.word_topic.data() + static_cast<size_t>(w) * K;
        for (int32_t k = 0; k < K; ++k) {
            const int32_t diff = col[k] - base[k];
            if (diff != 0) {
                delta_wk[static_cast<size_t>(w) * K + k].fetch_add(
                    diff, std::memory_order_relaxed);
            }
        }
    }
    for (int32_t k = 0; k < K; ++k) {
        const int64_t diff = buf.local_nk[k] - model.topic_total[k];
        if (diff != 0) delta_k[k].fetch_add(diff, std::memory_order_relaxed);
    }
}

}  // namespace

std::vector<int32_t> expand_doc(
    const std::vector<std::pair<int32_t, int32_t>>& doc) {
    std::vector<int32_t> words;
    for (const auto& [id, count] : doc) {
        for (int32_t i = 0; i < count; ++i) words.push_back(id);
    }
    return words;
}

LdaModel init_model(const BowCorpus& corpus, const LdaHyperparams& hyper) {
    validate_hyper(hyper);
    if (corpus.docs.empty()) throw ConfigError("corpus is empty");
    if (corpus.vocab_size < 1) throw ConfigError("vocabulary is empty");
    if (corpus.docs.size() != corpus.doc_ids.size()) {
        throw DataError("bow corpus doc_ids out of sync with documents");
    }

    LdaModel model;
    model.K = hyper.topics;
    model.V = corpus.vocab_size;
    model.hyper = hyper;
    const size_t D = corpus.docs.size();
    model.word_topic.assign(static_cast<size_t>(model.V) * model.K, 0);
    model.topic_total.assign(model.K, 0);
    model.doc_topic.assign(D * static_cast<size_t>(model.K), 0);
    model.doc_total.assign(D, 0);
    model.assignments.resize(D);

    for (size_t d = 0; d < D; ++d) {
        Xoshiro256ss rng(
            doc_stream_seed(hyper.seed, kInitStream, corpus.doc_ids[d]));
        auto& assignment = model.assignments[d];
        for (const auto& [w, count] : corpus.docs[d]) {
            for (int32_t i = 0; i < count; ++i) {
                const auto z = static_cast<int32_t>(
                    rng.next_below(static_cast<uint32_t>(model.K)));
                assignment.push_back(z);
                ++model.word_topic[static_cast<size_t>(w) * model.K + z];
                ++model.topic_total[z];
                ++model.doc_topic[d * model.K + z];
                ++model.doc_total[d];
            }
        }
    }
    return model;
}

void gibbs_sweep(LdaModel& model, const BowCorpus& corpus, int pass,
                 int threads) {
    if (threads < 1) throw ConfigError("threads must be >= 1");
    const size_t D = corpus.docs.size();
    if (D != model.num_docs()) {
        throw DataError("model and corpus document counts differ");
    }
    const size_t cells = static_cast<size_t>(model.V) * model.K;
    auto delta_wk = std::make_unique<std::atomic<int32_t>[]>(cells);
    for (size_t i = 0; i < cells; ++i) {
        delta_wk[i].store(0, std::memory_order_relaxed);
    }
    auto delta_k = std::make_unique<std::atomic<int64_t>[]>(model.K);
    for (int32_t k = 0; k < model.K; ++k) {
        delta_k[k].store(0, std::memory_order_relaxed);
    }

    auto run_shard = [&](size_t begin, size_t end) {
        SweepBuffers buf;
        buf.weight.resize(model.K);
        for (size_t d = begin; d < end; ++d) {
            sample_document(model, corpus, d, pass, model.assignments[d],
                            model.doc_topic.data() + d * model.K, buf,
                            delta_wk.get(), delta_k.get());
        }
    };

    const size_t workers = std::min<size_t>(threads, std::max<size_t>(D, 1));
    if (workers <= 1) {
        run_shard(0, D);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t t = 0; t < workers; ++t) {
            const size_t begin = D * t / workers;
            const size_t end = D * (t + 1) / workers;
            pool.emplace_back(run_shard, begin, end);
        }
        for (auto& worker : pool) worker.join();
    }

    for (size_t i = 0; i < cells; ++i) {
        model.word_topic[i] += delta_wk[i].load(std::memory_order_relaxed);
    }
    for (int32_t k = 0; k < model.K; ++k) {
        model.topic_total[k] += delta_k[k].load(std::memory_order_relaxed);
    }
}

LdaModel train(const BowCorpus& corpus, const LdaHyperparams& hyper,
               int threads) {
    if (threads < 1) throw ConfigError("threads must be >= 1");
    LdaModel model = init_model(corpus, hyper);
    for (int32_t pass = 1; pass <= hyper.passes; ++pass) {
        gibbs_sweep(model, corpus, pass, threads);
    }
    return model;
}

std::vector<std::vector<double>> phi(const LdaModel& model) {
    std::vector<std::vector<double>> rows(model.K,
                                          std::vector<double>(model.V));
    const double v_beta = static_cast<double>(model.V) * model.hyper.beta;
    for (int32_t k = 0; k < model.K; ++k) {
        const double denom = static_cast<double>(model.topic_total[k]) + v_beta;
        for (int32_t w = 0; w < model.V; ++w) {
            rows[k][w] =
                (static_cast<double>(model.word_topic[static_cast<size_t>(w) * model.K + k]) +
                 model.hyper.beta) /
                denom;
        }
    }
    return rows;
}

std::vector<double> theta_row(const LdaModel& model, size_t doc) {
    std::vector<double> row(model.K);
    const double k_alpha = static_cast<double>(model.K) * model.hyper.alpha;
    const double denom = static_cast<double>(model.doc_total[doc]) + k_alpha;
    for (int32_t k = 0; k < model.K; ++k) {
        row[k] = (static_cast<double>(model.doc_topic[doc * model.K + k]) +
                  model.hyper.alpha) /
                 denom;
    }
    return row;
}

std::vector<std::vector<double>> theta(const LdaModel& model) {
    std::vector<std::vector<double>> rows;
    rows.reserve(model.num_docs());
    for (size_t d = 0; d < model.num_docs(); ++d) {
        rows.push_back(theta_row(model, d));
    }
    return rows;
}

TopicSummary top_words(const LdaModel& model,
                       const std::vector<std::string>& id_to_token,
                       int32_t topic_id, int32_t k) {
    if (topic_id < 0 || topic_id >= model.K) {
        throw ConfigError("topic id " + std::to_string(topic_id) +
                          " outside [0, " + std::to_string(model.K) + ")");
    }
    if (k < 1 || k > model.V) {
        throw ConfigError("top-word count must be in [1, V]");
    }
    if (id_to_token.size() != static_cast<size_t>(model.V)) {
        throw DataError("vocabulary size does not match model");
    }
    std::vector<int32_t> order(model.V);
    for (int32_t w = 0; w < model.V; ++w) order[w] = w;
    const auto count_of = [&](int32_t w) {
        return model.word_topic[static_cast<size_t>(w) * model.K + topic_id];
    };
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        if (count_of(a) != count_of(b)) return count_of(a) > count_of(b);
        return id_to_token[a] < id_to_token[b];
    });
    TopicSummary summary;
    summary.topic_id = topic_id;
    const double denom = static_cast<double>(model.topic_total[topic_id]) +
                         static_cast<double>(model.V) * model.hyper.beta;
    for (int32_t i = 0; i < k; ++i) {
        const int32_t w = order[i];
        summary.top_words.emplace_back(
            id_to_token[w],
            (static_cast<double>(count_of(w)) + model.hyper.beta) / denom);
    }
    return summary;
}

TopicSummary top_words(const LdaModel& model, const Vocabulary& vocab,
                       int32_t topic_id, int32_t k) {
    return top_words(model, vocab.id_to_token, topic_id, k);
}

std::vector<double> infer_theta(
    const LdaModel& model, const std::vector<std::pair<int32_t, int32_t>>& doc,
    int iterations, uint64_t seed) {
    if (iterations < 1) throw ConfigError("fold-in iterations must be >= 1");
    const int32_t K = model.K;
    const auto words = expand_doc(doc);
    if (words.empty()) {
        return std::vector<double>(K, 1.0 / static_cast<double>(K));
    }
    for (int32_t w : words) {
        if (w < 0 || w >= model.V) {
            throw DataError("fold-in document references token id outside model");
        }
    }

    const double alpha = model.hyper.alpha;
    const double beta = model.hyper.beta;
    const double v_beta = static_cast<double>(model.V) * beta;
    std::vector<double> denom(K);
    for (int32_t k = 0; k < K; ++k) {
        denom[k] = static_cast<double>(model.topic_total[k]) + v_beta;
    }

    Xoshiro256ss rng(seed);
    std::vector<int32_t> z(words.size());
    std::vector<int32_t> local_k(K, 0);
    for (size_t i = 0; i < words.size(); ++i) {
        z[i] = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(K)));
        ++local_k[z[i]];
    }
    std::vector<double> cumulative(K);
    for (int it = 0; it < iterations; ++it) {
        for (size_t i = 0; i < words.size(); ++i) {
            const int32_t w = words[i];
            --local_k[z[i]];
            double total = 0.0;
            const int32_t* col = model.word_topic.data() +
                                 static_cast<size_t>(w) * K;
            for (int32_t k = 0; k < K; ++k) {
                total += (static_cast<double>(col[k]) + beta) / denom[k] *
                         (static_cast<double>(local_k[k]) + alpha);
                cumulative[k] = total;
            }
            const double u01 = rng.next_double() * total;
            int32_t new_z = 0;
            while (new_z < K - 1 && cumulative[new_z] <= u01) ++new_z;
            z[i] = new_z;
            ++local_k[new_z];
        }
    }
    std::vector<double> result(K);
    const double total_tokens = static_cast<double>(words.size());
    const double k_alpha = static_cast<double>(K) * alpha;
    for (int32_t k = 0; k < K; ++k) {
        result[k] = (static_cast<double>(local_k[k]) + alpha) /
                    (total_tokens + k_alpha);
    }
    return result;
}

double perplexity(const LdaModel& model, const BowCorpus& heldout,
                  int iterations, uint64_t seed) {
    if (heldout.docs.empty()) throw ConfigError("held-out corpus is empty");
    const double beta = model.hyper.beta;
    const double v_beta = static_cast<double>(model.V) * beta;
    std::vector<double> denom(model.K);
    for (int32_t k = 0; k < model.K; ++k) {
        denom[k] = static_cast<double>(model.topic_total[k]) + v_beta;
    }

    double log_likelihood = 0.0;
    int64_t tokens = 0;
    for (size_t d = 0; d < heldout.docs.size(); ++d) {
        const auto& doc = heldout.docs[d];
        if (doc.empty()) continue;
        const auto doc_theta = infer_theta(
            model, doc, iterations,
            mix_seed(seed, fnv1a64(heldout.doc_ids[d])));
        for (const auto& [w, count] : doc) {
            double p = 0.0;
            const int32_t* col =
                model.word_topic.data() + static_cast<size_t>(w) * model.K;
            for (int32_t k = 0; k < model.K; ++k) {
                p += doc_theta[k] * (static_cast<double>(col[k]) + beta) / denom[k];
            }
            log_likelihood += static_cast<double>(count) * std::log(p);
            tokens += count;
        }
    }
    if (tokens == 0) throw ConfigError("held-out corpus has no tokens");
    return std::exp(-log_likelihood / static_cast<double>(tokens));
}

void check_consistency(const LdaModel& model, const BowCorpus& corpus) {
    const size_t D = corpus.docs.size();
    if (model.num_docs() != D || model.assignments.size() != D) {
        throw DataError("consistency: document count mismatch");
    }
    std::vector<int32_t> wk(static_cast<size_t>(model.V) * model.K, 0);
    std::vector<int64_t> nk(model.K, 0);
    for (size_t d = 0; d < D; ++d) {
        const auto words = expand_doc(corpus.docs[d]);
        if (words.size() != model.assignments[d].size()) {
            throw DataError("consistency: assignment length mismatch at doc " +
                            std::to_string(d));
        }
        std::vector<int32_t> dk(model.K, 0);
        for (size_t i = 0; i < words.size(); ++i) {
            const int32_t z = model.assignments[d][i];
            if (z < 0 || z >= model.K) {
                throw DataError("consistency: topic label out of range");
            }
            ++wk[static_cast<size_t>(words[i]) * model.K + z];
            ++nk[z];
            ++dk[z];
        }
        int64_t row_total = 0;
        for (int32_t k = 0; k < model.K; ++k) {
            if (dk[k] != model.doc_topic[d * model.K + k]) {
                throw DataError("consistency: doc_topic mismatch at doc " +
                                std::to_string(d));
            }
            row_total += dk[k];
        }
        if (row_total != model.doc_total[d] ||
            row_total != static_cast<int64_t>(words.size())) {
            throw DataError("consistency: doc_total mismatch at doc " +
                            std::to_string(d));
        }
    }
    if (wk != model.word_topic) {
        throw DataError("consistency: word_topic not reconstructable");
    }
    for (int32_t k = 0; k < model.K; ++k) {
        if (nk[k] != model.topic_total[k]) {
            throw DataError("consistency: topic_total mismatch at topic " +
                            std::to_string(k));
        }
    }
    int64_t word_sum = 0;
    for (int32_t c : model.word_topic) word_sum += c;
    if (word_sum != model.total_tokens() ||
        word_sum != corpus.total_tokens()) {
        throw DataError("consistency: corpus token total mismatch");
    }
}

namespace {

constexpr char kModelMagic[8] = {'D', 'T', 'L', 'D', 'A', 'M', 'D', 'L'};
constexpr uint32_t kModelVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot write file: " + path);
    }
    void raw(const void* data, size_t size) {
        out_.write(static_cast<const char*>(data),
                   static_cast<std::streamsize>(size));
    }
    template <typename T>
    void value(T v) {
        raw(&v, sizeof(T));
    }
    void str(const std::string& s) {
        value<uint32_t>(static_cast<uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    void done(const std::string& path) {
        out_.flush();
        if (!out_) throw IoError("write failed: " + path);
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path)
        : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw IoError("cannot open file: " + path);
    }
    void raw(void* data, size_t size) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
        if (static_cast<size_t>(in_.gcount()) != size) {
            throw DataError("truncated model file " + path_ + " at offset " +
                            std::to_string(offset_));
        }
        offset_ += size;
    }
    template <typename T>
    T value() {
        T v;
        raw(&v, sizeof(T));
        return v;
    }
    std::string str(size_t max_len = 1u << 20) {
        const uint32_t len = value<uint32_t>();
        if (len > max_len) {
            throw DataError("corrupt string length in model file " + path_ +
                            " at offset " + std::to_string(offset_ - 4));
        }
        std::string s(len, '\0');
        if (len > 0) raw(s.data(), len);
        return s;
    }
    size_t offset() const { return offset_; }

private:
    std::ifstream in_;
    std::string path_;
    size_t offset_ = 0;
};

}  // namespace

void save_model(const ModelBundle& bundle, const std::string& path) {
    const LdaModel& m = bundle.model;
    if (bundle.vocab.size() != static_cast<size_t>(m.V) ||
        bundle.doc_ids.size() != m.num_docs()) {
        throw DataError("model bundle vocab/doc_ids do not match model shape");
    }
    Writer out(path);
    out.raw(kModelMagic, sizeof(kModelMagic));
    out.value<uint32_t>(kModelVersion);
    out.value<uint32_t>(static_cast<uint32_t>(m.K));
    out.value<uint32_t>(static_cast<uint32_t>(m.V));
    out.value<uint64_t>(m.num_docs());
    out.value<double>(m.hyper.alpha);
    out.value<double>(m.hyper.beta);
    out.value<uint64_t>(m.hyper.seed);
    out.value<uint32_t>(static_cast<uint32_t>(m.hyper.passes));
    out.str(bundle.label);
    out.raw(m.word_topic.data(), m.word_topic.size() * sizeof(int32_t));
    out.raw(m.topic_total.data(), m.topic_total.size() * sizeof(int64_t));
    out.raw(m.doc_topic.data(), m.doc_topic.size() * sizeof(int32_t));
    out.raw(m.doc_total.data(), m.doc_total.size() * sizeof(int64_t));
    for (const auto& assignment : m.assignments) {
        out.value<uint32_t>(static_cast<uint32_t>(assignment.size()));
        out.raw(assignment.data(), assignment.size() * sizeof(int32_t));
    }
    for (const auto& token : bundle.vocab) out.str(token);
    for (const auto& id : bundle.doc_ids) out.str(id);
    out.done(path);
}

ModelBundle load_model(const std::string& path) {
    Reader in(path);
    char magic[8];
    in.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
        throw DataError("not a model file (bad magic): " + path);
    }
    const uint32_t version = in.value<uint32_t>();
    if (version != kModelVersion) {
        throw DataError("model file " + path + " has version " +
                        std::to_string(version) + ", this build reads version " +
                        std::to_string(kModelVersion));
    }
    ModelBundle bundle;
    LdaModel& m = bundle.model;
    m.K = static_cast<int32_t>(in.value<uint32_t>());
    m.V = static_cast<int32_t>(in.value<uint32_t>());
    const uint64_t D = in.value<uint64_t>();
    if (m.K < 1 || m.V < 1) {
        throw DataError("corrupt model dimensions in " + path);
    }
    m.hyper.topics = m.K;
    m.hyper.alpha = in.value<double>();
    m.hyper.beta = in.value<double>();
    m.hyper.seed = in.value<uint64_t>();
    m.hyper.passes = static_cast<int32_t>(in.value<uint32_t>());
    bundle.label = in.str();
    m.word_topic.resize(static_cast<size_t>(m.V) * m.K);
    in.raw(m.word_topic.data(), m.word_topic.size() * sizeof(int32_t));
    m.topic_total.resize(m.K);
    in.raw(m.topic_total.data(), m.topic_total.size() * sizeof(int64_t));
    m.doc_topic.resize(static_cast<size_t>(D) * m.K);
    in.raw(m.doc_topic.data(), m.doc_topic.size() * sizeof(int32_t));
    m.doc_total.resize(D);
    in.raw(m.doc_total.data(), m.doc_total.size() * sizeof(int64_t));
    m.assignments.resize(D);
    for (uint64_t d = 0; d < D; ++d) {
        const uint32_t len = in.value<uint32_t>();
        if (static_cast<int64_t>(len) != m.doc_total[d]) {
            throw DataError("corrupt assignment block in model file " + path +
                            " at offset " + std::to_string(in.offset() - 4));
        }
        m.assignments[d].resize(len);
        if (len > 0) {
            in.raw(m.assignments[d].data(), len * sizeof(int32_t));
        }
    }
    bundle.vocab.reserve(m.V);
    for (int32_t w = 0; w < m.V; ++w) bundle.vocab.push_back(in.str());
    bundle.doc_ids.reserve(D);
    for (uint64_t d = 0; d < D; ++d) bundle.doc_ids.push_back(in.str());

    // Cheap structural validation before handing the model out.
    int64_t topic_sum = 0;
    for (int64_t n : m.topic_total) topic_sum += n;
    int64_t doc_sum = 0;
    for (int64_t n : m.doc_total) doc_sum += n;
    if (topic_sum != doc_sum) {
        throw DataError("corrupt model file " + path +
                        ": topic and document totals disagree");
    }
    return bundle;
}

void save_topics_json(const ModelBundle& bundle, int32_t top_k,
                      const std::string& path) {
    nlohmann::ordered_json topics = nlohmann::json::array();
    const int32_t k = std::min<int32_t>(top_k, bundle.model.V);
    for (int32_t t = 0; t < bundle.model.K; ++t) {
        const auto summary = top_words(bundle.model, bundle.vocab, t, k);
        nlohmann::ordered_json entry;
        entry["topic"] = t;
        nlohmann::ordered_json words = nlohmann::json::array();
        for (const auto& [lemma, prob] : summary.top_words) {
            words.push_back(nlohmann::ordered_json{{"word", lemma},
                                                   {"probability", prob}});
        }
        entry["top_words"] = std::move(words);
        topics.push_back(std::move(entry));
    }
    nlohmann::ordered_json root;
    root["model_label"] = bundle.label;
    root["topics"] = std::move(topics);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << root.dump(1) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace diatopics
