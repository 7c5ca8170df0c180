// diatopics: train and inspect diachronic topic models over poetry corpora.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 I/O error,
// 3 malformed data.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "diatopics/align.hpp"
#include "diatopics/chart.hpp"
#include "diatopics/diachrony.hpp"
#include "diatopics/errors.hpp"
#include "diatopics/ingest.hpp"
#include "diatopics/lda.hpp"
#include "diatopics/preprocess.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace diatopics;

namespace {

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string path_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

CorpusFormat resolve_format(const std::string& path, const std::string& format) {
    if (format == "jsonl") return CorpusFormat::kJsonl;
    if (format == "dir") return CorpusFormat::kPlaintextDir;
    return fs::is_directory(path) ? CorpusFormat::kPlaintextDir
                                  : CorpusFormat::kJsonl;
}

std::vector<std::pair<int32_t, int32_t>> parse_merges(
    const std::vector<std::string>& specs) {
    std::vector<std::pair<int32_t, int32_t>> merges;
    for (const auto& spec : specs) {
        const size_t colon = spec.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("--merge expects START:END, got '" + spec + "'");
        }
        try {
            size_t used = 0;
            const int start = std::stoi(spec.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(spec);
            const std::string rest = spec.substr(colon + 1);
            const int end = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(spec);
            merges.emplace_back(start, end);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("--merge expects START:END, got '" + spec + "'");
        }
    }
    return merges;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path);
    return content;
}

void write_json_file(const nlohmann::ordered_json& value,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << value.dump(1) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------

struct IngestOpts {
    std::string corpus;
    std::string format = "auto";
    std::string lang;
    std::string profiles;
    double margin = 0.0;
    std::string annotations;
    std::string stopwords;
    bool pos_filter = false;
    int min_df = 1;
    double max_df = 1.0;
    std::string out = "bow.json";
    std::string report;
};

void run_ingest(const IngestOpts& opts) {
    auto load = load_corpus(opts.corpus, resolve_format(opts.corpus, opts.format));
    print_warnings(load.warnings);
    std::vector<RawDocument> docs = std::move(load.docs);
    const size_t loaded = docs.size();
    std::cout << "documents loaded: " << loaded;
    if (load.skipped > 0) std::cout << " (skipped " << load.skipped << ")";
    std::cout << "\n";

    std::vector<std::string> dropped_ids;
    size_t indeterminate = 0;
    if (!opts.lang.empty()) {
        if (opts.profiles.empty()) {
            throw ConfigError(
                "--lang needs --profiles pointing at trained language profiles");
        }
        const auto profiles = load_profiles_dir(opts.profiles);
        auto filtered = filter_foreign(docs, opts.lang, profiles, opts.margin);
        print_warnings(filtered.warnings);
        for (const auto& doc : filtered.dropped) {
            std::cerr << "dropped foreign document: " << doc.id << "\n";
            dropped_ids.push_back(doc.id);
        }
        indeterminate = filtered.indeterminate;
        std::cout << "foreign documents dropped: " << filtered.dropped.size()
                  << " (indeterminate kept: " << filtered.indeterminate
                  << ")\n";
        docs = std::move(filtered.kept);
    }

    AnnotationLoad annotations;
    bool have_annotations = false;
    if (!opts.annotations.empty()) {
        annotations = load_annotations(opts.annotations);
        print_warnings(annotations.warnings);
        have_annotations = true;
    }
    StopList stops;
    if (!opts.stopwords.empty()) stops = load_stoplist(opts.stopwords);

    std::vector<Document> reduced;
    reduced.reserve(docs.size());
    for (const auto& raw : docs) {
        const std::vector<AnnotatedToken>* tokens = nullptr;
        if (have_annotations) {
            auto it = annotations.by_doc.find(raw.id);
            if (it != annotations.by_doc.end()) tokens = &it->second;
        }
        reduced.push_back(reduce_document(raw, tokens, stops, opts.pos_filter));
    }

    const auto vocab = build_vocabulary(reduced, opts.min_df, opts.max_df);
    auto bow = to_bow(reduced, vocab);
    for (const auto& id : bow.empty_doc_ids) {
        std::cerr << "excluded empty document: " << id << "\n";
    }
    save_bow(bow.corpus, vocab, opts.lang, opts.out);

    nlohmann::ordered_json report;
    report["corpus"] = opts.corpus;
    report["documents_loaded"] = loaded;
    report["documents_skipped"] = load.skipped;
    report["dropped_foreign"] = dropped_ids.size();
    report["dropped_foreign_ids"] = dropped_ids;
    report["indeterminate_kept"] = indeterminate;
    report["empty_document_ids"] = bow.empty_doc_ids;
    report["documents_kept"] = bow.corpus.docs.size();
    report["vocabulary_size"] = vocab.size();
    report["tokens"] = bow.corpus.total_tokens();
    const std::string report_path =
        !opts.report.empty()
            ? opts.report
            : fs::path(opts.out).replace_extension(".report.json").string();
    write_json_file(report, report_path);

    std::cout << "documents kept: " << bow.corpus.docs.size() << "\n";
    std::cout << "vocabulary: " << vocab.size() << " lemmas\n";
    std::cout << "tokens: " << bow.corpus.total_tokens() << "\n";
    std::cout << "wrote " << opts.out << "\n";
    std::cout << "wrote " << report_path << "\n";
}

// ---------------------------------------------------------------------------

struct TrainOpts {
    std::string corpus;
    int topics = 100;
    int passes = 100;
    double alpha = 0.0;  // 0 = pick 50/K
    double beta = 0.01;
    uint64_t seed = 0;
    int threads = 1;
    std::string label;
    std::string out = "model.bin";
    std::string topics_out;
};

void run_train(const TrainOpts& opts) {
    const BowFile bow = load_bow(opts.corpus);
    LdaHyperparams hyper;
    hyper.topics = opts.topics;
    hyper.passes = opts.passes;
    hyper.beta = opts.beta;
    hyper.seed = opts.seed;
    hyper.alpha = opts.alpha > 0.0
                      ? opts.alpha
                      : 50.0 / static_cast<double>(std::max(opts.topics, 1));

    std::cout << "documents: " << bow.corpus.docs.size()
              << ", vocabulary: " << bow.corpus.vocab_size
              << ", tokens: " << bow.corpus.total_tokens() << "\n";
    std::cout << "topics: " << hyper.topics << ", passes: " << hyper.passes
              << ", alpha: " << hyper.alpha << ", beta: " << hyper.beta
              << ", seed: " << hyper.seed << ", threads: " << opts.threads
              << "\n";

    const auto started = std::chrono::steady_clock::now();
    LdaModel model = init_model(bow.corpus, hyper);
    const int report_every = std::max(1, hyper.passes / 10);
    for (int pass = 1; pass <= hyper.passes; ++pass) {
        gibbs_sweep(model, bow.corpus, pass, opts.threads);
        if (pass % report_every == 0 || pass == hyper.passes) {
            const auto elapsed =
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count();
            std::cerr << "pass " << pass << "/" << hyper.passes << " ("
                      << elapsed / 1000.0 << "s)\n";
        }
    }

    ModelBundle bundle;
    bundle.model = std::move(model);
    bundle.label = !opts.label.empty()
                       ? opts.label
                       : (!bow.lang.empty() ? bow.lang : path_stem(opts.corpus));
    bundle.vocab = bow.vocab.id_to_token;
    bundle.doc_ids = bow.corpus.doc_ids;
    save_model(bundle, opts.out);
    std::cout << "wrote " << opts.out << "\n";

    const std::string topics_path =
        !opts.topics_out.empty()
            ? opts.topics_out
            : (fs::path(opts.out).parent_path() / "topics.json").string();
    save_topics_json(bundle, 30, topics_path);
    std::cout << "wrote " << topics_path << "\n";
}

// ---------------------------------------------------------------------------

struct TopicsOpts {
    std::string model;
    int top_k = 10;
    std::string out;
};

void run_topics(const TopicsOpts& opts) {
    const ModelBundle bundle = load_model(opts.model);
    if (!opts.out.empty()) {
        save_topics_json(bundle, opts.top_k, opts.out);
        std::cout << "wrote " << opts.out << "\n";
        return;
    }
    const int k = std::min<int>(opts.top_k, bundle.model.V);
    for (int32_t t = 0; t < bundle.model.K; ++t) {
        const auto summary = top_words(bundle.model, bundle.vocab, t, k);
        std::cout << "topic " << t << ":";
        for (const auto& [word, prob] : summary.top_words) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", prob);
            std::cout << " " << word << "(" << buf << ")";
        }
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------------------

struct SlotOpts {
    int slot_width = 25;
    std::vector<std::string> merges;
    std::optional<int> min_year;
    std::optional<int> max_year;
};

SlotScheme build_scheme(const SlotOpts& opts,
                        const std::vector<std::optional<int32_t>>& years) {
    int32_t min_year = 0, max_year = 0;
    if (opts.min_year && opts.max_year) {
        min_year = *opts.min_year;
        max_year = *opts.max_year;
    } else {
        bool any = false;
        for (const auto& y : years) {
            if (!y) continue;
            if (!any) {
                min_year = max_year = *y;
                any = true;
            } else {
                min_year = std::min(min_year, *y);
                max_year = std::max(max_year, *y);
            }
        }
        if (!any) {
            throw ConfigError(
                "no dated documents; pass --min-year and --max-year");
        }
        if (opts.min_year) min_year = *opts.min_year;
        if (opts.max_year) max_year = *opts.max_year;
    }
    return make_slots(min_year, max_year, opts.slot_width,
                      parse_merges(opts.merges));
}

struct TrajOpts {
    std::vector<std::string> models;
    std::vector<std::string> corpora;
    std::string format = "auto";
    SlotOpts slots;
    std::vector<int> chart_topics;
    std::optional<double> y_max;
    std::string out = "trajectories.csv";
    std::string svg_dir;
};

void run_trajectories(const TrajOpts& opts) {
    if (opts.corpora.size() != 1 && opts.corpora.size() != opts.models.size()) {
        throw ConfigError(
            "--corpus must be given once (shared) or once per --model");
    }

    std::vector<ModelBundle> bundles;
    bundles.reserve(opts.models.size());
    for (const auto& path : opts.models) bundles.push_back(load_model(path));

    // De-duplicate labels so the CSV keys (corpus, topic) stay unique.
    std::vector<std::string> labels;
    for (const auto& bundle : bundles) {
        std::string label = bundle.label;
        int suffix = 2;
        while (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            label = bundle.label + "-" + std::to_string(suffix++);
        }
        if (label != bundle.label) {
            std::cerr << "warning: duplicate model label '" << bundle.label
                      << "' renamed to '" << label << "' in the output\n";
        }
        labels.push_back(label);
    }

    // Years per model, joined from its corpus by document id.
    std::vector<std::vector<std::optional<int32_t>>> years_per_model;
    std::vector<std::optional<int32_t>> all_years;
    for (size_t m = 0; m < bundles.size(); ++m) {
        const std::string& corpus_path =
            opts.corpora.size() == 1 ? opts.corpora[0] : opts.corpora[m];
        auto load =
            load_corpus(corpus_path, resolve_format(corpus_path, opts.format));
        print_warnings(load.warnings);
        std::unordered_map<std::string, int32_t> year_by_id;
        for (const auto& doc : load.docs) {
            if (doc.year) year_by_id.emplace(doc.id, *doc.year);
        }
        std::vector<std::optional<int32_t>> years;
        years.reserve(bundles[m].doc_ids.size());
        size_t undated = 0;
        for (const auto& id : bundles[m].doc_ids) {
            auto it = year_by_id.find(id);
            if (it != year_by_id.end()) {
                years.emplace_back(it->second);
            } else {
                years.emplace_back(std::nullopt);
                ++undated;
            }
        }
        if (undated > 0) {
            std::cerr << "warning: " << labels[m] << ": " << undated
                      << " model documents have no year in the corpus and are "
                         "left out of the slots\n";
        }
        all_years.insert(all_years.end(), years.begin(), years.end());
        years_per_model.push_back(std::move(years));
    }

    const SlotScheme scheme = build_scheme(opts.slots, all_years);
    std::vector<std::vector<TrajectorySeries>> per_model;
    std::vector<TrajectorySeries> all_series;
    for (size_t m = 0; m < bundles.size(); ++m) {
        auto series = compute_trajectories(theta(bundles[m].model),
                                           years_per_model[m], scheme,
                                           labels[m]);
        all_series.insert(all_series.end(), series.begin(), series.end());
        per_model.push_back(std::move(series));
    }
    write_trajectories_csv(all_series, scheme, opts.out);
    std::cout << "slots: " << scheme.size() << ", series: " << all_series.size()
              << "\n";
    std::cout << "wrote " << opts.out << "\n";

    if (opts.svg_dir.empty()) return;
    int32_t max_k = 0;
    for (const auto& bundle : bundles) {
        max_k = std::max(max_k, bundle.model.K);
    }
    std::vector<int> selected = opts.chart_topics;
    if (selected.empty()) {
        for (int t = 0; t < max_k; ++t) selected.push_back(t);
    }
    fs::create_directories(opts.svg_dir);
    std::vector<std::string> x_labels;
    for (const auto& slot : scheme.slots) x_labels.push_back(slot.label());
    for (int t : selected) {
        if (t < 0 || t >= max_k) {
            throw ConfigError("--topic " + std::to_string(t) +
                              " outside the valid range [0, " +
                              std::to_string(max_k) + ")");
        }
        ChartSpec spec;
        spec.title = "topic " + std::to_string(t);
        spec.y_label = "mean topic probability";
        spec.x_labels = x_labels;
        spec.y_max = opts.y_max;
        for (size_t m = 0; m < per_model.size(); ++m) {
            if (t >= bundles[m].model.K) continue;
            ChartSeries cs;
            cs.name = labels[m];
            for (const auto& pt : per_model[m][static_cast<size_t>(t)].points) {
                cs.values.push_back(pt.mean);
            }
            spec.series.push_back(std::move(cs));
        }
        const std::string path =
            (fs::path(opts.svg_dir) / ("topic_" + std::to_string(t) + ".svg"))
                .string();
        write_svg(spec, path);
    }
    std::cout << "wrote " << selected.size() << " chart(s) to " << opts.svg_dir
              << "\n";
}

// ---------------------------------------------------------------------------

struct HistOpts {
    std::string corpus;
    std::string format = "auto";
    std::string label;
    SlotOpts slots;
    bool log_y = false;
    std::optional<double> y_max;
    std::string out = "histogram.csv";
    std::string svg;
};

void run_histogram(const HistOpts& opts) {
    auto load = load_corpus(opts.corpus, resolve_format(opts.corpus, opts.format));
    print_warnings(load.warnings);
    std::vector<std::optional<int32_t>> years;
    years.reserve(load.docs.size());
    for (const auto& doc : load.docs) {
        if (doc.year) {
            years.emplace_back(*doc.year);
        } else {
            years.emplace_back(std::nullopt);
        }
    }
    const SlotScheme scheme = build_scheme(opts.slots, years);
    const auto counts = corpus_histogram(years, scheme);
    const std::string label =
        !opts.label.empty() ? opts.label : path_stem(opts.corpus);

    std::ofstream out(opts.out, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + opts.out);
    out << "corpus,slot_start,slot_end,doc_count\n";
    for (size_t i = 0; i < scheme.size(); ++i) {
        out << csv_quote(label) << ',' << scheme.slots[i].start << ','
            << scheme.slots[i].end << ',' << counts.per_slot[i] << '\n';
    }
    if (!out) throw IoError("write failed: " + opts.out);
    std::cout << "slots: " << scheme.size()
              << ", excluded documents: " << counts.excluded << "\n";
    std::cout << "wrote " << opts.out << "\n";

    if (opts.svg.empty()) return;
    ChartSpec spec;
    spec.title = label + ": documents per time slot";
    spec.y_label = opts.log_y ? "log10(documents)" : "documents";
    spec.log_y = opts.log_y;
    spec.y_max = opts.y_max;
    for (const auto& slot : scheme.slots) spec.x_labels.push_back(slot.label());
    ChartSeries cs;
    cs.name = label;
    for (int64_t c : counts.per_slot) cs.values.push_back(static_cast<double>(c));
    spec.series.push_back(std::move(cs));
    write_svg(spec, opts.svg);
    std::cout << "wrote " << opts.svg << "\n";
}

// ---------------------------------------------------------------------------

struct AlignOpts {
    std::vector<std::string> models;  // exactly two
    std::string lexicon;
    int top_k = 30;
    std::string method = "optimal";
    double min_score = 0.0;
    std::string out = "alignment.json";
};

void run_align(const AlignOpts& opts) {
    const ModelBundle a = load_model(opts.models[0]);
    const ModelBundle b = load_model(opts.models[1]);
    Lexicon lexicon;
    if (!opts.lexicon.empty()) {
        lexicon = load_lexicon(opts.lexicon);
        if (!lexicon.source_lang.empty() && lexicon.source_lang != a.label) {
            throw ConfigError("lexicon source language '" + lexicon.source_lang +
                              "' does not match model label '" + a.label + "'");
        }
        if (!lexicon.target_lang.empty() && lexicon.target_lang != b.label) {
            throw ConfigError("lexicon target language '" + lexicon.target_lang +
                              "' does not match model label '" + b.label + "'");
        }
    }

    auto summarize = [&](const ModelBundle& bundle) {
        std::vector<TopicSummary> topics;
        const int32_t k = std::min<int32_t>(opts.top_k, bundle.model.V);
        for (int32_t t = 0; t < bundle.model.K; ++t) {
            topics.push_back(top_words(bundle.model, bundle.vocab, t, k));
        }
        return topics;
    };
    const auto topics_a = summarize(a);
    const auto topics_b = summarize(b);
    const AlignMethod method = opts.method == "greedy" ? AlignMethod::kGreedy
                                                       : AlignMethod::kOptimal;
    const auto pairs =
        align_topics(topics_a, topics_b, lexicon, method, opts.min_score);
    save_alignment_json(pairs, a.label, b.label, topics_a, topics_b, lexicon,
                        method, opts.min_score, opts.out);

    if (pairs.empty()) {
        std::cerr << "warning: no topic pairs above the threshold\n";
    }
    auto preview = [](const std::vector<TopicSummary>& topics, int32_t id) {
        std::string joined;
        for (const auto& t : topics) {
            if (t.topic_id != id) continue;
            for (size_t i = 0; i < t.top_words.size() && i < 5; ++i) {
                if (i > 0) joined += ' ';
                joined += t.top_words[i].first;
            }
            break;
        }
        return joined;
    };
    for (const auto& p : pairs) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", p.score);
        std::cout << a.label << ":" << p.topic_a << " -> " << b.label << ":"
                  << p.topic_b << "  score " << buf << "  ["
                  << preview(topics_a, p.topic_a) << "] ~ ["
                  << preview(topics_b, p.topic_b) << "]\n";
    }
    std::cout << "matched pairs: " << pairs.size() << "\n";
    std::cout << "wrote " << opts.out << "\n";
}

// ---------------------------------------------------------------------------

struct TrainLangidOpts {
    std::string samples;
    std::string out = "profiles";
};

void run_train_langid(const TrainLangidOpts& opts) {
    if (!fs::is_directory(opts.samples)) {
        throw IoError("not a directory: " + opts.samples);
    }
    std::vector<std::pair<std::string, std::string>> samples;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opts.samples)) {
        if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        samples.emplace_back(file.stem().string(), read_text_file(file.string()));
    }
    if (samples.empty()) {
        throw ConfigError("no *.txt sample files in " + opts.samples);
    }
    const auto profiles = train_profiles(samples);
    fs::create_directories(opts.out);
    for (const auto& profile : profiles) {
        const std::string path = opts.out + "/" + profile.lang + ".json";
        save_profile(profile, path);
        std::cout << "wrote " << path << " (" << profile.ngram_logfreq.size()
                  << " n-grams)\n";
    }
}

void add_slot_options(CLI::App* cmd, SlotOpts& opts) {
    cmd->add_option("--slot-width", opts.slot_width, "Years per time slot")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--merge", opts.merges,
                    "Merge the base slots covering START:END into one slot "
                    "(repeatable)");
    cmd->add_option("--min-year", opts.min_year,
                    "First year of the slot range (default: from the data)");
    cmd->add_option("--max-year", opts.max_year,
                    "Last year of the slot range (default: from the data)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "diatopics: LDA topic models, topic trajectories and cross-corpus "
        "topic alignment for dated multilingual corpora"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.set_version_flag("--version", "diatopics 0.1.0");

    IngestOpts ingest_opts;
    auto* ingest = app.add_subcommand(
        "ingest", "Load a corpus, filter and normalize it, write bag-of-words");
    ingest->add_option("--corpus", ingest_opts.corpus,
                       "Corpus file (JSONL) or directory (plaintext + metadata.csv)")
        ->required();
    ingest->add_option("--format", ingest_opts.format,
                       "Corpus layout (default: auto-detect)")
        ->check(CLI::IsMember({"auto", "jsonl", "dir"}));
    ingest->add_option("--lang", ingest_opts.lang,
                       "Expected language; foreign documents are dropped");
    ingest->add_option("--profiles", ingest_opts.profiles,
                       "Directory of language profiles (*.json)");
    ingest->add_option("--margin", ingest_opts.margin,
                       "Per-character score slack before a document counts as "
                       "foreign")
        ->capture_default_str();
    ingest->add_option("--annotations", ingest_opts.annotations,
                       "TSV sidecar with doc_id, surface, lemma, upos");
    ingest->add_option("--stopwords", ingest_opts.stopwords,
                       "Stopword list, one lemma per line");
    ingest->add_flag("--pos-filter", ingest_opts.pos_filter,
                     "Keep only nouns, adjectives and verbs (needs --annotations)");
    ingest->add_option("--min-df", ingest_opts.min_df,
                       "Drop lemmas seen in fewer documents")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ingest->add_option("--max-df", ingest_opts.max_df,
                       "Drop lemmas seen in more than this fraction of documents")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    ingest->add_option("--out", ingest_opts.out, "Bag-of-words output file")
        ->capture_default_str();
    ingest->add_option("--report", ingest_opts.report,
                       "Ingest report path (default: derived from --out)");
    ingest->callback([&]() { run_ingest(ingest_opts); });

    TrainOpts train_opts;
    auto* train = app.add_subcommand("train", "Train a topic model on a bag-of-words file");
    train->add_option("--corpus", train_opts.corpus, "Bag-of-words file from ingest")
        ->required();
    train->add_option("--topics", train_opts.topics, "Number of topics (K)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--passes", train_opts.passes, "Gibbs sweeps over the corpus")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    train->add_option("--alpha", train_opts.alpha,
                      "Document-topic prior (default: 50/K)");
    train->add_option("--beta", train_opts.beta, "Topic-word prior")
        ->capture_default_str();
    train->add_option("--seed", train_opts.seed, "Random seed")
        ->capture_default_str();
    train->add_option("--threads", train_opts.threads, "Sampling threads")
        ->check(CLI::PositiveNumber)
        ->envname("DIACHRONY_THREADS");
    train->add_option("--label", train_opts.label,
                      "Corpus label stored in the model (default: bow language "
                      "or file stem)");
    train->add_option("--out", train_opts.out, "Model output file")
        ->capture_default_str();
    train->add_option("--topics-out", train_opts.topics_out,
                      "Topic summary path (default: topics.json beside --out)");
    train->callback([&]() { run_train(train_opts); });

    TopicsOpts topics_opts;
    auto* topics = app.add_subcommand("topics", "Show or export a model's top words");
    topics->add_option("--model", topics_opts.model, "Trained model file")
        ->required();
    topics->add_option("--top-k", topics_opts.top_k, "Words per topic")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    topics->add_option("--out", topics_opts.out,
                       "JSON output file (default: print to stdout)");
    topics->callback([&]() { run_topics(topics_opts); });

    TrajOpts traj_opts;
    auto* traj = app.add_subcommand(
        "trajectories",
        "Per-slot mean topic probabilities as CSV plus one SVG per topic");
    traj->add_option("--model", traj_opts.models,
                     "Trained model file (repeatable to overlay corpora)")
        ->required();
    traj->add_option("--corpus", traj_opts.corpora,
                     "Corpus supplying document years (one shared, or one per "
                     "--model)")
        ->required();
    traj->add_option("--format", traj_opts.format,
                     "Corpus layout (default: auto-detect)")
        ->check(CLI::IsMember({"auto", "jsonl", "dir"}));
    add_slot_options(traj, traj_opts.slots);
    traj->add_option("--topic", traj_opts.chart_topics,
                     "Topic to chart (repeatable; default: all)");
    traj->add_option("--y-max", traj_opts.y_max, "Fixed chart y-axis maximum");
    traj->add_option("--out", traj_opts.out, "CSV output file")
        ->capture_default_str();
    traj->add_option("--svg", traj_opts.svg_dir,
                     "Directory for per-topic charts (topic_<k>.svg)");
    traj->callback([&]() { run_trajectories(traj_opts); });

    HistOpts hist_opts;
    auto* hist = app.add_subcommand(
        "histogram", "Documents per time slot as CSV and SVG");
    hist->add_option("--corpus", hist_opts.corpus, "Corpus file or directory")
        ->required();
    hist->add_option("--format", hist_opts.format,
                     "Corpus layout (default: auto-detect)")
        ->check(CLI::IsMember({"auto", "jsonl", "dir"}));
    hist->add_option("--label", hist_opts.label,
                     "Corpus label for the CSV (default: file stem)");
    add_slot_options(hist, hist_opts.slots);
    hist->add_flag("--log", hist_opts.log_y, "Plot log10 of the counts");
    hist->add_option("--y-max", hist_opts.y_max, "Fixed chart y-axis maximum");
    hist->add_option("--out", hist_opts.out, "CSV output file")
        ->capture_default_str();
    hist->add_option("--svg", hist_opts.svg, "Also render a chart");
    hist->callback([&]() { run_histogram(hist_opts); });

    AlignOpts align_opts;
    auto* align = app.add_subcommand(
        "align", "Match topics of one model to another through a lexicon");
    align->add_option("--model", align_opts.models,
                      "Two model files: source, target")
        ->required()
        ->expected(2);
    align->add_option("--lexicon", align_opts.lexicon,
                      "Tab-separated source-target lemma pairs");
    align->add_option("--top-k", align_opts.top_k,
                      "Top words per topic used for matching")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    align->add_option("--method", align_opts.method, "Matching strategy")
        ->check(CLI::IsMember({"greedy", "optimal"}))
        ->capture_default_str();
    align->add_option("--min-score", align_opts.min_score,
                      "Drop pairs scoring below this")
        ->capture_default_str();
    align->add_option("--out", align_opts.out, "JSON report file")
        ->capture_default_str();
    align->callback([&]() { run_align(align_opts); });

    TrainLangidOpts langid_opts;
    auto* langid = app.add_subcommand(
        "train-langid", "Build language profiles from sample text");
    langid->add_option("--samples", langid_opts.samples,
                       "Directory of <lang>.txt sample files")
        ->required();
    langid->add_option("--out", langid_opts.out, "Profile output directory")
        ->capture_default_str();
    langid->callback([&]() { run_train_langid(langid_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
