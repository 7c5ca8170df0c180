#include "diatopics/diachrony.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "diatopics/errors.hpp"

namespace diatopics {

namespace {

constexpr char kEnDash[] = "\xE2\x80\x93";  // U+2013

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

int64_t parse_int(const std::string& s, const char* what, size_t line_no) {
    try {
        size_t used = 0;
        const int64_t v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(std::string("bad ") + what + " '" + s +
                        "' on csv line " + std::to_string(line_no));
    }
}

double parse_num(const std::string& s, const char* what, size_t line_no) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError(std::string("bad ") + what + " '" + s +
                        "' on csv line " + std::to_string(line_no));
    }
}

}  // namespace

std::string TimeSlot::label() const {
    return std::to_string(start) + kEnDash + std::to_string(end);
}

SlotScheme make_slots(int32_t min_year, int32_t max_year, int32_t width,
                      const std::vector<std::pair<int32_t, int32_t>>& merges) {
    if (width < 1) throw ConfigError("slot width must be >= 1");
    if (min_year > max_year) {
        throw ConfigError("slot range is empty: " + std::to_string(min_year) +
                          " > " + std::to_string(max_year));
    }
    const int64_t span = static_cast<int64_t>(max_year) - min_year + 1;
    const int64_t n_base = (span + width - 1) / width;
    const int32_t last_end =
        static_cast<int32_t>(min_year + n_base * width - 1);

    auto sorted = merges;
    std::sort(sorted.begin(), sorted.end());
    int32_t prev_end = min_year - 1;
    for (const auto& [s, e] : sorted) {
        const std::string shown =
            std::to_string(s) + ".." + std::to_string(e);
        if (s > e) throw ConfigError("merge range reversed: " + shown);
        if (s < min_year || e > last_end) {
            throw ConfigError("merge range " + shown +
                              " falls outside the slot span");
        }
        if ((s - min_year) % width != 0 || (e - s + 1) % width != 0) {
            throw ConfigError("merge range " + shown +
                              " is not a union of whole base slots");
        }
        if (s <= prev_end) throw ConfigError("merge ranges overlap at " + shown);
        prev_end = e;
    }

    SlotScheme scheme;
    size_t merge_idx = 0;
    int32_t cursor = min_year;
    while (cursor <= last_end) {
        if (merge_idx < sorted.size() && sorted[merge_idx].first == cursor) {
            scheme.slots.push_back({cursor, sorted[merge_idx].second});
            cursor = sorted[merge_idx].second + 1;
            ++merge_idx;
        } else {
            scheme.slots.push_back({cursor, cursor + width - 1});
            cursor += width;
        }
    }
    return scheme;
}

std::optional<size_t> assign_slot(const SlotScheme& scheme, int32_t year) {
    auto it = std::partition_point(
        scheme.slots.begin(), scheme.slots.end(),
        [year](const TimeSlot& slot) { return slot.end < year; });
    if (it == scheme.slots.end() || !it->contains(year)) return std::nullopt;
    return static_cast<size_t>(it - scheme.slots.begin());
}

std::vector<TrajectorySeries> compute_trajectories(
    const std::vector<std::vector<double>>& doc_theta,
    const std::vector<std::optional<int32_t>>& years, const SlotScheme& scheme,
    const std::string& corpus_label) {
    if (doc_theta.empty()) throw ConfigError("no documents to aggregate");
    if (years.size() != doc_theta.size()) {
        throw DataError("year list does not match document count");
    }
    const size_t K = doc_theta[0].size();
    if (K == 0) throw ConfigError("topic mixtures are empty");
    const size_t S = scheme.size();

    std::vector<double> sums(S * K, 0.0);
    std::vector<int64_t> counts(S, 0);
    for (size_t d = 0; d < doc_theta.size(); ++d) {
        if (doc_theta[d].size() != K) {
            throw DataError("ragged topic mixture at document " +
                            std::to_string(d));
        }
        if (!years[d]) continue;
        const auto slot = assign_slot(scheme, *years[d]);
        if (!slot) continue;
        ++counts[*slot];
        for (size_t k = 0; k < K; ++k) {
            sums[*slot * K + k] += doc_theta[d][k];
        }
    }

    std::vector<TrajectorySeries> series(K);
    for (size_t k = 0; k < K; ++k) {
        series[k].corpus = corpus_label;
        series[k].topic = static_cast<int32_t>(k);
        series[k].points.resize(S);
        for (size_t s = 0; s < S; ++s) {
            series[k].points[s].doc_count = counts[s];
            if (counts[s] > 0) {
                series[k].points[s].mean =
                    sums[s * K + k] / static_cast<double>(counts[s]);
            }
        }
    }
    return series;
}

HistogramCounts corpus_histogram(
    const std::vector<std::optional<int32_t>>& years,
    const SlotScheme& scheme) {
    HistogramCounts counts;
    counts.per_slot.assign(scheme.size(), 0);
    for (const auto& year : years) {
        const auto slot = year ? assign_slot(scheme, *year) : std::nullopt;
        if (slot) {
            ++counts.per_slot[*slot];
        } else {
            ++counts.excluded;
        }
    }
    return counts;
}

void write_trajectories_csv(const std::vector<TrajectorySeries>& series,
                            const SlotScheme& scheme, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << "corpus,topic,slot_start,slot_end,mean_probability,doc_count\n";
    for (const auto& s : series) {
        if (s.points.size() != scheme.size()) {
            throw DataError("series for topic " + std::to_string(s.topic) +
                            " does not match the slot scheme");
        }
        for (size_t i = 0; i < scheme.size(); ++i) {
            const auto& pt = s.points[i];
            out << csv_field(s.corpus) << ',' << s.topic << ','
                << scheme.slots[i].start << ',' << scheme.slots[i].end << ',';
            if (pt.mean) out << format_double(*pt.mean);
            out << ',' << pt.doc_count << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

TrajectoryTable read_trajectories_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty csv file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "corpus,topic,slot_start,slot_end,mean_probability,doc_count") {
        throw DataError("unexpected csv header in " + path);
    }

    TrajectoryTable table;
    std::map<std::pair<std::string, int32_t>, size_t> index;
    std::vector<TimeSlot> first_slots;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 6) {
            throw DataError("expected 6 csv fields on line " +
                            std::to_string(line_no) + ", got " +
                            std::to_string(fields.size()));
        }
        const std::string& corpus = fields[0];
        const auto topic =
            static_cast<int32_t>(parse_int(fields[1], "topic", line_no));
        TimeSlot slot;
        slot.start =
            static_cast<int32_t>(parse_int(fields[2], "slot_start", line_no));
        slot.end =
            static_cast<int32_t>(parse_int(fields[3], "slot_end", line_no));
        TrajectoryPoint pt;
        if (!fields[4].empty()) {
            pt.mean = parse_num(fields[4], "mean_probability", line_no);
        }
        pt.doc_count = parse_int(fields[5], "doc_count", line_no);

        const auto key = std::make_pair(corpus, topic);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, table.series.size()).first;
            table.series.push_back({corpus, topic, {}});
        }
        auto& series = table.series[it->second];
        const size_t slot_idx = series.points.size();
        if (it->second == 0) {
            first_slots.push_back(slot);
        } else {
            if (slot_idx >= first_slots.size() ||
                first_slots[slot_idx].start != slot.start ||
                first_slots[slot_idx].end != slot.end) {
                throw DataError("inconsistent slot layout on csv line " +
                                std::to_string(line_no));
            }
        }
        series.points.push_back(pt);
    }
    for (const auto& s : table.series) {
        if (s.points.size() != first_slots.size()) {
            throw DataError("series for topic " + std::to_string(s.topic) +
                            " in " + path + " is incomplete");
        }
    }
    table.scheme.slots = std::move(first_slots);
    return table;
}

}  // namespace diatopics
