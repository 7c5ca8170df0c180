#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace diatopics {

// One inclusive year range, e.g. 1700..1724.
struct TimeSlot {
    int32_t start = 0;
    int32_t end = 0;

    // "1700–1724" (en dash).
    std::string label() const;

    bool contains(int32_t year) const { return year >= start && year <= end; }
};

// An ordered, non-overlapping, gap-free partition of a year span.
struct SlotScheme {
    std::vector<TimeSlot> slots;

    size_t size() const { return slots.size(); }
};

// Builds the slot scheme covering [min_year, max_year]: uniform slots of
// `width` years starting at min_year (the last slot is not clipped, so it
// may reach past max_year), with selected runs of consecutive base slots
// merged into wider ones. Each merge is an inclusive (start, end) year pair
// and must be the exact union of whole base slots; merges must not overlap.
SlotScheme make_slots(int32_t min_year, int32_t max_year, int32_t width,
                      const std::vector<std::pair<int32_t, int32_t>>& merges = {});

// Index of the slot containing `year`, or nullopt if the year falls outside
// the scheme.
std::optional<size_t> assign_slot(const SlotScheme& scheme, int32_t year);

// One topic's time course over a slot scheme.
struct TrajectoryPoint {
    std::optional<double> mean;  // nullopt iff no documents in the slot
    int64_t doc_count = 0;
};

struct TrajectorySeries {
    std::string corpus;
    int32_t topic = 0;
    std::vector<TrajectoryPoint> points;  // one per slot, scheme order
};

// Per-slot mean of theta[d][topic] over the documents dated inside each
// slot. `doc_theta` is one row per document (all rows the same length K);
// `years` runs parallel to it, and undated or out-of-scheme documents are
// left out entirely. Returns one series per topic, topics 0..K-1.
std::vector<TrajectorySeries> compute_trajectories(
    const std::vector<std::vector<double>>& doc_theta,
    const std::vector<std::optional<int32_t>>& years, const SlotScheme& scheme,
    const std::string& corpus_label);

// Document counts per slot. Documents without a usable year land in
// `excluded`, so per_slot sums plus excluded always equal the input size.
struct HistogramCounts {
    std::vector<int64_t> per_slot;
    int64_t excluded = 0;
};

HistogramCounts corpus_histogram(
    const std::vector<std::optional<int32_t>>& years, const SlotScheme& scheme);

// CSV with header `corpus,topic,slot_start,slot_end,mean_probability,doc_count`
// and one row per (series, slot). Empty slots leave mean_probability blank.
void write_trajectories_csv(const std::vector<TrajectorySeries>& series,
                            const SlotScheme& scheme, const std::string& path);

// Parses a file produced by write_trajectories_csv. The slot scheme is
// reconstructed from the rows themselves.
struct TrajectoryTable {
    SlotScheme scheme;
    std::vector<TrajectorySeries> series;
};
TrajectoryTable read_trajectories_csv(const std::string& path);

}  // namespace diatopics
