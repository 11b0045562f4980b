#pragma once

#include <vector>

namespace avfusion {

// Tolerance for boundary deduplication and float comparisons on the timeline.
inline constexpr double kTimeEps = 1e-9;

// Half-open time span [start_s, end_s) in seconds on a video's timeline.
// Touching intervals do not overlap; empty intervals are invalid.
struct TimeInterval {
    double start_s = 0.0;
    double end_s = 0.0;

    double length() const { return end_s - start_s; }
    bool valid() const { return start_s >= 0.0 && start_s < end_s; }
    bool operator==(const TimeInterval&) const = default;
};

inline bool overlaps(const TimeInterval& a, const TimeInterval& b) {
    return a.start_s < b.end_s && b.start_s < a.end_s;
}

// Splits [0, duration_s) at the given boundaries. Boundaries are augmented
// with {0, duration_s}, deduplicated within kTimeEps and sorted; the result
// is a gapless, non-overlapping cover of the timeline.
// Throws std::invalid_argument on duration_s <= 0 or out-of-range boundaries.
std::vector<TimeInterval> partition_timeline(std::vector<double> boundaries,
                                             double duration_s);

// Union of possibly overlapping or touching intervals as sorted disjoint
// spans. Touching spans are coalesced.
std::vector<TimeInterval> merge_union(std::vector<TimeInterval> intervals);

}  // namespace avfusion
