#include "avfusion/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace avfusion {

std::vector<TimeInterval> partition_timeline(std::vector<double> boundaries,
                                             double duration_s) {
    // A timeline shorter than the dedup tolerance cannot be partitioned.
    if (duration_s <= kTimeEps) {
        throw std::invalid_argument("partition_timeline: duration_s must be > 0");
    }
    for (double b : boundaries) {
        if (b < 0.0 || b > duration_s) {
            throw std::invalid_argument(
                "partition_timeline: boundary outside [0, duration_s]");
        }
    }
    boundaries.push_back(0.0);
    boundaries.push_back(duration_s);
    std::sort(boundaries.begin(), boundaries.end());

    std::vector<double> cuts;
    cuts.reserve(boundaries.size());
    for (double b : boundaries) {
        if (cuts.empty() || b - cuts.back() > kTimeEps) {
            cuts.push_back(b);
        }
    }
    // The last kept cut is duration_s itself unless a boundary within
    // tolerance absorbed it; pin the endpoint either way.
    cuts.back() = duration_s;

    std::vector<TimeInterval> out;
    out.reserve(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        out.push_back({cuts[i], cuts[i + 1]});
    }
    return out;
}

std::vector<TimeInterval> merge_union(std::vector<TimeInterval> intervals) {
    if (intervals.empty()) return {};
    std::sort(intervals.begin(), intervals.end(),
              [](const TimeInterval& a, const TimeInterval& b) {
                  if (a.start_s != b.start_s) return a.start_s < b.start_s;
                  return a.end_s < b.end_s;
              });
    std::vector<TimeInterval> out;
    out.push_back(intervals.front());
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].start_s <= out.back().end_s) {
            out.back().end_s = std::max(out.back().end_s, intervals[i].end_s);
        } else {
            out.push_back(intervals[i]);
        }
    }
    return out;
}

}  // namespace avfusion
