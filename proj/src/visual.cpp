#include "avfusion/visual.hpp"

#include <algorithm>
#include <stdexcept>

namespace avfusion {

void validate(const DetectionConfig& cfg) {
    if (cfg.binarize_threshold < 0.0 || cfg.binarize_threshold > 1.0) {
        throw std::invalid_argument("DetectionConfig: binarize_threshold outside [0, 1]");
    }
    if (cfg.c1 <= 0.0 || cfg.c1 > 1.0) {
        throw std::invalid_argument("DetectionConfig: c1 outside (0, 1]");
    }
    if (cfg.c2 <= 0.0 || cfg.c2 >= 1.0) {
        throw std::invalid_argument("DetectionConfig: c2 outside (0, 1)");
    }
    if (cfg.c2 >= cfg.c1) {
        throw std::invalid_argument("DetectionConfig: requires c2 < c1");
    }
    if (cfg.decision_threshold < 0.0 || cfg.decision_threshold > 1.0) {
        throw std::invalid_argument("DetectionConfig: decision_threshold outside [0, 1]");
    }
}

double detect_video(const FrameScoreSeries& series, const DetectionConfig& cfg) {
    if (series.scores.empty()) {
        throw std::invalid_argument("detect_video: empty series");
    }
    const auto& scores = series.scores;
    const double n = static_cast<double>(scores.size());

    std::vector<FrameRun> runs = extract_runs(scores, cfg.binarize_threshold);
    if (!runs.empty()) {
        // Longest run first; ties broken by earlier start.
        auto longest = std::max_element(
            runs.begin(), runs.end(), [](const FrameRun& a, const FrameRun& b) {
                if (a.count != b.count) return a.count < b.count;
                return a.first > b.first;
            });

        if (static_cast<double>(longest->count) >= n * cfg.c1) {
            return longest->mean();
        }

        std::size_t rest_frames = 0;
        for (const FrameRun& run : runs) {
            if (&run != &*longest) rest_frames += run.count;
        }
        if (rest_frames > 0 && static_cast<double>(rest_frames) >= n * cfg.c2) {
            // Flat mean over member frames, summed in temporal order.
            double sum = 0.0;
            for (const FrameRun& run : runs) {
                if (&run == &*longest) continue;
                for (std::size_t i = run.first; i < run.past_end(); ++i) {
                    sum += scores[i];
                }
            }
            return sum / static_cast<double>(rest_frames);
        }
    }

    double sum = 0.0;
    for (double s : scores) sum += s;
    return sum / n;
}

std::vector<SegmentScore> localize_visual(const FrameScoreSeries& series,
                                          const DetectionConfig& cfg) {
    return frames_to_intervals(series, cfg.binarize_threshold);
}

}  // namespace avfusion
