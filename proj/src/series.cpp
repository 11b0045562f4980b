#include "avfusion/series.hpp"

#include <cmath>
#include <stdexcept>

namespace avfusion {

std::size_t frame_count(double duration_s, double fps) {
    double n = std::ceil(duration_s * fps - kTimeEps);
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

std::vector<FrameRun> extract_runs(std::span<const double> scores,
                                   double threshold) {
    std::vector<FrameRun> runs;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] < threshold) continue;
        if (!runs.empty() && runs.back().past_end() == i) {
            runs.back().count += 1;
            runs.back().score_sum += scores[i];
        } else {
            runs.push_back({i, 1, scores[i]});
        }
    }
    return runs;
}

std::vector<SegmentScore> frames_to_intervals(const FrameScoreSeries& series,
                                              double threshold) {
    if (series.scores.empty()) {
        throw std::invalid_argument("frames_to_intervals: empty series");
    }
    if (threshold < 0.0 || threshold > 1.0) {
        throw std::invalid_argument("frames_to_intervals: threshold outside [0, 1]");
    }
    std::vector<SegmentScore> out;
    for (const FrameRun& run : extract_runs(series.scores, threshold)) {
        TimeInterval span{static_cast<double>(run.first) / series.fps,
                          static_cast<double>(run.past_end()) / series.fps};
        out.push_back({span, run.mean()});
    }
    return out;
}

FrameScoreSeries resample_series(const FrameScoreSeries& series,
                                 double target_fps) {
    if (series.scores.empty()) {
        throw std::invalid_argument("resample_series: empty series");
    }
    if (target_fps <= 0.0) {
        throw std::invalid_argument("resample_series: target_fps must be > 0");
    }
    const std::size_t n_in = series.scores.size();
    const std::size_t n_out = frame_count(series.duration_s(), target_fps);

    FrameScoreSeries out{target_fps, {}};
    out.scores.reserve(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
        double midpoint = (static_cast<double>(j) + 0.5) / target_fps;
        auto src = static_cast<std::size_t>(midpoint * series.fps);
        if (src >= n_in) src = n_in - 1;
        out.scores.push_back(series.scores[src]);
    }
    return out;
}

void validate_series(const FrameScoreSeries& series) {
    if (series.fps <= 0.0) {
        throw std::invalid_argument("FrameScoreSeries: fps must be > 0");
    }
    for (double s : series.scores) {
        if (s < 0.0 || s > 1.0 || std::isnan(s)) {
            throw std::invalid_argument("FrameScoreSeries: score outside [0, 1]");
        }
    }
}

}  // namespace avfusion
