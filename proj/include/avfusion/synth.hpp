#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "avfusion/meta.hpp"
#include "avfusion/series.hpp"

namespace avfusion {

// Sampling targets for the synthetic dataset. Defaults reproduce the
// reference corpus statistics: category mix 34/23/24/19 and forged-segment
// duration bins 57/21/14/8 (audio) and 46/25/18/11 (visual) over
// 0-0.5 / 0.5-1 / 1-2 / >2 seconds.
struct GeneratorConfig {
    std::size_t n_videos = 100;
    std::uint64_t seed = 1;
    std::array<double, 4> category_probs{0.34, 0.23, 0.24, 0.19};
    std::array<double, 4> duration_bins_audio{0.57, 0.21, 0.14, 0.08};
    std::array<double, 4> duration_bins_visual{0.46, 0.25, 0.18, 0.11};
    std::array<double, 2> video_duration_range_s{4.0, 20.0};
    std::array<int, 2> segments_per_modality_range{1, 3};
    double full_forgery_prob = 0.1;
    // Frame grid for segment boundaries and emitted score series. Keeping
    // ground truth on the grid makes the oracle frame mask lossless.
    double fps = 25.0;
};

void validate(const GeneratorConfig& cfg);

// Deterministic synthetic dataset matching the configured statistics.
// Videos are independent given per-index derived seeds, so output does not
// depend on evaluation order.
std::vector<VideoMeta> sample_dataset(const GeneratorConfig& cfg);

// Stand-in for the out-of-scope neural detectors: oracle mode emits exact
// frame labels; noisy mode draws around per-class means and can miss or
// false-alarm whole runs.
struct DetectorModel {
    enum class Mode { oracle, noisy };

    Mode mode = Mode::oracle;
    double real_score_mean = 0.05;
    double fake_score_mean = 0.95;
    double score_noise_scale = 0.0;
    double miss_rate = 0.0;
    double false_alarm_rate = 0.0;
};

FrameScoreSeries simulate_scores(const VideoMeta& meta,
                                 const DetectorModel& model, Modality modality,
                                 double fps, std::uint64_t seed);

struct DatasetStats {
    std::size_t n_videos = 0;
    std::array<std::size_t, 4> category_counts{};
    // Duration histograms over partial forged segments; full-span forgeries
    // are tallied separately.
    std::array<std::size_t, 4> audio_duration_bins{};
    std::array<std::size_t, 4> visual_duration_bins{};
    std::size_t audio_partial_segments = 0;
    std::size_t visual_partial_segments = 0;
    std::size_t audio_full_forgeries = 0;
    std::size_t visual_full_forgeries = 0;
};

// Bin index for a segment duration: 0-0.5 / 0.5-1 / 1-2 / >2 seconds,
// right-closed edges.
int duration_bin(double length_s);

DatasetStats dataset_stats(const std::vector<VideoMeta>& metas);

// Plain-text report: category table plus per-modality duration histograms,
// proportions rendered at 0.1% precision.
std::string render_stats(const DatasetStats& stats);

}  // namespace avfusion
