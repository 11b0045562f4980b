#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avfusion/interval.hpp"
#include "avfusion/meta.hpp"
#include "avfusion/series.hpp"

namespace avfusion {

// A fixed-length crop taken from (possibly tiled) source audio.
struct CropSpec {
    double source_duration_s = 0.0;
    double target_len_s = 2.0;
    TimeInterval crop;

    // Source shorter than the target: the waveform was repeated before
    // cropping, so any forged content is preserved inside the crop.
    bool tiled() const { return source_duration_s < target_len_s; }
};

struct LabeledCrop {
    TimeInterval crop;
    int label = 0;  // 0 real, 1 fake
};

// One modality's ground-truth slice of a video.
struct ModalityAnnotation {
    int label = 0;
    std::vector<TimeInterval> forged;
    double duration_s = 0.0;
};

ModalityAnnotation annotation_for(const VideoMeta& meta, Modality m);

// Fixed-length crop selection. Sources shorter than target_len_s are tiled
// from offset 0; otherwise the crop is the window starting at offset_s.
CropSpec pad_and_crop(double source_duration_s, double target_len_s,
                      double offset_s);

// Reassigns a crop's label from its overlap with annotated forged intervals:
// no annotations keep the original label; tiled short audio is always fake;
// otherwise fake iff the crop overlaps any forged interval.
LabeledCrop dynamic_label(const ModalityAnnotation& annotation,
                          const CropSpec& crop);

struct LossWeights {
    double lambda_boundary = 0.5;
    double class_weight_real = 1.0;
    double class_weight_fake = 1.0;
};

// Class weights from the fake-to-real count ratio, rescaled to mean 1.
// Throws std::invalid_argument when either class is absent.
LossWeights class_weights(const std::vector<LabeledCrop>& crops);

// Inference windows: stride-spaced fixed-length windows covering the clip;
// a trailing remainder is back-extended to full length. A clip shorter than
// the window yields the single window [0, duration_s].
std::vector<TimeInterval> sliding_windows(double duration_s,
                                          double window_s = 2.0,
                                          double stride_s = 1.0);

// Clip-level score: max-pooling over window scores.
double aggregate_max(std::span<const double> window_scores);

// Segment-level score for one window: max frame score overlapping it.
double score_window(const FrameScoreSeries& series, const TimeInterval& window);

// Frame-level authenticity labels: frame i is fake iff its span overlaps a
// forged interval.
std::vector<std::uint8_t> derive_frame_labels(
    const std::vector<TimeInterval>& forged, double fps, std::size_t n_frames);

// Boundary labels: both frames adjacent to a real/fake transition are 1.
std::vector<std::uint8_t> derive_boundary_labels(
    const std::vector<std::uint8_t>& authenticity);

struct FrameLabels {
    double fps = 25.0;
    std::vector<std::uint8_t> authenticity;
    std::vector<std::uint8_t> boundary;
};

FrameLabels frame_labels_for(const std::vector<TimeInterval>& forged,
                             double fps, std::size_t n_frames);

// Joint frame/boundary objective: class-weighted mean binary cross-entropy
// on authenticity plus lambda times mean binary cross-entropy on boundaries.
// Predictions are clamped to [1e-7, 1 - 1e-7] before logs.
double joint_loss(std::span<const double> y_hat,
                  std::span<const std::uint8_t> y_true,
                  std::span<const double> b_hat,
                  std::span<const std::uint8_t> b_true,
                  const LossWeights& weights = {});

}  // namespace avfusion
