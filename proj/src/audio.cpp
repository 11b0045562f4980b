#include "avfusion/audio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avfusion {

namespace {
constexpr double kProbEps = 1e-7;  // BCE clamp

double bce(double p, int y) {
    p = std::clamp(p, kProbEps, 1.0 - kProbEps);
    return y ? -std::log(p) : -std::log(1.0 - p);
}
}  // namespace

ModalityAnnotation annotation_for(const VideoMeta& meta, Modality m) {
    const auto& segs = meta.segments(m);
    int label = m == Modality::audio ? meta.audio_label() : meta.visual_label();
    return {label, segs, meta.duration_s};
}

CropSpec pad_and_crop(double source_duration_s, double target_len_s,
                      double offset_s) {
    if (target_len_s <= 0.0) {
        throw std::invalid_argument("pad_and_crop: target_len_s must be > 0");
    }
    if (source_duration_s <= 0.0) {
        throw std::invalid_argument("pad_and_crop: source_duration_s must be > 0");
    }
    CropSpec spec{source_duration_s, target_len_s, {}};
    if (source_duration_s < target_len_s) {
        spec.crop = {0.0, target_len_s};
        return spec;
    }
    double max_offset = source_duration_s - target_len_s;
    if (offset_s < 0.0 || offset_s > max_offset + kTimeEps) {
        throw std::invalid_argument("pad_and_crop: offset_s outside valid range");
    }
    spec.crop = {offset_s, offset_s + target_len_s};
    return spec;
}

LabeledCrop dynamic_label(const ModalityAnnotation& annotation,
                          const CropSpec& crop) {
    for (const TimeInterval& seg : annotation.forged) {
        if (!seg.valid() || seg.start_s < 0.0 ||
            seg.end_s > annotation.duration_s + kTimeEps) {
            throw std::invalid_argument(
                "dynamic_label: forged interval outside [0, duration_s]");
        }
    }
    if (annotation.forged.empty()) {
        return {crop.crop, annotation.label};
    }
    if (crop.tiled()) {
        // Tiling preserves all forged content within the repeated segment.
        return {crop.crop, 1};
    }
    for (const TimeInterval& seg : annotation.forged) {
        if (overlaps(crop.crop, seg)) {
            return {crop.crop, 1};
        }
    }
    return {crop.crop, 0};
}

LossWeights class_weights(const std::vector<LabeledCrop>& crops) {
    std::size_t n_real = 0;
    std::size_t n_fake = 0;
    for (const LabeledCrop& c : crops) {
        (c.label == 1 ? n_fake : n_real) += 1;
    }
    if (n_real == 0 || n_fake == 0) {
        throw std::invalid_argument("class_weights: a class has zero examples");
    }
    // real weight : fake weight = fake count : real count, mean weight 1.
    double ratio = static_cast<double>(n_fake) / static_cast<double>(n_real);
    LossWeights w;
    w.class_weight_real = 2.0 * ratio / (1.0 + ratio);
    w.class_weight_fake = 2.0 / (1.0 + ratio);
    return w;
}

std::vector<TimeInterval> sliding_windows(double duration_s, double window_s,
                                          double stride_s) {
    if (duration_s <= 0.0) {
        throw std::invalid_argument("sliding_windows: duration_s must be > 0");
    }
    if (window_s <= 0.0 || stride_s <= 0.0 || stride_s > window_s + kTimeEps) {
        throw std::invalid_argument("sliding_windows: need 0 < stride_s <= window_s");
    }
    if (duration_s < window_s) {
        return {{0.0, duration_s}};
    }
    std::vector<TimeInterval> windows;
    for (std::size_t k = 0;; ++k) {
        double start = static_cast<double>(k) * stride_s;
        if (start + window_s > duration_s + kTimeEps) break;
        windows.push_back({start, start + window_s});
    }
    // Remainder after the last full window is back-extended with preceding
    // audio to keep a consistent window length.
    if (windows.back().end_s < duration_s - kTimeEps) {
        windows.push_back({duration_s - window_s, duration_s});
    }
    return windows;
}

double aggregate_max(std::span<const double> window_scores) {
    if (window_scores.empty()) {
        throw std::invalid_argument("aggregate_max: empty score list");
    }
    return *std::max_element(window_scores.begin(), window_scores.end());
}

double score_window(const FrameScoreSeries& series, const TimeInterval& window) {
    if (series.scores.empty()) {
        throw std::invalid_argument("score_window: empty series");
    }
    double best = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < series.scores.size(); ++i) {
        TimeInterval span{static_cast<double>(i) / series.fps,
                          static_cast<double>(i + 1) / series.fps};
        if (!overlaps(span, window)) continue;
        best = any ? std::max(best, series.scores[i]) : series.scores[i];
        any = true;
    }
    if (!any) {
        throw std::invalid_argument("score_window: window covers no frames");
    }
    return best;
}

std::vector<std::uint8_t> derive_frame_labels(
    const std::vector<TimeInterval>& forged, double fps, std::size_t n_frames) {
    if (fps <= 0.0 || n_frames == 0) {
        throw std::invalid_argument("derive_frame_labels: fps > 0 and n_frames >= 1");
    }
    std::vector<std::uint8_t> labels(n_frames, 0);
    for (std::size_t i = 0; i < n_frames; ++i) {
        TimeInterval span{static_cast<double>(i) / fps,
                          static_cast<double>(i + 1) / fps};
        for (const TimeInterval& seg : forged) {
            if (overlaps(span, seg)) {
                labels[i] = 1;
                break;
            }
        }
    }
    return labels;
}

std::vector<std::uint8_t> derive_boundary_labels(
    const std::vector<std::uint8_t>& authenticity) {
    if (authenticity.empty()) {
        throw std::invalid_argument("derive_boundary_labels: empty vector");
    }
    const std::size_t n = authenticity.size();
    std::vector<std::uint8_t> boundary(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bool left = i > 0 && authenticity[i] != authenticity[i - 1];
        bool right = i + 1 < n && authenticity[i] != authenticity[i + 1];
        boundary[i] = left || right ? 1 : 0;
    }
    return boundary;
}

FrameLabels frame_labels_for(const std::vector<TimeInterval>& forged,
                             double fps, std::size_t n_frames) {
    FrameLabels labels;
    labels.fps = fps;
    labels.authenticity = derive_frame_labels(forged, fps, n_frames);
    labels.boundary = derive_boundary_labels(labels.authenticity);
    return labels;
}

double joint_loss(std::span<const double> y_hat,
                  std::span<const std::uint8_t> y_true,
                  std::span<const double> b_hat,
                  std::span<const std::uint8_t> b_true,
                  const LossWeights& weights) {
    if (y_hat.size() != y_true.size() || b_hat.size() != b_true.size()) {
        throw std::invalid_argument("joint_loss: length mismatch");
    }
    if (y_hat.empty() || b_hat.empty()) {
        throw std::invalid_argument("joint_loss: empty inputs");
    }
    double loss_s = 0.0;
    for (std::size_t i = 0; i < y_hat.size(); ++i) {
        double w = y_true[i] ? weights.class_weight_fake : weights.class_weight_real;
        loss_s += w * bce(y_hat[i], y_true[i]);
    }
    loss_s /= static_cast<double>(y_hat.size());

    double loss_b = 0.0;
    for (std::size_t i = 0; i < b_hat.size(); ++i) {
        loss_b += bce(b_hat[i], b_true[i]);
    }
    loss_b /= static_cast<double>(b_hat.size());

    return loss_s + weights.lambda_boundary * loss_b;
}

}  // namespace avfusion
