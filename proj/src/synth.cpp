#include "avfusion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "avfusion/audio.hpp"
#include "avfusion/rng.hpp"

namespace avfusion {

namespace {

void check_probs(const std::array<double, 4>& probs, const char* name) {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) {
            throw std::invalid_argument(std::string("GeneratorConfig: negative ") + name);
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string("GeneratorConfig: ") + name +
                                    " must sum to 1");
    }
}

// Segment lengths in whole frames per duration bin; right-closed edges at
// 0.5 / 1 / 2 seconds and the top bin capped at min(4 s, duration/2).
struct BinRanges {
    std::array<std::int64_t, 4> lo;
    std::array<std::int64_t, 4> hi;
};

BinRanges bin_ranges(double duration_s, double fps) {
    auto edge = [&](double seconds) {
        return static_cast<std::int64_t>(std::floor(seconds * fps + kTimeEps));
    };
    std::int64_t e0 = std::max<std::int64_t>(1, edge(0.5));
    std::int64_t e1 = std::max(e0 + 1, edge(1.0));
    std::int64_t e2 = std::max(e1 + 1, edge(2.0));
    double cap_s = std::min(4.0, duration_s / 2.0);
    std::int64_t cap = std::max(e2, edge(cap_s));
    BinRanges r;
    r.lo = {1, e0 + 1, e1 + 1, e2 + 1};
    r.hi = {e0, e1, e2, cap};
    if (r.hi[3] < r.lo[3]) r.lo[3] = r.hi[3];  // degenerate cap, take it
    return r;
}

// Non-overlapping placement of the given lengths: sorted uniform offsets in
// the leftover space, segments laid out left to right.
std::vector<std::pair<std::int64_t, std::int64_t>> place_segments(
    Rng& rng, const std::vector<std::int64_t>& lengths, std::int64_t total_frames) {
    std::int64_t used = 0;
    for (std::int64_t len : lengths) used += len;
    std::int64_t free_frames = total_frames - used;

    std::vector<std::int64_t> offsets(lengths.size());
    for (auto& off : offsets) off = rng.uniform_int(0, free_frames);
    std::sort(offsets.begin(), offsets.end());

    std::vector<std::pair<std::int64_t, std::int64_t>> placed;
    std::int64_t shift = 0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        std::int64_t start = offsets[i] + shift;
        placed.emplace_back(start, start + lengths[i]);
        shift += lengths[i];
    }
    return placed;
}

std::vector<TimeInterval> sample_modality_segments(
    Rng& rng, const GeneratorConfig& cfg, const std::array<double, 4>& bins,
    double duration_s, std::int64_t total_frames) {
    if (rng.bernoulli(cfg.full_forgery_prob)) {
        return {{0.0, duration_s}};
    }
    BinRanges ranges = bin_ranges(duration_s, cfg.fps);
    auto count = rng.uniform_int(cfg.segments_per_modality_range[0],
                                 cfg.segments_per_modality_range[1]);
    count = std::max<std::int64_t>(count, 0);

    constexpr int kRetryCap = 16;
    while (count > 0) {
        for (int attempt = 0; attempt < kRetryCap; ++attempt) {
            std::vector<std::int64_t> lengths;
            std::int64_t used = 0;
            for (std::int64_t i = 0; i < count; ++i) {
                std::size_t bin = rng.categorical(bins);
                std::int64_t len = rng.uniform_int(ranges.lo[bin], ranges.hi[bin]);
                lengths.push_back(len);
                used += len;
            }
            if (used > total_frames) continue;
            std::vector<TimeInterval> segments;
            for (auto [start, end] : place_segments(rng, lengths, total_frames)) {
                segments.push_back({static_cast<double>(start) / cfg.fps,
                                    static_cast<double>(end) / cfg.fps});
            }
            return segments;
        }
        --count;  // infeasible at this count, shrink
    }
    return {{0.0, duration_s}};  // duration can't fit any segment
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
    check_probs(cfg.category_probs, "category_probs");
    check_probs(cfg.duration_bins_audio, "duration_bins_audio");
    check_probs(cfg.duration_bins_visual, "duration_bins_visual");
    if (cfg.fps <= 0.0) {
        throw std::invalid_argument("GeneratorConfig: fps must be > 0");
    }
    if (cfg.video_duration_range_s[0] <= 0.0 ||
        cfg.video_duration_range_s[1] < cfg.video_duration_range_s[0]) {
        throw std::invalid_argument("GeneratorConfig: bad video_duration_range_s");
    }
    if (cfg.segments_per_modality_range[0] < 1 ||
        cfg.segments_per_modality_range[1] < cfg.segments_per_modality_range[0]) {
        throw std::invalid_argument("GeneratorConfig: bad segments_per_modality_range");
    }
    if (cfg.full_forgery_prob < 0.0 || cfg.full_forgery_prob > 1.0) {
        throw std::invalid_argument("GeneratorConfig: full_forgery_prob outside [0, 1]");
    }
}

std::vector<VideoMeta> sample_dataset(const GeneratorConfig& cfg) {
    validate(cfg);
    std::vector<VideoMeta> metas;
    metas.reserve(cfg.n_videos);
    for (std::size_t index = 0; index < cfg.n_videos; ++index) {
        Rng rng(cfg.seed, index);

        VideoMeta meta;
        char id[16];
        std::snprintf(id, sizeof(id), "v%06zu", index);
        meta.id = id;

        // Duration on the frame grid so segment masks rasterize losslessly.
        double raw = rng.uniform(cfg.video_duration_range_s[0],
                                 cfg.video_duration_range_s[1]);
        auto total_frames = static_cast<std::int64_t>(std::llround(raw * cfg.fps));
        total_frames = std::clamp(
            total_frames,
            static_cast<std::int64_t>(std::ceil(cfg.video_duration_range_s[0] * cfg.fps - kTimeEps)),
            static_cast<std::int64_t>(std::floor(cfg.video_duration_range_s[1] * cfg.fps + kTimeEps)));
        meta.duration_s = static_cast<double>(total_frames) / cfg.fps;

        meta.category = static_cast<Category>(rng.categorical(cfg.category_probs));
        if (category_audio_fake(meta.category)) {
            meta.fake_audio_segments = sample_modality_segments(
                rng, cfg, cfg.duration_bins_audio, meta.duration_s, total_frames);
        }
        if (category_visual_fake(meta.category)) {
            meta.fake_visual_segments = sample_modality_segments(
                rng, cfg, cfg.duration_bins_visual, meta.duration_s, total_frames);
        }
        validate_meta(meta);
        metas.push_back(std::move(meta));
    }
    return metas;
}

FrameScoreSeries simulate_scores(const VideoMeta& meta,
                                 const DetectorModel& model, Modality modality,
                                 double fps, std::uint64_t seed) {
    if (fps <= 0.0) {
        throw std::invalid_argument("simulate_scores: fps must be > 0");
    }
    std::size_t n = frame_count(meta.duration_s, fps);
    std::vector<std::uint8_t> labels =
        derive_frame_labels(meta.segments(modality), fps, n);

    FrameScoreSeries series{fps, {}};
    series.scores.reserve(n);
    if (model.mode == DetectorModel::Mode::oracle) {
        for (std::uint8_t y : labels) {
            series.scores.push_back(y ? 1.0 : 0.0);
        }
        return series;
    }

    Rng rng(seed, modality == Modality::audio ? 0 : 1);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && labels[j + 1] == labels[i]) ++j;
        // Whole runs are missed or false-alarmed, the way a detector loses
        // a segment rather than individual frames.
        bool fake = labels[i] == 1;
        if (fake && rng.bernoulli(model.miss_rate)) fake = false;
        if (!fake && labels[i] == 0 && rng.bernoulli(model.false_alarm_rate)) fake = true;
        double mean = fake ? model.fake_score_mean : model.real_score_mean;
        for (std::size_t k = i; k <= j; ++k) {
            double noise = model.score_noise_scale *
                           (rng.next_double() + rng.next_double() - 1.0);
            series.scores.push_back(std::clamp(mean + noise, 0.0, 1.0));
        }
        i = j + 1;
    }
    return series;
}

int duration_bin(double length_s) {
    if (length_s <= 0.5) return 0;
    if (length_s <= 1.0) return 1;
    if (length_s <= 2.0) return 2;
    return 3;
}

DatasetStats dataset_stats(const std::vector<VideoMeta>& metas) {
    if (metas.empty()) {
        throw std::invalid_argument("dataset_stats: empty dataset");
    }
    DatasetStats stats;
    stats.n_videos = metas.size();
    for (const VideoMeta& meta : metas) {
        stats.category_counts[static_cast<int>(meta.category)] += 1;
        for (Modality m : {Modality::audio, Modality::visual}) {
            bool is_audio = m == Modality::audio;
            auto& bins = is_audio ? stats.audio_duration_bins : stats.visual_duration_bins;
            auto& partial = is_audio ? stats.audio_partial_segments
                                     : stats.visual_partial_segments;
            auto& full = is_audio ? stats.audio_full_forgeries
                                  : stats.visual_full_forgeries;
            for (const TimeInterval& seg : meta.segments(m)) {
                bool full_span = seg.start_s <= kTimeEps &&
                                 seg.end_s >= meta.duration_s - kTimeEps;
                if (full_span) {
                    full += 1;
                } else {
                    bins[duration_bin(seg.length())] += 1;
                    partial += 1;
                }
            }
        }
    }
    return stats;
}

std::string render_stats(const DatasetStats& stats) {
    auto pct = [](std::size_t count, std::size_t total) {
        double p = total == 0 ? 0.0 : 100.0 * static_cast<double>(count) /
                                          static_cast<double>(total);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f%%", p);
        return std::string(buf);
    };

    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "videos: %zu\n\n", stats.n_videos);
    out += line;

    out += "category                  count      proportion\n";
    for (int c = 0; c < kCategoryCount; ++c) {
        std::snprintf(line, sizeof(line), "%-25s %-10zu %s\n",
                      to_string(static_cast<Category>(c)),
                      stats.category_counts[c],
                      pct(stats.category_counts[c], stats.n_videos).c_str());
        out += line;
    }

    static const char* kBinNames[4] = {"0-0.5", "0.5-1", "1-2", ">2"};
    out += "\nsegment duration (s)      audio      visual\n";
    for (int b = 0; b < 4; ++b) {
        std::snprintf(line, sizeof(line), "%-25s %-10s %s\n", kBinNames[b],
                      pct(stats.audio_duration_bins[b], stats.audio_partial_segments).c_str(),
                      pct(stats.visual_duration_bins[b], stats.visual_partial_segments).c_str());
        out += line;
    }
    std::snprintf(line, sizeof(line), "%-25s %-10zu %zu\n", "partial segments",
                  stats.audio_partial_segments, stats.visual_partial_segments);
    out += line;
    std::snprintf(line, sizeof(line), "%-25s %-10zu %zu\n", "full-span forgeries",
                  stats.audio_full_forgeries, stats.visual_full_forgeries);
    out += line;
    return out;
}

}  // namespace avfusion
