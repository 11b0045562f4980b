#pragma once

#include <string>
#include <vector>

#include "avfusion/interval.hpp"

namespace avfusion {

enum class Modality { audio, visual };

const char* to_string(Modality m);
Modality modality_from_string(const std::string& s);

enum class Category {
    real_audio_real_visual,
    fake_audio_real_visual,
    real_audio_fake_visual,
    fake_audio_fake_visual,
};

inline constexpr int kCategoryCount = 4;

const char* to_string(Category c);
Category category_from_string(const std::string& s);
Category category_from_labels(bool audio_fake, bool visual_fake);
bool category_audio_fake(Category c);
bool category_visual_fake(Category c);

// Ground-truth record for one video. Modality labels are derived from the
// segment lists; a fully forged modality is one segment spanning
// [0, duration_s].
struct VideoMeta {
    std::string id;
    double duration_s = 0.0;
    Category category = Category::real_audio_real_visual;
    std::vector<TimeInterval> fake_audio_segments;
    std::vector<TimeInterval> fake_visual_segments;

    int audio_label() const { return fake_audio_segments.empty() ? 0 : 1; }
    int visual_label() const { return fake_visual_segments.empty() ? 0 : 1; }
    bool is_fake() const { return category != Category::real_audio_real_visual; }

    const std::vector<TimeInterval>& segments(Modality m) const {
        return m == Modality::audio ? fake_audio_segments : fake_visual_segments;
    }
};

// Checks segment ranges, segment validity, and label/category consistency.
// Throws DataError with the video id in the message.
void validate_meta(const VideoMeta& meta);

}  // namespace avfusion
