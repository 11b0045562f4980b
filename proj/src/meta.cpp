#include "avfusion/meta.hpp"

#include "avfusion/errors.hpp"

namespace avfusion {

const char* to_string(Modality m) {
    return m == Modality::audio ? "audio" : "visual";
}

Modality modality_from_string(const std::string& s) {
    if (s == "audio") return Modality::audio;
    if (s == "visual") return Modality::visual;
    throw DataError("unknown modality: " + s);
}

const char* to_string(Category c) {
    switch (c) {
        case Category::real_audio_real_visual: return "real_audio_real_visual";
        case Category::fake_audio_real_visual: return "fake_audio_real_visual";
        case Category::real_audio_fake_visual: return "real_audio_fake_visual";
        case Category::fake_audio_fake_visual: return "fake_audio_fake_visual";
    }
    return "unknown";
}

Category category_from_string(const std::string& s) {
    if (s == "real_audio_real_visual") return Category::real_audio_real_visual;
    if (s == "fake_audio_real_visual") return Category::fake_audio_real_visual;
    if (s == "real_audio_fake_visual") return Category::real_audio_fake_visual;
    if (s == "fake_audio_fake_visual") return Category::fake_audio_fake_visual;
    throw DataError("unknown category: " + s);
}

Category category_from_labels(bool audio_fake, bool visual_fake) {
    if (audio_fake && visual_fake) return Category::fake_audio_fake_visual;
    if (audio_fake) return Category::fake_audio_real_visual;
    if (visual_fake) return Category::real_audio_fake_visual;
    return Category::real_audio_real_visual;
}

bool category_audio_fake(Category c) {
    return c == Category::fake_audio_real_visual ||
           c == Category::fake_audio_fake_visual;
}

bool category_visual_fake(Category c) {
    return c == Category::real_audio_fake_visual ||
           c == Category::fake_audio_fake_visual;
}

void validate_meta(const VideoMeta& meta) {
    auto fail = [&](const std::string& what) {
        throw DataError("video '" + meta.id + "': " + what);
    };
    if (meta.duration_s <= 0.0) fail("duration_s must be > 0");
    for (Modality m : {Modality::audio, Modality::visual}) {
        for (const TimeInterval& seg : meta.segments(m)) {
            if (!seg.valid()) fail("invalid forged segment");
            if (seg.start_s < 0.0 || seg.end_s > meta.duration_s + kTimeEps) {
                fail("forged segment outside [0, duration_s]");
            }
        }
    }
    if (category_audio_fake(meta.category) != (meta.audio_label() == 1)) {
        fail("category inconsistent with audio segments");
    }
    if (category_visual_fake(meta.category) != (meta.visual_label() == 1)) {
        fail("category inconsistent with visual segments");
    }
}

}  // namespace avfusion
