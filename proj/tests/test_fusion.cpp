#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "avfusion/fusion.hpp"
#include "avfusion/rng.hpp"

using namespace avfusion;

TEST_CASE("fuse_detection: agreement averages, disagreement goes fake") {
    CHECK(fuse_detection(0.9, 0.8) == doctest::Approx(0.85));
    CHECK(fuse_detection(0.9, 0.2) == 0.9);
    CHECK(fuse_detection(0.2, 0.9) == 0.9);
    CHECK(fuse_detection(0.3, 0.2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(fuse_detection(1.2, 0.5), std::invalid_argument);
}

TEST_CASE("fuse_detection: returns a mean or exactly one input") {
    Rng rng(41);
    FusionConfig cfg;
    for (int trial = 0; trial < 500; ++trial) {
        double a = rng.next_double();
        double v = rng.next_double();
        double fused = fuse_detection(a, v, cfg);
        bool is_mean = fused == 0.5 * (a + v);
        bool is_input = fused == a || fused == v;
        CHECK((is_mean || is_input));
        bool a_fake = a >= cfg.decision_threshold;
        bool v_fake = v >= cfg.decision_threshold;
        if (a_fake != v_fake) {
            // fake-biased branch carries the fake modality's score
            CHECK(fused == (a_fake ? a : v));
            if ((a_fake ? a : v) >= (a_fake ? v : a)) {
                CHECK(fused >= std::min(a, v));
            }
        }
    }
}

TEST_CASE("fuse_localization: interval partition hand trace") {
    std::vector<SegmentScore> audio{{{1, 3}, 0.8}};
    std::vector<SegmentScore> visual{{{2, 5}, 0.6}};
    auto fused = fuse_localization(audio, visual, 6.0);
    REQUIRE(fused.size() == 2);
    CHECK(fused[0].interval == TimeInterval{1, 3});
    CHECK(fused[0].confidence == 0.8);
    CHECK(fused[1].interval == TimeInterval{3, 5});
    CHECK(fused[1].confidence == 0.6);
}

TEST_CASE("fuse_localization: empty and single-modality inputs") {
    CHECK(fuse_localization({}, {}, 4.0).empty());

    std::vector<SegmentScore> audio{{{0, 2}, 0.7}};
    auto fused = fuse_localization(audio, {}, 4.0);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0].interval == TimeInterval{0, 2});
    CHECK(fused[0].confidence == 0.7);

    std::vector<SegmentScore> outside{{{3, 5}, 0.7}};
    CHECK_THROWS_AS(fuse_localization(outside, {}, 4.0), std::invalid_argument);
}

namespace {

std::vector<SegmentScore> random_segments(Rng& rng, double duration) {
    std::vector<SegmentScore> segs;
    int n = static_cast<int>(rng.uniform_int(0, 5));
    for (int i = 0; i < n; ++i) {
        double len = rng.uniform(0.05, duration / 2);
        double start = rng.uniform(0.0, duration - len);
        SegmentScore seg{{start, start + len}, rng.next_double()};
        bool clear = true;
        for (const SegmentScore& other : segs) {
            if (overlaps(seg.interval, other.interval)) clear = false;
        }
        if (clear) segs.push_back(seg);
    }
    std::sort(segs.begin(), segs.end(),
              [](const SegmentScore& a, const SegmentScore& b) {
                  return a.interval.start_s < b.interval.start_s;
              });
    return segs;
}

}  // namespace

TEST_CASE("fuse_localization_intervals: per-interval max of the modalities") {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        double duration = rng.uniform(2, 20);
        auto audio = random_segments(rng, duration);
        auto visual = random_segments(rng, duration);

        auto fused = fuse_localization_intervals(audio, visual, duration);
        REQUIRE_FALSE(fused.empty());
        CHECK(fused.front().interval.start_s == 0.0);
        CHECK(fused.back().interval.end_s == duration);

        for (std::size_t i = 0; i < fused.size(); ++i) {
            if (i) CHECK(fused[i].interval.start_s == fused[i - 1].interval.end_s);
            double a_conf = 0.0;
            double v_conf = 0.0;
            for (const SegmentScore& s : audio) {
                if (overlaps(s.interval, fused[i].interval)) {
                    a_conf = std::max(a_conf, s.confidence);
                }
            }
            for (const SegmentScore& s : visual) {
                if (overlaps(s.interval, fused[i].interval)) {
                    v_conf = std::max(v_conf, s.confidence);
                }
            }
            CHECK(fused[i].confidence == std::max(a_conf, v_conf));
            CHECK(fused[i].confidence >= a_conf);
            CHECK(fused[i].confidence >= v_conf);
        }
    }
}

TEST_CASE("fuse_localization: symmetric, sorted, disjoint, in range") {
    Rng rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        double duration = rng.uniform(2, 20);
        auto audio = random_segments(rng, duration);
        auto visual = random_segments(rng, duration);

        auto fused = fuse_localization(audio, visual, duration);
        auto swapped = fuse_localization(visual, audio, duration);
        CHECK(fused == swapped);

        for (std::size_t i = 0; i < fused.size(); ++i) {
            CHECK(fused[i].interval.valid());
            CHECK(fused[i].interval.start_s >= 0.0);
            CHECK(fused[i].interval.end_s <= duration);
            if (i) CHECK(fused[i].interval.start_s >= fused[i - 1].interval.end_s);
        }
    }
}

TEST_CASE("fuse_localization: one empty modality passes through over the partition") {
    Rng rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        double duration = rng.uniform(2, 20);
        auto audio = random_segments(rng, duration);

        auto fused = fuse_localization(audio, {}, duration);
        double covered_in = 0.0;
        for (const SegmentScore& s : audio) covered_in += s.interval.length();
        double covered_out = 0.0;
        for (const SegmentScore& s : fused) covered_out += s.interval.length();
        CHECK(std::abs(covered_out - covered_in) <= 1e-9);

        // every fused interval carries the confidence of the segment covering it
        for (const SegmentScore& f : fused) {
            for (const SegmentScore& s : audio) {
                if (overlaps(f.interval, s.interval)) {
                    CHECK(f.confidence == s.confidence);
                }
            }
        }
    }
}

TEST_CASE("merge_similar: idempotent, anchors the first confidence") {
    std::vector<SegmentScore> parts{
        {{0, 1}, 0.50}, {{1, 2}, 0.50}, {{2, 3}, 0.42}, {{3, 4}, 0.42}, {{4, 5}, 0.9}};
    auto merged = merge_similar(parts, 1e-6);
    REQUIRE(merged.size() == 3);
    CHECK(merged[0].interval == TimeInterval{0, 2});
    CHECK(merged[1].interval == TimeInterval{2, 4});
    CHECK(merged[2].interval == TimeInterval{4, 5});
    CHECK(merge_similar(merged, 1e-6) == merged);

    Rng rng(45);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SegmentScore> segs;
        double t = 0.0;
        int n = static_cast<int>(rng.uniform_int(1, 20));
        for (int i = 0; i < n; ++i) {
            double next = t + rng.uniform(0.1, 1.0);
            segs.push_back({{t, next}, rng.uniform(0, 0.2)});
            t = next;
        }
        double epsilon = rng.uniform(0, 0.1);
        auto once = merge_similar(segs, epsilon);
        CHECK(merge_similar(once, epsilon) == once);
    }
}

TEST_CASE("fuse_localization: random confidences merge only within epsilon") {
    std::vector<SegmentScore> audio{{{0, 2}, 0.5}};
    std::vector<SegmentScore> visual{{{2, 4}, 0.5000004}};
    FusionConfig tight;  // default epsilon 1e-6 keeps them apart? no: 4e-7 < 1e-6
    auto fused = fuse_localization(audio, visual, 4.0, tight);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0].interval == TimeInterval{0, 4});
    CHECK(fused[0].confidence == 0.5);  // group anchor

    FusionConfig zero;
    zero.merge_epsilon = 0.0;
    auto split = fuse_localization(audio, visual, 4.0, zero);
    REQUIRE(split.size() == 2);
}
