#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace evsim {

/// One polarity-signed brightness-change record.
struct Event {
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::int64_t t = 0;  // microseconds
    std::int8_t p = 0;   // +1 or -1
};

inline bool operator==(const Event& a, const Event& b) {
    return a.x == b.x && a.y == b.y && a.t == b.t && a.p == b.p;
}

/// Canonical stream order: t non-decreasing, ties by (y, x, p) ascending.
inline bool event_order_less(const Event& a, const Event& b) {
    return std::tie(a.t, a.y, a.x, a.p) < std::tie(b.t, b.y, b.x, b.p);
}

struct EventStream {
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::vector<Event> events;
};

/// Grayscale frame with intensities normalized to [0, 1].
struct Frame {
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::int64_t timestamp_us = 0;
    std::vector<float> pixels;  // row-major, width * height

    float at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    float& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
};

/// Log-mapped frame, values = ln(intensity + log_eps). Same geometry as the source frame.
struct LogFrame {
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::int64_t timestamp_us = 0;
    std::vector<float> values;
};

struct FrameSequence {
    std::vector<Frame> frames;

    std::uint16_t width() const { return frames.empty() ? 0 : frames.front().width; }
    std::uint16_t height() const { return frames.empty() ? 0 : frames.front().height; }
    std::size_t size() const { return frames.size(); }
};

/// Bidirectional per-pixel displacement between a frame pair, stored as four
/// row-major planes. forward maps frame i content to i+1, backward the reverse.
struct FlowField {
    std::uint16_t width = 0;
    std::uint16_t height = 0;
    std::vector<float> fwd_dx, fwd_dy;
    std::vector<float> bwd_dx, bwd_dy;

    static FlowField zero(std::uint16_t w, std::uint16_t h) {
        FlowField f;
        f.width = w;
        f.height = h;
        const std::size_t n = static_cast<std::size_t>(w) * h;
        f.fwd_dx.assign(n, 0.f);
        f.fwd_dy.assign(n, 0.f);
        f.bwd_dx.assign(n, 0.f);
        f.bwd_dy.assign(n, 0.f);
        return f;
    }
};

struct GeneratorConfig {
    double c_pos = 0.06;
    double c_neg = 0.06;
    bool randomize = false;
    double c_min = 0.05;
    double c_max = 0.5;
    std::int64_t refractory_us = 0;
    double log_eps = 0.001;
    std::uint64_t seed = 0;
    // Interpolate the log signal linearly between frames. When false the raw
    // intensity is interpolated linearly instead and crossings are solved in
    // intensity space.
    bool linear_in_log = true;
};

/// splitmix64: seedable, splittable, identical output on every platform.
/// Uniform doubles use the top 53 bits mapped to [0, 1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    SplitMix64 split() { return SplitMix64(next_u64()); }

private:
    std::uint64_t state_;
};

// Validation. All throw std::invalid_argument with a message naming the
// offending field or pixel.
void validate(const Frame& frame);
void validate(const FrameSequence& seq);
void validate(const FlowField& flow);
void validate(const GeneratorConfig& config);
void validate(const EventStream& stream);

/// Element-wise ln(pixel + log_eps).
LogFrame log_intensity(const Frame& frame, double log_eps = 0.001);

/// Per-sequence contrast thresholds: two independent uniform draws in
/// [c_min, c_max] from SplitMix64(config.seed) when randomize is set (positive
/// drawn first), otherwise (c_pos, c_neg) unchanged.
std::pair<double, double> sample_thresholds(const GeneratorConfig& config);

}  // namespace evsim
