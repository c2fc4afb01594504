#include "evsim/core.hpp"

#include <cmath>
#include <stdexcept>

namespace evsim {

void validate(const Frame& frame) {
    if (frame.width == 0 || frame.height == 0) {
        throw std::invalid_argument("frame: width and height must be positive");
    }
    const std::size_t expected = static_cast<std::size_t>(frame.width) * frame.height;
    if (frame.pixels.size() != expected) {
        throw std::invalid_argument("frame: pixel count " + std::to_string(frame.pixels.size()) +
                                    " does not match geometry " + std::to_string(expected));
    }
    if (frame.timestamp_us < 0) {
        throw std::invalid_argument("frame: negative timestamp");
    }
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        const float v = frame.pixels[i];
        if (!std::isfinite(v)) {
            throw std::invalid_argument("frame: pixel " + std::to_string(i) + " is not finite");
        }
        if (v < 0.f || v > 1.f) {
            throw std::invalid_argument("frame: pixel " + std::to_string(i) +
                                        " outside [0, 1]: " + std::to_string(v));
        }
    }
}

void validate(const FrameSequence& seq) {
    if (seq.frames.size() < 2) {
        throw std::invalid_argument("sequence: needs at least 2 frames");
    }
    const std::uint16_t w = seq.width();
    const std::uint16_t h = seq.height();
    std::int64_t prev_t = -1;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const Frame& f = seq.frames[i];
        validate(f);
        if (f.width != w || f.height != h) {
            throw std::invalid_argument("sequence: frame " + std::to_string(i) +
                                        " geometry mismatch");
        }
        if (f.timestamp_us <= prev_t) {
            throw std::invalid_argument("sequence: frame " + std::to_string(i) +
                                        " timestamp not strictly increasing");
        }
        prev_t = f.timestamp_us;
    }
}

void validate(const FlowField& flow) {
    if (flow.width == 0 || flow.height == 0) {
        throw std::invalid_argument("flow: width and height must be positive");
    }
    const std::size_t n = static_cast<std::size_t>(flow.width) * flow.height;
    const std::vector<float>* planes[4] = {&flow.fwd_dx, &flow.fwd_dy, &flow.bwd_dx, &flow.bwd_dy};
    const char* names[4] = {"fwd_dx", "fwd_dy", "bwd_dx", "bwd_dy"};
    for (int p = 0; p < 4; ++p) {
        if (planes[p]->size() != n) {
            throw std::invalid_argument(std::string("flow: plane ") + names[p] + " has size " +
                                        std::to_string(planes[p]->size()) + ", expected " +
                                        std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite((*planes[p])[i])) {
                throw std::invalid_argument(std::string("flow: plane ") + names[p] + " value " +
                                            std::to_string(i) + " is not finite");
            }
        }
    }
}

void validate(const GeneratorConfig& config) {
    if (!(config.c_pos > 0.0) || !(config.c_neg > 0.0)) {
        throw std::invalid_argument("config: c_pos and c_neg must be > 0");
    }
    if (config.randomize) {
        if (!(config.c_min > 0.0) || !(config.c_min <= config.c_max)) {
            throw std::invalid_argument("config: requires 0 < c_min <= c_max when randomize is set");
        }
    }
    if (config.refractory_us < 0) {
        throw std::invalid_argument("config: refractory_us must be >= 0");
    }
    if (!(config.log_eps > 0.0)) {
        throw std::invalid_argument("config: log_eps must be > 0");
    }
}

void validate(const EventStream& stream) {
    if (stream.width == 0 || stream.height == 0) {
        throw std::invalid_argument("stream: width and height must be positive");
    }
    const Event* prev = nullptr;
    for (std::size_t i = 0; i < stream.events.size(); ++i) {
        const Event& e = stream.events[i];
        if (e.x >= stream.width || e.y >= stream.height) {
            throw std::invalid_argument("stream: event " + std::to_string(i) +
                                        " out of bounds (" + std::to_string(e.x) + ", " +
                                        std::to_string(e.y) + ")");
        }
        if (e.p != 1 && e.p != -1) {
            throw std::invalid_argument("stream: event " + std::to_string(i) +
                                        " has invalid polarity");
        }
        if (e.t < 0) {
            throw std::invalid_argument("stream: event " + std::to_string(i) +
                                        " has negative timestamp");
        }
        if (prev != nullptr && event_order_less(e, *prev)) {
            throw std::invalid_argument("stream: event " + std::to_string(i) + " out of order");
        }
        prev = &e;
    }
}

LogFrame log_intensity(const Frame& frame, double log_eps) {
    validate(frame);
    if (!(log_eps > 0.0)) {
        throw std::invalid_argument("log_intensity: log_eps must be > 0");
    }
    LogFrame out;
    out.width = frame.width;
    out.height = frame.height;
    out.timestamp_us = frame.timestamp_us;
    out.values.resize(frame.pixels.size());
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        out.values[i] = static_cast<float>(std::log(static_cast<double>(frame.pixels[i]) + log_eps));
    }
    return out;
}

std::pair<double, double> sample_thresholds(const GeneratorConfig& config) {
    validate(config);
    if (!config.randomize) {
        return {config.c_pos, config.c_neg};
    }
    SplitMix64 rng(config.seed);
    const double c_pos = rng.uniform(config.c_min, config.c_max);
    const double c_neg = rng.uniform(config.c_min, config.c_max);
    return {c_pos, c_neg};
}

}  // namespace evsim
