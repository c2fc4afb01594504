#include "evsim/upsample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evsim {

namespace {

void check_pair_geometry(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("interpolate: frame geometry mismatch");
    }
}

float sample_clamped(const std::vector<float>& plane, std::uint16_t width, std::uint16_t height,
                     double fx, double fy) {
    fx = std::clamp(fx, 0.0, static_cast<double>(width - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(height - 1));
    const auto x0 = static_cast<std::size_t>(fx);
    const auto y0 = static_cast<std::size_t>(fy);
    const std::size_t x1 = std::min<std::size_t>(x0 + 1, width - 1);
    const std::size_t y1 = std::min<std::size_t>(y0 + 1, height - 1);
    const double ax = fx - static_cast<double>(x0);
    const double ay = fy - static_cast<double>(y0);
    const double top = plane[y0 * width + x0] * (1.0 - ax) + plane[y0 * width + x1] * ax;
    const double bot = plane[y1 * width + x0] * (1.0 - ax) + plane[y1 * width + x1] * ax;
    return static_cast<float>(top * (1.0 - ay) + bot * ay);
}

std::vector<std::int64_t> spaced_timestamps(std::int64_t ta, std::int64_t tb, std::size_t k) {
    std::vector<std::int64_t> ts;
    ts.reserve(k);
    const std::int64_t span = tb - ta;
    for (std::size_t j = 0; j < k; ++j) {
        ts.push_back(ta + static_cast<std::int64_t>(j + 1) * span / static_cast<std::int64_t>(k + 1));
    }
    return ts;
}

// Integer microsecond grid: at most span-1 distinct interior timestamps.
std::size_t clamp_k_to_interval(std::size_t k, std::int64_t span) {
    const auto max_k = static_cast<std::size_t>(span > 0 ? span - 1 : 0);
    return std::min(k, max_k);
}

}  // namespace

double max_flow_displacement(const FlowField& flow) {
    const std::size_t n = static_cast<std::size_t>(flow.width) * flow.height;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::hypot(static_cast<double>(flow.fwd_dx[i]),
                                    static_cast<double>(flow.fwd_dy[i]));
        const double b = std::hypot(static_cast<double>(flow.bwd_dx[i]),
                                    static_cast<double>(flow.bwd_dy[i]));
        best = std::max({best, f, b});
    }
    return best;
}

UpsamplePlan plan_upsampling(const FrameSequence& seq, const std::vector<FlowField>& flows) {
    validate(seq);
    if (flows.size() != seq.frames.size() - 1) {
        throw std::invalid_argument("plan_upsampling: need one flow per frame pair, got " +
                                    std::to_string(flows.size()) + " for " +
                                    std::to_string(seq.frames.size()) + " frames");
    }
    UpsamplePlan plan;
    plan.pairs.reserve(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const FlowField& flow = flows[i];
        validate(flow);
        if (flow.width != seq.width() || flow.height != seq.height()) {
            throw std::invalid_argument("plan_upsampling: flow " + std::to_string(i) +
                                        " geometry mismatch");
        }
        UpsamplePlan::Pair pair;
        pair.max_displacement = max_flow_displacement(flow);
        const double k_real = std::ceil(pair.max_displacement - 1.0);
        pair.k = k_real > 0.0 ? static_cast<std::size_t>(k_real) : 0;
        const std::int64_t ta = seq.frames[i].timestamp_us;
        const std::int64_t tb = seq.frames[i + 1].timestamp_us;
        pair.k = clamp_k_to_interval(pair.k, tb - ta);
        pair.timestamps_us = spaced_timestamps(ta, tb, pair.k);
        plan.pairs.push_back(std::move(pair));
    }
    return plan;
}

UpsamplePlan uniform_plan(const FrameSequence& seq, std::size_t factor) {
    validate(seq);
    if (factor < 1) {
        throw std::invalid_argument("uniform_plan: factor must be >= 1");
    }
    UpsamplePlan plan;
    plan.pairs.reserve(seq.frames.size() - 1);
    for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i) {
        UpsamplePlan::Pair pair;
        const std::int64_t ta = seq.frames[i].timestamp_us;
        const std::int64_t tb = seq.frames[i + 1].timestamp_us;
        pair.k = clamp_k_to_interval(factor - 1, tb - ta);
        pair.timestamps_us = spaced_timestamps(ta, tb, pair.k);
        plan.pairs.push_back(std::move(pair));
    }
    return plan;
}

Frame interpolate_crossfade(const Frame& f_a, const Frame& f_b, double alpha) {
    check_pair_geometry(f_a, f_b);
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("interpolate_crossfade: alpha must be in (0, 1)");
    }
    Frame out;
    out.width = f_a.width;
    out.height = f_a.height;
    out.pixels.resize(f_a.pixels.size());
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        out.pixels[i] = static_cast<float>((1.0 - alpha) * f_a.pixels[i] + alpha * f_b.pixels[i]);
    }
    return out;
}

Frame interpolate_flow_warp(const Frame& f_a, const Frame& f_b, const FlowField& flow,
                            double alpha) {
    check_pair_geometry(f_a, f_b);
    validate(flow);
    if (flow.width != f_a.width || flow.height != f_a.height) {
        throw std::invalid_argument("interpolate_flow_warp: flow geometry mismatch");
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("interpolate_flow_warp: alpha must be in (0, 1)");
    }
    Frame out;
    out.width = f_a.width;
    out.height = f_a.height;
    out.pixels.resize(f_a.pixels.size());
    const std::uint16_t w = f_a.width;
    const std::uint16_t h = f_a.height;
    for (std::uint16_t y = 0; y < h; ++y) {
        for (std::uint16_t x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double ax = static_cast<double>(x) - alpha * flow.fwd_dx[i];
            const double ay = static_cast<double>(y) - alpha * flow.fwd_dy[i];
            const double bx = static_cast<double>(x) - (1.0 - alpha) * flow.bwd_dx[i];
            const double by = static_cast<double>(y) - (1.0 - alpha) * flow.bwd_dy[i];
            const double va = sample_clamped(f_a.pixels, w, h, ax, ay);
            const double vb = sample_clamped(f_b.pixels, w, h, bx, by);
            out.pixels[i] = static_cast<float>(std::clamp((1.0 - alpha) * va + alpha * vb, 0.0, 1.0));
        }
    }
    return out;
}

FrameSequence upsample_sequence(const FrameSequence& seq, const std::vector<FlowField>& flows,
                                const UpsamplePlan& plan, InterpolatorKind kind) {
    validate(seq);
    if (plan.pairs.size() != seq.frames.size() - 1) {
        throw std::invalid_argument("upsample_sequence: plan size mismatch");
    }
    if (kind == InterpolatorKind::flow_warp && flows.size() != seq.frames.size() - 1) {
        throw std::invalid_argument("upsample_sequence: flow_warp needs one flow per pair");
    }
    FrameSequence out;
    for (std::size_t i = 0; i + 1 < seq.frames.size(); ++i) {
        const Frame& a = seq.frames[i];
        const Frame& b = seq.frames[i + 1];
        out.frames.push_back(a);
        const UpsamplePlan::Pair& pair = plan.pairs[i];
        const double span = static_cast<double>(b.timestamp_us - a.timestamp_us);
        for (std::size_t j = 0; j < pair.k; ++j) {
            const std::int64_t t = pair.timestamps_us[j];
            const double alpha = static_cast<double>(t - a.timestamp_us) / span;
            Frame mid = kind == InterpolatorKind::crossfade
                            ? interpolate_crossfade(a, b, alpha)
                            : interpolate_flow_warp(a, b, flows[i], alpha);
            mid.timestamp_us = t;
            out.frames.push_back(std::move(mid));
        }
    }
    out.frames.push_back(seq.frames.back());
    return out;
}

FrameSequence upsample_sequence(const FrameSequence& seq, const std::vector<FlowField>& flows,
                                InterpolatorKind kind) {
    return upsample_sequence(seq, flows, plan_upsampling(seq, flows), kind);
}

FrameSequence downsample_sequence(const FrameSequence& seq, std::size_t factor) {
    validate(seq);
    if (factor < 1) {
        throw std::invalid_argument("downsample_sequence: factor must be >= 1");
    }
    FrameSequence out;
    for (std::size_t i = 0; i < seq.frames.size(); i += factor) {
        out.frames.push_back(seq.frames[i]);
    }
    if (out.frames.back().timestamp_us != seq.frames.back().timestamp_us) {
        out.frames.push_back(seq.frames.back());
    }
    return out;
}

FlowField compose_flows(const FlowField& first, const FlowField& second) {
    validate(first);
    validate(second);
    if (first.width != second.width || first.height != second.height) {
        throw std::invalid_argument("compose_flows: geometry mismatch");
    }
    const std::uint16_t w = first.width;
    const std::uint16_t h = first.height;
    FlowField out = FlowField::zero(w, h);
    for (std::uint16_t y = 0; y < h; ++y) {
        for (std::uint16_t x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            {
                const double dx = first.fwd_dx[i];
                const double dy = first.fwd_dy[i];
                const double sx = static_cast<double>(x) + dx;
                const double sy = static_cast<double>(y) + dy;
                out.fwd_dx[i] = static_cast<float>(dx + sample_clamped(second.fwd_dx, w, h, sx, sy));
                out.fwd_dy[i] = static_cast<float>(dy + sample_clamped(second.fwd_dy, w, h, sx, sy));
            }
            {
                const double dx = second.bwd_dx[i];
                const double dy = second.bwd_dy[i];
                const double sx = static_cast<double>(x) + dx;
                const double sy = static_cast<double>(y) + dy;
                out.bwd_dx[i] = static_cast<float>(dx + sample_clamped(first.bwd_dx, w, h, sx, sy));
                out.bwd_dy[i] = static_cast<float>(dy + sample_clamped(first.bwd_dy, w, h, sx, sy));
            }
        }
    }
    return out;
}

}  // namespace evsim
