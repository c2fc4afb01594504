#pragma once

#include "evsim/core.hpp"

namespace evsim {

enum class InterpolatorKind { crossfade, flow_warp };

/// Per frame pair: number of intermediate frames and their timestamps,
/// equally spaced strictly inside the pair interval.
struct UpsamplePlan {
    struct Pair {
        std::size_t k = 0;
        double max_displacement = 0.0;  // max over pixels of max(|fwd|, |bwd|), Euclidean
        std::vector<std::int64_t> timestamps_us;
    };
    std::vector<Pair> pairs;
};

/// K_i = max(0, ceil(max displacement - 1)): the smallest count that keeps the
/// per-step displacement at or below 1 px under linear motion.
UpsamplePlan plan_upsampling(const FrameSequence& seq, const std::vector<FlowField>& flows);

/// Fixed plan with factor - 1 intermediates per pair (no flow needed).
UpsamplePlan uniform_plan(const FrameSequence& seq, std::size_t factor);

/// (1 - alpha) * f_a + alpha * f_b. Timestamp of the result is left at 0;
/// upsample_sequence assigns planned timestamps.
Frame interpolate_crossfade(const Frame& f_a, const Frame& f_b, double alpha);

/// Backward warp both endpoint frames toward the intermediate time and blend:
/// samples f_a at u - alpha * F_fwd(u) and f_b at u - (1 - alpha) * F_bwd(u)
/// (bilinear, clamp-to-edge), weights (1 - alpha) and alpha, clamped to [0,1].
Frame interpolate_flow_warp(const Frame& f_a, const Frame& f_b, const FlowField& flow,
                            double alpha);

/// Original frames preserved bit-exactly at their timestamps, planned
/// intermediates inserted per pair. flows may be empty only for crossfade.
FrameSequence upsample_sequence(const FrameSequence& seq, const std::vector<FlowField>& flows,
                                const UpsamplePlan& plan, InterpolatorKind kind);

/// Plans from the flows, then upsamples.
FrameSequence upsample_sequence(const FrameSequence& seq, const std::vector<FlowField>& flows,
                                InterpolatorKind kind);

/// Keeps frames at indices 0, factor, 2*factor, ... and always the last frame.
FrameSequence downsample_sequence(const FrameSequence& seq, std::size_t factor);

/// Chains two consecutive pair flows into one spanning flow. Forward:
/// F(u) = F1_fwd(u) + F2_fwd(u + F1_fwd(u)), sampled bilinearly; backward is
/// the mirror image. Exact for constant fields.
FlowField compose_flows(const FlowField& first, const FlowField& second);

/// Max over pixels of max(|forward|, |backward|) Euclidean magnitude.
double max_flow_displacement(const FlowField& flow);

}  // namespace evsim
