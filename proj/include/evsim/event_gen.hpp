#pragma once

#include "evsim/core.hpp"

namespace evsim {

// Absolute slack on threshold comparisons so that crossings landing exactly on
// a level (up to rounding of the inputs) still trigger. Both the generator and
// the brute-force oracle apply it identically.
inline constexpr double kCrossingEps = 1e-9;

/// Convert a frame sequence into an event stream via the contrast-threshold
/// model. Per pixel, the reference level starts at the first frame's log
/// intensity; between frames the signal is interpolated linearly (log space by
/// default) and every crossing of reference +/- threshold emits one event and
/// jumps the reference to the crossed level. Crossing times are floored to
/// integer microseconds. Crossings inside the refractory window of the last
/// event are skipped without touching the reference; the pending change fires
/// once the window expires.
///
/// Work splits across row bands when threads > 1; the merged stream is
/// byte-identical for any thread count.
EventStream generate_events(const FrameSequence& seq, const GeneratorConfig& config,
                            unsigned threads = 1);

/// Brute-force verifier for generate_events: samples the interpolated signal
/// every dt_us and applies the threshold test sample by sample, with the same
/// reference-update and refractory rules. Independent of the closed-form
/// crossing computation above.
EventStream oracle_generate(const FrameSequence& seq, const GeneratorConfig& config,
                            std::int64_t dt_us);

}  // namespace evsim
