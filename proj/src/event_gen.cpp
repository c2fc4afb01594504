#include "evsim/event_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace evsim {

namespace {

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::min();

struct PixelState {
    double ref_log = 0.0;
    std::int64_t last_event_t = kNever;
};

// Walks every threshold crossing of one frame interval at one pixel and
// appends the resulting events in time order. The interpolated signal is
// monotone within the interval in either interpolation mode.
void walk_interval(std::int64_t ta, std::int64_t tb, double log_a, double log_b, double int_a,
                   double int_b, const GeneratorConfig& cfg, double c_pos, double c_neg,
                   std::uint16_t x, std::uint16_t y, PixelState& st, std::vector<Event>& out) {
    const double span = static_cast<double>(tb - ta);
    const bool in_log = cfg.linear_in_log;

    auto log_at = [&](std::int64_t t) {
        const double a = static_cast<double>(t - ta) / span;
        if (in_log) {
            return log_a + (log_b - log_a) * a;
        }
        return std::log(int_a + (int_b - int_a) * a + cfg.log_eps);
    };
    auto crossing_time = [&](double level) {
        if (in_log) {
            return static_cast<double>(ta) + span * (level - log_a) / (log_b - log_a);
        }
        const double target = std::exp(level) - cfg.log_eps;
        return static_cast<double>(ta) + span * (target - int_a) / (int_b - int_a);
    };

    const bool constant = in_log ? (log_a == log_b) : (int_a == int_b);
    const bool rising = in_log ? (log_b > log_a) : (int_b > int_a);

    for (;;) {
        std::int64_t t_min = ta;
        if (st.last_event_t != kNever) {
            t_min = std::max(ta, st.last_event_t + cfg.refractory_us);
        }
        if (t_min > tb) {
            break;
        }

        // Change accumulated during a refractory window fires at expiry.
        const double l_min = log_at(t_min);
        if (l_min - st.ref_log >= c_pos - kCrossingEps) {
            out.push_back({x, y, t_min, +1});
            st.ref_log += c_pos;
            st.last_event_t = t_min;
            continue;
        }
        if (st.ref_log - l_min >= c_neg - kCrossingEps) {
            out.push_back({x, y, t_min, -1});
            st.ref_log -= c_neg;
            st.last_event_t = t_min;
            continue;
        }

        if (constant) {
            break;
        }
        const double level = rising ? st.ref_log + c_pos : st.ref_log - c_neg;
        const bool reached =
            rising ? (log_b >= level - kCrossingEps) : (log_b <= level + kCrossingEps);
        if (!reached) {
            break;
        }
        double tc = crossing_time(level);
        if (tc > static_cast<double>(tb)) {
            tc = static_cast<double>(tb);
        }
        auto t_ev = static_cast<std::int64_t>(std::floor(tc));
        if (t_ev < t_min) {
            t_ev = t_min;
        }
        out.push_back({x, y, t_ev, static_cast<std::int8_t>(rising ? +1 : -1)});
        st.ref_log = level;
        st.last_event_t = t_ev;
    }
}

std::vector<LogFrame> log_frames(const FrameSequence& seq, double log_eps) {
    std::vector<LogFrame> logs;
    logs.reserve(seq.frames.size());
    for (const Frame& f : seq.frames) {
        logs.push_back(log_intensity(f, log_eps));
    }
    return logs;
}

void sort_events(std::vector<Event>& events) { std::sort(events.begin(), events.end(), event_order_less); }

}  // namespace

EventStream generate_events(const FrameSequence& seq, const GeneratorConfig& config,
                            unsigned threads) {
    validate(seq);
    const auto [c_pos, c_neg] = sample_thresholds(config);
    const std::vector<LogFrame> logs = log_frames(seq, config.log_eps);

    const std::uint16_t width = seq.width();
    const std::uint16_t height = seq.height();
    const std::size_t n_frames = seq.frames.size();

    unsigned n_workers = std::max(1u, threads);
    n_workers = std::min<unsigned>(n_workers, height);

    std::vector<std::vector<Event>> worker_events(n_workers);

    auto run_rows = [&](unsigned worker, std::uint16_t y_begin, std::uint16_t y_end) {
        std::vector<Event>& out = worker_events[worker];
        for (std::uint16_t y = y_begin; y < y_end; ++y) {
            for (std::uint16_t x = 0; x < width; ++x) {
                const std::size_t idx = static_cast<std::size_t>(y) * width + x;
                PixelState st;
                st.ref_log = logs[0].values[idx];
                for (std::size_t i = 0; i + 1 < n_frames; ++i) {
                    walk_interval(seq.frames[i].timestamp_us, seq.frames[i + 1].timestamp_us,
                                  logs[i].values[idx], logs[i + 1].values[idx],
                                  seq.frames[i].pixels[idx], seq.frames[i + 1].pixels[idx], config,
                                  c_pos, c_neg, x, y, st, out);
                }
            }
        }
    };

    if (n_workers == 1) {
        run_rows(0, 0, height);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        const std::uint16_t rows_per = static_cast<std::uint16_t>((height + n_workers - 1) / n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            const std::uint16_t y0 = static_cast<std::uint16_t>(std::min<unsigned>(w * rows_per, height));
            const std::uint16_t y1 = static_cast<std::uint16_t>(std::min<unsigned>(y0 + rows_per, height));
            pool.emplace_back(run_rows, w, y0, y1);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    EventStream stream;
    stream.width = width;
    stream.height = height;
    std::size_t total = 0;
    for (const auto& v : worker_events) {
        total += v.size();
    }
    stream.events.reserve(total);
    for (auto& v : worker_events) {
        stream.events.insert(stream.events.end(), v.begin(), v.end());
    }
    sort_events(stream.events);
    return stream;
}

EventStream oracle_generate(const FrameSequence& seq, const GeneratorConfig& config,
                            std::int64_t dt_us) {
    validate(seq);
    if (dt_us < 1) {
        throw std::invalid_argument("oracle_generate: dt_us must be >= 1");
    }
    const auto [c_pos, c_neg] = sample_thresholds(config);
    const std::vector<LogFrame> logs = log_frames(seq, config.log_eps);

    const std::uint16_t width = seq.width();
    const std::uint16_t height = seq.height();
    const std::size_t n_frames = seq.frames.size();
    const std::int64_t t_begin = seq.frames.front().timestamp_us;
    const std::int64_t t_end = seq.frames.back().timestamp_us;

    EventStream stream;
    stream.width = width;
    stream.height = height;

    for (std::uint16_t y = 0; y < height; ++y) {
        for (std::uint16_t x = 0; x < width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * width + x;
            double ref = logs[0].values[idx];
            std::int64_t last_t = kNever;
            std::size_t interval = 0;
            for (std::int64_t t = t_begin; t <= t_end; t += dt_us) {
                while (interval + 2 < n_frames && t > seq.frames[interval + 1].timestamp_us) {
                    ++interval;
                }
                const std::int64_t ta = seq.frames[interval].timestamp_us;
                const std::int64_t tb = seq.frames[interval + 1].timestamp_us;
                const double a = static_cast<double>(t - ta) / static_cast<double>(tb - ta);
                double level;
                if (config.linear_in_log) {
                    const double la = logs[interval].values[idx];
                    const double lb = logs[interval + 1].values[idx];
                    level = la + (lb - la) * a;
                } else {
                    const double ia = seq.frames[interval].pixels[idx];
                    const double ib = seq.frames[interval + 1].pixels[idx];
                    level = std::log(ia + (ib - ia) * a + config.log_eps);
                }
                for (;;) {
                    const bool up = level - ref >= c_pos - kCrossingEps;
                    const bool down = ref - level >= c_neg - kCrossingEps;
                    if (!up && !down) {
                        break;
                    }
                    if (last_t != kNever && t - last_t < config.refractory_us) {
                        break;
                    }
                    if (up) {
                        stream.events.push_back({x, y, t, +1});
                        ref += c_pos;
                    } else {
                        stream.events.push_back({x, y, t, -1});
                        ref -= c_neg;
                    }
                    last_t = t;
                }
            }
        }
    }
    sort_events(stream.events);
    return stream;
}

}  // namespace evsim
