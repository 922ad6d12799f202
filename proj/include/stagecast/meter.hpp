#pragma once

#include <mutex>
#include <optional>
#include <vector>

#include "stagecast/wire.hpp"

namespace stagecast::wire {

struct MeterSample {
    RecordType type = RecordType::frame;
    size_t wire_bytes = 0;           // framed size including record header
    StageStamps stamps;
    uint32_t points = 0;             // valid depth pixels reported by the decoder
};

struct Percentiles {
    double p50 = 0, p95 = 0, p99 = 0;
    double mean = 0;
};

struct TrafficReport {
    size_t n_records = 0;
    size_t n_frames = 0;
    size_t total_bytes = 0;
    double span_s = 0; // first to last send_ts

    // Absent when fewer than two records or zero span.
    std::optional<double> bitrate_bps;
    std::optional<double> frame_bitrate_bps;
    std::optional<double> haptic_bitrate_bps;
    std::optional<double> fps;

    double points_per_frame = 0;

    // Stage deltas over frame records, milliseconds.
    Percentiles encode_ms;   // encode_done - capture_ts
    Percentiles queue_ms;    // send_ts - encode_done
    Percentiles network_ms;  // recv_ts - send_ts
    Percentiles decode_ms;   // decode_done - recv_ts
    Percentiles render_ms;   // render_done - decode_done
    Percentiles e2e_ms;      // render_done - capture_ts
};

// Nearest-rank percentile: the ceil(p*n)-th smallest sample.
double percentile(std::vector<double> samples, double p);

// Serialized intake for samples arriving from multiple connections.
class TrafficMeter {
public:
    void add(const MeterSample& sample);
    TrafficReport report() const; // throws InvalidInput on empty stream
    size_t size() const;

private:
    mutable std::mutex mu_;
    std::vector<MeterSample> samples_;
};

TrafficReport make_report(const std::vector<MeterSample>& samples);

} // namespace stagecast::wire
