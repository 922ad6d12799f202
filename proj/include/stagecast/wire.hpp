#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stagecast/error.hpp"

namespace stagecast::wire {

// Wire layout (little-endian): record_type u8 | length u32 | payload.
// Unknown record types are skippable via the length field.
enum class RecordType : uint8_t {
    frame = 1,
    haptic = 2,
    clock_probe = 3,
};

constexpr size_t kRecordHeaderSize = 5;
constexpr uint32_t kMaxPayload = 64u << 20; // sanity cap

class ProtocolError : public Error {
public:
    using Error::Error;
};

struct WireRecord {
    uint8_t type = 0;
    std::vector<uint8_t> payload;

    bool operator==(const WireRecord&) const = default;
};

std::vector<uint8_t> write_record(const WireRecord& rec);
void append_record(std::vector<uint8_t>& out, const WireRecord& rec);

struct ReadResult {
    std::optional<WireRecord> record; // empty = needs more bytes
    size_t consumed = 0;              // 0 when more bytes are needed
};

// Parses one record from the front of `bytes`. Partial input consumes nothing
// and returns an empty record. Throws ProtocolError on type 0 or an oversize
// length field.
ReadResult read_record(std::span<const uint8_t> bytes);

// Incremental reader over a byte stream. Once a protocol error is seen the
// stream is poisoned and every further call throws.
class RecordParser {
public:
    void feed(std::span<const uint8_t> bytes);
    std::optional<WireRecord> next(); // throws ProtocolError if poisoned
    bool poisoned() const { return poisoned_; }
    size_t buffered() const { return buf_.size() - offset_; }

private:
    std::vector<uint8_t> buf_;
    size_t offset_ = 0;
    bool poisoned_ = false;
};

// Haptic payload: sensor_id u16 | start_ts_us u64 | sample_rate_hz u32 |
// n u32 | n x 3 i16 samples (x, y, z accelerometer LSBs), little-endian.
struct HapticBlock {
    uint16_t sensor_id = 0;
    uint64_t start_ts_us = 0;
    uint32_t sample_rate_hz = 0;
    std::vector<std::array<int16_t, 3>> samples;

    bool operator==(const HapticBlock&) const = default;
};

std::vector<uint8_t> encode_haptic(const HapticBlock& block);
HapticBlock decode_haptic(std::span<const uint8_t> payload);

// Per-frame pipeline timestamps, microseconds on one shared monotonic clock.
// Monotone non-decreasing in pipeline order.
struct StageStamps {
    uint64_t capture_ts = 0;
    uint64_t encode_done = 0;
    uint64_t send_ts = 0;
    uint64_t recv_ts = 0;
    uint64_t decode_done = 0;
    uint64_t render_done = 0;

    bool monotone() const {
        return capture_ts <= encode_done && encode_done <= send_ts && send_ts <= recv_ts &&
               recv_ts <= decode_done && decode_done <= render_done;
    }
};

} // namespace stagecast::wire
