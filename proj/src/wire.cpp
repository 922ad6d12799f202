#include "stagecast/wire.hpp"

#include <cstring>

namespace stagecast::wire {

namespace {

template <typename T>
void put_le(std::vector<uint8_t>& out, T v) {
    for (size_t i = 0; i < sizeof(T); ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

template <typename T>
T get_le(std::span<const uint8_t> b, size_t off) {
    T v = 0;
    for (size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<T>(static_cast<T>(b[off + i]) << (8 * i));
    return v;
}

} // namespace

void append_record(std::vector<uint8_t>& out, const WireRecord& rec) {
    if (rec.type == 0)
        throw ProtocolError("wire: record type 0 is reserved");
    if (rec.payload.size() > kMaxPayload)
        throw ProtocolError("wire: payload exceeds 64 MiB cap");
    out.push_back(rec.type);
    put_le<uint32_t>(out, static_cast<uint32_t>(rec.payload.size()));
    out.insert(out.end(), rec.payload.begin(), rec.payload.end());
}

std::vector<uint8_t> write_record(const WireRecord& rec) {
    std::vector<uint8_t> out;
    out.reserve(kRecordHeaderSize + rec.payload.size());
    append_record(out, rec);
    return out;
}

ReadResult read_record(std::span<const uint8_t> bytes) {
    if (bytes.size() < kRecordHeaderSize)
        return {};
    uint8_t type = bytes[0];
    if (type == 0)
        throw ProtocolError("wire: record type 0 is reserved");
    uint32_t len = get_le<uint32_t>(bytes, 1);
    if (len > kMaxPayload)
        throw ProtocolError("wire: length field exceeds 64 MiB cap");
    if (bytes.size() < kRecordHeaderSize + len)
        return {};
    WireRecord rec;
    rec.type = type;
    rec.payload.assign(bytes.begin() + kRecordHeaderSize, bytes.begin() + kRecordHeaderSize + len);
    return {std::move(rec), kRecordHeaderSize + len};
}

void RecordParser::feed(std::span<const uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

std::optional<WireRecord> RecordParser::next() {
    if (poisoned_)
        throw ProtocolError("wire: stream poisoned by earlier protocol error");
    ReadResult r;
    try {
        r = read_record(std::span(buf_).subspan(offset_));
    } catch (const ProtocolError&) {
        poisoned_ = true;
        throw;
    }
    if (!r.record)
        return std::nullopt;
    offset_ += r.consumed;
    if (offset_ > (1u << 20) && offset_ * 2 >= buf_.size()) {
        buf_.erase(buf_.begin(), buf_.begin() + static_cast<ptrdiff_t>(offset_));
        offset_ = 0;
    }
    return std::move(r.record);
}

std::vector<uint8_t> encode_haptic(const HapticBlock& block) {
    std::vector<uint8_t> out;
    out.reserve(18 + block.samples.size() * 6);
    put_le<uint16_t>(out, block.sensor_id);
    put_le<uint64_t>(out, block.start_ts_us);
    put_le<uint32_t>(out, block.sample_rate_hz);
    put_le<uint32_t>(out, static_cast<uint32_t>(block.samples.size()));
    for (const auto& s : block.samples)
        for (int16_t v : s)
            put_le<uint16_t>(out, static_cast<uint16_t>(v));
    return out;
}

HapticBlock decode_haptic(std::span<const uint8_t> p) {
    if (p.size() < 18)
        throw ProtocolError("haptic payload: shorter than fixed fields");
    HapticBlock block;
    block.sensor_id = get_le<uint16_t>(p, 0);
    block.start_ts_us = get_le<uint64_t>(p, 2);
    block.sample_rate_hz = get_le<uint32_t>(p, 10);
    uint32_t n = get_le<uint32_t>(p, 14);
    if (p.size() != 18 + static_cast<size_t>(n) * 6)
        throw ProtocolError("haptic payload: sample count disagrees with payload size");
    block.samples.resize(n);
    for (uint32_t i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a)
            block.samples[i][a] = static_cast<int16_t>(get_le<uint16_t>(p, 18 + i * 6 + a * 2));
    return block;
}

} // namespace stagecast::wire
