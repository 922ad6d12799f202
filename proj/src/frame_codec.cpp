#include "stagecast/frame_codec.hpp"

#include <cstring>

#include "stagecast/jpeg_codec.hpp"
#include "stagecast/qoi16.hpp"

namespace stagecast {

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

EncodedFrame encode_frame(const RgbdFrame& frame, int jpeg_quality) {
    if (!frame.rgb.same_size(frame.depth) ||
        frame.rgb.width() != frame.depth.width())
        throw SizeMismatch("encode_frame: rgb and depth rasters disagree");
    EncodedFrame enc;
    enc.unit_id = static_cast<uint16_t>(frame.unit_id);
    enc.seq = frame.seq;
    enc.capture_ts_us = frame.capture_ts_us;
    enc.rgb_payload = jpeg::encode(frame.rgb, jpeg_quality);
    enc.depth_payload = qoi16::encode(frame.depth);
    return enc;
}

RgbdFrame decode_frame(const EncodedFrame& enc) {
    RgbdFrame frame;
    frame.unit_id = enc.unit_id;
    frame.seq = enc.seq;
    frame.capture_ts_us = enc.capture_ts_us;
    frame.rgb = jpeg::decode(enc.rgb_payload);
    frame.depth = qoi16::decode(enc.depth_payload);
    if (!frame.rgb.same_size(frame.depth))
        throw ParseError("decode_frame: rgb and depth payload dimensions disagree");
    return frame;
}

std::vector<uint8_t> serialize_frame(const EncodedFrame& enc) {
    std::vector<uint8_t> out;
    out.reserve(kFrameHeaderSize + enc.rgb_payload.size() + enc.depth_payload.size());
    out.insert(out.end(), {'D', 'P', 'C', 'S'});
    put_le<uint16_t>(out, kFrameVersion);
    put_le<uint16_t>(out, enc.unit_id);
    put_le<uint32_t>(out, enc.seq);
    put_le<uint64_t>(out, enc.capture_ts_us);
    put_le<uint32_t>(out, static_cast<uint32_t>(enc.rgb_payload.size()));
    put_le<uint32_t>(out, static_cast<uint32_t>(enc.depth_payload.size()));
    out.insert(out.end(), enc.rgb_payload.begin(), enc.rgb_payload.end());
    out.insert(out.end(), enc.depth_payload.begin(), enc.depth_payload.end());
    return out;
}

EncodedFrame deserialize_frame(std::span<const uint8_t> b) {
    if (b.size() < kFrameHeaderSize)
        throw ParseError("frame: shorter than header");
    if (std::memcmp(b.data(), "DPCS", 4) != 0)
        throw ParseError("frame: bad magic");
    if (get_le<uint16_t>(b, 4) != kFrameVersion)
        throw ParseError("frame: unsupported version");
    EncodedFrame enc;
    enc.unit_id = get_le<uint16_t>(b, 6);
    enc.seq = get_le<uint32_t>(b, 8);
    enc.capture_ts_us = get_le<uint64_t>(b, 12);
    uint32_t rgb_len = get_le<uint32_t>(b, 20);
    uint32_t depth_len = get_le<uint32_t>(b, 24);
    if (kFrameHeaderSize + static_cast<uint64_t>(rgb_len) + depth_len != b.size())
        throw ParseError("frame: payload lengths disagree with buffer size");
    enc.rgb_payload.assign(b.begin() + kFrameHeaderSize, b.begin() + kFrameHeaderSize + rgb_len);
    enc.depth_payload.assign(b.begin() + kFrameHeaderSize + rgb_len, b.end());
    return enc;
}

} // namespace stagecast
