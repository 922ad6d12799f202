#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stagecast/raster.hpp"

namespace stagecast {

// Transport unit for one RGB-D frame: JPEG color + QOI-16 depth behind a small
// binary header (little-endian):
//   magic "DPCS" | version u16 = 1 | unit_id u16 | seq u32 | capture_ts_us u64
//   | rgb_len u32 | depth_len u32
struct EncodedFrame {
    uint16_t unit_id = 0;
    uint32_t seq = 0;
    uint64_t capture_ts_us = 0;
    std::vector<uint8_t> rgb_payload;   // JPEG (JFIF)
    std::vector<uint8_t> depth_payload; // QOI-16
};

constexpr size_t kFrameHeaderSize = 28;
constexpr uint16_t kFrameVersion = 1;

EncodedFrame encode_frame(const RgbdFrame& frame, int jpeg_quality = 85);
RgbdFrame decode_frame(const EncodedFrame& enc);

std::vector<uint8_t> serialize_frame(const EncodedFrame& enc);
EncodedFrame deserialize_frame(std::span<const uint8_t> bytes);

} // namespace stagecast
