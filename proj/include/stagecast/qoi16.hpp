#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stagecast/raster.hpp"

namespace stagecast::qoi16 {

// Lossless single-channel 16-bit raster codec.
//
// Container (multi-byte fields big-endian):
//   magic "qo16" | width u32 | height u32 | reserved u16 = 0
//   chunk stream, row-major pixel order
//   end marker: seven 0x00 bytes then one 0x01
//
// Chunks (tag bits from the top of the first byte):
//   00iiiiii            INDEX    pixel = index[i]
//   01dddddd            DIFF6    pixel = prev + (d - 32), wrap mod 2^16
//   10rrrrrr            RUN      repeat prev (r + 1) times, 1..64
//   11dddddd nnnnnnnn   DIFF14   pixel = prev + (((d<<8)|n) - 8192), wrap mod 2^16,
//                                except 0xFF 0xFF which introduces:
//   0xFF 0xFF hi lo     LITERAL  pixel = (hi<<8)|lo
//
// Codec state: prev starts at 0; a 64-entry index table starts zeroed and is
// written after every pixel at bucket hash(pixel). Encoder preference order is
// RUN > INDEX > DIFF6 > DIFF14 > LITERAL, so output bytes are deterministic.

enum class ErrorKind {
    bad_magic,
    truncated,
    bad_dimensions,
    missing_end_marker,
    pixel_overrun,
    trailing_data,
};

class CodecError : public Error {
public:
    CodecError(ErrorKind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

constexpr size_t kHeaderSize = 14;
constexpr size_t kEndMarkerSize = 8;

// Bucket for the 64-entry index table.
inline uint8_t hash_bucket(uint16_t v) {
    return static_cast<uint8_t>((static_cast<uint32_t>(v) * 2654435761u & 0xFFFFu) >> 10);
}

std::vector<uint8_t> encode(const DepthImage& img);
DepthImage decode(std::span<const uint8_t> bytes);

} // namespace stagecast::qoi16
