#pragma once

#include <cstdint>
#include <vector>

#include "stagecast/error.hpp"

namespace stagecast {

// Dense row-major raster. Pixel (x, y) with x in [0, width), y in [0, height).
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, T fill = T{})
        : width_(width), height_(height), px_(static_cast<size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw InvalidInput("Image: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return px_.size(); }
    bool empty() const { return px_.empty(); }

    T& at(int x, int y) { return px_[static_cast<size_t>(y) * width_ + x]; }
    const T& at(int x, int y) const { return px_[static_cast<size_t>(y) * width_ + x]; }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width_ && y >= 0 && y < height_; }

    T* data() { return px_.data(); }
    const T* data() const { return px_.data(); }

    bool same_size(const Image& o) const { return width_ == o.width_ && height_ == o.height_; }

    bool operator==(const Image& o) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> px_;
};

struct Rgb8 {
    uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb8&) const = default;
};

using RgbImage = Image<Rgb8>;

// Depth raster in millimeters. 0 = no return; 65535 is reserved and never
// appears in a well-formed frame.
using DepthImage = Image<uint16_t>;

constexpr uint16_t kDepthNoReturn = 0;
constexpr uint16_t kDepthReserved = 65535;

inline bool depth_valid(uint16_t d) { return d != kDepthNoReturn && d != kDepthReserved; }

// One capture unit's synchronized color + depth frame.
struct RgbdFrame {
    int unit_id = 0;
    uint32_t seq = 0;
    uint64_t capture_ts_us = 0; // shared monotonic clock
    RgbImage rgb;
    DepthImage depth;
};

inline size_t count_valid_depth(const DepthImage& d) {
    size_t n = 0;
    for (size_t i = 0; i < d.size(); ++i)
        if (depth_valid(d.data()[i]))
            ++n;
    return n;
}

} // namespace stagecast
