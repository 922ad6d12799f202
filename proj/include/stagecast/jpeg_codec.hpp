#pragma once

#include <span>
#include <vector>

#include "stagecast/raster.hpp"

namespace stagecast::jpeg {

// Thin wrappers around libjpeg for interleaved 8-bit RGB rasters.
std::vector<uint8_t> encode(const RgbImage& img, int quality);
RgbImage decode(std::span<const uint8_t> bytes);

} // namespace stagecast::jpeg
