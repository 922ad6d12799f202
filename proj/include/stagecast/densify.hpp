#pragma once

#include <deque>

#include "stagecast/raster.hpp"

namespace stagecast {

// Binary motion raster, nonzero = moving.
using MotionMask = Image<uint8_t>;

// Pixel is moving iff the max-channel absolute color difference exceeds tau.
// A threshold of 25 absorbs slow global lighting drift while catching object
// motion against contrasting backgrounds.
MotionMask motion_mask(const RgbImage& prev, const RgbImage& cur, int tau = 25);

// Morphological closing (dilation then erosion) with a square structuring
// element of side 2*radius+1. Fills mask holes of diameter <= 2*radius.
// Out-of-raster neighbors count as background for the dilation and as
// foreground for the erosion.
MotionMask close_mask(const MotionMask& mask, int radius = 2);

MotionMask dilate_mask(const MotionMask& mask, int radius);
MotionMask erode_mask(const MotionMask& mask, int radius);

// Per-unit temporal fusion state: the previous two sampled depth rasters and
// their motion masks. Fills current no-return pixels from history where both
// the current pixel and the history pixel were static; moving regions are
// never filled.
class DensifyState {
public:
    // Fuses and pushes `cur` (as given, pre-fusion) into history, evicting the
    // oldest of the two retained frames. Never overwrites a valid current
    // depth value. Fill preference: newest history frame first.
    RgbdFrame fuse_static(const RgbdFrame& cur, const MotionMask& cur_mask);

    size_t history_size() const { return history_.size(); }
    void clear() { history_.clear(); }

private:
    struct Entry {
        DepthImage depth;
        MotionMask mask;
        uint32_t seq = 0;
    };
    std::deque<Entry> history_; // newest at front, size <= 2
};

// Full per-frame chain for one unit: difference against the previous frame's
// color, close the mask, fuse static history. The first frame of a stream has
// no color reference and passes through with an all-static mask.
class Densifier {
public:
    explicit Densifier(int tau = 25, int radius = 2) : tau_(tau), radius_(radius) {}

    RgbdFrame process(const RgbdFrame& frame);
    const MotionMask& last_mask() const { return last_mask_; }

private:
    int tau_;
    int radius_;
    RgbImage prev_rgb_;
    MotionMask last_mask_;
    DensifyState state_;
};

} // namespace stagecast
