#include "stagecast/densify.hpp"

#include <algorithm>
#include <cstdlib>

namespace stagecast {

MotionMask motion_mask(const RgbImage& prev, const RgbImage& cur, int tau) {
    if (!prev.same_size(cur))
        throw SizeMismatch("motion_mask: rasters differ in size");
    if (tau < 0 || tau > 255)
        throw InvalidInput("motion_mask: tau must be in [0, 255]");
    MotionMask mask(cur.width(), cur.height(), 0);
    for (int y = 0; y < cur.height(); ++y) {
        for (int x = 0; x < cur.width(); ++x) {
            const Rgb8& a = prev.at(x, y);
            const Rgb8& b = cur.at(x, y);
            int d = std::max({std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
            if (d > tau)
                mask.at(x, y) = 1;
        }
    }
    return mask;
}

namespace {

template <bool Dilate>
MotionMask morph(const MotionMask& mask, int radius) {
    if (radius < 1)
        throw InvalidInput("morphology: radius must be >= 1");
    const int w = mask.width(), h = mask.height();
    MotionMask out(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool hit = !Dilate;
            for (int dy = -radius; dy <= radius && (Dilate ? !hit : hit); ++dy) {
                for (int dx = -radius; dx <= radius && (Dilate ? !hit : hit); ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (!mask.in_bounds(nx, ny))
                        continue; // outside: background for dilate, foreground for erode
                    bool v = mask.at(nx, ny) != 0;
                    if (Dilate)
                        hit = hit || v;
                    else
                        hit = hit && v;
                }
            }
            out.at(x, y) = hit ? 1 : 0;
        }
    }
    return out;
}

} // namespace

MotionMask dilate_mask(const MotionMask& mask, int radius) { return morph<true>(mask, radius); }
MotionMask erode_mask(const MotionMask& mask, int radius) { return morph<false>(mask, radius); }

MotionMask close_mask(const MotionMask& mask, int radius) {
    return erode_mask(dilate_mask(mask, radius), radius);
}

RgbdFrame DensifyState::fuse_static(const RgbdFrame& cur, const MotionMask& cur_mask) {
    if (!cur_mask.same_size(cur.depth))
        throw SizeMismatch("fuse_static: mask size differs from frame");
    for (const Entry& e : history_)
        if (!e.depth.same_size(cur.depth))
            throw SizeMismatch("fuse_static: frame size changed mid-stream");

    RgbdFrame out = cur;
    for (int y = 0; y < cur.depth.height(); ++y) {
        for (int x = 0; x < cur.depth.width(); ++x) {
            if (depth_valid(cur.depth.at(x, y)))
                continue; // valid current data always wins
            if (cur_mask.at(x, y))
                continue; // moving now: never fill from the past
            for (const Entry& e : history_) {
                if (e.mask.at(x, y))
                    continue; // was moving in its own frame: unusable
                uint16_t d = e.depth.at(x, y);
                if (depth_valid(d)) {
                    out.depth.at(x, y) = d;
                    break; // newest history frame first
                }
            }
        }
    }

    history_.push_front(Entry{cur.depth, cur_mask, cur.seq});
    if (history_.size() > 2)
        history_.pop_back();
    return out;
}

RgbdFrame Densifier::process(const RgbdFrame& frame) {
    if (prev_rgb_.empty())
        last_mask_ = MotionMask(frame.rgb.width(), frame.rgb.height(), 0);
    else
        last_mask_ = close_mask(motion_mask(prev_rgb_, frame.rgb, tau_), radius_);
    prev_rgb_ = frame.rgb;
    return state_.fuse_static(frame, last_mask_);
}

} // namespace stagecast
