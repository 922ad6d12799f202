#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stagecast/geometry.hpp"
#include "stagecast/raster.hpp"

namespace stagecast {

struct SceneBox {
    Vec3 min, max; // axis-aligned, meters; zero thickness allowed (walls)
    Rgb8 color;
};

// Sphere on a linear path: center(t) = center0 + velocity * t.
struct SceneSphere {
    Vec3 center0;
    Vec3 velocity;
    double radius = 0.25;
    Rgb8 color;

    Vec3 center_at(double t) const { return center0 + velocity * t; }
};

struct SceneConfig {
    Vec3 room_extent{10, 10, 4}; // meters, scene contained in [0, extent]
    std::vector<SceneBox> boxes;
    std::vector<SceneSphere> spheres;
    // Additive 8-bit brightness drift per second, applied uniformly to all
    // channels. Stands in for stage lighting changes.
    double lighting_ramp_per_s = 0.0;
    uint64_t seed = 0;
    double duration_s = 60.0;

    void validate() const;
};

SceneConfig parse_scene(const std::string& text);
SceneConfig load_scene(const std::string& path);
std::string format_scene(const SceneConfig& scene);

// Sweep stagger of the co-located spinning rangefinders in one capture unit.
struct SweepSchedule {
    int n_lidars = 3;
    double base_rate_hz = 10.0;
    std::vector<double> phase_offsets_deg{0, 120, 240};

    double revisit_interval_ms() const { return 1000.0 / (n_lidars * base_rate_hz); }
    void validate() const; // throws ConfigError
};

// Which sweep covers one output frame, plus per-column sample times within it.
struct FrameSweep {
    int lidar = 0;                // index into the schedule
    double frame_start_s = 0;     // on the scene clock
    double frame_period_s = 0;

    // Columns are sampled left to right across the frame interval.
    double column_time_s(int column, int width) const {
        return frame_start_s + (column + 0.5) / width * frame_period_s;
    }
};

// Throws ConfigError unless frame_rate == n_lidars * base_rate.
FrameSweep sweep_for_frame(const SweepSchedule& sched, uint32_t frame_index, double frame_rate_hz);

// Analytic ray-cast of the scene at time t: exact box/sphere intersections,
// depth quantized to millimeters, flat-shaded color. Empty scene yields
// all-invalid depth.
RgbdFrame render_ground_truth(const SceneConfig& scene, const UnitCalibration& cal, double t_s);

// Sensor model: per-pixel dropout under a pattern keyed by (seed, phase) --
// each sweep phase always hits the same surface points, so consecutive frames
// (different phases) disagree about which static pixels have returns. That is
// the flicker the densifier exists to suppress. Surviving depths get zero-mean
// Gaussian noise keyed by (seed, frame seq), fresh each frame. RGB passes
// through unmodified.
RgbdFrame sample_unit(const RgbdFrame& ground_truth, int phase, double noise_sigma_m,
                      double dropout, uint64_t seed);

// splitmix64; used for all deterministic per-pixel sampling decisions.
uint64_t hash_mix(uint64_t a, uint64_t b);
double hash_unit_interval(uint64_t h); // [0, 1)

} // namespace stagecast
