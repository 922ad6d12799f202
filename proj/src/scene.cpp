#include "stagecast/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace stagecast {

void SceneConfig::validate() const {
    if (!(room_extent.x > 0 && room_extent.y > 0 && room_extent.z > 0))
        throw ConfigError("scene: room extents must be positive");
    if (!(duration_s > 0))
        throw ConfigError("scene: duration must be positive");
}

void SweepSchedule::validate() const {
    if (n_lidars < 1 || base_rate_hz <= 0)
        throw ConfigError("sweep schedule: need >= 1 lidar with positive rate");
    if (static_cast<int>(phase_offsets_deg.size()) != n_lidars)
        throw ConfigError("sweep schedule: one phase offset per lidar");
    for (size_t i = 1; i < phase_offsets_deg.size(); ++i)
        if (!(phase_offsets_deg[i] > phase_offsets_deg[i - 1]))
            throw ConfigError("sweep schedule: phases must be strictly increasing");
    if (!phase_offsets_deg.empty() &&
        phase_offsets_deg.back() - phase_offsets_deg.front() >= 360.0)
        throw ConfigError("sweep schedule: phases must span less than 360 degrees");
}

FrameSweep sweep_for_frame(const SweepSchedule& sched, uint32_t frame_index, double frame_rate_hz) {
    sched.validate();
    double expected = sched.n_lidars * sched.base_rate_hz;
    if (std::abs(frame_rate_hz - expected) > 1e-9)
        throw ConfigError("sweep schedule: frame rate must equal n_lidars * base_rate");
    FrameSweep fs;
    fs.lidar = static_cast<int>(frame_index % sched.n_lidars);
    fs.frame_period_s = 1.0 / frame_rate_hz;
    fs.frame_start_s = frame_index * fs.frame_period_s;
    return fs;
}

namespace {

// Ray p(t) = origin + t * dir against an axis-aligned slab box. Handles
// zero-thickness boxes (planes). Returns smallest t > 0, or nothing.
std::optional<double> ray_box(const Vec3& origin, const Vec3& dir, const SceneBox& box) {
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    const double o[3] = {origin.x, origin.y, origin.z};
    const double d[3] = {dir.x, dir.y, dir.z};
    const double lo[3] = {box.min.x, box.min.y, box.min.z};
    const double hi[3] = {box.max.x, box.max.y, box.max.z};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(d[i]) < 1e-300) {
            if (o[i] < lo[i] || o[i] > hi[i])
                return std::nullopt;
            continue;
        }
        double t0 = (lo[i] - o[i]) / d[i];
        double t1 = (hi[i] - o[i]) / d[i];
        if (t0 > t1)
            std::swap(t0, t1);
        tmin = std::max(tmin, t0);
        tmax = std::min(tmax, t1);
        if (tmin > tmax)
            return std::nullopt;
    }
    if (tmax <= 0)
        return std::nullopt;
    return tmin > 0 ? tmin : tmax;
}

std::optional<double> ray_sphere(const Vec3& origin, const Vec3& dir, const Vec3& center,
                                 double radius) {
    Vec3 oc = origin - center;
    double a = dir.dot(dir);
    double b = 2.0 * oc.dot(dir);
    double c = oc.dot(oc) - radius * radius;
    double disc = b * b - 4 * a * c;
    if (disc < 0)
        return std::nullopt;
    double sq = std::sqrt(disc);
    double t0 = (-b - sq) / (2 * a);
    double t1 = (-b + sq) / (2 * a);
    if (t0 > 0)
        return t0;
    if (t1 > 0)
        return t1;
    return std::nullopt;
}

uint8_t clamp_u8(int v) { return static_cast<uint8_t>(std::clamp(v, 0, 255)); }

} // namespace

RgbdFrame render_ground_truth(const SceneConfig& scene, const UnitCalibration& cal, double t_s) {
    scene.validate();
    const Intrinsics& k = cal.intrinsics;
    RgbdFrame frame;
    frame.unit_id = cal.unit_id;
    frame.rgb = RgbImage(k.width, k.height);
    frame.depth = DepthImage(k.width, k.height, kDepthNoReturn);

    int light = static_cast<int>(std::lround(scene.lighting_ramp_per_s * t_s));
    const Vec3 origin = cal.pose.translation;

    std::vector<Vec3> sphere_centers;
    sphere_centers.reserve(scene.spheres.size());
    for (const auto& s : scene.spheres)
        sphere_centers.push_back(s.center_at(t_s));

    for (int y = 0; y < k.height; ++y) {
        for (int x = 0; x < k.width; ++x) {
            // Camera-frame direction with z = 1, so the ray parameter at the
            // hit IS the camera depth.
            Vec3 dir_cam{(x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0};
            Vec3 dir = cal.pose.rotation.apply(dir_cam);

            double best = std::numeric_limits<double>::infinity();
            Rgb8 color{};
            for (const auto& box : scene.boxes) {
                if (auto t = ray_box(origin, dir, box); t && *t < best) {
                    best = *t;
                    color = box.color;
                }
            }
            for (size_t i = 0; i < scene.spheres.size(); ++i) {
                if (auto t = ray_sphere(origin, dir, sphere_centers[i], scene.spheres[i].radius);
                    t && *t < best) {
                    best = *t;
                    color = scene.spheres[i].color;
                }
            }
            if (std::isfinite(best)) {
                long mm = std::lround(best * 1000.0);
                frame.depth.at(x, y) =
                    static_cast<uint16_t>(std::clamp(mm, 1L, static_cast<long>(kDepthReserved - 1)));
                frame.rgb.at(x, y) = {clamp_u8(color.r + light), clamp_u8(color.g + light),
                                      clamp_u8(color.b + light)};
            } else {
                frame.rgb.at(x, y) = {clamp_u8(light), clamp_u8(light), clamp_u8(light)};
            }
        }
    }
    return frame;
}

uint64_t hash_mix(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9E3779B97F4A7C15ull + b * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double hash_unit_interval(uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {

// Deterministic standard normal from two hashes (Box-Muller).
double hash_gaussian(uint64_t h1, uint64_t h2) {
    double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    double u2 = hash_unit_interval(h2);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

RgbdFrame sample_unit(const RgbdFrame& gt, int phase, double noise_sigma_m, double dropout,
                      uint64_t seed) {
    if (dropout < 0 || dropout >= 1)
        throw InvalidInput("sample_unit: dropout must be in [0, 1)");
    if (noise_sigma_m < 0)
        throw InvalidInput("sample_unit: noise sigma must be >= 0");

    RgbdFrame out = gt;
    const int w = gt.depth.width();
    const uint64_t pattern_key = hash_mix(seed, 0x70617400ull + static_cast<uint64_t>(phase));
    const uint64_t noise_key = hash_mix(seed, 0x6e6f6900ull + gt.seq);

    for (int y = 0; y < gt.depth.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            uint16_t d = gt.depth.at(x, y);
            if (!depth_valid(d))
                continue;
            uint64_t px = static_cast<uint64_t>(y) * w + x;
            if (hash_unit_interval(hash_mix(pattern_key, px)) < dropout) {
                out.depth.at(x, y) = kDepthNoReturn;
                continue;
            }
            if (noise_sigma_m > 0) {
                double n = hash_gaussian(hash_mix(noise_key, px * 2), hash_mix(noise_key, px * 2 + 1));
                long mm = std::lround(d + n * noise_sigma_m * 1000.0);
                out.depth.at(x, y) =
                    static_cast<uint16_t>(std::clamp(mm, 1L, static_cast<long>(kDepthReserved - 1)));
            }
        }
    }
    return out;
}

namespace {

Rgb8 parse_color(std::istringstream& in, const char* what) {
    int r, g, b;
    if (!(in >> r >> g >> b))
        throw ParseError(std::string("scene: expected r g b for ") + what);
    return {clamp_u8(r), clamp_u8(g), clamp_u8(b)};
}

} // namespace

SceneConfig parse_scene(const std::string& text) {
    SceneConfig scene;
    scene.boxes.clear();
    scene.spheres.clear();
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream in(line);
        std::string key;
        if (!(in >> key))
            continue;
        auto fail = [&](const char* msg) {
            throw ParseError("scene line " + std::to_string(lineno) + ": " + msg);
        };
        if (key == "room") {
            if (!(in >> scene.room_extent.x >> scene.room_extent.y >> scene.room_extent.z))
                fail("expected: room x y z");
        } else if (key == "seed") {
            if (!(in >> scene.seed))
                fail("expected: seed n");
        } else if (key == "duration") {
            if (!(in >> scene.duration_s))
                fail("expected: duration seconds");
        } else if (key == "lighting_ramp") {
            if (!(in >> scene.lighting_ramp_per_s))
                fail("expected: lighting_ramp levels_per_second");
        } else if (key == "box") {
            SceneBox b;
            if (!(in >> b.min.x >> b.min.y >> b.min.z >> b.max.x >> b.max.y >> b.max.z))
                fail("expected: box minx miny minz maxx maxy maxz r g b");
            b.color = parse_color(in, "box");
            scene.boxes.push_back(b);
        } else if (key == "sphere") {
            SceneSphere s;
            if (!(in >> s.center0.x >> s.center0.y >> s.center0.z >> s.velocity.x >> s.velocity.y >>
                  s.velocity.z >> s.radius))
                fail("expected: sphere cx cy cz vx vy vz radius r g b");
            s.color = parse_color(in, "sphere");
            scene.spheres.push_back(s);
        } else {
            fail("unknown keyword");
        }
    }
    scene.validate();
    return scene;
}

SceneConfig load_scene(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open scene file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scene(buf.str());
}

std::string format_scene(const SceneConfig& s) {
    std::ostringstream out;
    out.precision(12);
    out << "room " << s.room_extent.x << " " << s.room_extent.y << " " << s.room_extent.z << "\n";
    out << "seed " << s.seed << "\n";
    out << "duration " << s.duration_s << "\n";
    if (s.lighting_ramp_per_s != 0)
        out << "lighting_ramp " << s.lighting_ramp_per_s << "\n";
    for (const auto& b : s.boxes)
        out << "box " << b.min.x << " " << b.min.y << " " << b.min.z << " " << b.max.x << " "
            << b.max.y << " " << b.max.z << " " << int(b.color.r) << " " << int(b.color.g) << " "
            << int(b.color.b) << "\n";
    for (const auto& sp : s.spheres)
        out << "sphere " << sp.center0.x << " " << sp.center0.y << " " << sp.center0.z << " "
            << sp.velocity.x << " " << sp.velocity.y << " " << sp.velocity.z << " " << sp.radius
            << " " << int(sp.color.r) << " " << int(sp.color.g) << " " << int(sp.color.b) << "\n";
    return out.str();
}

} // namespace stagecast
