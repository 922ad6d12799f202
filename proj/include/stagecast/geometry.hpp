#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "stagecast/error.hpp"

namespace stagecast {

// Conventions, fixed once for the whole project:
//   world frame:  right-handed, meters, z up on stage
//   camera frame: z forward, x right, y down
//   depth:        camera-frame z, not ray length

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

struct Mat3 {
    // row-major
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double at(int r, int c) const { return m[r * 3 + c]; }
    double& at(int r, int c) { return m[r * 3 + c]; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    // R^T v -- inverse rotation for orthonormal R
    Vec3 apply_transposed(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
    Mat3 multiply(const Mat3& o) const;
    Mat3 transposed() const;
    double determinant() const;

    Vec3 column(int c) const { return {m[c], m[3 + c], m[6 + c]}; }

    // Rotation by angle (radians) about a coordinate axis, 0=x 1=y 2=z.
    static Mat3 axis_rotation(int axis, double angle_rad);
};

// Rigid transform mapping unit-local coordinates to stage (world) coordinates.
struct Pose {
    Mat3 rotation;
    Vec3 translation;

    Vec3 to_world(const Vec3& local) const { return rotation.apply(local) + translation; }
    Vec3 to_local(const Vec3& world) const { return rotation.apply_transposed(world - translation); }

    Pose compose(const Pose& inner) const; // this ∘ inner
    Pose inverse() const;

    // R^T R = I and det(R) = +1, both within tol.
    bool orthonormal(double tol = 1e-9) const;
};

struct Intrinsics {
    double fx = 0, fy = 0;
    double cx = 0, cy = 0;
    int width = 0, height = 0;

    void validate() const; // throws ConfigError on violated invariants
};

struct UnitCalibration {
    int unit_id = 0;
    Intrinsics intrinsics;
    Pose pose;

    // The unit's optical axis in world coordinates: camera +z mapped by the pose.
    Vec3 optical_axis() const { return pose.rotation.column(2); }

    void validate() const;
};

struct Projection {
    double u = 0, v = 0; // pixels
    double z = 0;        // camera-frame depth, meters
    bool in_frustum = false;
};

// World point -> pixel + camera depth. in_frustum is false when z <= 0 or the
// pixel lands outside the raster. Throws InvalidInput on non-finite input.
Projection project_point(const Vec3& p_world, const UnitCalibration& cal);

// Pixel + camera depth -> world point. Requires z > 0 and (u,v) inside the
// raster; throws InvalidInput otherwise.
Vec3 back_project(double u, double v, double z, const UnitCalibration& cal);

// Calibration file: flat text, one unit per block:
//   unit <id>
//   9 rotation entries, row-major
//   3 translation entries
//   fx fy cx cy width height
std::vector<UnitCalibration> load_calibrations(const std::string& path);
void save_calibrations(const std::string& path, const std::vector<UnitCalibration>& cals);
std::vector<UnitCalibration> parse_calibrations(const std::string& text);
std::string format_calibrations(const std::vector<UnitCalibration>& cals);

} // namespace stagecast
