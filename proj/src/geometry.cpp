#include "stagecast/geometry.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stagecast {

Mat3 Mat3::multiply(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k)
                s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat3 Mat3::transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.at(i, j) = at(j, i);
    return r;
}

double Mat3::determinant() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Mat3 Mat3::axis_rotation(int axis, double a) {
    double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    switch (axis) {
    case 0: r.m = {1, 0, 0, 0, c, -s, 0, s, c}; break;
    case 1: r.m = {c, 0, s, 0, 1, 0, -s, 0, c}; break;
    case 2: r.m = {c, -s, 0, s, c, 0, 0, 0, 1}; break;
    default: throw InvalidInput("axis_rotation: axis must be 0, 1 or 2");
    }
    return r;
}

Pose Pose::compose(const Pose& inner) const {
    return {rotation.multiply(inner.rotation), rotation.apply(inner.translation) + translation};
}

Pose Pose::inverse() const {
    Mat3 rt = rotation.transposed();
    return {rt, rt.apply(translation) * -1.0};
}

bool Pose::orthonormal(double tol) const {
    Mat3 rtr = rotation.transposed().multiply(rotation);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(rtr.at(i, j) - want) > tol)
                return false;
        }
    return std::abs(rotation.determinant() - 1.0) <= tol;
}

void Intrinsics::validate() const {
    if (!(fx > 0) || !(fy > 0))
        throw ConfigError("Intrinsics: focal lengths must be positive");
    if (width <= 0 || height <= 0)
        throw ConfigError("Intrinsics: raster size must be positive");
    if (!(cx >= 0 && cx < width) || !(cy >= 0 && cy < height))
        throw ConfigError("Intrinsics: principal point must lie inside the raster");
}

void UnitCalibration::validate() const {
    intrinsics.validate();
    if (!pose.orthonormal())
        throw ConfigError("UnitCalibration: rotation is not orthonormal");
    double n = optical_axis().norm();
    if (std::abs(n - 1.0) > 1e-9)
        throw ConfigError("UnitCalibration: optical axis is not unit length");
}

Projection project_point(const Vec3& p_world, const UnitCalibration& cal) {
    if (!p_world.finite())
        throw InvalidInput("project_point: non-finite input");
    Vec3 pc = cal.pose.to_local(p_world);
    Projection out;
    out.z = pc.z;
    if (pc.z <= 0)
        return out; // behind camera, u/v meaningless
    const Intrinsics& k = cal.intrinsics;
    out.u = k.fx * pc.x / pc.z + k.cx;
    out.v = k.fy * pc.y / pc.z + k.cy;
    out.in_frustum = out.u >= 0 && out.u < k.width && out.v >= 0 && out.v < k.height;
    return out;
}

Vec3 back_project(double u, double v, double z, const UnitCalibration& cal) {
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(z))
        throw InvalidInput("back_project: non-finite input");
    if (z <= 0)
        throw InvalidInput("back_project: depth must be positive");
    const Intrinsics& k = cal.intrinsics;
    if (u < 0 || u >= k.width || v < 0 || v >= k.height)
        throw InvalidInput("back_project: pixel outside raster");
    Vec3 local{(u - k.cx) / k.fx * z, (v - k.cy) / k.fy * z, z};
    return cal.pose.to_world(local);
}

namespace {

std::vector<double> read_numbers(std::istringstream& in, size_t n, const char* what) {
    std::vector<double> out;
    out.reserve(n);
    double v;
    while (out.size() < n && in >> v)
        out.push_back(v);
    if (out.size() != n)
        throw ParseError(std::string("calibration: expected ") + std::to_string(n) + " values for " + what);
    return out;
}

} // namespace

std::vector<UnitCalibration> parse_calibrations(const std::string& text) {
    // Strip comment lines, then tokenize.
    std::string clean;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        clean += line;
        clean += '\n';
    }

    std::istringstream in(clean);
    std::vector<UnitCalibration> cals;
    std::string tok;
    while (in >> tok) {
        if (tok != "unit")
            throw ParseError("calibration: expected 'unit', got '" + tok + "'");
        UnitCalibration cal;
        if (!(in >> cal.unit_id))
            throw ParseError("calibration: missing unit id");
        auto r = read_numbers(in, 9, "rotation");
        for (int i = 0; i < 9; ++i)
            cal.pose.rotation.m[i] = r[i];
        auto t = read_numbers(in, 3, "translation");
        cal.pose.translation = {t[0], t[1], t[2]};
        auto k = read_numbers(in, 6, "intrinsics");
        cal.intrinsics.fx = k[0];
        cal.intrinsics.fy = k[1];
        cal.intrinsics.cx = k[2];
        cal.intrinsics.cy = k[3];
        cal.intrinsics.width = static_cast<int>(k[4]);
        cal.intrinsics.height = static_cast<int>(k[5]);
        cal.validate();
        cals.push_back(cal);
    }
    if (cals.empty())
        throw ParseError("calibration: no units found");
    return cals;
}

std::string format_calibrations(const std::vector<UnitCalibration>& cals) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& cal : cals) {
        out << "unit " << cal.unit_id << "\n";
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c)
                out << cal.pose.rotation.at(r, c) << (c == 2 ? "\n" : " ");
        }
        const Vec3& t = cal.pose.translation;
        out << t.x << " " << t.y << " " << t.z << "\n";
        const Intrinsics& k = cal.intrinsics;
        out << k.fx << " " << k.fy << " " << k.cx << " " << k.cy << " " << k.width << " "
            << k.height << "\n";
    }
    return out.str();
}

std::vector<UnitCalibration> load_calibrations(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open calibration file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_calibrations(buf.str());
}

void save_calibrations(const std::string& path, const std::vector<UnitCalibration>& cals) {
    std::ofstream f(path);
    if (!f)
        throw IoError("cannot write calibration file: " + path);
    f << format_calibrations(cals);
}

} // namespace stagecast
