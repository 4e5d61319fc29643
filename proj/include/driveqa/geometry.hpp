#pragma once

#include <array>
#include <cmath>

namespace driveqa {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const = default;

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

/// World-frame pose. heading is CCW from +x, normalized to (-pi, pi].
struct Pose {
    Vec2 position;
    double heading = 0.0;
    bool operator==(const Pose& o) const = default;
};

/// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

inline Vec2 heading_vector(double heading) { return {std::cos(heading), std::sin(heading)}; }

/// Unit vector pointing 90 degrees to the left of `heading`.
inline Vec2 left_normal(double heading) { return {-std::sin(heading), std::cos(heading)}; }

/// Expresses a world point in the frame where `ego` sits at the origin with
/// +x along its heading and +y to its left.
inline Vec2 to_ego_frame(const Vec2& world_point, const Pose& ego) {
    const Vec2 d = world_point - ego.position;
    const double c = std::cos(ego.heading);
    const double s = std::sin(ego.heading);
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

/// Inverse of to_ego_frame.
inline Vec2 from_ego_frame(const Vec2& ego_point, const Pose& ego) {
    const double c = std::cos(ego.heading);
    const double s = std::sin(ego.heading);
    return {ego.position.x + c * ego_point.x - s * ego_point.y,
            ego.position.y + s * ego_point.x + c * ego_point.y};
}

/// Corners of an oriented rectangle, in the order front-left, front-right,
/// rear-right, rear-left. Shared by observation building, its validator and
/// the collision / lidar code so stored corners always reconstruct exactly.
inline std::array<Vec2, 4> rectangle_corners(const Vec2& center, double heading, double length,
                                             double width) {
    const Vec2 fwd = heading_vector(heading);
    const Vec2 left = left_normal(heading);
    const Vec2 f = fwd * (0.5 * length);
    const Vec2 l = left * (0.5 * width);
    return {center + f + l, center + f - l, center - f - l, center - f + l};
}

/// Distance from point p to segment [a, b].
inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 <= 0.0) return (p - a).norm();
    double t = (p - a).dot(ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return (p - (a + ab * t)).norm();
}

}  // namespace driveqa
