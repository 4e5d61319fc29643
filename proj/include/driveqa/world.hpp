#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driveqa/rng.hpp"
#include "driveqa/types.hpp"

namespace driveqa::sim {

inline constexpr int kArchetypeCount = 15;
inline constexpr double kMaxAccel = 3.0;      // m/s^2 at full accelerator
inline constexpr double kMaxBrake = 6.0;      // m/s^2 at full brake
inline constexpr double kMaxWheelAngle = 0.5; // rad at |steering| = 1
inline constexpr double kWheelbase = 2.8;     // m
inline constexpr double kEgoLength = 4.5;
inline constexpr double kEgoWidth = 1.8;
inline constexpr double kLaneOffset = 3.5;    // m between lane centerlines
inline constexpr double kRoadWidth = 7.0;     // two-lane carriageway
inline constexpr double kWalkSpeed = 1.4;     // crossing pedestrians, m/s

// UK-style signal cycle: red -> red_amber -> green -> amber -> red.
inline constexpr double kRedSeconds = 8.0;
inline constexpr double kRedAmberSeconds = 2.0;
inline constexpr double kGreenSeconds = 8.0;
inline constexpr double kAmberSeconds = 3.0;

struct TrafficLight {
    Vec2 position;       // stop-line center on the ego route
    LightState state = LightState::red;
    double phase_timer = 0.0;  // seconds into the current phase
    double stop_line_s = 0.0;  // arc length along the ego route

    bool operator==(const TrafficLight&) const = default;
};

struct GiveWay {
    Vec2 position;
    double s = 0.0;
    bool operator==(const GiveWay&) const = default;
};

/// One vertex of the annotated ego route, spaced 1 m apart.
struct RouteVertex {
    Vec2 position;
    double heading = 0.0;
    double speed_limit = 0.0;
    double road_width = kRoadWidth;
    bool is_junction = false;
    bool is_give_way = false;
    bool is_roundabout = false;

    bool operator==(const RouteVertex&) const = default;
};

struct AnnotatedRoute {
    std::vector<RouteVertex> vertices;  // 1 m spacing

    double length() const { return vertices.empty() ? 0.0 : double(vertices.size() - 1); }
    Vec2 position_at(double s) const;   // extrapolates straight past both ends
    double heading_at(double s) const;
    const RouteVertex& annotation_at(double s) const;  // nearest vertex
    /// Arc length of the closest route point, searched inside
    /// [hint_s - back, hint_s + fwd] so loops (roundabouts) stay monotone.
    double project(const Vec2& p, double hint_s, double back = 3.0, double fwd = 12.0) const;

    bool operator==(const AnnotatedRoute&) const = default;
};

enum class PathId : std::uint8_t { route = 0, oncoming, none };

struct SimVehicle {
    Pose pose;
    double speed = 0.0;
    double cruise_speed = 0.0;  // free-flow target on its lane
    bool is_dynamic = false;
    int vehicle_class = 0;
    double length = 4.5;
    double width = 1.8;
    PathId path = PathId::none;
    double path_s = 0.0;

    bool operator==(const SimVehicle&) const = default;
};

struct SimPedestrian {
    Pose pose;
    double speed = 0.0;
    int ped_type = 0;
    bool crossing_intent = false;
    Vec2 cross_from;
    Vec2 cross_to;
    double cross_progress = 0.0;
    double cross_start_time = 0.0;  // world clock at which walking begins

    bool operator==(const SimPedestrian&) const = default;
};

struct EgoState {
    Pose pose;
    double speed = 0.0;
    double steering = 0.0;      // last steering command
    double acceleration = 0.0;  // last applied longitudinal accel, signed
    ControlTriple previous_action;
    double route_s = 0.0;  // tracked arc-length progress along the route

    bool operator==(const EgoState&) const = default;
};

struct World {
    std::uint64_t seed = 0;
    int archetype = 0;
    double clock = 0.0;
    AnnotatedRoute route;
    std::vector<std::vector<Vec2>> lane_centerlines;  // route, oncoming, ...
    std::vector<Vec2> oncoming_lane;                  // travel direction of oncoming traffic
    std::vector<TrafficLight> traffic_lights;
    std::vector<GiveWay> give_ways;
    std::vector<SimVehicle> vehicles;
    std::vector<SimPedestrian> pedestrians;
    EgoState ego;
    bool collision = false;

    bool operator==(const World&) const = default;
};

struct ArchetypeInfo {
    int id;
    const char* name;
    const char* summary;
};

/// The 15 procedurally generated scenario families. Index 3 is the
/// signalized junction; index 10 pins a red light 50 m ahead of the ego.
const std::vector<ArchetypeInfo>& archetype_table();

/// Deterministic world construction from (seed, archetype).
/// Throws std::invalid_argument when archetype is outside [0, 15).
World generate_world(std::uint64_t seed, int archetype);

/// Advances a signal by dt seconds, wrapping across any number of phases.
TrafficLight advance_traffic_light(const TrafficLight& tl, double dt);

/// One simulation tick. Requires 0 < dt <= 0.1.
World step_world(const World& world, const ControlTriple& controls, double dt);

/// Indices of positions within `range` of the ego, nearest first; ties keep
/// the original order.
std::vector<std::size_t> nearby_filter(const std::vector<Vec2>& positions, const Pose& ego,
                                       double range);

/// Extracts the fixed-shape descriptor arrays from ground truth.
ObservationVectors observe(const World& world);

}  // namespace driveqa::sim
