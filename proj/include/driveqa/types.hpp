#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "driveqa/geometry.hpp"

namespace driveqa {

// Fixed shapes of the object-level descriptor arrays.
inline constexpr int kRoutePoints = 30;      // route samples ahead of ego
inline constexpr double kRouteSpacing = 2.0; // arc-length spacing between samples, m
inline constexpr int kVehicleRows = 30;
inline constexpr int kPedestrianRows = 20;
inline constexpr int kLidarRays = 16;        // per front corner
inline constexpr double kLidarMaxRange = 30.0;
inline constexpr double kAgentRange = 30.0;  // planar cutoff for agent rows, m
inline constexpr double kMpsToMph = 2.236936;

enum class LightState : std::uint8_t { none = 0, red, amber, red_amber, green };

enum class VehicleClass : std::uint8_t { car = 0, van, truck, bus };

enum class PedestrianType : std::uint8_t { adult = 0, child };

enum class DynamicsType : std::uint8_t { bicycle_kinematic = 0 };

/// Normalized control command. Accelerator and brake can never both be
/// pressed; the constructor rejects it along with out-of-range values.
class ControlTriple {
public:
    ControlTriple() = default;
    ControlTriple(double accelerator, double brake, double steering)
        : accelerator_(accelerator), brake_(brake), steering_(steering) {
        if (!(accelerator >= 0.0 && accelerator <= 1.0))
            throw std::invalid_argument("ControlTriple: accelerator outside [0, 1]");
        if (!(brake >= 0.0 && brake <= 1.0))
            throw std::invalid_argument("ControlTriple: brake outside [0, 1]");
        if (!(steering >= -1.0 && steering <= 1.0))
            throw std::invalid_argument("ControlTriple: steering outside [-1, 1]");
        if (accelerator > 0.0 && brake > 0.0)
            throw std::invalid_argument("ControlTriple: accelerator and brake both pressed");
    }

    double accelerator() const { return accelerator_; }
    double brake() const { return brake_; }
    double steering() const { return steering_; }

    bool operator==(const ControlTriple& o) const = default;

private:
    double accelerator_ = 0.0;
    double brake_ = 0.0;
    double steering_ = 0.0;  // negative = left, positive = right
};

struct RoutePoint {
    std::array<double, 3> position{};  // ego frame, m; +x forward, +y left
    double direction = 0.0;            // route tangent relative to ego heading, rad
    double pitch = 0.0;
    double speed_limit = 0.0;  // m/s
    bool is_junction = false;
    double road_width = 0.0;  // m
    bool has_traffic_light = false;
    LightState traffic_light_state = LightState::none;
    bool is_give_way = false;
    bool is_roundabout = false;

    bool operator==(const RoutePoint&) const = default;
};

struct RouteDescriptors {
    std::array<RoutePoint, kRoutePoints> points{};
    bool operator==(const RouteDescriptors&) const = default;
};

struct VehicleRow {
    bool present = false;
    bool is_dynamic = false;
    double speed = 0.0;                    // m/s
    std::array<double, 3> rel_position{};  // ego frame, m
    double rel_orientation = 0.0;          // rad, relative to ego heading
    double pitch = 0.0;
    std::array<double, 2> size{};  // length, width, m
    int vehicle_class = 0;
    std::array<std::array<double, 2>, 4> corners{};  // ego frame, FL FR RR RL

    bool operator==(const VehicleRow&) const = default;
};

struct VehicleDescriptors {
    std::array<VehicleRow, kVehicleRows> rows{};
    bool operator==(const VehicleDescriptors&) const = default;
};

struct PedestrianRow {
    bool present = false;
    double speed = 0.0;
    std::array<double, 3> rel_position{};
    double rel_orientation = 0.0;
    int ped_type = 0;
    bool crossing_intent = false;

    bool operator==(const PedestrianRow&) const = default;
};

struct PedestrianDescriptors {
    std::array<PedestrianRow, kPedestrianRows> rows{};
    bool operator==(const PedestrianDescriptors&) const = default;
};

struct EgoDescriptor {
    double speed = 0.0;         // m/s, reverse not modeled
    double acceleration = 0.0;  // m/s^2, signed
    double steering_angle = 0.0;  // normalized [-1, 1]
    double pitch = 0.0;
    std::array<double, 2> size{};  // length, width
    int vehicle_class = 0;
    int dynamics_type = 0;
    ControlTriple previous_action;
    std::array<double, kLidarRays> lidar_front_left{};
    std::array<double, kLidarRays> lidar_front_right{};

    bool operator==(const EgoDescriptor&) const = default;
};

struct ObservationVectors {
    RouteDescriptors route;
    VehicleDescriptors vehicles;
    PedestrianDescriptors pedestrians;
    EgoDescriptor ego;

    bool operator==(const ObservationVectors&) const = default;
};

/// Builds a vehicle row whose corners are derived from (position,
/// orientation, size) with the canonical corner function.
VehicleRow make_vehicle_row(bool is_dynamic, double speed, const Vec2& rel_position,
                            double rel_orientation, double length, double width,
                            int vehicle_class);

const char* to_string(LightState s);

}  // namespace driveqa
