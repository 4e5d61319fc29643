#include "driveqa/validation.hpp"

#include <cmath>
#include <string>

namespace driveqa {
namespace {

constexpr double kCornerTolerance = 1e-6;
constexpr double kSpacingTolerance = 1e-6;

std::string idx(const char* base, int i, const char* field) {
    return std::string(base) + ".rows[" + std::to_string(i) + "]." + field;
}

bool is_zero(double v) { return v == 0.0; }

double planar_distance(const std::array<double, 3>& p) { return std::hypot(p[0], p[1]); }

void check_route(const RouteDescriptors& route, std::vector<std::string>& out) {
    for (int i = 0; i < kRoutePoints; ++i) {
        const RoutePoint& p = route.points[i];
        const std::string path = "route.points[" + std::to_string(i) + "]";
        if (!(p.road_width > 0.0)) out.push_back(path + ".road_width: must be > 0");
        if (!(p.speed_limit >= 0.0)) out.push_back(path + ".speed_limit: must be >= 0");
        const bool state_none = p.traffic_light_state == LightState::none;
        if (p.has_traffic_light == state_none)
            out.push_back(path + ".traffic_light_state: must be none iff has_traffic_light is false");
    }
    // Ordering by increasing arc length, checked through its observable
    // consequence: successive samples advance and their chord never exceeds
    // the arc spacing.
    for (int i = 0; i + 1 < kRoutePoints; ++i) {
        const auto& a = route.points[i].position;
        const auto& b = route.points[i + 1].position;
        const double chord = std::hypot(b[0] - a[0], b[1] - a[1]);
        const std::string path = "route.points[" + std::to_string(i + 1) + "]";
        if (chord <= 0.0)
            out.push_back(path + ".position: route samples must strictly advance");
        else if (chord > kRouteSpacing + kSpacingTolerance)
            out.push_back(path + ".position: sample chord exceeds the arc-length spacing");
    }
}

void check_vehicles(const VehicleDescriptors& vehicles, std::vector<std::string>& out) {
    bool seen_absent = false;
    double prev_dist = -1.0;
    for (int i = 0; i < kVehicleRows; ++i) {
        const VehicleRow& r = vehicles.rows[i];
        if (!r.present) {
            seen_absent = true;
            const bool all_zero = !r.is_dynamic && is_zero(r.speed) &&
                                  is_zero(r.rel_position[0]) && is_zero(r.rel_position[1]) &&
                                  is_zero(r.rel_position[2]) && is_zero(r.rel_orientation) &&
                                  is_zero(r.pitch) && is_zero(r.size[0]) && is_zero(r.size[1]) &&
                                  r.vehicle_class == 0 && is_zero(r.corners[0][0]) &&
                                  is_zero(r.corners[0][1]) && is_zero(r.corners[1][0]) &&
                                  is_zero(r.corners[1][1]) && is_zero(r.corners[2][0]) &&
                                  is_zero(r.corners[2][1]) && is_zero(r.corners[3][0]) &&
                                  is_zero(r.corners[3][1]);
            if (!all_zero)
                out.push_back(idx("vehicles", i, "present") +
                              ": absent row must be fully zeroed");
            continue;
        }
        if (seen_absent)
            out.push_back(idx("vehicles", i, "present") +
                          ": present rows must be packed at the front");
        if (!(r.speed >= 0.0)) out.push_back(idx("vehicles", i, "speed") + ": must be >= 0");
        const double dist = planar_distance(r.rel_position);
        if (dist > kAgentRange)
            out.push_back(idx("vehicles", i, "rel_position") + ": beyond the " +
                          std::to_string(int(kAgentRange)) + " m agent range");
        if (dist < prev_dist)
            out.push_back(idx("vehicles", i, "rel_position") +
                          ": rows must be sorted by ascending planar distance");
        prev_dist = dist;
        const auto expect = rectangle_corners({r.rel_position[0], r.rel_position[1]},
                                              r.rel_orientation, r.size[0], r.size[1]);
        double err = 0.0;
        for (int c = 0; c < 4; ++c)
            err = std::max(err, std::hypot(expect[c].x - r.corners[c][0],
                                           expect[c].y - r.corners[c][1]));
        if (err > kCornerTolerance)
            out.push_back(idx("vehicles", i, "corners") +
                          ": corners do not match position/orientation/size");
    }
}

void check_pedestrians(const PedestrianDescriptors& peds, std::vector<std::string>& out) {
    bool seen_absent = false;
    double prev_dist = -1.0;
    for (int i = 0; i < kPedestrianRows; ++i) {
        const PedestrianRow& r = peds.rows[i];
        if (!r.present) {
            seen_absent = true;
            const bool all_zero = is_zero(r.speed) && is_zero(r.rel_position[0]) &&
                                  is_zero(r.rel_position[1]) && is_zero(r.rel_position[2]) &&
                                  is_zero(r.rel_orientation) && r.ped_type == 0 &&
                                  !r.crossing_intent;
            if (!all_zero)
                out.push_back(idx("pedestrians", i, "present") +
                              ": absent row must be fully zeroed");
            continue;
        }
        if (seen_absent)
            out.push_back(idx("pedestrians", i, "present") +
                          ": present rows must be packed at the front");
        if (!(r.speed >= 0.0)) out.push_back(idx("pedestrians", i, "speed") + ": must be >= 0");
        const double dist = planar_distance(r.rel_position);
        if (dist > kAgentRange)
            out.push_back(idx("pedestrians", i, "rel_position") + ": beyond the " +
                          std::to_string(int(kAgentRange)) + " m agent range");
        if (dist < prev_dist)
            out.push_back(idx("pedestrians", i, "rel_position") +
                          ": rows must be sorted by ascending planar distance");
        prev_dist = dist;
    }
}

void check_ego(const EgoDescriptor& ego, std::vector<std::string>& out) {
    if (!(ego.speed >= 0.0)) out.push_back("ego.speed: must be >= 0 (reverse not modeled)");
    if (!(ego.steering_angle >= -1.0 && ego.steering_angle <= 1.0))
        out.push_back("ego.steering_angle: must be within [-1, 1]");
    for (int i = 0; i < kLidarRays; ++i) {
        if (!(ego.lidar_front_left[i] >= 0.0 && ego.lidar_front_left[i] <= kLidarMaxRange))
            out.push_back("ego.lidar_front_left[" + std::to_string(i) + "]: outside [0, 30]");
    }
    for (int i = 0; i < kLidarRays; ++i) {
        if (!(ego.lidar_front_right[i] >= 0.0 && ego.lidar_front_right[i] <= kLidarMaxRange))
            out.push_back("ego.lidar_front_right[" + std::to_string(i) + "]: outside [0, 30]");
    }
}

}  // namespace

std::vector<std::string> validate_observation(const ObservationVectors& obs) {
    std::vector<std::string> out;
    check_route(obs.route, out);
    check_vehicles(obs.vehicles, out);
    check_pedestrians(obs.pedestrians, out);
    check_ego(obs.ego, out);
    return out;
}

}  // namespace driveqa
