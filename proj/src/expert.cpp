#include "driveqa/expert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driveqa::expert {
namespace {

constexpr double kCollisionCourseDistance = 3.0;  // CPA miss distance, m
constexpr double kCollisionCourseHorizon = 5.0;   // CPA lookahead, s

double planar(const std::array<double, 3>& p) { return std::hypot(p[0], p[1]); }

/// True when the relative motion of an agent brings it within a few meters
/// of the ego within the lookahead horizon.
bool on_collision_course(const std::array<double, 3>& rel_pos, double rel_orientation,
                         double agent_speed, double ego_speed) {
    const Vec2 p{rel_pos[0], rel_pos[1]};
    const Vec2 v{agent_speed * std::cos(rel_orientation) - ego_speed,
                 agent_speed * std::sin(rel_orientation)};
    const double vv = v.dot(v);
    if (vv < 1e-9) return p.norm() < kCollisionCourseDistance;
    double t = -p.dot(v) / vv;
    t = std::clamp(t, 0.0, kCollisionCourseHorizon);
    return (p + v * t).norm() < kCollisionCourseDistance;
}

}  // namespace

void RewardParams::validate() const {
    if (!(beta1 > 0 && beta2 > 0 && beta3 > 0 && beta4 > 0 && v_s > 0 && phi_s > 0 && s1 > 0 &&
          s2 > 0))
        throw std::invalid_argument("RewardParams: all weights and scales must be positive");
}

double DesiredSpeedParts::minimum() const {
    return std::min({speed_limit, junction, lead_vehicle, pedestrian, traffic_light,
                     static_vehicle});
}

std::pair<double, double> split_longitudinal(double x, double s1, double s2) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("split_longitudinal: x outside [0, 1]");
    return {s1 * std::max(0.0, 2.0 * x - 1.0), s2 * std::max(0.0, 1.0 - 2.0 * x)};
}

DesiredSpeedParts desired_speed_parts(const sim::World& world, const ExpertConfig& cfg) {
    DesiredSpeedParts parts;
    const double ego_s = world.ego.route_s;
    const auto& route = world.route;
    const double limit = route.annotation_at(ego_s).speed_limit;

    parts.speed_limit = limit;

    // Junction cap: active inside a junction and within d_junction before one.
    {
        const int start = std::max(0, static_cast<int>(std::floor(ego_s)));
        const int end = std::min(static_cast<int>(route.vertices.size()) - 1,
                                 static_cast<int>(std::ceil(ego_s + cfg.d_junction)));
        for (int i = start; i <= end; ++i) {
            if (route.vertices[i].is_junction) {
                parts.junction = cfg.v_junction;
                break;
            }
        }
    }

    // Lead vehicle: nearest dynamic vehicle ahead on the ego route.
    {
        double lead_s = std::numeric_limits<double>::infinity();
        const sim::SimVehicle* lead = nullptr;
        for (const auto& v : world.vehicles) {
            if (!v.is_dynamic || v.path != sim::PathId::route) continue;
            if (v.path_s > ego_s && v.path_s < lead_s && v.path_s - ego_s <= cfg.d_lead) {
                lead_s = v.path_s;
                lead = &v;
            }
        }
        if (lead != nullptr) {
            const double gap = lead_s - ego_s - 0.5 * (lead->length + sim::kEgoLength);
            if (gap <= cfg.d_standstill) {
                parts.lead_vehicle = 0.0;
            } else {
                const double ratio = gap / (cfg.t_gap * std::max(world.ego.speed, 0.5));
                parts.lead_vehicle = lead->speed * std::clamp(ratio, 0.0, cfg.lead_ratio_max);
            }
        }
    }

    // Crossing-intent pedestrian near the route ahead.
    {
        for (const auto& p : world.pedestrians) {
            if (!p.crossing_intent) continue;
            const double s = route.project(p.pose.position, ego_s + 0.5 * cfg.ped_ahead,
                                           0.5 * cfg.ped_ahead + 2.0, 0.5 * cfg.ped_ahead + 2.0);
            if (s < ego_s - 2.0 || s > ego_s + cfg.ped_ahead) continue;
            const double lateral = (p.pose.position - route.position_at(s)).norm();
            if (lateral <= cfg.d_ped) {
                parts.pedestrian = cfg.v_ped;
                break;
            }
        }
    }

    // Traffic light: linear ramp to zero at the stop line unless green.
    {
        for (const auto& tl : world.traffic_lights) {
            if (tl.state == LightState::green) continue;
            const double d = tl.stop_line_s - ego_s;
            if (d < 0.0) continue;  // already past the line
            const double cap = limit * std::clamp(d / cfg.ramp_length, 0.0, 1.0);
            parts.traffic_light = std::min(parts.traffic_light, cap);
        }
    }

    // Static (parked) vehicle squeezing the lane ahead.
    {
        for (const auto& v : world.vehicles) {
            if (v.is_dynamic) continue;
            const double s = route.project(v.pose.position, ego_s + 0.5 * cfg.d_static_ahead,
                                           0.5 * cfg.d_static_ahead + 2.0,
                                           0.5 * cfg.d_static_ahead + 4.0);
            if (s < ego_s - 1.0 || s > ego_s + cfg.d_static_ahead) continue;
            const double lateral = (v.pose.position - route.position_at(s)).norm();
            if (lateral <= cfg.c_static) {
                parts.static_vehicle = cfg.v_static;
                break;
            }
        }
    }

    return parts;
}

double desired_speed(const sim::World& world, const ExpertConfig& cfg) {
    return desired_speed_parts(world, cfg).minimum();
}

double failed_to_stop(const sim::World& world, const ExpertConfig& cfg) {
    const double v = world.ego.speed;
    if (v <= 2.0) return 0.0;
    for (const auto& gw : world.give_ways) {
        if ((gw.position - world.ego.pose.position).norm() <= cfg.d_giveway) return -v;
    }
    return 0.0;
}

namespace {

/// Distance to the nearest lane centerline and the unsigned angle between
/// the ego heading and that lane's tangent.
std::pair<double, double> lane_deviation(const sim::World& world) {
    double best = std::numeric_limits<double>::infinity();
    double tangent = world.ego.pose.heading;
    for (const auto& lane : world.lane_centerlines) {
        for (std::size_t i = 0; i + 1 < lane.size(); ++i) {
            const double d = point_segment_distance(world.ego.pose.position, lane[i], lane[i + 1]);
            if (d < best) {
                best = d;
                const Vec2 seg = lane[i + 1] - lane[i];
                tangent = std::atan2(seg.y, seg.x);
            }
        }
    }
    if (!std::isfinite(best)) return {0.0, 0.0};
    const double angle = std::abs(normalize_angle(world.ego.pose.heading - tangent));
    return {best, angle};
}

}  // namespace

RewardBreakdown reward(const sim::World& world, double phi_t, double phi_prev,
                       const RewardParams& params, const ExpertConfig& cfg) {
    params.validate();
    const auto [d_lateral, alpha] = lane_deviation(world);
    const double v = world.ego.speed;
    const double v_des = desired_speed(world, cfg);

    RewardBreakdown b;
    b.desired_speed_term = params.beta1 * (1.0 - std::abs(v - v_des) / params.v_s);
    b.lane_distance_term = params.beta2 * d_lateral;
    b.lane_angle_term = params.beta3 * alpha;
    const double dphi = phi_t - phi_prev;
    b.erratic_steering_term = params.beta4 * (dphi * dphi) / params.phi_s;
    b.stopping_penalty = failed_to_stop(world, cfg);
    b.total = b.desired_speed_term - b.lane_distance_term - b.lane_angle_term -
              b.erratic_steering_term + b.stopping_penalty;
    return b;
}

std::vector<std::pair<AgentRef, double>> attention_proxy(const ObservationVectors& obs,
                                                         const ExpertConfig& cfg) {
    std::vector<std::pair<AgentRef, double>> weights;
    double sum = 0.0;
    for (int i = 0; i < kVehicleRows; ++i) {
        const VehicleRow& r = obs.vehicles.rows[i];
        if (!r.present) break;  // rows are packed
        const double d = planar(r.rel_position);
        const bool danger =
            on_collision_course(r.rel_position, r.rel_orientation,
                                r.is_dynamic ? r.speed : 0.0, obs.ego.speed);
        const double w = std::exp(-d / cfg.d_att) * (danger ? 2.0 : 1.0);
        weights.push_back({{AgentRefKind::vehicle, i}, w});
        sum += w;
    }
    for (int i = 0; i < kPedestrianRows; ++i) {
        const PedestrianRow& r = obs.pedestrians.rows[i];
        if (!r.present) break;
        const double d = planar(r.rel_position);
        const bool danger =
            on_collision_course(r.rel_position, r.rel_orientation, r.speed, obs.ego.speed);
        const double w = std::exp(-d / cfg.d_att) * (danger ? 2.0 : 1.0);
        weights.push_back({{AgentRefKind::pedestrian, i}, w});
        sum += w;
    }
    if (weights.empty()) return weights;
    for (auto& [ref, w] : weights) w /= sum;
    return weights;
}

ExpertAction expert_act(const sim::World& world, const ObservationVectors& obs,
                        const RewardParams& params, const ExpertConfig& cfg) {
    params.validate();
    const double v_des = desired_speed(world, cfg);
    const double x =
        std::clamp(0.5 + cfg.k_v * (v_des - world.ego.speed) / params.v_s, 0.0, 1.0);
    auto [accel, brake] = split_longitudinal(x, params.s1, params.s2);
    accel = std::clamp(accel, 0.0, 1.0);
    brake = std::clamp(brake, 0.0, 1.0);

    // Pure pursuit toward a fixed-lookahead route point.
    const Vec2 target = to_ego_frame(
        world.route.position_at(world.ego.route_s + cfg.lookahead), world.ego.pose);
    const double curvature_ccw = 2.0 * target.y / (cfg.lookahead * cfg.lookahead);
    const double wheel_ccw = std::atan(curvature_ccw * sim::kWheelbase);
    const double steering = std::clamp(-wheel_ccw / sim::kMaxWheelAngle, -1.0, 1.0);

    ExpertAction action;
    action.controls = ControlTriple(accel, brake, steering);
    action.attention = attention_proxy(obs, cfg);
    return action;
}

ExpertAction expert_act(const sim::World& world, const RewardParams& params,
                        const ExpertConfig& cfg) {
    return expert_act(world, sim::observe(world), params, cfg);
}

void to_json(njson& j, const ExpertAction& a) {
    njson att = njson::array();
    for (const auto& [ref, w] : a.attention) {
        att.push_back(njson{{"kind", ref.kind == AgentRefKind::vehicle ? "vehicle" : "pedestrian"},
                            {"row", ref.row},
                            {"weight", w}});
    }
    j = njson{{"controls", a.controls}, {"attention", att}};
}

void from_json(const njson& j, ExpertAction& a) {
    j.at("controls").get_to(a.controls);
    a.attention.clear();
    for (const auto& item : j.at("attention")) {
        AgentRef ref;
        ref.kind = item.at("kind").get<std::string>() == "vehicle" ? AgentRefKind::vehicle
                                                                   : AgentRefKind::pedestrian;
        ref.row = item.at("row").get<int>();
        a.attention.push_back({ref, item.at("weight").get<double>()});
    }
}

}  // namespace driveqa::expert
