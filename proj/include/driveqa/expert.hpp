#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "driveqa/json.hpp"
#include "driveqa/world.hpp"

namespace driveqa::expert {

/// Weights and scales of the training reward.
struct RewardParams {
    double beta1 = 1.0;
    double beta2 = 0.5;
    double beta3 = 0.5;
    double beta4 = 0.2;
    double v_s = 15.0;   // speed scale, m/s
    double phi_s = 1.0;  // steering scale
    double s1 = 1.0;     // accelerator output scale
    double s2 = 1.0;     // brake output scale

    void validate() const;  // all strictly positive
};

/// Tunables of the heuristic driver. Every key is exposed in the CLI config
/// under expert.*.
struct ExpertConfig {
    double v_junction = 5.0;    // cap near junctions, m/s
    double d_junction = 15.0;   // junction proximity, m
    double v_ped = 3.0;         // cap near crossing pedestrians, m/s
    double d_ped = 12.0;        // pedestrian-to-route clearance, m
    double ped_ahead = 30.0;    // route window ahead scanned for pedestrians, m
    double t_gap = 2.0;         // following time gap, s
    double d_lead = 40.0;       // lead-vehicle search window, m
    double d_standstill = 2.0;  // bumper gap forcing a stop, m
    double lead_ratio_max = 2.0;
    double ramp_length = 20.0;  // red-light deceleration ramp, m
    double v_static = 4.0;      // cap squeezing past parked vehicles, m/s
    double c_static = 2.5;      // lateral clearance that counts as a squeeze, m
    double d_static_ahead = 15.0;
    double d_att = 10.0;        // attention distance scale, m
    double d_giveway = 5.0;     // "close to a give way sign", m
    double k_v = 3.0;           // longitudinal proportional gain
    double lookahead = 8.0;     // pure-pursuit lookahead, m
};

/// One situational speed heuristic each; inactive heuristics sit at +inf so
/// the final desired speed is simply the minimum of the six.
struct DesiredSpeedParts {
    double speed_limit = std::numeric_limits<double>::infinity();
    double junction = std::numeric_limits<double>::infinity();
    double lead_vehicle = std::numeric_limits<double>::infinity();
    double pedestrian = std::numeric_limits<double>::infinity();
    double traffic_light = std::numeric_limits<double>::infinity();
    double static_vehicle = std::numeric_limits<double>::infinity();

    double minimum() const;
};

struct RewardBreakdown {
    double desired_speed_term = 0.0;
    double lane_distance_term = 0.0;
    double lane_angle_term = 0.0;
    double erratic_steering_term = 0.0;
    double stopping_penalty = 0.0;
    double total = 0.0;  // desired - lane_dist - lane_angle - erratic + stopping
};

enum class AgentRefKind : std::uint8_t { vehicle = 0, pedestrian };

struct AgentRef {
    AgentRefKind kind = AgentRefKind::vehicle;
    int row = 0;
    bool operator==(const AgentRef&) const = default;
};

struct ExpertAction {
    ControlTriple controls;
    std::vector<std::pair<AgentRef, double>> attention;  // weights sum to 1

    bool operator==(const ExpertAction&) const = default;
};

/// Splits a longitudinal command x in [0, 1] into pedal values:
/// accelerator = s1 * max(0, 2x - 1), brake = s2 * max(0, 1 - 2x).
std::pair<double, double> split_longitudinal(double x, double s1, double s2);

DesiredSpeedParts desired_speed_parts(const sim::World& world, const ExpertConfig& cfg = {});

/// Minimum over the active situational heuristics.
double desired_speed(const sim::World& world, const ExpertConfig& cfg = {});

/// -v when the ego is within d_giveway of a give-way sign at v > 2 m/s.
double failed_to_stop(const sim::World& world, const ExpertConfig& cfg = {});

RewardBreakdown reward(const sim::World& world, double phi_t, double phi_prev,
                       const RewardParams& params, const ExpertConfig& cfg = {});

/// Distance-decayed, collision-course boosted weights over present agents
/// (vehicle rows first, then pedestrian rows). Empty when no agent present.
std::vector<std::pair<AgentRef, double>> attention_proxy(const ObservationVectors& obs,
                                                         const ExpertConfig& cfg = {});

ExpertAction expert_act(const sim::World& world, const ObservationVectors& obs,
                        const RewardParams& params = {}, const ExpertConfig& cfg = {});
ExpertAction expert_act(const sim::World& world, const RewardParams& params = {},
                        const ExpertConfig& cfg = {});

void to_json(njson& j, const ExpertAction& a);
void from_json(const njson& j, ExpertAction& a);

}  // namespace driveqa::expert
