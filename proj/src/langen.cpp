#include "driveqa/langen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "driveqa/errors.hpp"

namespace driveqa::langen {
namespace {

constexpr double kTurnAnnounceDeg = 10.0;  // minimum total bend worth a line
constexpr double kTurnStartEpsDeg = 2.0;   // deviation treated as "still straight"

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Caption angle convention: positive is clockwise, i.e. to the ego's right.
double agent_angle_deg(const std::array<double, 3>& rel_pos) {
    return std::atan2(-rel_pos[1], rel_pos[0]) * 180.0 / kPi;
}

double planar(const std::array<double, 3>& p) { return std::hypot(p[0], p[1]); }

struct AgentLine {
    bool is_vehicle = false;
    int row = 0;
    bool is_dynamic = false;
    double angle_deg = 0.0;
    double distance = 0.0;
    double weight = 0.0;
};

struct TurnInfo {
    int degrees = 0;
    bool right = false;
    double distance = 0.0;
};

/// Scans the route descriptors for the first bend of at least 10 degrees:
/// deviation is measured against the direction at the first sample, the turn
/// starts at the last sample still within 2 degrees of it, and the reported
/// angle is the deviation where it stops growing.
std::optional<TurnInfo> detect_turn(const RouteDescriptors& route) {
    std::array<double, kRoutePoints> dev{};
    for (int i = 0; i < kRoutePoints; ++i)
        dev[i] = normalize_angle(route.points[i].direction - route.points[0].direction) * 180.0 /
                 kPi;
    int exceed = -1;
    for (int i = 0; i < kRoutePoints; ++i) {
        if (std::abs(dev[i]) >= kTurnAnnounceDeg) {
            exceed = i;
            break;
        }
    }
    if (exceed < 0) return std::nullopt;
    int start = 0;
    for (int i = exceed - 1; i >= 0; --i) {
        if (std::abs(dev[i]) <= kTurnStartEpsDeg) {
            start = i;
            break;
        }
    }
    int end = kRoutePoints - 1;
    for (int i = exceed; i + 1 < kRoutePoints; ++i) {
        if (std::abs(dev[i + 1]) <= std::abs(dev[i])) {
            end = i;
            break;
        }
    }
    TurnInfo t;
    t.degrees = static_cast<int>(std::lround(std::abs(dev[end])));
    t.right = dev[end] < 0.0;  // internal angles are CCW-positive
    t.distance = planar(route.points[start].position);
    return t;
}

std::string steering_text(double steering) {
    const int pct = static_cast<int>(std::lround(std::abs(steering) * 100.0));
    if (pct == 0) return "straight";
    return std::to_string(pct) + "% to the " + (steering > 0.0 ? "right" : "left");
}

}  // namespace

CaptionMode caption_mode_from_string(const std::string& s) {
    if (s == "perception") return CaptionMode::perception;
    if (s == "full") return CaptionMode::full;
    throw std::invalid_argument("unknown caption mode: " + s);
}

const char* to_string(CaptionMode m) {
    return m == CaptionMode::perception ? "perception" : "full";
}

std::vector<int> percentages_largest_remainder(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    std::vector<int> out(n, 0);
    if (n == 0) return out;
    std::vector<double> exact(n);
    int floor_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        exact[i] = weights[i] * 100.0;
        out[i] = static_cast<int>(std::floor(exact[i]));
        floor_sum += out[i];
    }
    int remainder = 100 - floor_sum;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = exact[a] - std::floor(exact[a]);
        const double fb = exact[b] - std::floor(exact[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });
    for (std::size_t k = 0; remainder > 0 && k < n; ++k, --remainder) out[order[k]] += 1;
    return out;
}

std::string format_action_block_inline(const ControlTriple& controls) {
    const int a = static_cast<int>(std::lround(controls.accelerator() * 100.0));
    const int b = static_cast<int>(std::lround(controls.brake() * 100.0));
    return "Here are my actions: - Accelerator pedal " + std::to_string(a) +
           "% - Brake pedal " + std::to_string(b) + "% - Steering " +
           steering_text(controls.steering());
}

std::vector<std::string> format_action_block_lines(const ControlTriple& controls) {
    const int a = static_cast<int>(std::lround(controls.accelerator() * 100.0));
    const int b = static_cast<int>(std::lround(controls.brake() * 100.0));
    return {"Here are my actions:", "  - Accelerator pedal " + std::to_string(a) + "%",
            "  - Brake pedal " + std::to_string(b) + "%",
            "  - Steering " + steering_text(controls.steering())};
}

std::string caption(const ObservationVectors& obs, const expert::ExpertAction* action,
                    CaptionMode mode) {
    if (mode == CaptionMode::full && action == nullptr)
        throw std::invalid_argument("caption: full mode requires an expert action");

    std::vector<AgentLine> agents;
    for (int i = 0; i < kVehicleRows; ++i) {
        const VehicleRow& r = obs.vehicles.rows[i];
        if (!r.present) break;
        AgentLine a;
        a.is_vehicle = true;
        a.row = i;
        a.is_dynamic = r.is_dynamic;
        a.angle_deg = agent_angle_deg(r.rel_position);
        a.distance = planar(r.rel_position);
        agents.push_back(a);
    }
    for (int i = 0; i < kPedestrianRows; ++i) {
        const PedestrianRow& r = obs.pedestrians.rows[i];
        if (!r.present) break;
        AgentLine a;
        a.is_vehicle = false;
        a.row = i;
        a.angle_deg = agent_angle_deg(r.rel_position);
        a.distance = planar(r.rel_position);
        agents.push_back(a);
    }
    std::stable_sort(agents.begin(), agents.end(), [](const AgentLine& a, const AgentLine& b) {
        return a.distance < b.distance;
    });

    const bool with_attention = mode == CaptionMode::full && !agents.empty();
    std::vector<int> attention_pct;
    if (with_attention) {
        std::map<std::pair<int, int>, double> lookup;
        for (const auto& [ref, w] : action->attention)
            lookup[{ref.kind == expert::AgentRefKind::vehicle ? 0 : 1, ref.row}] = w;
        std::vector<double> weights;
        weights.reserve(agents.size());
        for (const auto& a : agents) {
            const auto it = lookup.find({a.is_vehicle ? 0 : 1, a.row});
            weights.push_back(it == lookup.end() ? 0.0 : it->second);
        }
        attention_pct = percentages_largest_remainder(weights);
    }

    std::vector<std::string> lines;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const AgentLine& a = agents[i];
        std::string line;
        if (a.is_vehicle)
            line = std::string("A ") + (a.is_dynamic ? "moving" : "parked") + " car";
        else
            line = "A pedestrian";
        line += "; Angle in degrees: " + fixed2(a.angle_deg);
        line += "; Distance: " + fixed2(a.distance) + "m";
        if (with_attention) line += "; My attention: " + std::to_string(attention_pct[i]) + "%";
        lines.push_back(line);
    }

    lines.push_back("My current speed is " + fixed2(obs.ego.speed * kMpsToMph) + " mph.");

    for (int i = 0; i < kRoutePoints; ++i) {
        const RoutePoint& p = obs.route.points[i];
        if (!p.has_traffic_light) continue;
        // red_amber shows as red: the conservative three-state caption view.
        const char* state = p.traffic_light_state == LightState::green
                                ? "green"
                                : (p.traffic_light_state == LightState::amber ? "amber" : "red");
        lines.push_back(std::string("There is a traffic light and it is ") + state + ". It is " +
                        fixed2(planar(p.position)) + "m ahead.");
        break;
    }

    if (const auto turn = detect_turn(obs.route)) {
        lines.push_back("The next turn is " + std::to_string(turn->degrees) + " degrees " +
                        (turn->right ? "right" : "left") + " in " + fixed2(turn->distance) +
                        "m.");
    }

    if (mode == CaptionMode::full) {
        for (auto& l : format_action_block_lines(action->controls)) lines.push_back(std::move(l));
    }

    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0) out += '\n';
        out += lines[i];
    }
    return out;
}

int ParsedCaption::moving_cars() const {
    int n = 0;
    for (const auto& a : agents) n += a.kind == ParsedAgentKind::moving_car ? 1 : 0;
    return n;
}

int ParsedCaption::parked_cars() const {
    int n = 0;
    for (const auto& a : agents) n += a.kind == ParsedAgentKind::parked_car ? 1 : 0;
    return n;
}

int ParsedCaption::pedestrian_count() const {
    int n = 0;
    for (const auto& a : agents) n += a.kind == ParsedAgentKind::pedestrian ? 1 : 0;
    return n;
}

ParsedCaption parse_caption(const std::string& text) {
    static const std::regex car_re(
        R"(^A (moving|parked) car; Angle in degrees: (-?\d+(?:\.\d+)?); Distance: (\d+(?:\.\d+)?)m(?:; My attention: (\d+)%)?$)");
    static const std::regex ped_re(
        R"(^A pedestrian; Angle in degrees: (-?\d+(?:\.\d+)?); Distance: (\d+(?:\.\d+)?)m(?:; My attention: (\d+)%)?$)");
    static const std::regex speed_re(R"(^My current speed is (-?\d+(?:\.\d+)?) mph\.$)");
    static const std::regex light_re(
        R"(^There is a traffic light and it is (red|amber|green)\. It is (\d+(?:\.\d+)?)m ahead\.$)");
    static const std::regex turn_re(
        R"(^The next turn is (\d+) degrees (left|right) in (\d+(?:\.\d+)?)m\.$)");
    static const std::regex actions_re(R"(^Here are my actions:$)");
    static const std::regex accel_re(R"(^\s*- Accelerator pedal (\d+)%$)");
    static const std::regex brake_re(R"(^\s*- Brake pedal (\d+)%$)");
    static const std::regex steer_re(R"(^\s*- Steering (?:straight|(\d+)% to the (left|right))$)");

    ParsedCaption cap;
    bool matched_any = false;
    std::optional<int> accel_pct, brake_pct;
    std::optional<double> steering;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::smatch m;
        if (std::regex_match(line, m, car_re)) {
            ParsedAgent a;
            a.kind = m[1] == "moving" ? ParsedAgentKind::moving_car : ParsedAgentKind::parked_car;
            a.angle_deg = std::stod(m[2]);
            a.distance_m = std::stod(m[3]);
            if (m[4].matched) a.attention_pct = std::stoi(m[4]);
            cap.agents.push_back(a);
            matched_any = true;
        } else if (std::regex_match(line, m, ped_re)) {
            ParsedAgent a;
            a.kind = ParsedAgentKind::pedestrian;
            a.angle_deg = std::stod(m[1]);
            a.distance_m = std::stod(m[2]);
            if (m[3].matched) a.attention_pct = std::stoi(m[3]);
            cap.agents.push_back(a);
            matched_any = true;
        } else if (std::regex_match(line, m, speed_re)) {
            cap.ego_speed_mph = std::stod(m[1]);
            matched_any = true;
        } else if (std::regex_match(line, m, light_re)) {
            ParsedLight l;
            l.state = light_state_from_string(m[1]);
            l.distance_m = std::stod(m[2]);
            cap.traffic_light = l;
            matched_any = true;
        } else if (std::regex_match(line, m, turn_re)) {
            ParsedTurn t;
            t.angle_deg = std::stoi(m[1]);
            t.side = m[2] == "left" ? TurnSide::left : TurnSide::right;
            t.distance_m = std::stod(m[3]);
            cap.next_turn = t;
            matched_any = true;
        } else if (std::regex_match(line, m, actions_re)) {
            matched_any = true;
        } else if (std::regex_match(line, m, accel_re)) {
            accel_pct = std::stoi(m[1]);
            matched_any = true;
        } else if (std::regex_match(line, m, brake_re)) {
            brake_pct = std::stoi(m[1]);
            matched_any = true;
        } else if (std::regex_match(line, m, steer_re)) {
            if (m[1].matched) {
                const double v = std::stoi(m[1]) / 100.0;
                steering = m[2] == "left" ? -v : v;
            } else {
                steering = 0.0;
            }
            matched_any = true;
        } else {
            cap.unparsed_lines.push_back(line);
        }
    }

    if (!matched_any) throw EmptyCaptionError("no caption line recognized");

    if (accel_pct && brake_pct) {
        ParsedActions a;
        a.accelerator_pct = *accel_pct;
        a.brake_pct = *brake_pct;
        a.steering = steering.value_or(0.0);
        cap.actions = a;
    }
    return cap;
}

ObservationVectors sample_random_observation(SplitMix64& rng) {
    ObservationVectors obs;

    // Route: 2 m spacing with a bounded random bend per step so the samples
    // stay ordered by arc length.
    {
        Vec2 pos{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        double heading = rng.uniform(-0.3, 0.3);
        for (int i = 0; i < kRoutePoints; ++i) {
            RoutePoint& p = obs.route.points[i];
            p.position = {pos.x, pos.y, 0.0};
            p.direction = heading;
            p.pitch = rng.uniform(-0.1, 0.1);
            p.speed_limit = rng.uniform(0.0, 31.3);
            p.road_width = rng.uniform(4.0, 10.0);
            p.is_junction = rng.bernoulli(0.15);
            p.has_traffic_light = rng.bernoulli(0.1);
            if (p.has_traffic_light) {
                const LightState states[4] = {LightState::red, LightState::amber,
                                              LightState::red_amber, LightState::green};
                p.traffic_light_state = states[rng.below(4)];
            }
            p.is_give_way = rng.bernoulli(0.1);
            p.is_roundabout = rng.bernoulli(0.05);
            pos = pos + heading_vector(heading) * kRouteSpacing;
            heading += rng.uniform(-0.14, 0.14);
        }
    }

    // Vehicles: Bernoulli(0.3) presence, fields uniform over their ranges,
    // packed to the front and sorted by distance.
    {
        int n = 0;
        for (int i = 0; i < kVehicleRows; ++i) n += rng.bernoulli(0.3) ? 1 : 0;
        std::vector<VehicleRow> rows;
        rows.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec2 p;
            do {
                p = {rng.uniform(-kAgentRange, kAgentRange), rng.uniform(-kAgentRange, kAgentRange)};
            } while (p.norm() > kAgentRange);
            VehicleRow r = make_vehicle_row(rng.bernoulli(0.7), rng.uniform(0.0, 20.0), p,
                                            rng.uniform(-kPi, kPi), rng.uniform(3.5, 12.0),
                                            rng.uniform(1.6, 2.6), static_cast<int>(rng.below(4)));
            r.pitch = rng.uniform(-0.1, 0.1);
            rows.push_back(r);
        }
        std::stable_sort(rows.begin(), rows.end(), [](const VehicleRow& a, const VehicleRow& b) {
            return planar(a.rel_position) < planar(b.rel_position);
        });
        for (int i = 0; i < n && i < kVehicleRows; ++i) obs.vehicles.rows[i] = rows[i];
    }

    // Pedestrians.
    {
        int n = 0;
        for (int i = 0; i < kPedestrianRows; ++i) n += rng.bernoulli(0.3) ? 1 : 0;
        std::vector<PedestrianRow> rows;
        rows.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec2 p;
            do {
                p = {rng.uniform(-kAgentRange, kAgentRange), rng.uniform(-kAgentRange, kAgentRange)};
            } while (p.norm() > kAgentRange);
            PedestrianRow r;
            r.present = true;
            r.speed = rng.uniform(0.0, 3.0);
            r.rel_position = {p.x, p.y, 0.0};
            r.rel_orientation = rng.uniform(-kPi, kPi);
            r.ped_type = static_cast<int>(rng.below(2));
            r.crossing_intent = rng.bernoulli(0.5);
            rows.push_back(r);
        }
        std::stable_sort(rows.begin(), rows.end(), [](const PedestrianRow& a, const PedestrianRow& b) {
            return planar(a.rel_position) < planar(b.rel_position);
        });
        for (int i = 0; i < n && i < kPedestrianRows; ++i) obs.pedestrians.rows[i] = rows[i];
    }

    // Ego.
    {
        EgoDescriptor& e = obs.ego;
        e.speed = rng.uniform(0.0, 20.0);
        e.acceleration = rng.uniform(-6.0, 3.0);
        e.steering_angle = rng.uniform(-1.0, 1.0);
        e.pitch = rng.uniform(-0.1, 0.1);
        e.size = {rng.uniform(3.8, 5.5), rng.uniform(1.7, 2.2)};
        e.vehicle_class = static_cast<int>(rng.below(4));
        e.dynamics_type = 0;
        const double u = rng.uniform(-1.0, 1.0);
        e.previous_action = u >= 0.0 ? ControlTriple(u, 0.0, rng.uniform(-1.0, 1.0))
                                     : ControlTriple(0.0, -u, rng.uniform(-1.0, 1.0));
        for (int i = 0; i < kLidarRays; ++i) e.lidar_front_left[i] = rng.uniform(0.0, kLidarMaxRange);
        for (int i = 0; i < kLidarRays; ++i) e.lidar_front_right[i] = rng.uniform(0.0, kLidarMaxRange);
    }

    return obs;
}

}  // namespace driveqa::langen
