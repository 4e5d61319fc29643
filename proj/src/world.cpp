#include "driveqa/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace driveqa::sim {
namespace {

constexpr double kPedSize = 0.5;
constexpr double kParkedOffset = 2.2;   // left of the ego lane centerline
constexpr double kSidewalkLeft = 2.5;   // standing pedestrians, left side
constexpr double kSidewalkRight = -6.0;
constexpr double kBgTimeGap = 1.8;      // background car following
constexpr double kBgAccel = 2.5;
constexpr double kBgBrake = 4.5;

double phase_duration(LightState s) {
    switch (s) {
        case LightState::red: return kRedSeconds;
        case LightState::red_amber: return kRedAmberSeconds;
        case LightState::green: return kGreenSeconds;
        case LightState::amber: return kAmberSeconds;
        case LightState::none: break;
    }
    throw std::invalid_argument("traffic light state cannot be none");
}

LightState next_phase(LightState s) {
    switch (s) {
        case LightState::red: return LightState::red_amber;
        case LightState::red_amber: return LightState::green;
        case LightState::green: return LightState::amber;
        case LightState::amber: return LightState::red;
        case LightState::none: break;
    }
    throw std::invalid_argument("traffic light state cannot be none");
}

// ---------------------------------------------------------------------------
// Route tracing

struct PathPlan {
    // (arc length, curvature); curvature > 0 bends left.
    std::vector<std::pair<double, double>> segments;

    void straight(double length) { segments.push_back({length, 0.0}); }
    void arc(double radius, double angle_rad) {
        segments.push_back({std::abs(angle_rad) * radius, (angle_rad >= 0.0 ? 1.0 : -1.0) / radius});
    }
    double total_length() const {
        double t = 0.0;
        for (const auto& s : segments) t += s.first;
        return t;
    }
};

std::vector<RouteVertex> trace(const PathPlan& plan, const Pose& start, double limit) {
    std::vector<RouteVertex> vertices;
    Vec2 pos = start.position;
    double heading = start.heading;
    RouteVertex v0;
    v0.position = pos;
    v0.heading = heading;
    v0.speed_limit = limit;
    vertices.push_back(v0);
    for (const auto& [length, curvature] : plan.segments) {
        const int steps = std::max(1, static_cast<int>(std::round(length)));
        const double ds = length / steps;
        for (int i = 0; i < steps; ++i) {
            if (std::abs(curvature) < 1e-12) {
                pos = pos + heading_vector(heading) * ds;
            } else {
                const double half = 0.5 * curvature * ds;
                const double chord = 2.0 * std::sin(half) / curvature;
                pos = pos + heading_vector(heading + half) * chord;
                heading = normalize_angle(heading + curvature * ds);
            }
            RouteVertex v;
            v.position = pos;
            v.heading = heading;
            v.speed_limit = limit;
            vertices.push_back(v);
        }
    }
    return vertices;
}

void mark_range(std::vector<RouteVertex>& vs, double s0, double s1, bool RouteVertex::* flag) {
    const int lo = std::max(0, static_cast<int>(std::floor(s0)));
    const int hi = std::min(static_cast<int>(vs.size()) - 1, static_cast<int>(std::ceil(s1)));
    for (int i = lo; i <= hi; ++i) vs[i].*flag = true;
}

/// Polyline with cumulative lengths; used for the oncoming lane.
struct LanePath {
    const std::vector<Vec2>* pts = nullptr;
    std::vector<double> cum;

    explicit LanePath(const std::vector<Vec2>& p) : pts(&p) {
        cum.resize(p.size(), 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) cum[i] = cum[i - 1] + (p[i] - p[i - 1]).norm();
    }
    double length() const { return cum.empty() ? 0.0 : cum.back(); }
    Vec2 position_at(double s) const {
        const auto& p = *pts;
        if (p.size() < 2) return p.empty() ? Vec2{} : p[0];
        if (s <= 0.0) return p[0];
        if (s >= length()) return p.back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), s);
        const std::size_t i = static_cast<std::size_t>(it - cum.begin());
        const double seg = cum[i] - cum[i - 1];
        const double t = seg > 0.0 ? (s - cum[i - 1]) / seg : 0.0;
        return p[i - 1] + (p[i] - p[i - 1]) * t;
    }
    double heading_at(double s) const {
        const auto& p = *pts;
        if (p.size() < 2) return 0.0;
        std::size_t i = 1;
        if (s > 0.0) {
            const auto it = std::upper_bound(cum.begin(), cum.end(), std::min(s, length() - 1e-9));
            i = std::min(p.size() - 1, static_cast<std::size_t>(it - cum.begin()));
        }
        const Vec2 d = p[i] - p[i - 1];
        return std::atan2(d.y, d.x);
    }
};

// ---------------------------------------------------------------------------
// Collision helpers

bool overlap_on_axis(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b,
                     const Vec2& axis) {
    double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
    for (const Vec2& p : a) {
        const double d = p.dot(axis);
        amin = std::min(amin, d);
        amax = std::max(amax, d);
    }
    for (const Vec2& p : b) {
        const double d = p.dot(axis);
        bmin = std::min(bmin, d);
        bmax = std::max(bmax, d);
    }
    return amax >= bmin && bmax >= amin;
}

bool obb_overlap(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b) {
    const std::array<Vec2, 4> axes = {
        Vec2{a[1].x - a[0].x, a[1].y - a[0].y}, Vec2{a[3].x - a[0].x, a[3].y - a[0].y},
        Vec2{b[1].x - b[0].x, b[1].y - b[0].y}, Vec2{b[3].x - b[0].x, b[3].y - b[0].y}};
    for (const Vec2& axis : axes) {
        if (!overlap_on_axis(a, b, axis)) return false;
    }
    return true;
}

/// First hit distance of a ray against a rectangle edge set, or +inf.
double ray_rect_distance(const Vec2& origin, const Vec2& dir, const std::array<Vec2, 4>& rect) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const Vec2& a = rect[i];
        const Vec2& b = rect[(i + 1) % 4];
        const Vec2 e = b - a;
        const double denom = dir.x * e.y - dir.y * e.x;
        if (std::abs(denom) < 1e-12) continue;
        const Vec2 ao = a - origin;
        const double t = (ao.x * e.y - ao.y * e.x) / denom;   // along ray
        const double u = (ao.x * dir.y - ao.y * dir.x) / denom;  // along edge
        if (t >= 0.0 && u >= 0.0 && u <= 1.0) best = std::min(best, t);
    }
    return best;
}

std::array<Vec2, 4> vehicle_rect(const SimVehicle& v) {
    return rectangle_corners(v.pose.position, v.pose.heading, v.length, v.width);
}

std::array<Vec2, 4> pedestrian_rect(const SimPedestrian& p) {
    return rectangle_corners(p.pose.position, p.pose.heading, kPedSize, kPedSize);
}

// ---------------------------------------------------------------------------
// Procedural generation

struct Blueprint {
    PathPlan plan;
    double speed_limit = 13.4;
    std::vector<std::pair<double, double>> junction_ranges;
    std::vector<std::pair<double, double>> roundabout_ranges;
    std::vector<double> give_way_s;
    std::vector<double> light_s;
    std::vector<double> crossing_s;
    int veh_min = 0, veh_max = 0;
    int ped_min = 0, ped_max = 0;
    int parked_min = 0, parked_max = 0;
    bool lead_vehicle = false;
    bool oncoming_traffic = false;
    bool crossing_intent_peds = false;
    double ego_start_s = -1.0;  // < 0: random near the route start
    double ego_speed = -1.0;    // < 0: random fraction of the limit
    bool light_forced_red = false;
};

Blueprint make_blueprint(int archetype, SplitMix64& rng) {
    Blueprint b;
    switch (archetype) {
        case 0: {  // straight road
            b.plan.straight(rng.uniform(500.0, 700.0));
            b.veh_max = 4;
            b.ped_max = 2;
            break;
        }
        case 1: {  // gentle curves
            b.plan.straight(rng.uniform(60.0, 100.0));
            for (int i = 0; i < 4; ++i) {
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                b.plan.arc(rng.uniform(90.0, 150.0), sign * rng.uniform(0.15, 0.35));
                b.plan.straight(rng.uniform(50.0, 90.0));
            }
            b.veh_max = 4;
            b.ped_max = 2;
            break;
        }
        case 2: {  // T-junction with a give-way entry
            const double approach = rng.uniform(90.0, 130.0);
            b.plan.straight(approach);
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            b.plan.arc(8.0, sign * kPi / 2.0);
            b.plan.straight(300.0);
            const double turn_len = 8.0 * kPi / 2.0;
            b.junction_ranges.push_back({approach - 4.0, approach + turn_len + 4.0});
            b.give_way_s.push_back(approach - 3.0);
            b.veh_max = 6;
            b.ped_max = 2;
            break;
        }
        case 3: {  // signalized junction
            const double approach = rng.uniform(70.0, 110.0);
            b.plan.straight(approach);
            double through_len = 14.0;
            if (rng.bernoulli(0.5)) {
                b.plan.straight(through_len);
            } else {
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                b.plan.arc(9.0, sign * kPi / 2.0);
                through_len = 9.0 * kPi / 2.0;
            }
            b.plan.straight(300.0);
            b.light_s.push_back(approach - 2.0);
            b.junction_ranges.push_back({approach, approach + through_len});
            b.veh_max = 6;
            b.ped_max = 3;
            break;
        }
        case 4: {  // roundabout, clockwise circulation
            const double approach = rng.uniform(80.0, 120.0);
            b.plan.straight(approach);
            b.plan.arc(20.0, 0.35);
            const int exit_quarters = 1 + static_cast<int>(rng.below(3));  // 90/180/270
            const double circ = exit_quarters * kPi / 2.0 + 0.7;
            b.plan.arc(11.0, -circ);
            b.plan.arc(20.0, 0.35);
            b.plan.straight(300.0);
            const double entry_end = approach + 20.0 * 0.35;
            b.junction_ranges.push_back({approach - 3.0, entry_end + 3.0});
            b.roundabout_ranges.push_back({entry_end, entry_end + 11.0 * circ});
            b.give_way_s.push_back(approach - 2.0);
            b.veh_max = 5;
            b.ped_max = 2;
            break;
        }
        case 5: {  // give-way merge
            const double approach = rng.uniform(100.0, 150.0);
            b.plan.straight(approach);
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            b.plan.arc(40.0, sign * rng.uniform(0.35, 0.5));
            b.plan.straight(300.0);
            b.give_way_s.push_back(approach - 2.0);
            b.junction_ranges.push_back({approach - 4.0, approach + 12.0});
            b.veh_max = 6;
            b.ped_max = 1;
            break;
        }
        case 6: {  // pedestrian crossing
            b.plan.straight(rng.uniform(450.0, 600.0));
            const int crossings = 1 + static_cast<int>(rng.below(2));
            for (int i = 0; i < crossings; ++i)
                b.crossing_s.push_back(rng.uniform(55.0, 120.0) + 60.0 * i);
            b.veh_max = 3;
            b.ped_min = 1;
            b.ped_max = 4;
            b.crossing_intent_peds = true;
            break;
        }
        case 7: {  // parked-car corridor
            b.plan.straight(rng.uniform(450.0, 600.0));
            b.parked_min = 3;
            b.parked_max = 8;
            b.veh_max = 2;
            b.ped_max = 2;
            break;
        }
        case 8: {  // slow lead vehicle
            b.plan.straight(rng.uniform(450.0, 600.0));
            b.lead_vehicle = true;
            b.veh_min = 1;
            b.veh_max = 4;
            b.ped_max = 1;
            break;
        }
        case 9: {  // oncoming traffic
            b.plan.straight(rng.uniform(70.0, 110.0));
            for (int i = 0; i < 3; ++i) {
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                b.plan.arc(rng.uniform(100.0, 160.0), sign * rng.uniform(0.12, 0.3));
                b.plan.straight(rng.uniform(60.0, 100.0));
            }
            b.oncoming_traffic = true;
            b.veh_min = 2;
            b.veh_max = 6;
            b.ped_max = 1;
            break;
        }
        case 10: {  // red light ahead: ego 50 m out at 10 m/s
            b.plan.straight(400.0);
            const double stop = rng.uniform(70.0, 90.0);
            b.light_s.push_back(stop);
            b.junction_ranges.push_back({stop + 2.0, stop + 16.0});
            b.ego_start_s = stop - 50.0;
            b.ego_speed = 10.0;
            b.light_forced_red = true;
            break;
        }
        case 11: {  // busy signalized junction
            const double approach = rng.uniform(80.0, 110.0);
            b.plan.straight(approach);
            b.plan.straight(14.0);
            b.plan.straight(300.0);
            b.light_s.push_back(approach - 2.0);
            b.junction_ranges.push_back({approach, approach + 14.0});
            b.crossing_s.push_back(approach - rng.uniform(12.0, 20.0));
            b.veh_min = 3;
            b.veh_max = 8;
            b.ped_min = 1;
            b.ped_max = 4;
            b.crossing_intent_peds = true;
            break;
        }
        case 12: {  // curved residential, 20 mph
            b.speed_limit = 8.9;
            b.plan.straight(rng.uniform(50.0, 80.0));
            for (int i = 0; i < 4; ++i) {
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                b.plan.arc(rng.uniform(40.0, 80.0), sign * rng.uniform(0.25, 0.5));
                b.plan.straight(rng.uniform(40.0, 70.0));
            }
            b.parked_max = 4;
            b.ped_max = 3;
            b.veh_max = 3;
            b.crossing_intent_peds = rng.bernoulli(0.5);
            if (b.crossing_intent_peds) b.crossing_s.push_back(rng.uniform(50.0, 100.0));
            break;
        }
        case 13: {  // dual carriageway, 50 mph
            b.speed_limit = 22.35;
            b.plan.straight(rng.uniform(900.0, 1100.0));
            b.veh_min = 2;
            b.veh_max = 8;
            break;
        }
        case 14: {  // mixed: crossing + give-way + bend + parked
            b.plan.straight(80.0);
            b.crossing_s.push_back(rng.uniform(50.0, 75.0));
            b.plan.straight(60.0);
            b.give_way_s.push_back(140.0 - 2.0);
            b.junction_ranges.push_back({136.0, 152.0});
            const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
            b.plan.arc(30.0, sign * rng.uniform(0.35, 0.5));
            b.plan.straight(320.0);
            b.parked_max = 4;
            b.veh_max = 6;
            b.ped_max = 4;
            b.crossing_intent_peds = true;
            break;
        }
        default:
            throw std::invalid_argument("archetype outside [0, 15)");
    }
    return b;
}

struct ClassSpec {
    int cls;
    double length;
    double width;
};

ClassSpec draw_vehicle_class(SplitMix64& rng) {
    const auto roll = rng.below(10);
    if (roll <= 6) return {0, 4.5, 1.8};
    if (roll == 7) return {1, 5.4, 2.0};
    if (roll == 8) return {2, 8.0, 2.4};
    return {3, 11.0, 2.5};
}

bool far_from_all(const std::vector<double>& placed, double s, double min_gap) {
    for (double p : placed) {
        if (std::abs(p - s) < min_gap) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// AnnotatedRoute

Vec2 AnnotatedRoute::position_at(double s) const {
    if (vertices.empty()) return {};
    if (s <= 0.0) {
        const RouteVertex& v = vertices.front();
        return v.position + heading_vector(v.heading) * s;
    }
    const double len = length();
    if (s >= len) {
        const RouteVertex& v = vertices.back();
        return v.position + heading_vector(v.heading) * (s - len);
    }
    const int i = static_cast<int>(s);
    const double t = s - i;
    return vertices[i].position + (vertices[i + 1].position - vertices[i].position) * t;
}

double AnnotatedRoute::heading_at(double s) const {
    if (vertices.empty()) return 0.0;
    const int i = std::clamp(static_cast<int>(std::round(s)), 0,
                             static_cast<int>(vertices.size()) - 1);
    return vertices[i].heading;
}

const RouteVertex& AnnotatedRoute::annotation_at(double s) const {
    const int i = std::clamp(static_cast<int>(std::round(s)), 0,
                             static_cast<int>(vertices.size()) - 1);
    return vertices[i];
}

double AnnotatedRoute::project(const Vec2& p, double hint_s, double back, double fwd) const {
    if (vertices.size() < 2) return 0.0;
    const int lo = std::clamp(static_cast<int>(std::floor(hint_s - back)), 0,
                              static_cast<int>(vertices.size()) - 2);
    const int hi = std::clamp(static_cast<int>(std::ceil(hint_s + fwd)), lo,
                              static_cast<int>(vertices.size()) - 2);
    double best_d = std::numeric_limits<double>::infinity();
    double best_s = hint_s;
    for (int i = lo; i <= hi; ++i) {
        const Vec2& a = vertices[i].position;
        const Vec2& b = vertices[i + 1].position;
        const Vec2 ab = b - a;
        const double len2 = ab.dot(ab);
        double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double d = (p - (a + ab * t)).norm();
        if (d < best_d) {
            best_d = d;
            best_s = i + t;
        }
    }
    return best_s;
}

// ---------------------------------------------------------------------------

const std::vector<ArchetypeInfo>& archetype_table() {
    static const std::vector<ArchetypeInfo> table = {
        {0, "straight_road", "empty two-lane straight, light ambient traffic"},
        {1, "gentle_curves", "sweeping bends, light traffic"},
        {2, "t_junction", "90-degree turn behind a give-way line"},
        {3, "signalized_junction", "traffic light guarding a junction on the route"},
        {4, "roundabout", "give-way entry onto a clockwise roundabout"},
        {5, "give_way_merge", "yield line at a merging bend"},
        {6, "pedestrian_crossing", "marked crossing with crossing-intent pedestrians"},
        {7, "parked_car_corridor", "parked vehicles narrowing the ego lane"},
        {8, "lead_vehicle", "slow lead vehicle ahead in lane"},
        {9, "oncoming_traffic", "curvy road with opposing traffic"},
        {10, "red_light_ahead", "red light 50 m ahead, ego arrives at 10 m/s"},
        {11, "busy_junction", "signalized junction with dense traffic and a crossing"},
        {12, "curved_residential", "20 mph bends with parked cars and pedestrians"},
        {13, "dual_carriageway", "50 mph straight with denser traffic"},
        {14, "mixed", "crossing, give-way bend and parked cars in one route"},
    };
    return table;
}

World generate_world(std::uint64_t seed, int archetype) {
    if (archetype < 0 || archetype >= kArchetypeCount)
        throw std::invalid_argument("archetype outside [0, 15)");

    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(archetype) + 101));
    World w;
    w.seed = seed;
    w.archetype = archetype;

    Blueprint b = make_blueprint(archetype, rng);

    // Random global placement so no two worlds share absolute coordinates.
    Pose start;
    start.position = {rng.uniform(-200.0, 200.0), rng.uniform(-200.0, 200.0)};
    start.heading = normalize_angle(rng.uniform(-kPi, kPi));

    w.route.vertices = trace(b.plan, start, b.speed_limit);
    for (const auto& [s0, s1] : b.junction_ranges)
        mark_range(w.route.vertices, s0, s1, &RouteVertex::is_junction);
    for (const auto& [s0, s1] : b.roundabout_ranges)
        mark_range(w.route.vertices, s0, s1, &RouteVertex::is_roundabout);
    for (double s : b.give_way_s) {
        mark_range(w.route.vertices, s - 1.0, s + 1.0, &RouteVertex::is_give_way);
        w.give_ways.push_back({w.route.position_at(s), s});
    }

    std::sort(b.light_s.begin(), b.light_s.end());
    for (double s : b.light_s) {
        TrafficLight tl;
        tl.position = w.route.position_at(s);
        tl.stop_line_s = s;
        if (b.light_forced_red) {
            tl.state = LightState::red;
            tl.phase_timer = 0.0;
        } else {
            // Phase drawn proportionally to its duration.
            const double u = rng.uniform() * (kRedSeconds + kRedAmberSeconds + kGreenSeconds +
                                              kAmberSeconds);
            if (u < kRedSeconds) {
                tl.state = LightState::red;
                tl.phase_timer = u;
            } else if (u < kRedSeconds + kRedAmberSeconds) {
                tl.state = LightState::red_amber;
                tl.phase_timer = u - kRedSeconds;
            } else if (u < kRedSeconds + kRedAmberSeconds + kGreenSeconds) {
                tl.state = LightState::green;
                tl.phase_timer = u - kRedSeconds - kRedAmberSeconds;
            } else {
                tl.state = LightState::amber;
                tl.phase_timer = u - kRedSeconds - kRedAmberSeconds - kGreenSeconds;
            }
        }
        w.traffic_lights.push_back(tl);
    }

    // Oncoming lane: ego-route offset one lane to the right, reversed so the
    // points run in the oncoming travel direction (left-hand traffic).
    w.oncoming_lane.reserve(w.route.vertices.size());
    for (auto it = w.route.vertices.rbegin(); it != w.route.vertices.rend(); ++it)
        w.oncoming_lane.push_back(it->position + left_normal(it->heading) * (-kLaneOffset));

    w.lane_centerlines.resize(2);
    w.lane_centerlines[0].reserve(w.route.vertices.size());
    for (const auto& v : w.route.vertices) w.lane_centerlines[0].push_back(v.position);
    w.lane_centerlines[1] = w.oncoming_lane;

    // Ego.
    const double route_len = w.route.length();
    w.ego.route_s = b.ego_start_s >= 0.0 ? b.ego_start_s : rng.uniform(5.0, 12.0);
    w.ego.pose.position = w.route.position_at(w.ego.route_s);
    w.ego.pose.heading = w.route.heading_at(w.ego.route_s);
    w.ego.speed = b.ego_speed >= 0.0 ? b.ego_speed : b.speed_limit * rng.uniform(0.3, 0.8);

    // Dynamic vehicles.
    const int n_veh = b.veh_min + static_cast<int>(rng.below(b.veh_max - b.veh_min + 1));
    std::vector<double> placed_route{w.ego.route_s};
    std::vector<double> placed_oncoming;
    LanePath oncoming(w.oncoming_lane);
    for (int i = 0; i < n_veh; ++i) {
        const bool on_oncoming = b.oncoming_traffic && rng.bernoulli(0.6);
        const ClassSpec cs = draw_vehicle_class(rng);
        SimVehicle v;
        v.is_dynamic = true;
        v.vehicle_class = cs.cls;
        v.length = cs.length;
        v.width = cs.width;
        v.cruise_speed = b.speed_limit * rng.uniform(0.4, 0.8);
        v.speed = v.cruise_speed * rng.uniform(0.6, 1.0);
        if (b.lead_vehicle && i == 0) {
            v.path = PathId::route;
            v.path_s = w.ego.route_s + rng.uniform(25.0, 45.0);
            v.cruise_speed = rng.uniform(3.0, 7.0);
            v.speed = v.cruise_speed;
        } else if (on_oncoming) {
            v.path = PathId::oncoming;
            double s = rng.uniform(20.0, std::max(40.0, oncoming.length() - 20.0));
            for (int tries = 0; tries < 8 && !far_from_all(placed_oncoming, s, 14.0); ++tries)
                s = rng.uniform(20.0, std::max(40.0, oncoming.length() - 20.0));
            v.path_s = s;
        } else {
            v.path = PathId::route;
            double s = rng.uniform(w.ego.route_s + 15.0, std::max(w.ego.route_s + 40.0, route_len - 50.0));
            for (int tries = 0; tries < 8 && !far_from_all(placed_route, s, 14.0); ++tries)
                s = rng.uniform(w.ego.route_s + 15.0, std::max(w.ego.route_s + 40.0, route_len - 50.0));
            v.path_s = s;
        }
        if (v.path == PathId::route) {
            if (!far_from_all(placed_route, v.path_s, 12.0)) continue;  // crowded; drop
            placed_route.push_back(v.path_s);
            v.pose.position = w.route.position_at(v.path_s);
            v.pose.heading = w.route.heading_at(v.path_s);
        } else {
            if (!far_from_all(placed_oncoming, v.path_s, 12.0)) continue;
            placed_oncoming.push_back(v.path_s);
            v.pose.position = oncoming.position_at(v.path_s);
            v.pose.heading = oncoming.heading_at(v.path_s);
        }
        w.vehicles.push_back(v);
    }

    // Parked vehicles along the left edge.
    const int n_parked =
        b.parked_min + static_cast<int>(rng.below(b.parked_max - b.parked_min + 1));
    std::vector<double> placed_parked;
    for (int i = 0; i < n_parked; ++i) {
        double s = rng.uniform(w.ego.route_s + 10.0,
                               std::min(route_len - 20.0, w.ego.route_s + 160.0));
        for (int tries = 0; tries < 8 && !far_from_all(placed_parked, s, 7.0); ++tries)
            s = rng.uniform(w.ego.route_s + 10.0, std::min(route_len - 20.0, w.ego.route_s + 160.0));
        if (!far_from_all(placed_parked, s, 7.0)) continue;
        placed_parked.push_back(s);
        SimVehicle v;
        v.is_dynamic = false;
        v.vehicle_class = 0;
        v.length = 4.5;
        v.width = 1.8;
        v.path = PathId::none;
        v.pose.heading = w.route.heading_at(s);
        v.pose.position = w.route.position_at(s) + left_normal(v.pose.heading) * kParkedOffset;
        w.vehicles.push_back(v);
    }

    // Pedestrians.
    const int n_ped = b.ped_min + static_cast<int>(rng.below(b.ped_max - b.ped_min + 1));
    for (int i = 0; i < n_ped; ++i) {
        SimPedestrian p;
        p.ped_type = rng.bernoulli(0.8) ? 0 : 1;
        const bool crossing = b.crossing_intent_peds && !b.crossing_s.empty() && rng.bernoulli(0.7);
        if (crossing) {
            const double base = b.crossing_s[rng.below(b.crossing_s.size())];
            const double s = base + rng.uniform(-3.0, 3.0);
            const double h = w.route.heading_at(s);
            const Vec2 on_route = w.route.position_at(s);
            const bool from_left = rng.bernoulli(0.5);
            const double a = from_left ? kSidewalkLeft : kSidewalkRight;
            const double z = from_left ? kSidewalkRight : kSidewalkLeft;
            p.cross_from = on_route + left_normal(h) * a;
            p.cross_to = on_route + left_normal(h) * z;
            p.crossing_intent = true;
            p.cross_start_time = rng.uniform(0.0, 12.0);
            p.pose.position = p.cross_from;
            const Vec2 d = p.cross_to - p.cross_from;
            p.pose.heading = std::atan2(d.y, d.x);
        } else {
            const double s = rng.uniform(w.ego.route_s + 8.0,
                                         std::min(route_len - 10.0, w.ego.route_s + 140.0));
            const double h = w.route.heading_at(s);
            const double side = rng.bernoulli(0.5) ? kSidewalkLeft : kSidewalkRight;
            p.pose.position = w.route.position_at(s) + left_normal(h) * side;
            p.pose.heading = normalize_angle(rng.uniform(-kPi, kPi));
            p.crossing_intent = false;
        }
        w.pedestrians.push_back(p);
    }

    return w;
}

TrafficLight advance_traffic_light(const TrafficLight& tl, double dt) {
    if (dt < 0.0) throw std::invalid_argument("advance_traffic_light: dt must be >= 0");
    TrafficLight out = tl;
    double t = tl.phase_timer + dt;
    LightState s = tl.state;
    while (t >= phase_duration(s)) {
        t -= phase_duration(s);
        s = next_phase(s);
    }
    out.state = s;
    out.phase_timer = t;
    return out;
}

std::vector<std::size_t> nearby_filter(const std::vector<Vec2>& positions, const Pose& ego,
                                       double range) {
    if (!(range > 0.0)) throw std::invalid_argument("nearby_filter: range must be > 0");
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double d = (positions[i] - ego.position).norm();
        if (d <= range) hits.push_back({d, i});
    }
    std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<std::size_t> out;
    out.reserve(hits.size());
    for (const auto& h : hits) out.push_back(h.second);
    return out;
}

World step_world(const World& world, const ControlTriple& controls, double dt) {
    if (!(dt > 0.0 && dt <= 0.1))
        throw std::invalid_argument("step_world: dt must be in (0, 0.1]");

    World n = world;

    for (auto& tl : n.traffic_lights) tl = advance_traffic_light(tl, dt);

    // Ego: kinematic bicycle. Steering control is positive to the right, the
    // math frame is CCW-positive, hence the sign flip on the wheel angle.
    const double a_cmd = kMaxAccel * controls.accelerator() - kMaxBrake * controls.brake();
    const double v_new = std::max(0.0, world.ego.speed + a_cmd * dt);
    const double wheel_ccw = -kMaxWheelAngle * controls.steering();
    n.ego.pose.position =
        world.ego.pose.position + heading_vector(world.ego.pose.heading) * (v_new * dt);
    if (v_new > 0.0 && wheel_ccw != 0.0)
        n.ego.pose.heading = normalize_angle(world.ego.pose.heading +
                                             v_new / kWheelbase * std::tan(wheel_ccw) * dt);
    n.ego.speed = v_new;
    n.ego.acceleration = (v_new - world.ego.speed) / dt;
    n.ego.steering = controls.steering();
    n.ego.previous_action = controls;
    n.ego.route_s = n.route.project(n.ego.pose.position, world.ego.route_s + v_new * dt);

    // Background vehicles: lane following with a simple time-gap rule.
    LanePath oncoming(world.oncoming_lane);
    for (std::size_t i = 0; i < n.vehicles.size(); ++i) {
        SimVehicle& v = n.vehicles[i];
        if (!v.is_dynamic || v.path == PathId::none) continue;
        const SimVehicle& old = world.vehicles[i];

        double lead_s = std::numeric_limits<double>::infinity();
        double lead_len = 0.0;
        for (std::size_t k = 0; k < world.vehicles.size(); ++k) {
            if (k == i) continue;
            const SimVehicle& other = world.vehicles[k];
            if (other.path != old.path) continue;
            if (other.path_s > old.path_s && other.path_s < lead_s) {
                lead_s = other.path_s;
                lead_len = other.length;
            }
        }
        if (old.path == PathId::route && world.ego.route_s > old.path_s &&
            world.ego.route_s < lead_s) {
            lead_s = world.ego.route_s;
            lead_len = kEgoLength;
        }

        double v_target = old.cruise_speed;
        if (std::isfinite(lead_s)) {
            const double gap = lead_s - old.path_s - 0.5 * (old.length + lead_len);
            const double v_safe = gap <= 2.0 ? 0.0 : gap / kBgTimeGap;
            v_target = std::min(v_target, v_safe);
        }
        const double dv = std::clamp(v_target - old.speed, -kBgBrake * dt, kBgAccel * dt);
        v.speed = std::max(0.0, old.speed + dv);
        v.path_s = old.path_s + v.speed * dt;

        if (old.path == PathId::route) {
            const double limit = n.route.length() - 1.0;
            if (v.path_s >= limit) {
                v.path_s = limit;
                v.speed = 0.0;
            }
            v.pose.position = n.route.position_at(v.path_s);
            v.pose.heading = n.route.heading_at(v.path_s);
        } else {
            const double limit = oncoming.length() - 1.0;
            if (v.path_s >= limit) {
                v.path_s = limit;
                v.speed = 0.0;
            }
            v.pose.position = oncoming.position_at(v.path_s);
            v.pose.heading = oncoming.heading_at(v.path_s);
        }
    }

    // Pedestrians with crossing intent walk their crossing path at fixed
    // speed once their start time has passed.
    for (auto& p : n.pedestrians) {
        if (!p.crossing_intent) {
            p.speed = 0.0;
            continue;
        }
        if (world.clock + dt < p.cross_start_time) {
            p.speed = 0.0;
            continue;
        }
        const Vec2 d = p.cross_to - p.cross_from;
        const double total = d.norm();
        p.cross_progress = std::min(total, p.cross_progress + kWalkSpeed * dt);
        const double t = total > 0.0 ? p.cross_progress / total : 1.0;
        p.pose.position = p.cross_from + d * t;
        p.pose.heading = std::atan2(d.y, d.x);
        if (p.cross_progress >= total) {
            p.crossing_intent = false;
            p.speed = 0.0;
        } else {
            p.speed = kWalkSpeed;
        }
    }

    // Episode-terminating collision detection (no resolution physics).
    const auto ego_rect =
        rectangle_corners(n.ego.pose.position, n.ego.pose.heading, kEgoLength, kEgoWidth);
    bool hit = world.collision;
    for (const auto& v : n.vehicles) {
        if (hit) break;
        hit = obb_overlap(ego_rect, vehicle_rect(v));
    }
    for (const auto& p : n.pedestrians) {
        if (hit) break;
        hit = obb_overlap(ego_rect, pedestrian_rect(p));
    }
    n.collision = hit;

    n.clock = world.clock + dt;
    return n;
}

ObservationVectors observe(const World& world) {
    ObservationVectors obs;
    const Pose& ego = world.ego.pose;
    const double ego_s = world.ego.route_s;

    // Route descriptors: fixed arc-length samples ahead of the ego.
    for (int k = 0; k < kRoutePoints; ++k) {
        const double s = ego_s + k * kRouteSpacing;
        const Vec2 p = to_ego_frame(world.route.position_at(s), ego);
        const RouteVertex& ann = world.route.annotation_at(s);
        RoutePoint& rp = obs.route.points[k];
        rp.position = {p.x, p.y, 0.0};
        rp.direction = normalize_angle(world.route.heading_at(s) - ego.heading);
        rp.pitch = 0.0;
        rp.speed_limit = ann.speed_limit;
        rp.road_width = ann.road_width;
        rp.is_junction = ann.is_junction;
        rp.is_give_way = ann.is_give_way;
        rp.is_roundabout = ann.is_roundabout;
    }
    for (const TrafficLight& tl : world.traffic_lights) {
        const double ahead = tl.stop_line_s - ego_s;
        if (ahead < -1e-9 || ahead > (kRoutePoints - 1) * kRouteSpacing + 1.0) continue;
        const int k = std::clamp(static_cast<int>(std::lround(ahead / kRouteSpacing)), 0,
                                 kRoutePoints - 1);
        if (obs.route.points[k].has_traffic_light) continue;  // nearer light wins
        obs.route.points[k].has_traffic_light = true;
        obs.route.points[k].traffic_light_state = tl.state;
    }

    // Vehicles: nearest first, capped at the row count.
    {
        std::vector<Vec2> positions;
        positions.reserve(world.vehicles.size());
        for (const auto& v : world.vehicles) positions.push_back(v.pose.position);
        const auto idx = nearby_filter(positions, ego, kAgentRange);
        const std::size_t n = std::min<std::size_t>(idx.size(), kVehicleRows);
        for (std::size_t r = 0; r < n; ++r) {
            const SimVehicle& v = world.vehicles[idx[r]];
            obs.vehicles.rows[r] = make_vehicle_row(
                v.is_dynamic, v.speed, to_ego_frame(v.pose.position, ego),
                normalize_angle(v.pose.heading - ego.heading), v.length, v.width,
                v.vehicle_class);
        }
    }

    // Pedestrians.
    {
        std::vector<Vec2> positions;
        positions.reserve(world.pedestrians.size());
        for (const auto& p : world.pedestrians) positions.push_back(p.pose.position);
        const auto idx = nearby_filter(positions, ego, kAgentRange);
        const std::size_t n = std::min<std::size_t>(idx.size(), kPedestrianRows);
        for (std::size_t r = 0; r < n; ++r) {
            const SimPedestrian& p = world.pedestrians[idx[r]];
            PedestrianRow& row = obs.pedestrians.rows[r];
            row.present = true;
            row.speed = p.speed;
            const Vec2 rel = to_ego_frame(p.pose.position, ego);
            row.rel_position = {rel.x, rel.y, 0.0};
            row.rel_orientation = normalize_angle(p.pose.heading - ego.heading);
            row.ped_type = p.ped_type;
            row.crossing_intent = p.crossing_intent;
        }
    }

    // Ego descriptor.
    EgoDescriptor& e = obs.ego;
    e.speed = world.ego.speed;
    e.acceleration = world.ego.acceleration;
    e.steering_angle = world.ego.steering;
    e.pitch = 0.0;
    e.size = {kEgoLength, kEgoWidth};
    e.vehicle_class = 0;
    e.dynamics_type = 0;
    e.previous_action = world.ego.previous_action;

    // Two lidar fans on the front corners, 16 rays across a 90-degree
    // forward arc, cast against agent rectangles.
    const auto ego_rect = rectangle_corners(ego.position, ego.heading, kEgoLength, kEgoWidth);
    std::vector<std::array<Vec2, 4>> rects;
    rects.reserve(world.vehicles.size() + world.pedestrians.size());
    for (const auto& v : world.vehicles) rects.push_back(vehicle_rect(v));
    for (const auto& p : world.pedestrians) rects.push_back(pedestrian_rect(p));
    for (int side = 0; side < 2; ++side) {
        const Vec2 origin = side == 0 ? ego_rect[0] : ego_rect[1];  // FL, FR
        auto& out = side == 0 ? e.lidar_front_left : e.lidar_front_right;
        for (int i = 0; i < kLidarRays; ++i) {
            const double ang =
                ego.heading - kPi / 4.0 + (kPi / 2.0) * i / double(kLidarRays - 1);
            const Vec2 dir = heading_vector(ang);
            double best = kLidarMaxRange;
            for (const auto& rect : rects) best = std::min(best, ray_rect_distance(origin, dir, rect));
            out[i] = best;
        }
    }

    return obs;
}

}  // namespace driveqa::sim
