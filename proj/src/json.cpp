#include "driveqa/json.hpp"

#include <stdexcept>

namespace driveqa {
namespace {

njson light_to_json(LightState s) { return to_string(s); }

}  // namespace

LightState light_state_from_string(const std::string& s) {
    if (s == "none") return LightState::none;
    if (s == "red") return LightState::red;
    if (s == "amber") return LightState::amber;
    if (s == "red_amber") return LightState::red_amber;
    if (s == "green") return LightState::green;
    throw std::invalid_argument("unknown traffic light state: " + s);
}

void to_json(njson& j, const ControlTriple& c) {
    j = njson{{"accelerator", c.accelerator()}, {"brake", c.brake()}, {"steering", c.steering()}};
}

void from_json(const njson& j, ControlTriple& c) {
    c = ControlTriple(j.at("accelerator").get<double>(), j.at("brake").get<double>(),
                      j.at("steering").get<double>());
}

void to_json(njson& j, const RoutePoint& p) {
    j = njson{{"position", p.position},
              {"direction", p.direction},
              {"pitch", p.pitch},
              {"speed_limit", p.speed_limit},
              {"is_junction", p.is_junction},
              {"road_width", p.road_width},
              {"has_traffic_light", p.has_traffic_light},
              {"traffic_light_state", light_to_json(p.traffic_light_state)},
              {"is_give_way", p.is_give_way},
              {"is_roundabout", p.is_roundabout}};
}

void from_json(const njson& j, RoutePoint& p) {
    j.at("position").get_to(p.position);
    j.at("direction").get_to(p.direction);
    j.at("pitch").get_to(p.pitch);
    j.at("speed_limit").get_to(p.speed_limit);
    j.at("is_junction").get_to(p.is_junction);
    j.at("road_width").get_to(p.road_width);
    j.at("has_traffic_light").get_to(p.has_traffic_light);
    p.traffic_light_state = light_state_from_string(j.at("traffic_light_state").get<std::string>());
    j.at("is_give_way").get_to(p.is_give_way);
    j.at("is_roundabout").get_to(p.is_roundabout);
}

void to_json(njson& j, const RouteDescriptors& d) { j = njson{{"points", d.points}}; }

void from_json(const njson& j, RouteDescriptors& d) {
    const auto& points = j.at("points");
    if (points.size() != kRoutePoints)
        throw std::invalid_argument("route.points must have exactly 30 rows");
    for (int i = 0; i < kRoutePoints; ++i) points.at(i).get_to(d.points[i]);
}

void to_json(njson& j, const VehicleRow& r) {
    j = njson{{"present", r.present},
              {"is_dynamic", r.is_dynamic},
              {"speed", r.speed},
              {"rel_position", r.rel_position},
              {"rel_orientation", r.rel_orientation},
              {"pitch", r.pitch},
              {"size", r.size},
              {"vehicle_class", r.vehicle_class},
              {"corners", r.corners}};
}

void from_json(const njson& j, VehicleRow& r) {
    j.at("present").get_to(r.present);
    j.at("is_dynamic").get_to(r.is_dynamic);
    j.at("speed").get_to(r.speed);
    j.at("rel_position").get_to(r.rel_position);
    j.at("rel_orientation").get_to(r.rel_orientation);
    j.at("pitch").get_to(r.pitch);
    j.at("size").get_to(r.size);
    j.at("vehicle_class").get_to(r.vehicle_class);
    j.at("corners").get_to(r.corners);
}

void to_json(njson& j, const VehicleDescriptors& d) { j = njson{{"rows", d.rows}}; }

void from_json(const njson& j, VehicleDescriptors& d) {
    const auto& rows = j.at("rows");
    if (rows.size() != kVehicleRows)
        throw std::invalid_argument("vehicles.rows must have exactly 30 rows");
    for (int i = 0; i < kVehicleRows; ++i) rows.at(i).get_to(d.rows[i]);
}

void to_json(njson& j, const PedestrianRow& r) {
    j = njson{{"present", r.present},
              {"speed", r.speed},
              {"rel_position", r.rel_position},
              {"rel_orientation", r.rel_orientation},
              {"ped_type", r.ped_type},
              {"crossing_intent", r.crossing_intent}};
}

void from_json(const njson& j, PedestrianRow& r) {
    j.at("present").get_to(r.present);
    j.at("speed").get_to(r.speed);
    j.at("rel_position").get_to(r.rel_position);
    j.at("rel_orientation").get_to(r.rel_orientation);
    j.at("ped_type").get_to(r.ped_type);
    j.at("crossing_intent").get_to(r.crossing_intent);
}

void to_json(njson& j, const PedestrianDescriptors& d) { j = njson{{"rows", d.rows}}; }

void from_json(const njson& j, PedestrianDescriptors& d) {
    const auto& rows = j.at("rows");
    if (rows.size() != kPedestrianRows)
        throw std::invalid_argument("pedestrians.rows must have exactly 20 rows");
    for (int i = 0; i < kPedestrianRows; ++i) rows.at(i).get_to(d.rows[i]);
}

void to_json(njson& j, const EgoDescriptor& e) {
    j = njson{{"speed", e.speed},
              {"acceleration", e.acceleration},
              {"steering_angle", e.steering_angle},
              {"pitch", e.pitch},
              {"size", e.size},
              {"vehicle_class", e.vehicle_class},
              {"dynamics_type", e.dynamics_type},
              {"previous_action", e.previous_action},
              {"lidar_front_left", e.lidar_front_left},
              {"lidar_front_right", e.lidar_front_right}};
}

void from_json(const njson& j, EgoDescriptor& e) {
    j.at("speed").get_to(e.speed);
    j.at("acceleration").get_to(e.acceleration);
    j.at("steering_angle").get_to(e.steering_angle);
    j.at("pitch").get_to(e.pitch);
    j.at("size").get_to(e.size);
    j.at("vehicle_class").get_to(e.vehicle_class);
    j.at("dynamics_type").get_to(e.dynamics_type);
    j.at("previous_action").get_to(e.previous_action);
    j.at("lidar_front_left").get_to(e.lidar_front_left);
    j.at("lidar_front_right").get_to(e.lidar_front_right);
}

void to_json(njson& j, const ObservationVectors& o) {
    j = njson{{"route", o.route},
              {"vehicles", o.vehicles},
              {"pedestrians", o.pedestrians},
              {"ego", o.ego}};
}

void from_json(const njson& j, ObservationVectors& o) {
    j.at("route").get_to(o.route);
    j.at("vehicles").get_to(o.vehicles);
    j.at("pedestrians").get_to(o.pedestrians);
    j.at("ego").get_to(o.ego);
}

}  // namespace driveqa
