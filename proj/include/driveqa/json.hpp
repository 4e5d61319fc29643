#pragma once

#include <json.hpp>

#include "driveqa/types.hpp"

namespace driveqa {

// Canonical JSON encoding shared by every dataset file: field names follow
// the descriptor schema, arrays are row-major, numbers plain decimals.
using njson = nlohmann::ordered_json;

void to_json(njson& j, const ControlTriple& c);
void from_json(const njson& j, ControlTriple& c);

void to_json(njson& j, const RoutePoint& p);
void from_json(const njson& j, RoutePoint& p);

void to_json(njson& j, const RouteDescriptors& d);
void from_json(const njson& j, RouteDescriptors& d);

void to_json(njson& j, const VehicleRow& r);
void from_json(const njson& j, VehicleRow& r);

void to_json(njson& j, const VehicleDescriptors& d);
void from_json(const njson& j, VehicleDescriptors& d);

void to_json(njson& j, const PedestrianRow& r);
void from_json(const njson& j, PedestrianRow& r);

void to_json(njson& j, const PedestrianDescriptors& d);
void from_json(const njson& j, PedestrianDescriptors& d);

void to_json(njson& j, const EgoDescriptor& e);
void from_json(const njson& j, EgoDescriptor& e);

void to_json(njson& j, const ObservationVectors& o);
void from_json(const njson& j, ObservationVectors& o);

LightState light_state_from_string(const std::string& s);

}  // namespace driveqa
