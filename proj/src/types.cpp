#include "driveqa/types.hpp"

namespace driveqa {

VehicleRow make_vehicle_row(bool is_dynamic, double speed, const Vec2& rel_position,
                            double rel_orientation, double length, double width,
                            int vehicle_class) {
    VehicleRow row;
    row.present = true;
    row.is_dynamic = is_dynamic;
    row.speed = speed;
    row.rel_position = {rel_position.x, rel_position.y, 0.0};
    row.rel_orientation = rel_orientation;
    row.size = {length, width};
    row.vehicle_class = vehicle_class;
    const auto corners = rectangle_corners(rel_position, rel_orientation, length, width);
    for (int i = 0; i < 4; ++i) row.corners[i] = {corners[i].x, corners[i].y};
    return row;
}

const char* to_string(LightState s) {
    switch (s) {
        case LightState::none: return "none";
        case LightState::red: return "red";
        case LightState::amber: return "amber";
        case LightState::red_amber: return "red_amber";
        case LightState::green: return "green";
    }
    return "none";
}

}  // namespace driveqa
