#pragma once

#include <string>
#include <vector>

#include "driveqa/types.hpp"

namespace driveqa {

/// Checks every schema invariant on the descriptor arrays. Violations come
/// back as human-readable strings ordered by field path (route, vehicles,
/// pedestrians, ego); an empty report means the observation is valid.
std::vector<std::string> validate_observation(const ObservationVectors& obs);

}  // namespace driveqa
