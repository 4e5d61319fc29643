#pragma once

#include <optional>
#include <vector>

#include "driveqa/json.hpp"
#include "driveqa/langen.hpp"

namespace driveqa::eval {

struct PerceptionMetrics {
    double e_car = 0.0;   // MAE of car counts (moving + parked)
    double e_ped = 0.0;   // MAE of pedestrian counts
    double acc_tl = 0.0;  // fraction where light presence AND state match
    double d_tl = 0.0;    // MAE of light distance where both sides report one
    int n_items = 0;
    int n_tl_both = 0;  // items contributing to d_tl
};

struct ActionMetrics {
    double e_lon = 0.0;  // mean of (|d accel| + |d brake|) / 2 over parsed items
    double e_lat = 0.0;  // mean |d steering| over parsed items
    double parse_failure_rate = 0.0;
    int n_items = 0;
    int n_parsed = 0;
};

/// Ground-truth caption view of an observation: counts, light presence /
/// state / distance exactly as caption() would derive them.
struct CaptionTruth {
    int cars = 0;
    int pedestrians = 0;
    bool has_light = false;
    LightState light_state = LightState::none;  // 3-state caption view
    double light_distance = 0.0;
};

CaptionTruth caption_truth(const ObservationVectors& obs);

PerceptionMetrics perception_metrics(const std::vector<langen::ParsedCaption>& preds,
                                     const std::vector<ObservationVectors>& gts);

ActionMetrics action_metrics(const std::vector<std::optional<ControlTriple>>& preds,
                             const std::vector<ControlTriple>& gts);

void to_json(njson& j, const PerceptionMetrics& m);
void to_json(njson& j, const ActionMetrics& m);

}  // namespace driveqa::eval
