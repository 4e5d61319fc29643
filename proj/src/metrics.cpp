#include "driveqa/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace driveqa::eval {

CaptionTruth caption_truth(const ObservationVectors& obs) {
    CaptionTruth t;
    for (int i = 0; i < kVehicleRows; ++i) t.cars += obs.vehicles.rows[i].present ? 1 : 0;
    for (int i = 0; i < kPedestrianRows; ++i)
        t.pedestrians += obs.pedestrians.rows[i].present ? 1 : 0;
    for (int i = 0; i < kRoutePoints; ++i) {
        const RoutePoint& p = obs.route.points[i];
        if (!p.has_traffic_light) continue;
        t.has_light = true;
        t.light_state = p.traffic_light_state == LightState::green
                            ? LightState::green
                            : (p.traffic_light_state == LightState::amber ? LightState::amber
                                                                          : LightState::red);
        t.light_distance = std::hypot(p.position[0], p.position[1]);
        break;
    }
    return t;
}

PerceptionMetrics perception_metrics(const std::vector<langen::ParsedCaption>& preds,
                                     const std::vector<ObservationVectors>& gts) {
    if (preds.size() != gts.size())
        throw std::invalid_argument("perception_metrics: length mismatch");
    PerceptionMetrics m;
    m.n_items = static_cast<int>(preds.size());
    if (preds.empty()) return m;

    double car_err = 0.0, ped_err = 0.0, tl_dist_err = 0.0;
    int tl_correct = 0, tl_both = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const langen::ParsedCaption& p = preds[i];
        const CaptionTruth truth = caption_truth(gts[i]);
        car_err += std::abs(p.car_count() - truth.cars);
        ped_err += std::abs(p.pedestrian_count() - truth.pedestrians);

        const bool pred_light = p.traffic_light.has_value();
        if (pred_light == truth.has_light &&
            (!truth.has_light || p.traffic_light->state == truth.light_state))
            ++tl_correct;
        if (pred_light && truth.has_light) {
            tl_dist_err += std::abs(p.traffic_light->distance_m - truth.light_distance);
            ++tl_both;
        }
    }
    m.e_car = car_err / preds.size();
    m.e_ped = ped_err / preds.size();
    m.acc_tl = static_cast<double>(tl_correct) / preds.size();
    m.n_tl_both = tl_both;
    m.d_tl = tl_both > 0 ? tl_dist_err / tl_both : 0.0;
    return m;
}

ActionMetrics action_metrics(const std::vector<std::optional<ControlTriple>>& preds,
                             const std::vector<ControlTriple>& gts) {
    if (preds.size() != gts.size()) throw std::invalid_argument("action_metrics: length mismatch");
    ActionMetrics m;
    m.n_items = static_cast<int>(preds.size());
    if (preds.empty()) return m;

    double lon = 0.0, lat = 0.0;
    int parsed = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (!preds[i].has_value()) continue;
        ++parsed;
        lon += 0.5 * (std::abs(preds[i]->accelerator() - gts[i].accelerator()) +
                      std::abs(preds[i]->brake() - gts[i].brake()));
        lat += std::abs(preds[i]->steering() - gts[i].steering());
    }
    m.n_parsed = parsed;
    m.parse_failure_rate = static_cast<double>(m.n_items - parsed) / m.n_items;
    m.e_lon = parsed > 0 ? lon / parsed : 0.0;
    m.e_lat = parsed > 0 ? lat / parsed : 0.0;
    return m;
}

void to_json(njson& j, const PerceptionMetrics& m) {
    j = njson{{"e_car", m.e_car},   {"e_ped", m.e_ped},       {"acc_tl", m.acc_tl},
              {"d_tl", m.d_tl},     {"n_items", m.n_items},   {"n_tl_both", m.n_tl_both}};
}

void to_json(njson& j, const ActionMetrics& m) {
    j = njson{{"e_lon", m.e_lon},
              {"e_lat", m.e_lat},
              {"parse_failure_rate", m.parse_failure_rate},
              {"n_items", m.n_items},
              {"n_parsed", m.n_parsed}};
}

}  // namespace driveqa::eval
