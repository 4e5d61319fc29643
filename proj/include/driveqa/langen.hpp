#pragma once

#include <optional>
#include <string>
#include <vector>

#include "driveqa/expert.hpp"
#include "driveqa/rng.hpp"

namespace driveqa::langen {

enum class CaptionMode : std::uint8_t { perception = 0, full };

CaptionMode caption_mode_from_string(const std::string& s);
const char* to_string(CaptionMode m);

/// Renders the structured caption for an observation. Lines, in order:
/// one per present agent sorted by ascending distance, the ego speed in mph,
/// the nearest traffic light on the horizon (if any), the next route bend of
/// at least 10 degrees (if any), and in full mode the attention percentages
/// on the agent lines plus the action block. Angles are printed positive
/// clockwise (to the ego's right).
std::string caption(const ObservationVectors& obs, const expert::ExpertAction* action,
                    CaptionMode mode);

enum class ParsedAgentKind : std::uint8_t { moving_car = 0, parked_car, pedestrian };

struct ParsedAgent {
    ParsedAgentKind kind = ParsedAgentKind::moving_car;
    double angle_deg = 0.0;
    double distance_m = 0.0;
    std::optional<int> attention_pct;
};

struct ParsedLight {
    LightState state = LightState::red;  // red | amber | green
    double distance_m = 0.0;
};

enum class TurnSide : std::uint8_t { left = 0, right };

struct ParsedTurn {
    int angle_deg = 0;
    TurnSide side = TurnSide::left;
    double distance_m = 0.0;
};

struct ParsedActions {
    int accelerator_pct = 0;
    int brake_pct = 0;
    double steering = 0.0;  // [-1, 1], negative = left, 0 = straight
};

struct ParsedCaption {
    std::vector<ParsedAgent> agents;
    std::optional<double> ego_speed_mph;
    std::optional<ParsedLight> traffic_light;
    std::optional<ParsedTurn> next_turn;
    std::optional<ParsedActions> actions;
    std::vector<std::string> unparsed_lines;

    int moving_cars() const;
    int parked_cars() const;
    int pedestrian_count() const;
    int car_count() const { return moving_cars() + parked_cars(); }
};

/// Inverse of caption(): anchored line-by-line regex extraction.
/// Unrecognized lines are collected, not fatal; throws EmptyCaptionError
/// when nothing at all matches.
ParsedCaption parse_caption(const std::string& text);

/// Canonical one-line action block, e.g.
/// "Here are my actions: - Accelerator pedal 0% - Brake pedal 80% - Steering straight".
std::string format_action_block_inline(const ControlTriple& controls);

/// The multi-line form used inside captions.
std::vector<std::string> format_action_block_lines(const ControlTriple& controls);

/// Uniformly random observation for representation pretraining. Presence is
/// Bernoulli(0.3) per row; every numeric field is drawn uniformly from its
/// documented range; rows come out packed and distance-sorted so the result
/// always passes validate_observation.
ObservationVectors sample_random_observation(SplitMix64& rng);

/// Largest-remainder rounding of weights (summing to ~1) into integer
/// percentages that sum to exactly 100.
std::vector<int> percentages_largest_remainder(const std::vector<double>& weights);

}  // namespace driveqa::langen
