#pragma once

#include <string>
#include <vector>

#include "driveqa/expert.hpp"

namespace driveqa::expert {

enum class Split : std::uint8_t { pretrain = 0, finetune, eval };

Split split_from_string(const std::string& s);
const char* to_string(Split s);

/// One recorded timestep of a scenario rollout.
struct ScenarioFrame {
    std::string scenario_id;  // "{seed}-{archetype}-{episode_index}"
    std::uint64_t seed = 0;
    int archetype = 0;
    double t = 0.0;
    ObservationVectors observation;
    ExpertAction expert;
};

void to_json(njson& j, const ScenarioFrame& f);
void from_json(const njson& j, ScenarioFrame& f);

struct RolloutOptions {
    double dt = 0.1;
    double episode_seconds = 40.0;
    int sample_every = 10;  // record one frame per this many steps
    int jobs = 1;
    RewardParams reward;
    ExpertConfig expert;
};

/// Runs the heuristic expert closed-loop over n procedurally generated
/// episodes, cycling the 15 archetypes. Splits draw from disjoint seed
/// ranges; output is deterministic in (n, seed, split) regardless of jobs.
std::vector<ScenarioFrame> collect_rollouts(int n_scenarios, std::uint64_t seed, Split split,
                                            const RolloutOptions& opts = {});

/// One representative frame per scenario_id (the middle sampled frame),
/// preserving first-seen scenario order. QA labeling and evaluation run on
/// these snapshots.
std::vector<ScenarioFrame> representative_frames(const std::vector<ScenarioFrame>& frames);

}  // namespace driveqa::expert
