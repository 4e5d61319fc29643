#include "driveqa/rollout.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace driveqa::expert {
namespace {

// Disjoint seed ranges per split so datasets never overlap.
std::uint64_t split_base(Split s) {
    switch (s) {
        case Split::pretrain: return 0;
        case Split::finetune: return 1'000'000'000ull;
        case Split::eval: return 2'000'000'000ull;
    }
    return 0;
}

std::vector<ScenarioFrame> run_episode(std::uint64_t scenario_seed, int archetype,
                                       int episode_index, const RolloutOptions& opts) {
    sim::World world = sim::generate_world(scenario_seed, archetype);
    const std::string id = std::to_string(scenario_seed) + "-" + std::to_string(archetype) + "-" +
                           std::to_string(episode_index);
    const int n_steps = static_cast<int>(std::lround(opts.episode_seconds / opts.dt));

    std::vector<ScenarioFrame> frames;
    for (int k = 0; k < n_steps; ++k) {
        const ObservationVectors obs = sim::observe(world);
        const ExpertAction action = expert_act(world, obs, opts.reward, opts.expert);
        if (k % opts.sample_every == 0) {
            ScenarioFrame f;
            f.scenario_id = id;
            f.seed = scenario_seed;
            f.archetype = archetype;
            f.t = world.clock;
            f.observation = obs;
            f.expert = action;
            frames.push_back(std::move(f));
        }
        world = sim::step_world(world, action.controls, opts.dt);
        if (world.collision) break;
        if (world.ego.route_s > world.route.length() - 5.0) break;
    }
    return frames;
}

}  // namespace

Split split_from_string(const std::string& s) {
    if (s == "pretrain") return Split::pretrain;
    if (s == "finetune") return Split::finetune;
    if (s == "eval") return Split::eval;
    throw std::invalid_argument("unknown split: " + s);
}

const char* to_string(Split s) {
    switch (s) {
        case Split::pretrain: return "pretrain";
        case Split::finetune: return "finetune";
        case Split::eval: return "eval";
    }
    return "pretrain";
}

void to_json(njson& j, const ScenarioFrame& f) {
    j = njson{{"scenario_id", f.scenario_id}, {"seed", f.seed},       {"archetype", f.archetype},
              {"t", f.t},                     {"observation", f.observation},
              {"expert", f.expert}};
}

void from_json(const njson& j, ScenarioFrame& f) {
    j.at("scenario_id").get_to(f.scenario_id);
    j.at("seed").get_to(f.seed);
    j.at("archetype").get_to(f.archetype);
    j.at("t").get_to(f.t);
    j.at("observation").get_to(f.observation);
    j.at("expert").get_to(f.expert);
}

std::vector<ScenarioFrame> collect_rollouts(int n_scenarios, std::uint64_t seed, Split split,
                                            const RolloutOptions& opts) {
    if (n_scenarios < 1) throw std::invalid_argument("collect_rollouts: n_scenarios must be >= 1");
    const std::uint64_t base = seed + split_base(split);

    std::vector<std::vector<ScenarioFrame>> per_episode(n_scenarios);
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (int i = 0; i < n_scenarios; ++i)
            per_episode[i] = run_episode(base + static_cast<std::uint64_t>(i),
                                         i % sim::kArchetypeCount, i, opts);
    } else {
        // Episodes are independent; results land in index order, so the
        // merged stream is identical to the serial one.
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t) {
            workers.emplace_back([&]() {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= n_scenarios) return;
                    per_episode[i] = run_episode(base + static_cast<std::uint64_t>(i),
                                                 i % sim::kArchetypeCount, i, opts);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    std::vector<ScenarioFrame> all;
    for (auto& ep : per_episode)
        for (auto& f : ep) all.push_back(std::move(f));
    return all;
}

std::vector<ScenarioFrame> representative_frames(const std::vector<ScenarioFrame>& frames) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const ScenarioFrame*>> by_id;
    for (const auto& f : frames) {
        auto& bucket = by_id[f.scenario_id];
        if (bucket.empty()) order.push_back(f.scenario_id);
        bucket.push_back(&f);
    }
    std::vector<ScenarioFrame> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        const auto& bucket = by_id[id];
        out.push_back(*bucket[bucket.size() / 2]);
    }
    return out;
}

}  // namespace driveqa::expert
