#pragma once

#include <optional>
#include <string>
#include <vector>

#include "driveqa/qa.hpp"

namespace driveqa::agents {

enum class AgentKind : std::uint8_t { oracle = 0, constant_idk, shuffled, remote };

AgentKind agent_kind_from_string(const std::string& s);
const char* to_string(AgentKind k);

inline constexpr const char* kConstantAnswer = "I don't know";

/// The scene-description request used for the perception task.
inline constexpr const char* kDescribeQuestion = "Describe your current observations.";

/// One evaluation prompt: either the describe task (qa_index = -1) or a QA
/// item with its reference answer.
struct EvalItem {
    std::string scenario_id;
    int qa_index = -1;
    std::string question;
    std::string reference;
    const expert::ScenarioFrame* frame = nullptr;  // scenario snapshot
};

struct AgentAnswer {
    std::string text;
    std::optional<std::string> error;  // transport failures keep evaluating
};

struct TranscriptEntry {
    std::string scenario_id;
    int qa_index = -1;
    std::vector<qa::ChatMessage> prompt_messages;
    std::string reply;
    std::int64_t latency_ms = 0;
};

void to_json(njson& j, const TranscriptEntry& t);
void from_json(const njson& j, TranscriptEntry& t);

/// System + user messages for the remote driver: perception caption, blank
/// line, question.
std::vector<qa::ChatMessage> build_driver_prompt(const std::string& caption_perception,
                                                 const std::string& question);

/// Oracle answer for a single item: the perception caption for the describe
/// task, otherwise the shared answer bank templated from the frame's full
/// caption (refusal template for unknown questions).
std::string oracle_answer(const expert::ScenarioFrame& frame, const std::string& question);

/// Answers all items with one agent. oracle/constant/shuffled are pure given
/// (seed, items); shuffled applies a seeded single-cycle permutation of the
/// reference answers, so no item keeps its own (set size >= 2 required).
/// remote needs a TeacherConfig and logs each exchange into transcript.
std::vector<AgentAnswer> run_agent(AgentKind kind, const std::vector<EvalItem>& items,
                                   std::uint64_t seed,
                                   const qa::TeacherConfig* remote_cfg = nullptr,
                                   std::vector<TranscriptEntry>* transcript = nullptr);

}  // namespace driveqa::agents
