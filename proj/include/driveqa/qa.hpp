#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "driveqa/chat.hpp"
#include "driveqa/langen.hpp"
#include "driveqa/rollout.hpp"

namespace driveqa::qa {

// Guardrail templates. Answers are classified by these prefixes.
inline constexpr const char* kRefusalTemplate =
    "I'm unable to answer this question based on the observations I have";
inline constexpr const char* kOutOfScopeTemplate =
    "As an AI Driver, the question you asked is out of my scope, but I can attempt to answer it";
inline constexpr const char* kOutOfScopePrefix =
    "As an AI Driver, the question you asked is out of my scope";

inline constexpr int kMaxAnswerChars = 1024;

/// The question phrasings that trigger a parseable action answer; the first
/// four are the upsampling variants.
const std::vector<std::string>& action_trigger_questions();

enum class QAKind : std::uint8_t { normal = 0, unanswerable, out_of_scope, action };

QAKind qa_kind_from_string(const std::string& s);
const char* to_string(QAKind k);

struct QARecord {
    std::string scenario_id;
    int qa_index = 0;
    std::string question;
    std::string answer;
    QAKind kind = QAKind::normal;

    bool operator==(const QARecord&) const = default;
};

void to_json(njson& j, const QARecord& r);
void from_json(const njson& j, QARecord& r);

/// System + user messages instructing the teacher. Requires the caption to
/// parse; mode-full captions (with the action block) are expected.
std::vector<ChatMessage> build_teacher_prompt(const std::string& caption_full,
                                              int per_scenario = 16);

/// Extracts numbered Q/A pairs from a teacher reply and classifies each by
/// guardrail-template prefix and action-block parseability. Replies with
/// fewer than min_valid_pairs throw MalformedReplyError (label_scenarios
/// retries on it). scenario_id is left empty for the caller to fill.
std::vector<QARecord> parse_teacher_reply(const std::string& text, int min_valid_pairs = 12);

/// Deterministic answer templating shared by the mock teacher and the
/// oracle agent: both must produce byte-identical answers for the same
/// caption. Returns nullopt for questions outside the bank.
std::optional<std::string> answer_from_caption(const langen::ParsedCaption& cap,
                                               const std::string& question);

/// The question bank the mock teacher draws from, in emission order:
/// objects, action, unanswerable, out-of-scope, then the templated rest.
std::vector<std::string> mock_question_bank(int per_scenario);

/// Teacher abstraction: given the full-mode caption and the built prompt,
/// produce the raw reply text.
class Teacher {
public:
    virtual ~Teacher() = default;
    virtual std::string reply(const std::string& caption_full,
                              const std::vector<ChatMessage>& prompt, int per_scenario) = 0;
    virtual const TeacherConfig& config() const = 0;
};

/// Offline template teacher: answers every bank question from the parsed
/// caption itself, emitting the numbered Q/A format.
class MockTeacher : public Teacher {
public:
    MockTeacher();
    std::string reply(const std::string& caption_full, const std::vector<ChatMessage>& prompt,
                      int per_scenario) override;
    const TeacherConfig& config() const override { return cfg_; }

private:
    TeacherConfig cfg_;
};

class RemoteTeacher : public Teacher {
public:
    explicit RemoteTeacher(TeacherConfig cfg);
    std::string reply(const std::string& caption_full, const std::vector<ChatMessage>& prompt,
                      int per_scenario) override;
    const TeacherConfig& config() const override { return cfg_; }

private:
    TeacherConfig cfg_;
    std::unique_ptr<ChatBackend> backend_;
};

struct LabelFailure {
    std::string scenario_id;
    std::string error;
};

struct LabelResult {
    std::vector<QARecord> records;
    std::vector<LabelFailure> failures;  // skipped scenarios, never silently dropped
};

/// Labels one representative frame per scenario: caption (full mode) ->
/// teacher prompt -> reply -> parsed records. Output order follows input
/// order; per-scenario failures are recorded and skipped.
LabelResult label_scenarios(Teacher& teacher, const std::vector<expert::ScenarioFrame>& scenarios,
                            int per_scenario = 16);

/// Appends (factor - 1) extra action records per scenario, cycling the
/// four trigger phrasings, each answered with the scenario's action block.
/// Scenarios without an action record are skipped with a warning entry.
std::vector<QARecord> upsample_action_questions(const std::vector<QARecord>& records, int factor,
                                                std::vector<std::string>* warnings = nullptr);

/// Guardrail linter: per scenario at least one unanswerable, one
/// out-of-scope and one action record; action answers must parse; answers
/// must stay within kMaxAnswerChars.
std::vector<std::string> lint_qa_dataset(const std::vector<QARecord>& records);

}  // namespace driveqa::qa
