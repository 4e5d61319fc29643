#pragma once

#include <optional>
#include <string>
#include <vector>

#include "driveqa/agents.hpp"
#include "driveqa/chat.hpp"

namespace driveqa::eval {

struct GradeItem {
    std::string scenario_id;
    int qa_index = 0;
    std::string obs_text;   // full caption shown to the grader
    std::string question;
    std::string reference;  // used by the mock grader only
    std::string answer;
};

struct PerItemGrade {
    std::string scenario_id;
    int qa_index = 0;
    std::string assessment;
    int score = 0;  // 0..10
};

struct GradeReport {
    double mean_score = 0.0;  // arithmetic mean of per_item scores
    std::vector<PerItemGrade> per_item;
    int failures = 0;
};

/// Grader instruction: one-line assessment then "Score: <integer 0-10>".
std::vector<qa::ChatMessage> build_grader_prompt(const std::string& obs_text,
                                                 const std::string& question,
                                                 const std::string& answer);

struct Grade {
    std::string assessment;
    int score = 0;
};

/// Takes the last "Score: <n>" in the reply, clamped to [0, 10]; the text
/// before it becomes the assessment. Throws MalformedGradeError otherwise.
Grade parse_grade(const std::string& reply);

/// Deterministic offline grade: 0 for the constant "I don't know", 10 on an
/// exact reference match, otherwise round(10 * token-overlap F1).
Grade mock_grade(const std::string& answer, const std::string& reference);

/// Grades every item; grader == nullptr selects the mock. Transport and
/// parse failures are counted per item and excluded from the mean.
GradeReport grade_answers(qa::ChatBackend* grader, const qa::TeacherConfig* grader_cfg,
                          const std::vector<GradeItem>& items);

enum class BaselineMode : std::uint8_t { constant_idk = 0, shuffled };

/// Baseline answers aligned with the evaluation set; delegates to the
/// constant / shuffled agents.
std::vector<std::string> make_baseline(BaselineMode mode,
                                       const std::vector<agents::EvalItem>& eval_set,
                                       std::uint64_t seed);

}  // namespace driveqa::eval
