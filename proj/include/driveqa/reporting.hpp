#pragma once

#include <string>
#include <vector>

#include "driveqa/grading.hpp"
#include "driveqa/metrics.hpp"

namespace driveqa::eval {

/// One answered evaluation item as persisted in answers.jsonl. qa_index -1
/// marks the scene-description task.
struct AnswerRecord {
    std::string scenario_id;
    int qa_index = -1;
    std::string question;
    std::string reference;
    std::string answer;
    std::string obs_text;  // full caption, kept so grading can run standalone
    std::string error;     // empty on success
};

void to_json(njson& j, const AnswerRecord& r);
void from_json(const njson& j, AnswerRecord& r);

struct EvalReport {
    PerceptionMetrics perception;
    ActionMetrics action;
    GradeReport grading;
    njson config_echo;
};

njson report_to_json(const EvalReport& report);
void write_report(const std::string& path, const EvalReport& report);

/// grades.csv: scenario_id, qa_index, question, answer, assessment, score.
void write_grades_csv(const std::string& path, const std::vector<AnswerRecord>& answers,
                      const GradeReport& grades);

}  // namespace driveqa::eval
