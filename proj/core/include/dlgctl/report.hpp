#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlgctl/interruption.hpp"
#include "dlgctl/topics.hpp"

namespace dlgctl {

struct TopicAnalysis {
    Adjudication adjudication;
    std::vector<Topic> topics;
    std::optional<CentralShiftReport> central_shift;
    InitiationDominance dominance;
};

struct DialogueAnalysis {
    Dialogue dialogue;  // with resolved types
    std::vector<ControlAssignment> assignments;
    PhaseSegmentation phases;
    std::vector<ControlShift> shifts;
    CueAudit audit;
    std::optional<TopicAnalysis> topics;
};

/// Classifies, allocates control, segments, classifies shifts and audits one
/// dialogue; adjudicates topics when judge votes are supplied.
DialogueAnalysis analyze_dialogue(const Dialogue& d, const ClassifierConfig& cfg,
                                  const std::optional<JudgeMatrix>& judges = std::nullopt);

struct CorpusReport {
    std::vector<DialogueAnalysis> dialogues;  // ordered by dialogue id
    PhaseStats stats;
    ShiftDistribution distribution;
    CueAudit audit;
    std::optional<Crosstab> cross;  // over dialogues that have judge votes
};

/// Deterministic ordered merge of per-dialogue analyses (sorted by id) plus
/// corpus aggregates.
CorpusReport build_report(std::vector<DialogueAnalysis> analyses);

struct PipelineInput {
    std::string transcript_path;
    std::optional<std::string> judges_path;
};

/// Reads, analyzes and aggregates a corpus from disk.  Throws ParseError /
/// ContractError with file context on any malformed input.
CorpusReport run_pipeline(const std::vector<PipelineInput>& inputs, const ClassifierConfig& cfg);

// Renderers.  JSON output is byte-stable for identical inputs: object keys
// are emitted in a fixed order, percentages are integers and means are
// rounded to two decimals.
std::string render_json(const CorpusReport& report);
std::string render_text(const CorpusReport& report);

std::string segment_json(const DialogueAnalysis& a, bool mechanical);
std::string segment_text(const DialogueAnalysis& a, bool mechanical);
std::string shifts_json(const DialogueAnalysis& a);
std::string shifts_text(const DialogueAnalysis& a);
std::string audit_json(const DialogueAnalysis& a);
std::string audit_text(const DialogueAnalysis& a);
std::string topics_json(const DialogueAnalysis& a);
std::string topics_text(const DialogueAnalysis& a);
std::string simulate_json(const Scenario& scenario, const std::vector<ScenarioStep>& steps);
std::string simulate_text(const Scenario& scenario, const std::vector<ScenarioStep>& steps);

}  // namespace dlgctl
