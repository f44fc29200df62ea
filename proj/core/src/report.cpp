#include "dlgctl/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dlgctl/errors.hpp"

namespace dlgctl {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1";

double round2(double x) { return std::round(x * 100.0) / 100.0; }

json json_of(const std::optional<double>& mean) {
    if (!mean) return nullptr;
    return round2(*mean);
}

json json_of(const std::optional<int>& v) {
    if (!v) return nullptr;
    return *v;
}

json stats_json(const PhaseStats& s) {
    return json{{"turn_count", s.turn_count},
                {"shift_count", s.shift_count},
                {"phase_count", s.phase_count},
                {"mean_turns_per_shift", json_of(s.mean_turns_per_shift)},
                {"mean_turns_per_phase", json_of(s.mean_turns_per_phase)}};
}

json assignments_json(const std::vector<ControlAssignment>& assignments) {
    json arr = json::array();
    for (const auto& a : assignments)
        arr.push_back(json{{"turn", a.turn_index},
                           {"speaker", to_string(a.speaker)},
                           {"controller", to_string(a.controller)},
                           {"rule", to_string(a.rule)}});
    return arr;
}

json phases_json(const std::vector<Phase>& phases) {
    json arr = json::array();
    for (const auto& p : phases) {
        json obj{{"controller", to_string(p.controller)},
                 {"start_turn", p.start_turn},
                 {"end_turn", p.end_turn}};
        obj["signal_turn"] = p.signal_turn ? json(*p.signal_turn) : json(nullptr);
        arr.push_back(std::move(obj));
    }
    return arr;
}

json shifts_json_value(const std::vector<ControlShift>& shifts) {
    json arr = json::array();
    for (const auto& s : shifts) {
        json cues = json::array();
        for (const auto& c : s.cue_words)
            cues.push_back(json{{"word", c.word}, {"position", c.position}});
        json obj{{"ordinal", s.ordinal},
                 {"after_turn", s.after_turn},
                 {"from", to_string(s.from)},
                 {"to", to_string(s.to)},
                 {"signal", to_string(s.signal)}};
        obj["subtype"] = s.subtype ? json(to_string(*s.subtype)) : json(nullptr);
        obj["signal_turn"] = s.signal_turn;
        obj["cue_words"] = std::move(cues);
        arr.push_back(std::move(obj));
    }
    return arr;
}

json audit_json_value(const CueAudit& a) {
    json words = json::object();
    for (const auto& [word, stat] : a.per_word)
        words[word] = json{{"with_shift", stat.with_shift}, {"without_shift", stat.without_shift}};
    return json{{"cue_with_shift", a.cue_with_shift},
                {"cue_without_shift", a.cue_without_shift},
                {"signal_without_uptake", a.signal_without_uptake},
                {"cue_marked_signal_events", a.cue_marked_signal_events},
                {"signal_event_total", a.signal_event_total},
                {"per_word", std::move(words)}};
}

json class_count_json(const ClassCount& c) {
    return json{{"count", c.count}, {"pct", json_of(c.pct)}};
}

json distribution_json(const ShiftDistribution& d) {
    return json{{"total_shifts", d.total},
                {"classes",
                 json{{"prompt", class_count_json(d.prompt)},
                      {"repetition", class_count_json(d.repetition)},
                      {"summary", class_count_json(d.summary)},
                      {"repetition_summary", class_count_json(d.repetition_summary)},
                      {"interruption", class_count_json(d.interruption)}}},
                {"interruption_subtypes",
                 json{{"vital_fact", class_count_json(d.vital_fact)},
                      {"response_to_vital_fact", class_count_json(d.response_to_vital_fact)},
                      {"clarification", class_count_json(d.clarification)},
                      {"unclassified", class_count_json(d.unclassified)}}}};
}

json crosstab_row_json(const CrosstabRow& r) {
    return json{{"within_topic", r.within_topic},
                {"topic_shift", r.topic_shift},
                {"pct_within", json_of(r.pct_within)}};
}

json crosstab_json(const Crosstab& t) {
    return json{{"prompt", crosstab_row_json(t.prompt)},
                {"repetition", crosstab_row_json(t.repetition)},
                {"summary", crosstab_row_json(t.summary)},
                {"repetition_summary", crosstab_row_json(t.repetition_summary)},
                {"interruption", crosstab_row_json(t.interruption)},
                {"total", crosstab_row_json(t.total)}};
}

json topics_json_value(const TopicAnalysis& t) {
    json topics = json::array();
    for (const auto& topic : t.topics)
        topics.push_back(json{{"index", topic.index},
                              {"start_turn", topic.start_turn},
                              {"end_turn", topic.end_turn},
                              {"initiator", to_string(topic.initiator)},
                              {"control_counts",
                               json{{"client", topic.client_turns},
                                    {"expert", topic.expert_turns}}}});
    json decisions = json::array();
    for (bool b : t.adjudication.topic_shift) decisions.push_back(b);
    json central = nullptr;
    if (t.central_shift) {
        const auto& c = *t.central_shift;
        central = json{{"boundary", c.boundary},
                       {"before", json{{"client", c.before_client}, {"expert", c.before_expert}}},
                       {"after", json{{"client", c.after_client}, {"expert", c.after_expert}}},
                       {"consistency", c.consistency}};
    }
    return json{{"adjudication",
                 json{{"topic_shift", std::move(decisions)},
                      {"unanimous", t.adjudication.unanimous},
                      {"one_dissent", t.adjudication.one_dissent}}},
                {"topics", std::move(topics)},
                {"central_shift", std::move(central)},
                {"initiation_dominance",
                 json{{"dominant", t.dominance.dominant},
                      {"ties", t.dominance.ties},
                      {"topics", t.dominance.topics}}}};
}

json dialogue_json(const DialogueAnalysis& a) {
    json obj{{"id", a.dialogue.id},
             {"turns", a.dialogue.turns.size()},
             {"assignments", assignments_json(a.assignments)},
             {"phases", phases_json(a.phases.display)},
             {"phases_mechanical", phases_json(a.phases.mechanical)},
             {"shifts", shifts_json_value(a.shifts)},
             {"audit", audit_json_value(a.audit)}};
    obj["topics"] = a.topics ? topics_json_value(*a.topics) : json(nullptr);
    return obj;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt_mean(const std::optional<double>& mean) {
    if (!mean) return "n/a";
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << round2(*mean);
    return out.str();
}

std::string fmt_pct(const std::optional<int>& pct) {
    if (!pct) return "n/a";
    return std::to_string(*pct) + "%";
}

void phases_table(std::ostream& out, const std::vector<Phase>& phases) {
    out << "  phase  controller  turns        signal_turn\n";
    for (size_t i = 0; i < phases.size(); ++i) {
        const Phase& p = phases[i];
        std::ostringstream span;
        span << p.start_turn << ".." << p.end_turn;
        out << "  " << std::left << std::setw(7) << i << std::setw(12) << to_string(p.controller)
            << std::setw(13) << span.str()
            << (p.signal_turn ? std::to_string(*p.signal_turn) : std::string("-")) << "\n";
    }
}

void shifts_table(std::ostream& out, const std::vector<ControlShift>& shifts) {
    out << "  shift  after_turn  from    to      signal        subtype                 cues\n";
    for (const auto& s : shifts) {
        std::string cues;
        for (const auto& c : s.cue_words) {
            if (!cues.empty()) cues += ",";
            cues += c.word;
        }
        out << "  " << std::left << std::setw(7) << s.ordinal << std::setw(12) << s.after_turn
            << std::setw(8) << to_string(s.from) << std::setw(8) << to_string(s.to) << std::setw(14)
            << to_string(s.signal) << std::setw(24)
            << (s.subtype ? to_string(*s.subtype) : "-") << (cues.empty() ? "-" : cues) << "\n";
    }
}

void audit_table(std::ostream& out, const CueAudit& a) {
    out << "  cue instances with shift:    " << a.cue_with_shift << "\n";
    out << "  cue instances without shift: " << a.cue_without_shift << "\n";
    out << "  signals without uptake:      " << a.signal_without_uptake << "\n";
    out << "  cue-marked signal events:    " << a.cue_marked_signal_events << " of "
        << a.signal_event_total << "\n";
    if (!a.per_word.empty()) {
        out << "  per word (with/without):\n";
        for (const auto& [word, stat] : a.per_word)
            out << "    " << std::left << std::setw(16) << word << stat.with_shift << "/"
                << stat.without_shift << "\n";
    }
}

void distribution_table(std::ostream& out, const ShiftDistribution& d) {
    auto row = [&](const char* name, const ClassCount& c) {
        out << "  " << std::left << std::setw(24) << name << std::setw(6) << c.count
            << fmt_pct(c.pct) << "\n";
    };
    out << "  class                   count pct\n";
    row("prompt", d.prompt);
    row("repetition", d.repetition);
    row("summary", d.summary);
    row("repetition+summary", d.repetition_summary);
    row("interruption", d.interruption);
    row("  vital_fact", d.vital_fact);
    row("  response_to_vital_fact", d.response_to_vital_fact);
    row("  clarification", d.clarification);
    row("  unclassified", d.unclassified);
}

void crosstab_table(std::ostream& out, const Crosstab& t) {
    auto row = [&](const char* name, const CrosstabRow& r) {
        out << "  " << std::left << std::setw(20) << name << std::setw(8) << r.within_topic
            << std::setw(8) << r.topic_shift << fmt_pct(r.pct_within) << "\n";
    };
    out << "  class               within  shift   pct_within\n";
    row("prompt", t.prompt);
    row("repetition", t.repetition);
    row("summary", t.summary);
    row("repetition+summary", t.repetition_summary);
    row("interruption", t.interruption);
    row("total", t.total);
}

void topics_table(std::ostream& out, const TopicAnalysis& t) {
    out << "  adjudication: " << t.adjudication.unanimous << " unanimous, "
        << t.adjudication.one_dissent << " with one dissent\n";
    out << "  topic  turns        initiator  client  expert\n";
    for (const auto& topic : t.topics) {
        std::ostringstream span;
        span << topic.start_turn << ".." << topic.end_turn;
        out << "  " << std::left << std::setw(7) << topic.index << std::setw(13) << span.str()
            << std::setw(11) << to_string(topic.initiator) << std::setw(8) << topic.client_turns
            << topic.expert_turns << "\n";
    }
    if (t.central_shift) {
        const auto& c = *t.central_shift;
        out << "  central shift before topic " << c.boundary << " (consistency " << c.consistency
            << "): before C" << c.before_client << "-E" << c.before_expert << ", after C"
            << c.after_client << "-E" << c.after_expert << "\n";
    } else {
        out << "  central shift: n/a\n";
    }
    out << "  initiator dominance: " << t.dominance.dominant << " of " << t.dominance.topics
        << " topics (" << t.dominance.ties << " tied)\n";
}

}  // namespace

DialogueAnalysis analyze_dialogue(const Dialogue& d, const ClassifierConfig& cfg,
                                  const std::optional<JudgeMatrix>& judges) {
    DialogueAnalysis a;
    a.dialogue = classify_dialogue(d, cfg);
    a.assignments = allocate_control(a.dialogue);
    a.phases = segment_phases(a.assignments);
    a.shifts = detect_shifts(a.dialogue, a.assignments, a.phases, cfg);
    a.audit = audit_cues(a.dialogue, a.assignments, a.phases, a.shifts, cfg);
    if (judges) {
        TopicAnalysis t;
        t.adjudication = adjudicate(*judges, a.shifts.size());
        t.topics = segment_topics(a.dialogue, a.assignments, a.shifts, t.adjudication.topic_shift);
        t.central_shift = find_central_shift(t.topics);
        t.dominance = initiation_dominance(t.topics);
        a.topics = std::move(t);
    }
    return a;
}

CorpusReport build_report(std::vector<DialogueAnalysis> analyses) {
    CorpusReport report;
    std::sort(analyses.begin(), analyses.end(),
              [](const DialogueAnalysis& a, const DialogueAnalysis& b) {
                  return a.dialogue.id < b.dialogue.id;
              });

    std::vector<PhaseSegmentation> segs;
    std::vector<ControlShift> all_shifts;
    std::vector<bool> all_topic_shifts;
    bool any_judges = false;
    for (const auto& a : analyses) {
        segs.push_back(a.phases);
        all_shifts.insert(all_shifts.end(), a.shifts.begin(), a.shifts.end());
        accumulate(report.audit, a.audit);
        if (a.topics) any_judges = true;
    }
    report.stats = phase_stats(segs);
    report.distribution = shift_distribution(all_shifts);

    if (any_judges) {
        std::vector<ControlShift> judged_shifts;
        std::vector<bool> decisions;
        for (const auto& a : analyses) {
            if (!a.topics) continue;
            judged_shifts.insert(judged_shifts.end(), a.shifts.begin(), a.shifts.end());
            decisions.insert(decisions.end(), a.topics->adjudication.topic_shift.begin(),
                             a.topics->adjudication.topic_shift.end());
        }
        report.cross = crosstab(judged_shifts, decisions);
    }
    report.dialogues = std::move(analyses);
    return report;
}

CorpusReport run_pipeline(const std::vector<PipelineInput>& inputs, const ClassifierConfig& cfg) {
    std::vector<DialogueAnalysis> analyses;
    for (const auto& input : inputs) {
        std::ifstream in(input.transcript_path);
        if (!in) throw ContractError("cannot open transcript file: " + input.transcript_path);
        Dialogue d = parse_transcript(in, input.transcript_path);

        std::optional<JudgeMatrix> judges;
        if (input.judges_path) {
            // The expected row count is the dialogue's shift count, so the
            // dialogue is analyzed first and the votes validated against it.
            DialogueAnalysis probe = analyze_dialogue(d, cfg);
            std::ifstream jin(*input.judges_path);
            if (!jin) throw ContractError("cannot open judge file: " + *input.judges_path);
            JudgeMatrix m = parse_judges(jin, probe.shifts.size(), *input.judges_path);
            m.dialogue_id = d.id;
            judges = std::move(m);
        }
        analyses.push_back(analyze_dialogue(d, cfg, judges));
    }
    return build_report(std::move(analyses));
}

std::string render_json(const CorpusReport& report) {
    json dialogues = json::array();
    for (const auto& a : report.dialogues) dialogues.push_back(dialogue_json(a));
    json corpus{{"stats", stats_json(report.stats)},
                {"distribution", distribution_json(report.distribution)},
                {"audit", audit_json_value(report.audit)}};
    corpus["crosstab"] = report.cross ? crosstab_json(*report.cross) : json(nullptr);
    return dump(json{{"schema_version", kSchemaVersion},
                     {"dialogues", std::move(dialogues)},
                     {"corpus", std::move(corpus)}});
}

std::string render_text(const CorpusReport& report) {
    std::ostringstream out;
    for (const auto& a : report.dialogues) {
        out << "dialogue " << a.dialogue.id << " (" << a.dialogue.turns.size() << " turns)\n";
        phases_table(out, a.phases.display);
        shifts_table(out, a.shifts);
        if (a.topics) topics_table(out, *a.topics);
        out << "\n";
    }
    out << "corpus\n";
    out << "  turns " << report.stats.turn_count << ", shifts " << report.stats.shift_count
        << ", phases " << report.stats.phase_count << ", mean turns/shift "
        << fmt_mean(report.stats.mean_turns_per_shift) << ", mean turns/phase "
        << fmt_mean(report.stats.mean_turns_per_phase) << "\n";
    distribution_table(out, report.distribution);
    audit_table(out, report.audit);
    if (report.cross) crosstab_table(out, *report.cross);
    return out.str();
}

std::string segment_json(const DialogueAnalysis& a, bool mechanical) {
    return dump(json{{"schema_version", kSchemaVersion},
                     {"dialogue", a.dialogue.id},
                     {"assignments", assignments_json(a.assignments)},
                     {"phases", phases_json(mechanical ? a.phases.mechanical : a.phases.display)},
                     {"stats", stats_json(phase_stats({a.phases}))}});
}

std::string segment_text(const DialogueAnalysis& a, bool mechanical) {
    std::ostringstream out;
    out << "dialogue " << a.dialogue.id << (mechanical ? " (mechanical phases)" : "") << "\n";
    out << "  turn  speaker  controller  rule\n";
    for (const auto& asg : a.assignments)
        out << "  " << std::left << std::setw(6) << asg.turn_index << std::setw(9)
            << to_string(asg.speaker) << std::setw(12) << to_string(asg.controller)
            << to_string(asg.rule) << "\n";
    phases_table(out, mechanical ? a.phases.mechanical : a.phases.display);
    PhaseStats stats = phase_stats({a.phases});
    out << "  turns " << stats.turn_count << ", shifts " << stats.shift_count
        << ", mean turns/shift " << fmt_mean(stats.mean_turns_per_shift) << "\n";
    return out.str();
}

std::string shifts_json(const DialogueAnalysis& a) {
    return dump(json{{"schema_version", kSchemaVersion},
                     {"dialogue", a.dialogue.id},
                     {"shifts", shifts_json_value(a.shifts)}});
}

std::string shifts_text(const DialogueAnalysis& a) {
    std::ostringstream out;
    out << "dialogue " << a.dialogue.id << "\n";
    shifts_table(out, a.shifts);
    return out.str();
}

std::string audit_json(const DialogueAnalysis& a) {
    return dump(json{{"schema_version", kSchemaVersion},
                     {"dialogue", a.dialogue.id},
                     {"audit", audit_json_value(a.audit)}});
}

std::string audit_text(const DialogueAnalysis& a) {
    std::ostringstream out;
    out << "dialogue " << a.dialogue.id << "\n";
    audit_table(out, a.audit);
    return out.str();
}

std::string topics_json(const DialogueAnalysis& a) {
    if (!a.topics) throw ContractError("no judge votes supplied for dialogue " + a.dialogue.id);
    return dump(json{{"schema_version", kSchemaVersion},
                     {"dialogue", a.dialogue.id},
                     {"analysis", topics_json_value(*a.topics)},
                     {"crosstab", crosstab_json(crosstab(a.shifts, a.topics->adjudication.topic_shift))}});
}

std::string topics_text(const DialogueAnalysis& a) {
    if (!a.topics) throw ContractError("no judge votes supplied for dialogue " + a.dialogue.id);
    std::ostringstream out;
    out << "dialogue " << a.dialogue.id << "\n";
    topics_table(out, *a.topics);
    crosstab_table(out, crosstab(a.shifts, a.topics->adjudication.topic_shift));
    return out.str();
}

namespace {

json event_json(const AssertionEvent& ev) {
    return json{{"speaker", to_string(ev.speaker)}, {"proposition", ev.proposition},
                {"stance", to_string(ev.asserted)}, {"relevant", ev.relevant},
                {"ambiguous", ev.ambiguous},        {"about_plan", ev.about_plan}};
}

}  // namespace

std::string simulate_json(const Scenario& scenario, const std::vector<ScenarioStep>& steps) {
    json arr = json::array();
    for (const auto& step : steps) {
        json obj{{"event", event_json(step.event)}};
        obj["trigger"] = step.trigger
                             ? json{{"rule", to_string(step.trigger->rule)},
                                    {"proposition", step.trigger->proposition},
                                    {"rationale", step.trigger->rationale}}
                             : json(nullptr);
        arr.push_back(std::move(obj));
    }
    return dump(json{{"schema_version", kSchemaVersion},
                     {"scenario", scenario.id},
                     {"steps", std::move(arr)}});
}

std::string simulate_text(const Scenario& scenario, const std::vector<ScenarioStep>& steps) {
    std::ostringstream out;
    out << "scenario " << scenario.id << "\n";
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& step = steps[i];
        out << "  " << i << ": " << to_string(step.event.speaker) << " asserts "
            << step.event.proposition << "=" << to_string(step.event.asserted);
        if (step.trigger) {
            out << "  -> interrupt [" << to_string(step.trigger->rule) << " "
                << step.trigger->proposition << "] " << step.trigger->rationale;
        } else {
            out << "  -> no interruption";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace dlgctl
