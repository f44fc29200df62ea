#include "dlgctl/control.hpp"

#include "dlgctl/errors.hpp"

namespace dlgctl {

const char* to_string(ControlRule r) {
    switch (r) {
        case ControlRule::QuestionDefault: return "question_default";
        case ControlRule::QuestionAfterQorC: return "question_after_question_or_command";
        case ControlRule::AssertionDefault: return "assertion_default";
        case ControlRule::AssertionAnswer: return "assertion_answer";
        case ControlRule::Command: return "command";
        case ControlRule::Prompt: return "prompt";
    }
    return "?";
}

std::vector<ControlAssignment> allocate_control(const Dialogue& d) {
    std::vector<ControlAssignment> out;
    out.reserve(d.turns.size());
    std::optional<UtteranceType> prev_type;
    for (const auto& turn : d.turns) {
        const Utterance& final_u = turn.final_utterance();
        if (!final_u.resolved_type)
            throw ContractError("dialogue '" + d.id + "' has unresolved utterance types; classify first");
        const UtteranceType t = *final_u.resolved_type;
        const Role speaker = turn.speaker;

        ControlAssignment a;
        a.turn_index = turn.index;
        a.speaker = speaker;
        switch (t) {
            case UtteranceType::Question:
                if (prev_type && (*prev_type == UtteranceType::Question ||
                                  *prev_type == UtteranceType::Command)) {
                    a.controller = other(speaker);
                    a.rule = ControlRule::QuestionAfterQorC;
                } else {
                    a.controller = speaker;
                    a.rule = ControlRule::QuestionDefault;
                }
                break;
            case UtteranceType::Assertion:
                if (prev_type && *prev_type == UtteranceType::Question) {
                    a.controller = other(speaker);
                    a.rule = ControlRule::AssertionAnswer;
                } else {
                    a.controller = speaker;
                    a.rule = ControlRule::AssertionDefault;
                }
                break;
            case UtteranceType::Command:
                a.controller = speaker;
                a.rule = ControlRule::Command;
                break;
            case UtteranceType::Prompt:
                a.controller = other(speaker);
                a.rule = ControlRule::Prompt;
                break;
        }
        out.push_back(a);
        prev_type = t;
    }
    return out;
}

PhaseSegmentation segment_phases(const std::vector<ControlAssignment>& assignments) {
    PhaseSegmentation seg;
    if (assignments.empty()) return seg;

    for (const auto& a : assignments) {
        if (!seg.mechanical.empty() && seg.mechanical.back().controller == a.controller) {
            seg.mechanical.back().end_turn = a.turn_index;
        } else {
            seg.mechanical.push_back({a.controller, a.turn_index, a.turn_index, std::nullopt});
        }
    }

    const size_t n = seg.mechanical.size();
    // extend[i]: phase i+1 opens with the outgoing controller's prompt, so the
    // drawn boundary moves after that prompt turn.
    std::vector<char> extend(n, 0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const auto& first = assignments[seg.mechanical[i + 1].start_turn - assignments.front().turn_index];
        extend[i] = first.rule == ControlRule::Prompt;
    }
    // Never let an extension swallow a whole interior phase (cannot happen for
    // rule-consistent assignments, but segmentation stays total regardless).
    for (size_t i = 1; i + 1 < n; ++i) {
        if (extend[i - 1] && !extend[i] && seg.mechanical[i].length() == 1) extend[i - 1] = 0;
    }

    seg.display = seg.mechanical;
    for (size_t i = 0; i + 1 < n; ++i) {
        if (!extend[i]) continue;
        const int prompt_turn = seg.mechanical[i + 1].start_turn;
        seg.display[i].end_turn = prompt_turn;
        seg.display[i].signal_turn = prompt_turn;
        seg.display[i + 1].start_turn = prompt_turn + 1;
    }
    if (!seg.display.empty() && seg.display.back().start_turn > seg.display.back().end_turn)
        seg.display.pop_back();
    return seg;
}

PhaseStats phase_stats(const std::vector<PhaseSegmentation>& corpus) {
    PhaseStats stats;
    for (const auto& seg : corpus) {
        if (seg.display.empty()) continue;
        stats.turn_count += seg.display.back().end_turn - seg.display.front().start_turn + 1;
        stats.phase_count += static_cast<long>(seg.display.size());
        stats.shift_count += static_cast<long>(seg.display.size()) - 1;
    }
    if (stats.shift_count > 0)
        stats.mean_turns_per_shift = static_cast<double>(stats.turn_count) / stats.shift_count;
    if (stats.phase_count > 0)
        stats.mean_turns_per_phase = static_cast<double>(stats.turn_count) / stats.phase_count;
    return stats;
}

}  // namespace dlgctl
