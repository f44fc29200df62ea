#include "dlgctl/shifts.hpp"

#include <algorithm>
#include <cmath>

#include "dlgctl/text.hpp"

namespace dlgctl {

const char* to_string(SignalClass s) {
    switch (s) {
        case SignalClass::Prompt: return "prompt";
        case SignalClass::Repetition: return "repetition";
        case SignalClass::Summary: return "summary";
        case SignalClass::Interruption: return "interruption";
    }
    return "?";
}

const char* to_string(InterruptionSubtype s) {
    switch (s) {
        case InterruptionSubtype::VitalFact: return "vital_fact";
        case InterruptionSubtype::ResponseToVitalFact: return "response_to_vital_fact";
        case InterruptionSubtype::Clarification: return "clarification";
        case InterruptionSubtype::Unclassified: return "unclassified";
    }
    return "?";
}

namespace {

const std::set<std::string>& stop_words() {
    static const std::set<std::string> words = {
        "a",      "about", "after",  "again", "all",   "am",    "an",    "any",    "are",
        "as",     "at",    "be",     "been",  "being", "by",    "can",   "could",  "did",
        "do",     "does",  "done",   "down",  "for",   "from",  "had",   "has",    "have",
        "he",     "her",   "here",   "him",   "his",   "i",     "i'll",  "i've",   "if",
        "in",     "into",  "is",     "it",    "it's",  "its",   "just",  "may",    "me",
        "might",  "must",  "my",     "not",   "of",    "off",   "on",    "or",     "our",
        "out",    "over",  "shall",  "she",   "should", "than",  "that",  "the",    "their",
        "them",   "then",  "there",  "there's", "these", "they",  "this",  "those",  "to",
        "too",    "under", "up",     "very",  "was",   "we",    "were",  "what",   "when",
        "where",  "which", "who",    "why",   "will",  "with",  "would", "you",    "your",
    };
    return words;
}

// Markers signalling a contradiction or an addition to what was just said.
const std::vector<std::vector<std::string>>& vital_markers() {
    static const std::vector<std::vector<std::string>> markers = {
        {"though"}, {"well", "actually"}, {"as", "well"}};
    return markers;
}

bool contains_marker(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& marker) {
    if (marker.empty() || tokens.size() < marker.size()) return false;
    for (size_t i = 0; i + marker.size() <= tokens.size(); ++i)
        if (std::equal(marker.begin(), marker.end(), tokens.begin() + i)) return true;
    return false;
}

// Texts of resolved assertions strictly before turn `turn_limit`, plus those
// before `utterance_limit` within that turn.
std::vector<std::string> prior_assertions(const Dialogue& d, int turn_limit,
                                          size_t utterance_limit) {
    std::vector<std::string> out;
    for (const auto& turn : d.turns) {
        if (turn.index > turn_limit) break;
        size_t count = turn.index == turn_limit ? utterance_limit : turn.utterances.size();
        for (size_t i = 0; i < count && i < turn.utterances.size(); ++i) {
            const auto& u = turn.utterances[i];
            if (u.resolved_type == UtteranceType::Assertion) out.push_back(u.text);
        }
    }
    return out;
}

std::optional<int> pct_of(int count, int total) {
    if (total == 0) return std::nullopt;
    return static_cast<int>(std::lround(100.0 * count / total));
}

}  // namespace

std::set<std::string> content_words(std::string_view text, const ClassifierConfig& cfg) {
    std::set<std::string> cue_words;
    for (const auto& entry : cfg.cue_lexicon)
        for (const auto& t : tokenize(entry)) cue_words.insert(t);

    std::set<std::string> out;
    for (const auto& t : tokenize(text)) {
        if (stop_words().count(t) || cue_words.count(t)) continue;
        out.insert(t);
    }
    return out;
}

bool detect_repetition(const Utterance& u, const std::vector<std::string>& prior_assertion_texts,
                       const ClassifierConfig& cfg) {
    if (u.flags.repetition) return true;
    const std::set<std::string> own = content_words(u.text, cfg);
    if (own.empty()) return false;
    std::set<std::string> prior;
    for (const auto& text : prior_assertion_texts) {
        auto words = content_words(text, cfg);
        prior.insert(words.begin(), words.end());
    }
    return std::includes(prior.begin(), prior.end(), own.begin(), own.end());
}

namespace {

// Last turn within [start, end] spoken by `who`, or -1.
int last_turn_by(const Dialogue& d, int start, int end, Role who) {
    for (int t = end; t >= start; --t)
        if (d.turns[static_cast<size_t>(t)].speaker == who) return t;
    return -1;
}

InterruptionSubtype classify_interruption(const Dialogue& d, size_t boundary,
                                          const std::vector<ControlShift>& prior,
                                          int interrupting_turn) {
    const Turn& turn = d.turns[static_cast<size_t>(interrupting_turn)];
    const Utterance& u = turn.final_utterance();

    // (a) Interrupting to disambiguate what was just said.
    if (u.resolved_type == UtteranceType::Question || u.flags.clarification)
        return InterruptionSubtype::Clarification;

    // (b) Control reverting after the other side injected a decisive fact.
    const bool reverts = boundary >= 1;  // a phase before the outgoing one exists
    bool after_vital_fact = !prior.empty() && prior.back().signal == SignalClass::Interruption &&
                            prior.back().subtype == InterruptionSubtype::VitalFact;
    if (!after_vital_fact && interrupting_turn > 0) {
        for (const auto& pu : d.turns[static_cast<size_t>(interrupting_turn - 1)].utterances)
            if (pu.flags.vital) after_vital_fact = true;
    }
    if (after_vital_fact && reverts) return InterruptionSubtype::ResponseToVitalFact;

    // (c) Supplying or contradicting information the other side lacks.
    if (u.flags.vital || [&] {
            auto tokens = tokenize(u.text);
            for (const auto& m : vital_markers())
                if (contains_marker(tokens, m)) return true;
            return false;
        }())
        return InterruptionSubtype::VitalFact;

    return InterruptionSubtype::Unclassified;
}

}  // namespace

std::vector<ControlShift> detect_shifts(const Dialogue& d,
                                        const std::vector<ControlAssignment>& assignments,
                                        const PhaseSegmentation& seg, const ClassifierConfig& cfg) {
    std::vector<ControlShift> shifts;
    if (seg.display.size() < 2) return shifts;

    for (size_t i = 0; i + 1 < seg.display.size(); ++i) {
        const Phase& out = seg.display[i];
        const Phase& in = seg.display[i + 1];
        const Phase& in_mech = seg.mechanical[i + 1];

        ControlShift s;
        s.ordinal = static_cast<int>(i);
        s.after_turn = out.end_turn;
        s.from = out.controller;
        s.to = in.controller;

        const ControlAssignment& entry = assignments[static_cast<size_t>(in_mech.start_turn)];
        if (entry.rule == ControlRule::Prompt) {
            s.signal = SignalClass::Prompt;
            s.signal_turn = in_mech.start_turn;
        } else {
            const int signal_turn = last_turn_by(d, out.start_turn, out.end_turn, out.controller);
            const Utterance* signal_u =
                signal_turn >= 0 ? &d.turns[static_cast<size_t>(signal_turn)].final_utterance()
                                 : nullptr;
            bool is_rep = false;
            if (signal_u && signal_u->resolved_type == UtteranceType::Assertion) {
                auto priors = prior_assertions(
                    d, signal_turn, d.turns[static_cast<size_t>(signal_turn)].utterances.size() - 1);
                is_rep = detect_repetition(*signal_u, priors, cfg);
            }
            if (signal_u && is_rep) {
                s.signal = SignalClass::Repetition;
                s.signal_turn = signal_turn;
            } else if (signal_u && signal_u->flags.summary) {
                s.signal = SignalClass::Summary;
                s.signal_turn = signal_turn;
            } else {
                s.signal = SignalClass::Interruption;
                s.signal_turn = in.start_turn;
                s.subtype = classify_interruption(d, i, shifts, in.start_turn);
            }
        }
        s.cue_words = detect_cue_words(
            d.turns[static_cast<size_t>(s.signal_turn)].final_utterance(), cfg);
        shifts.push_back(std::move(s));
    }
    return shifts;
}

void accumulate(CueAudit& a, const CueAudit& b) {
    a.cue_with_shift += b.cue_with_shift;
    a.cue_without_shift += b.cue_without_shift;
    a.signal_without_uptake += b.signal_without_uptake;
    a.cue_marked_signal_events += b.cue_marked_signal_events;
    a.signal_event_total += b.signal_event_total;
    for (const auto& [word, stat] : b.per_word) {
        a.per_word[word].with_shift += stat.with_shift;
        a.per_word[word].without_shift += stat.without_shift;
    }
}

CueAudit audit_cues(const Dialogue& d, const std::vector<ControlAssignment>& assignments,
                    const PhaseSegmentation& seg, const std::vector<ControlShift>& shifts,
                    const ClassifierConfig& cfg) {
    CueAudit audit;

    // Signal utterances: the final utterance of each shift's signal turn.
    std::map<int, const ControlShift*> signal_turns;
    for (const auto& s : shifts) signal_turns[s.signal_turn] = &s;

    for (const auto& turn : d.turns) {
        auto it = signal_turns.find(turn.index);
        for (size_t ui = 0; ui < turn.utterances.size(); ++ui) {
            const Utterance& u = turn.utterances[ui];
            const bool is_signal_utterance =
                it != signal_turns.end() && ui + 1 == turn.utterances.size();
            auto cues = detect_cue_words(u, cfg);
            if (is_signal_utterance) {
                if (u.flags.cue_prefix) continue;  // a spoken prefix, not a cue
                for (const auto& c : cues) {
                    ++audit.cue_with_shift;
                    ++audit.per_word[c.word].with_shift;
                }
            } else {
                for (const auto& c : cues) {
                    ++audit.cue_without_shift;
                    ++audit.per_word[c.word].without_shift;
                }
            }
        }
    }

    for (const auto& s : shifts) {
        if (s.signal == SignalClass::Prompt) continue;
        ++audit.signal_event_total;
        const Utterance& u = d.turns[static_cast<size_t>(s.signal_turn)].final_utterance();
        if (!u.flags.cue_prefix && !s.cue_words.empty()) ++audit.cue_marked_signal_events;
    }

    // Failed uptake: the controller signals abdication but is back in control
    // on the very next turn (or the dialogue ends on the signal).
    const int last = static_cast<int>(d.turns.size()) - 1;
    for (int t = 1; t <= last; ++t) {
        const Turn& turn = d.turns[static_cast<size_t>(t)];
        const Utterance& u = turn.final_utterance();
        if (assignments[static_cast<size_t>(t - 1)].controller != turn.speaker) continue;

        bool is_signal = u.resolved_type == UtteranceType::Prompt;
        if (!is_signal && u.resolved_type == UtteranceType::Assertion) {
            if (u.flags.summary) {
                is_signal = true;
            } else {
                auto priors = prior_assertions(d, t, turn.utterances.size() - 1);
                is_signal = detect_repetition(u, priors, cfg);
            }
        }
        if (!is_signal) continue;
        if (t == last || assignments[static_cast<size_t>(t + 1)].controller == turn.speaker)
            ++audit.signal_without_uptake;
    }
    return audit;
}

ShiftDistribution shift_distribution(const std::vector<ControlShift>& shifts) {
    ShiftDistribution dist;
    dist.total = static_cast<int>(shifts.size());
    for (const auto& s : shifts) {
        switch (s.signal) {
            case SignalClass::Prompt: ++dist.prompt.count; break;
            case SignalClass::Repetition: ++dist.repetition.count; break;
            case SignalClass::Summary: ++dist.summary.count; break;
            case SignalClass::Interruption:
                ++dist.interruption.count;
                switch (s.subtype.value_or(InterruptionSubtype::Unclassified)) {
                    case InterruptionSubtype::VitalFact: ++dist.vital_fact.count; break;
                    case InterruptionSubtype::ResponseToVitalFact:
                        ++dist.response_to_vital_fact.count;
                        break;
                    case InterruptionSubtype::Clarification: ++dist.clarification.count; break;
                    case InterruptionSubtype::Unclassified: ++dist.unclassified.count; break;
                }
                break;
        }
    }
    dist.repetition_summary.count = dist.repetition.count + dist.summary.count;
    for (ClassCount* c : {&dist.prompt, &dist.repetition, &dist.summary, &dist.repetition_summary,
                          &dist.interruption, &dist.vital_fact, &dist.response_to_vital_fact,
                          &dist.clarification, &dist.unclassified})
        c->pct = pct_of(c->count, dist.total);
    return dist;
}

}  // namespace dlgctl
