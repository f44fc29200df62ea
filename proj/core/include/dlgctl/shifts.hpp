#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dlgctl/classifier.hpp"
#include "dlgctl/control.hpp"

namespace dlgctl {

enum class SignalClass { Prompt, Repetition, Summary, Interruption };
enum class InterruptionSubtype { VitalFact, ResponseToVitalFact, Clarification, Unclassified };

const char* to_string(SignalClass s);
const char* to_string(InterruptionSubtype s);

struct ControlShift {
    int ordinal = 0;     // 0-based within the dialogue
    int after_turn = 0;  // display boundary: drawn after this turn
    Role from = Role::Expert;
    Role to = Role::Client;
    SignalClass signal = SignalClass::Interruption;
    std::optional<InterruptionSubtype> subtype;  // present iff signal == Interruption
    int signal_turn = 0;  // abdication turn for prompt/repetition/summary, interrupting turn otherwise
    std::vector<CueOccurrence> cue_words;  // on the signal utterance

    bool operator==(const ControlShift&) const = default;
};

/// Tokens minus stop words and cue-lexicon words; the lexical stand-in for
/// propositional content.
std::set<std::string> content_words(std::string_view text, const ClassifierConfig& cfg);

/// True when u restates earlier material: its content words are non-empty and
/// all occur in prior assertions.  The `rep` annotation flag forces true.
bool detect_repetition(const Utterance& u, const std::vector<std::string>& prior_assertion_texts,
                       const ClassifierConfig& cfg);

/// Classifies every display boundary of the dialogue.
std::vector<ControlShift> detect_shifts(const Dialogue& d,
                                        const std::vector<ControlAssignment>& assignments,
                                        const PhaseSegmentation& seg,
                                        const ClassifierConfig& cfg);

struct CueWordStat {
    int with_shift = 0;
    int without_shift = 0;
};

struct CueAudit {
    int cue_with_shift = 0;           // cue instances on shift signal utterances
    int cue_without_shift = 0;        // cue instances anywhere else
    int signal_without_uptake = 0;    // abdication signals the listener never took up
    int cue_marked_signal_events = 0; // repetition/summary/interruption shifts carrying a cue
    int signal_event_total = 0;       // shifts other than prompt shifts
    std::map<std::string, CueWordStat> per_word;
};

/// Sums counters of b into a (for corpus aggregation).
void accumulate(CueAudit& a, const CueAudit& b);

CueAudit audit_cues(const Dialogue& d, const std::vector<ControlAssignment>& assignments,
                    const PhaseSegmentation& seg, const std::vector<ControlShift>& shifts,
                    const ClassifierConfig& cfg);

struct ClassCount {
    int count = 0;
    std::optional<int> pct;  // of total shifts, nearest integer; absent when no shifts

    bool operator==(const ClassCount&) const = default;
};

struct ShiftDistribution {
    int total = 0;
    ClassCount prompt, repetition, summary, repetition_summary, interruption;
    ClassCount vital_fact, response_to_vital_fact, clarification, unclassified;
};

ShiftDistribution shift_distribution(const std::vector<ControlShift>& shifts);

}  // namespace dlgctl
