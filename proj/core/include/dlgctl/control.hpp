#pragma once

#include <optional>
#include <vector>

#include "dlgctl/transcript.hpp"

namespace dlgctl {

enum class ControlRule {
    QuestionDefault,
    QuestionAfterQorC,  // question elicited by the other side's question/command
    AssertionDefault,
    AssertionAnswer,    // assertion answering the other side's question
    Command,
    Prompt,             // prompt cedes the turn to the listener
};

const char* to_string(ControlRule r);

struct ControlAssignment {
    int turn_index = 0;
    Role speaker = Role::Expert;
    Role controller = Role::Expert;
    ControlRule rule = ControlRule::AssertionDefault;

    bool operator==(const ControlAssignment&) const = default;
};

/// A maximal run of turns with one controller.  signal_turn is set when the
/// phase is closed by the controller's own prompt.
struct Phase {
    Role controller = Role::Expert;
    int start_turn = 0;
    int end_turn = 0;  // inclusive
    std::optional<int> signal_turn;

    int length() const { return end_turn - start_turn + 1; }

    bool operator==(const Phase&) const = default;
};

/// Two views of the same segmentation.  Mechanically, a closing prompt is the
/// first turn of the next controller's phase (the prompt assigns control to
/// the listener).  For display the boundary is drawn after the prompt, so the
/// prompt turn is shown with the phase it closes.  When an end-of-dialogue
/// prompt is never taken up, the display view has one phase fewer.
struct PhaseSegmentation {
    std::vector<Phase> mechanical;
    std::vector<Phase> display;
};

/// Assigns a controller to every turn from its final utterance's resolved
/// type: questions and assertions default to the speaker but cede to the
/// listener when elicited (question after question/command, assertion after
/// question); commands keep the speaker; prompts cede to the listener.
std::vector<ControlAssignment> allocate_control(const Dialogue& d);

PhaseSegmentation segment_phases(const std::vector<ControlAssignment>& assignments);

struct PhaseStats {
    long turn_count = 0;
    long shift_count = 0;  // display boundaries
    long phase_count = 0;  // display phases
    std::optional<double> mean_turns_per_shift;
    std::optional<double> mean_turns_per_phase;
};

/// Corpus-level aggregate over per-dialogue segmentations.
PhaseStats phase_stats(const std::vector<PhaseSegmentation>& corpus);

}  // namespace dlgctl
