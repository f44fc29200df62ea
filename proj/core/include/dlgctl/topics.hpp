#pragma once

#include <optional>
#include <vector>

#include "dlgctl/shifts.hpp"

namespace dlgctl {

struct Adjudication {
    std::vector<bool> topic_shift;  // one decision per control shift
    int unanimous = 0;              // rows where all judges agree
    int one_dissent = 0;            // rows where exactly one judge dissents
};

/// Strict-majority vote per row; ties (possible with an even judge count) are
/// resolved as "no topic shift".  Throws when the row count does not match.
Adjudication adjudicate(const JudgeMatrix& matrix, std::size_t shift_count);

struct CrosstabRow {
    int within_topic = 0;
    int topic_shift = 0;
    std::optional<int> pct_within;  // nearest integer; absent when the class is empty

    bool operator==(const CrosstabRow&) const = default;
};

struct Crosstab {
    CrosstabRow prompt, repetition, summary, repetition_summary, interruption, total;
};

/// Per-signal-class counts of shifts that stay within topic vs. open a new
/// topic.  shifts and topic_shift must be aligned.
Crosstab crosstab(const std::vector<ControlShift>& shifts, const std::vector<bool>& topic_shift);

struct Topic {
    int index = 0;
    int start_turn = 0;
    int end_turn = 0;  // inclusive
    Role initiator = Role::Expert;
    int client_turns = 0;  // turns controlled by the client
    int expert_turns = 0;

    int control_count(Role r) const { return r == Role::Expert ? expert_turns : client_turns; }

    bool operator==(const Topic&) const = default;
};

/// Cuts the dialogue at the adjudicated topic-shift boundaries and counts
/// controlled turns per participant inside each topic.
std::vector<Topic> segment_topics(const Dialogue& d,
                                  const std::vector<ControlAssignment>& assignments,
                                  const std::vector<ControlShift>& shifts,
                                  const std::vector<bool>& topic_shift);

struct CentralShiftReport {
    int boundary = 0;  // number of topics before the split; may equal the topic count
    int before_client = 0;
    int before_expert = 0;
    int after_client = 0;
    int after_expert = 0;
    int consistency = 0;  // client-dominated topics before + expert-dominated after

    bool operator==(const CentralShiftReport&) const = default;
};

/// The topic boundary that best splits the dialogue into a client-dominated
/// early part and an expert-dominated late part (earliest boundary on ties).
/// Absent when there are fewer than two topics.
std::optional<CentralShiftReport> find_central_shift(const std::vector<Topic>& topics);

struct InitiationDominance {
    int dominant = 0;  // topics whose initiator controls strictly more turns
    int ties = 0;      // topics with equal control counts
    int topics = 0;
};

InitiationDominance initiation_dominance(const std::vector<Topic>& topics);

}  // namespace dlgctl
