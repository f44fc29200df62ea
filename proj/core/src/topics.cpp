#include "dlgctl/topics.hpp"

#include <algorithm>
#include <cmath>

#include "dlgctl/errors.hpp"

namespace dlgctl {

Adjudication adjudicate(const JudgeMatrix& matrix, std::size_t shift_count) {
    if (matrix.votes.size() != shift_count)
        throw ContractError("judge matrix has " + std::to_string(matrix.votes.size()) +
                            " rows but the dialogue has " + std::to_string(shift_count) +
                            " control shifts");
    Adjudication adj;
    adj.topic_shift.reserve(matrix.votes.size());
    for (const auto& row : matrix.votes) {
        const int j = static_cast<int>(row.size());
        const int yes = static_cast<int>(std::count(row.begin(), row.end(), true));
        const int agree = std::max(yes, j - yes);
        if (agree == j) ++adj.unanimous;
        else if (agree == j - 1) ++adj.one_dissent;
        adj.topic_shift.push_back(2 * yes > j);
    }
    return adj;
}

namespace {

std::optional<int> pct_within(const CrosstabRow& row) {
    const int total = row.within_topic + row.topic_shift;
    if (total == 0) return std::nullopt;
    return static_cast<int>(std::lround(100.0 * row.within_topic / total));
}

}  // namespace

Crosstab crosstab(const std::vector<ControlShift>& shifts, const std::vector<bool>& topic_shift) {
    if (shifts.size() != topic_shift.size())
        throw ContractError("crosstab: shifts and topic decisions are not aligned");
    Crosstab tab;
    for (size_t i = 0; i < shifts.size(); ++i) {
        CrosstabRow* row = nullptr;
        switch (shifts[i].signal) {
            case SignalClass::Prompt: row = &tab.prompt; break;
            case SignalClass::Repetition: row = &tab.repetition; break;
            case SignalClass::Summary: row = &tab.summary; break;
            case SignalClass::Interruption: row = &tab.interruption; break;
        }
        if (topic_shift[i]) ++row->topic_shift;
        else ++row->within_topic;
    }
    tab.repetition_summary.within_topic = tab.repetition.within_topic + tab.summary.within_topic;
    tab.repetition_summary.topic_shift = tab.repetition.topic_shift + tab.summary.topic_shift;
    tab.total.within_topic = tab.prompt.within_topic + tab.repetition_summary.within_topic +
                             tab.interruption.within_topic;
    tab.total.topic_shift = tab.prompt.topic_shift + tab.repetition_summary.topic_shift +
                            tab.interruption.topic_shift;
    for (CrosstabRow* r : {&tab.prompt, &tab.repetition, &tab.summary, &tab.repetition_summary,
                           &tab.interruption, &tab.total})
        r->pct_within = pct_within(*r);
    return tab;
}

std::vector<Topic> segment_topics(const Dialogue& d,
                                  const std::vector<ControlAssignment>& assignments,
                                  const std::vector<ControlShift>& shifts,
                                  const std::vector<bool>& topic_shift) {
    if (shifts.size() != topic_shift.size())
        throw ContractError("segment_topics: shifts and topic decisions are not aligned");

    std::vector<int> boundaries;  // topic ends (inclusive turn indices)
    for (size_t i = 0; i < shifts.size(); ++i)
        if (topic_shift[i]) boundaries.push_back(shifts[i].after_turn);
    boundaries.push_back(static_cast<int>(d.turns.size()) - 1);

    std::vector<Topic> topics;
    int start = 0;
    for (int end : boundaries) {
        Topic t;
        t.index = static_cast<int>(topics.size());
        t.start_turn = start;
        t.end_turn = end;
        t.initiator = d.turns[static_cast<size_t>(start)].speaker;
        for (int turn = start; turn <= end; ++turn) {
            if (assignments[static_cast<size_t>(turn)].controller == Role::Client)
                ++t.client_turns;
            else
                ++t.expert_turns;
        }
        topics.push_back(t);
        start = end + 1;
    }
    return topics;
}

std::optional<CentralShiftReport> find_central_shift(const std::vector<Topic>& topics) {
    const int n = static_cast<int>(topics.size());
    if (n < 2) return std::nullopt;

    // consistency(b) = client-dominated topics before b + expert-dominated
    // topics from b on.  b may equal n when no expert-dominated tail exists.
    auto consistency = [&](int b) {
        int score = 0;
        for (int i = 0; i < b; ++i)
            if (topics[static_cast<size_t>(i)].client_turns > topics[static_cast<size_t>(i)].expert_turns) ++score;
        for (int i = b; i < n; ++i)
            if (topics[static_cast<size_t>(i)].expert_turns > topics[static_cast<size_t>(i)].client_turns) ++score;
        return score;
    };

    int best_b = 1;
    int best_score = consistency(1);
    for (int b = 2; b <= n; ++b) {
        const int score = consistency(b);
        if (score > best_score) {
            best_score = score;
            best_b = b;
        }
    }

    CentralShiftReport report;
    report.boundary = best_b;
    report.consistency = best_score;
    for (int i = 0; i < n; ++i) {
        const Topic& t = topics[static_cast<size_t>(i)];
        if (i < best_b) {
            report.before_client += t.client_turns;
            report.before_expert += t.expert_turns;
        } else {
            report.after_client += t.client_turns;
            report.after_expert += t.expert_turns;
        }
    }
    return report;
}

InitiationDominance initiation_dominance(const std::vector<Topic>& topics) {
    InitiationDominance result;
    result.topics = static_cast<int>(topics.size());
    for (const auto& t : topics) {
        if (t.client_turns == t.expert_turns) {
            ++result.ties;
        } else if (t.control_count(t.initiator) > t.control_count(other(t.initiator))) {
            ++result.dominant;
        }
    }
    return result;
}

}  // namespace dlgctl
