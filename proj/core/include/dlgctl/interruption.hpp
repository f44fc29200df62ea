#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlgctl/transcript.hpp"

namespace dlgctl {

enum class Stance { BelievesTrue, BelievesFalse, Unknown };

const char* to_string(Stance s);
constexpr bool definite(Stance s) { return s != Stance::Unknown; }
constexpr Stance opposite(Stance s) {
    return s == Stance::BelievesTrue   ? Stance::BelievesFalse
           : s == Stance::BelievesFalse ? Stance::BelievesTrue
                                        : Stance::Unknown;
}

/// One participant's attitude toward a proposition.  other_belief is this
/// participant's explicit model of the other side's stance; an explicit
/// Unknown there means "I believe they do not know this".
struct BeliefRecord {
    Stance stance = Stance::Unknown;
    bool relevant = false;
    bool perceived_ambiguous = false;
    std::optional<Stance> other_belief;

    bool operator==(const BeliefRecord&) const = default;
};

class BeliefStore {
public:
    void declare(const std::string& id, BeliefRecord record = {});
    bool knows(const std::string& id) const { return records_.count(id) != 0; }
    const BeliefRecord& record(const std::string& id) const;  // throws on unknown id
    BeliefRecord& record(const std::string& id);

    bool operator==(const BeliefStore&) const = default;

private:
    std::map<std::string, BeliefRecord> records_;
};

struct PlanStep {
    std::string id;  // the proposition naming this step
    bool satisfied = false;
    std::vector<std::string> obstacle_props;

    bool operator==(const PlanStep&) const = default;
};

struct Plan {
    std::vector<PlanStep> steps;

    bool operator==(const Plan&) const = default;
};

struct AssertionEvent {
    Role speaker = Role::Expert;
    std::string proposition;
    Stance asserted = Stance::BelievesTrue;
    bool relevant = false;
    bool ambiguous = false;
    bool about_plan = false;

    bool operator==(const AssertionEvent&) const = default;
};

enum class TriggerRule { A1, A2, B1Obstacle, B1AlreadySatisfied, B2 };

const char* to_string(TriggerRule r);

struct InterruptTrigger {
    TriggerRule rule = TriggerRule::A1;
    std::string proposition;
    std::string rationale;

    bool operator==(const InterruptTrigger&) const = default;
};

/// Information quality.  A1: the listener holds a definite, relevant stance
/// on the proposition and either the assertion states the opposite or the
/// listener explicitly models the speaker as not knowing it.  A2: the
/// assertion is relevant but ambiguous.  A1 is checked first.
std::optional<InterruptTrigger> evaluate_information_quality(const BeliefStore& listener,
                                                             const AssertionEvent& ev);

/// Plan quality.  B1 (obstacle): the listener believes some obstacle
/// proposition of a plan step.  B1 (already satisfied): the assertion
/// proposes a plan step the listener marks satisfied.  B2: an assertion about
/// the plan is ambiguous.  Checked in that order.
std::optional<InterruptTrigger> evaluate_plan_quality(const BeliefStore& listener, const Plan& plan,
                                                      const AssertionEvent& ev);

struct Proposition {
    std::string id;
    bool about_plan = false;

    bool operator==(const Proposition&) const = default;
};

struct Scenario {
    std::string id;
    std::vector<Proposition> propositions;
    BeliefStore expert;
    BeliefStore client;
    Plan plan;
    std::vector<AssertionEvent> script;

    BeliefStore& store(Role r) { return r == Role::Expert ? expert : client; }
    const BeliefStore& store(Role r) const { return r == Role::Expert ? expert : client; }
};

struct ScenarioStep {
    AssertionEvent event;
    std::optional<InterruptTrigger> trigger;
};

/// Runs the script: for each event the listener (the non-speaker) is checked
/// against the information-quality rules, then the plan-quality rules; only
/// then is the asserted stance adopted into the listener's store.
std::vector<ScenarioStep> step_scenario(Scenario scenario);

/// JSON scenario file: propositions, per-participant beliefs, plan steps and
/// the event script.
Scenario parse_scenario(std::istream& in, const std::string& source = "<input>");
Scenario parse_scenario_text(std::string_view text, const std::string& source = "<input>");

}  // namespace dlgctl
