#include "dlgctl/interruption.hpp"

#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dlgctl/errors.hpp"

namespace dlgctl {

const char* to_string(Stance s) {
    switch (s) {
        case Stance::BelievesTrue: return "true";
        case Stance::BelievesFalse: return "false";
        case Stance::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(TriggerRule r) {
    switch (r) {
        case TriggerRule::A1: return "A1";
        case TriggerRule::A2: return "A2";
        case TriggerRule::B1Obstacle: return "B1_obstacle";
        case TriggerRule::B1AlreadySatisfied: return "B1_already_satisfied";
        case TriggerRule::B2: return "B2";
    }
    return "?";
}

void BeliefStore::declare(const std::string& id, BeliefRecord record) { records_[id] = record; }

const BeliefRecord& BeliefStore::record(const std::string& id) const {
    auto it = records_.find(id);
    if (it == records_.end()) throw ContractError("unknown proposition id '" + id + "'");
    return it->second;
}

BeliefRecord& BeliefStore::record(const std::string& id) {
    auto it = records_.find(id);
    if (it == records_.end()) throw ContractError("unknown proposition id '" + id + "'");
    return it->second;
}

std::optional<InterruptTrigger> evaluate_information_quality(const BeliefStore& listener,
                                                             const AssertionEvent& ev) {
    const BeliefRecord& rec = listener.record(ev.proposition);

    if (definite(rec.stance) && rec.relevant) {
        if (definite(ev.asserted) && ev.asserted == opposite(rec.stance))
            return InterruptTrigger{TriggerRule::A1, ev.proposition,
                                    "assertion states the opposite of a relevant fact the listener holds"};
        if (rec.other_belief && *rec.other_belief == Stance::Unknown)
            return InterruptTrigger{TriggerRule::A1, ev.proposition,
                                    "listener believes the speaker does not know a relevant fact"};
    }
    if (ev.relevant && ev.ambiguous)
        return InterruptTrigger{TriggerRule::A2, ev.proposition,
                                "assertion is relevant but ambiguous"};
    return std::nullopt;
}

std::optional<InterruptTrigger> evaluate_plan_quality(const BeliefStore& listener, const Plan& plan,
                                                      const AssertionEvent& ev) {
    // Unknown event propositions are an error even when no rule would fire.
    listener.record(ev.proposition);

    for (const auto& step : plan.steps) {
        for (const auto& prop : step.obstacle_props) {
            if (listener.record(prop).stance == Stance::BelievesTrue)
                return InterruptTrigger{TriggerRule::B1Obstacle, prop,
                                        "listener believes an obstacle to plan step '" + step.id + "'"};
        }
    }
    if (ev.about_plan) {
        for (const auto& step : plan.steps) {
            if (step.id == ev.proposition && step.satisfied)
                return InterruptTrigger{TriggerRule::B1AlreadySatisfied, ev.proposition,
                                        "proposed plan step is already satisfied"};
        }
        if (ev.ambiguous)
            return InterruptTrigger{TriggerRule::B2, ev.proposition,
                                    "assertion about the plan is ambiguous"};
    }
    return std::nullopt;
}

std::vector<ScenarioStep> step_scenario(Scenario scenario) {
    std::vector<ScenarioStep> transcript;
    transcript.reserve(scenario.script.size());
    for (const AssertionEvent& ev : scenario.script) {
        BeliefStore& listener = scenario.store(other(ev.speaker));

        // Evaluate on the pre-event state; update only afterwards.
        std::optional<InterruptTrigger> trigger = evaluate_information_quality(listener, ev);
        if (!trigger) trigger = evaluate_plan_quality(listener, scenario.plan, ev);

        BeliefRecord& rec = listener.record(ev.proposition);
        rec.stance = ev.asserted;
        rec.perceived_ambiguous = ev.ambiguous;

        transcript.push_back({ev, std::move(trigger)});
    }
    return transcript;
}

namespace {

Stance stance_from_json(const nlohmann::json& v, const std::string& source) {
    if (v.is_boolean()) return v.get<bool>() ? Stance::BelievesTrue : Stance::BelievesFalse;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "true") return Stance::BelievesTrue;
        if (s == "false") return Stance::BelievesFalse;
        if (s == "unknown") return Stance::Unknown;
    }
    throw ParseError(source, 1, "stance must be \"true\", \"false\" or \"unknown\"");
}

Role role_from_json(const nlohmann::json& v, const std::string& source) {
    const std::string s = v.is_string() ? v.get<std::string>() : "";
    if (s == "expert") return Role::Expert;
    if (s == "client") return Role::Client;
    throw ParseError(source, 1, "speaker must be \"expert\" or \"client\"");
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, static_cast<int>(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(source, 1, "scenario must be a JSON object");

    Scenario sc;
    sc.id = j.value("id", std::string("scenario"));

    std::map<std::string, bool> about_plan;
    if (!j.contains("propositions") || !j["propositions"].is_array())
        throw ParseError(source, 1, "scenario requires a \"propositions\" array");
    for (const auto& p : j["propositions"]) {
        Proposition prop;
        if (p.is_string()) {
            prop.id = p.get<std::string>();
        } else if (p.is_object() && p.contains("id")) {
            prop.id = p["id"].get<std::string>();
            prop.about_plan = p.value("about_plan", false);
        } else {
            throw ParseError(source, 1, "proposition entries must be ids or {id, about_plan}");
        }
        if (about_plan.count(prop.id))
            throw ParseError(source, 1, "duplicate proposition id '" + prop.id + "'");
        about_plan[prop.id] = prop.about_plan;
        sc.propositions.push_back(std::move(prop));
    }

    for (const auto& prop : sc.propositions) {
        sc.expert.declare(prop.id);
        sc.client.declare(prop.id);
    }

    if (j.contains("beliefs")) {
        if (!j["beliefs"].is_object()) throw ParseError(source, 1, "\"beliefs\" must be an object");
        for (const auto& [who, beliefs] : j["beliefs"].items()) {
            Role role;
            if (who == "expert") role = Role::Expert;
            else if (who == "client") role = Role::Client;
            else throw ParseError(source, 1, "beliefs keys must be \"expert\" or \"client\"");
            if (!beliefs.is_object())
                throw ParseError(source, 1, "beliefs for " + who + " must be an object");
            for (const auto& [prop, entry] : beliefs.items()) {
                if (!about_plan.count(prop))
                    throw ParseError(source, 1, "unknown proposition id '" + prop + "' in beliefs");
                BeliefRecord rec;
                if (entry.contains("stance")) rec.stance = stance_from_json(entry["stance"], source);
                rec.relevant = entry.value("relevant", false);
                rec.perceived_ambiguous = entry.value("ambiguous", false);
                if (entry.contains("other_belief"))
                    rec.other_belief = stance_from_json(entry["other_belief"], source);
                sc.store(role).record(prop) = rec;
            }
        }
    }

    if (j.contains("plan")) {
        if (!j["plan"].is_array()) throw ParseError(source, 1, "\"plan\" must be an array of steps");
        std::map<std::string, bool> seen;
        for (const auto& s : j["plan"]) {
            PlanStep step;
            if (!s.is_object() || !s.contains("id"))
                throw ParseError(source, 1, "plan steps must be objects with an \"id\"");
            step.id = s["id"].get<std::string>();
            if (!about_plan.count(step.id))
                throw ParseError(source, 1, "plan step '" + step.id + "' is not a declared proposition");
            if (seen.count(step.id))
                throw ParseError(source, 1, "duplicate plan step '" + step.id + "'");
            seen[step.id] = true;
            step.satisfied = s.value("satisfied", false);
            if (s.contains("obstacles")) {
                for (const auto& o : s["obstacles"]) {
                    std::string id = o.get<std::string>();
                    if (!about_plan.count(id))
                        throw ParseError(source, 1,
                                         "unknown proposition id '" + id + "' in obstacles");
                    step.obstacle_props.push_back(std::move(id));
                }
            }
            sc.plan.steps.push_back(std::move(step));
        }
    }

    if (!j.contains("script") || !j["script"].is_array() || j["script"].empty())
        throw ParseError(source, 1, "scenario requires a non-empty \"script\" array");
    for (const auto& e : j["script"]) {
        if (!e.is_object()) throw ParseError(source, 1, "script entries must be objects");
        AssertionEvent ev;
        if (!e.contains("speaker") || !e.contains("proposition"))
            throw ParseError(source, 1, "script entries need \"speaker\" and \"proposition\"");
        ev.speaker = role_from_json(e["speaker"], source);
        ev.proposition = e["proposition"].get<std::string>();
        if (!about_plan.count(ev.proposition))
            throw ParseError(source, 1, "unknown proposition id '" + ev.proposition + "' in script");
        if (e.contains("stance")) ev.asserted = stance_from_json(e["stance"], source);
        if (ev.asserted == Stance::Unknown)
            throw ParseError(source, 1, "script assertions must state \"true\" or \"false\"");
        ev.relevant = e.value("relevant", false);
        ev.ambiguous = e.value("ambiguous", false);
        ev.about_plan = e.value("about_plan", about_plan.at(ev.proposition));
        sc.script.push_back(std::move(ev));
    }
    return sc;
}

Scenario parse_scenario_text(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_scenario(in, source);
}

}  // namespace dlgctl
