#include "dlgctl/classifier.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dlgctl/errors.hpp"
#include "dlgctl/text.hpp"

namespace dlgctl {

namespace {

std::vector<std::string> normalized(std::initializer_list<const char*> items) {
    std::vector<std::string> out;
    for (const char* s : items) out.push_back(normalize(s));
    return out;
}

std::vector<std::vector<std::string>> tokenized_entries(const std::vector<std::string>& entries) {
    std::vector<std::vector<std::string>> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(tokenize(e));
    return out;
}

// True when the token sequence can be fully covered by concatenating lexicon
// entries (each entry one or more tokens).
bool covered_by(const std::vector<std::string>& tokens,
                const std::vector<std::vector<std::string>>& entries) {
    if (tokens.empty()) return false;
    std::vector<char> ok(tokens.size() + 1, 0);
    ok.back() = 1;
    for (size_t i = tokens.size(); i-- > 0;) {
        for (const auto& entry : entries) {
            if (entry.empty() || entry.size() > tokens.size() - i) continue;
            if (!ok[i + entry.size()]) continue;
            if (std::equal(entry.begin(), entry.end(), tokens.begin() + i)) {
                ok[i] = 1;
                break;
            }
        }
    }
    return ok[0] != 0;
}

bool prefix_matches(const std::string& normalized_text, const std::string& marker) {
    if (normalized_text.size() < marker.size()) return false;
    if (normalized_text.compare(0, marker.size(), marker) != 0) return false;
    return normalized_text.size() == marker.size() || normalized_text[marker.size()] == ' ';
}

const std::vector<std::string> kYesNoTokens = {"yes", "no", "yeah"};

}  // namespace

ClassifierConfig ClassifierConfig::defaults() {
    ClassifierConfig cfg;
    cfg.prompt_lexicon = normalized({"yes", "yeah", "uhu", "uh-huh", "mm", "mhm", "ok", "okay",
                                     "right", "fine", "that's right", "er", "um", "well"});
    cfg.question_markers = normalized({"so my question is", "my question is"});
    cfg.command_markers = normalized({"what i would do", "i would", "you should", "try"});
    cfg.cue_lexicon = normalized({"now", "and", "so", "but", "well", "as well", "well actually",
                                  "in any case", "anyway"});
    return cfg;
}

ClassifierConfig load_classifier_config(std::istream& in, const std::string& source) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, static_cast<int>(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(source, 1, "config must be a JSON object");

    ClassifierConfig cfg = ClassifierConfig::defaults();
    auto load_list = [&](const char* key, std::vector<std::string>& dest) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) throw ParseError(source, 1, std::string(key) + " must be an array");
        std::vector<std::string> items;
        for (const auto& v : j[key]) {
            if (!v.is_string())
                throw ParseError(source, 1, std::string(key) + " entries must be strings");
            std::string n = normalize(v.get<std::string>());
            if (!n.empty()) items.push_back(std::move(n));
        }
        if (items.empty()) throw ParseError(source, 1, std::string(key) + " must be non-empty");
        dest = std::move(items);
    };
    load_list("prompt_lexicon", cfg.prompt_lexicon);
    load_list("question_markers", cfg.question_markers);
    load_list("command_markers", cfg.command_markers);
    load_list("cue_lexicon", cfg.cue_lexicon);
    return cfg;
}

ClassifierConfig load_classifier_config_text(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return load_classifier_config(in, source);
}

UtteranceType classify_one(const Utterance& u, Role speaker,
                           const std::optional<ClassifyContext>& context,
                           const ClassifierConfig& cfg) {
    if (u.gold_type) return *u.gold_type;

    const std::vector<std::string> tokens = tokenize(u.text);
    const std::string norm = normalize(u.text);

    // (1) Pure prompt-lexicon content.  A yes/no answering the other side's
    // question supplies information, so it counts as an assertion.
    if (covered_by(tokens, tokenized_entries(cfg.prompt_lexicon))) {
        bool answers_question = context && context->previous_type == UtteranceType::Question &&
                                context->previous_speaker != speaker;
        if (answers_question) {
            for (const auto& t : tokens)
                if (std::find(kYesNoTokens.begin(), kYesNoTokens.end(), t) != kYesNoTokens.end())
                    return UtteranceType::Assertion;
        }
        return UtteranceType::Prompt;
    }

    // (2) Question surface: trailing '?' or a configured marker.
    std::string trimmed = trim(u.text);
    if (!trimmed.empty() && trimmed.back() == '?') return UtteranceType::Question;
    for (const auto& m : cfg.question_markers)
        if (prefix_matches(norm, m)) return UtteranceType::Question;

    // (3) Indirect-command markers.
    for (const auto& m : cfg.command_markers)
        if (prefix_matches(norm, m)) return UtteranceType::Command;

    // (4) Unmarked declaratives.
    return UtteranceType::Assertion;
}

Dialogue classify_dialogue(Dialogue d, const ClassifierConfig& cfg) {
    std::optional<ClassifyContext> context;
    for (auto& turn : d.turns) {
        for (auto& u : turn.utterances)
            u.resolved_type = classify_one(u, turn.speaker, context, cfg);
        context = ClassifyContext{*turn.utterances.back().resolved_type, turn.speaker};
    }
    return d;
}

std::vector<CueOccurrence> detect_cue_words(const Utterance& u, const ClassifierConfig& cfg) {
    const std::vector<std::string> tokens = tokenize(u.text);
    auto entries = tokenized_entries(cfg.cue_lexicon);
    // Longest entries first so "well actually" wins over "well".
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::vector<CueOccurrence> out;
    size_t pos = 0;
    while (pos < tokens.size()) {
        const std::vector<std::string>* hit = nullptr;
        for (const auto& entry : entries) {
            if (entry.empty() || entry.size() > tokens.size() - pos) continue;
            if (std::equal(entry.begin(), entry.end(), tokens.begin() + pos)) {
                hit = &entry;
                break;
            }
        }
        if (!hit) break;
        std::string word;
        for (const auto& t : *hit) {
            if (!word.empty()) word.push_back(' ');
            word += t;
        }
        out.push_back({std::move(word), static_cast<int>(pos)});
        pos += hit->size();
    }
    return out;
}

}  // namespace dlgctl
