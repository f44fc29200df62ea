#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlgctl/transcript.hpp"

namespace dlgctl {

/// Lexicons driving the surface heuristics.  All entries are normalized
/// (lower-case, space-joined tokens) on construction/loading.
struct ClassifierConfig {
    std::vector<std::string> prompt_lexicon;    // token sequences with no content
    std::vector<std::string> question_markers;  // prefixes marking non-interrogative questions
    std::vector<std::string> command_markers;   // prefixes marking indirect commands
    std::vector<std::string> cue_lexicon;       // cue words and phrases

    static ClassifierConfig defaults();
};

/// Loads a JSON config ({"prompt_lexicon": [...], ...}); keys that are absent
/// keep their default lexicons.
ClassifierConfig load_classifier_config(std::istream& in, const std::string& source = "<input>");
ClassifierConfig load_classifier_config_text(std::string_view text,
                                             const std::string& source = "<input>");

/// The only context classification may use: the previous turn's final
/// utterance (its resolved type) and that turn's speaker.
struct ClassifyContext {
    UtteranceType previous_type;
    Role previous_speaker;
};

/// Resolves one utterance.  Heuristic order: content-free prompt-lexicon
/// cover (demoted to Assertion when answering the other side's question with
/// a yes/no), question surface, command marker, Assertion fallback.  A gold
/// type always wins.
UtteranceType classify_one(const Utterance& u, Role speaker,
                           const std::optional<ClassifyContext>& context,
                           const ClassifierConfig& cfg);

/// Returns a copy of the dialogue with every resolved_type filled.
Dialogue classify_dialogue(Dialogue d, const ClassifierConfig& cfg);

struct CueOccurrence {
    std::string word;  // the matched lexicon entry, normalized
    int position = 0;  // token index of the match start

    bool operator==(const CueOccurrence&) const = default;
};

/// Cue words at the start of the utterance: lexicon entries are matched from
/// token 0 onward, longest entry first, until a token matches none.
std::vector<CueOccurrence> detect_cue_words(const Utterance& u, const ClassifierConfig& cfg);

}  // namespace dlgctl
