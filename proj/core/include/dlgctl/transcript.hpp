#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dlgctl {

enum class Role { Expert, Client };

constexpr Role other(Role r) { return r == Role::Expert ? Role::Client : Role::Expert; }

const char* to_string(Role r);

struct Participant {
    Role role = Role::Expert;
    std::string tag;  // the speaker tag used in transcript files, e.g. "E"

    bool operator==(const Participant&) const = default;
};

enum class UtteranceType { Assertion, Command, Question, Prompt };

const char* to_string(UtteranceType t);
char type_code(UtteranceType t);  // A / C / Q / P
std::optional<UtteranceType> type_from_code(char code);

/// Annotation flags carried by a single utterance.  `cue_prefix` marks an
/// utterance whose leading cue word is a spoken prefix rather than a cue
/// (annotated from the recording; the text alone cannot tell them apart).
struct UtteranceFlags {
    bool repetition = false;
    bool summary = false;
    bool vital = false;
    bool clarification = false;
    bool cue_prefix = false;

    bool operator==(const UtteranceFlags&) const = default;
};

struct Utterance {
    std::string text;
    std::optional<UtteranceType> gold_type;      // authoritative annotation
    UtteranceFlags flags;
    std::optional<UtteranceType> resolved_type;  // filled by the classifier

    bool operator==(const Utterance&) const = default;
};

struct Turn {
    int index = 0;  // 0-based, contiguous
    Role speaker = Role::Expert;
    std::vector<Utterance> utterances;  // never empty

    const Utterance& final_utterance() const { return utterances.back(); }

    bool operator==(const Turn&) const = default;
};

struct Dialogue {
    std::string id;
    Participant expert{Role::Expert, "E"};
    Participant client{Role::Client, "C"};
    std::vector<Turn> turns;

    const Participant& participant(Role r) const { return r == Role::Expert ? expert : client; }
    const std::string& tag(Role r) const { return participant(r).tag; }

    bool operator==(const Dialogue&) const = default;
};

/// Per-shift topic-shift votes, one row per control shift, one column per
/// judge.  All rows have the same width.
struct JudgeMatrix {
    std::string dialogue_id;
    std::vector<std::vector<bool>> votes;

    int judge_count() const { return votes.empty() ? 0 : static_cast<int>(votes.front().size()); }

    bool operator==(const JudgeMatrix&) const = default;
};

/// Parses the line-oriented `.dlg` transcript format.  Consecutive lines with
/// the same speaker tag merge into one multi-utterance turn.  Throws
/// ParseError with the offending line number on malformed input.
Dialogue parse_transcript(std::istream& in, const std::string& source = "<input>");
Dialogue parse_transcript_text(std::string_view text, const std::string& source = "<input>");

/// Canonical `.dlg` text; parse_transcript(serialize_transcript(d)) == d for
/// any valid unclassified dialogue (resolved types are not part of the file
/// format).
std::string serialize_transcript(const Dialogue& d);

/// Parses the judge-vote TSV: `<ordinal> TAB v1 TAB ... TAB vJ`, votes y/n,
/// ordinals exactly 0..N-1.  The row count must equal expected_shifts.
JudgeMatrix parse_judges(std::istream& in, std::size_t expected_shifts,
                         const std::string& source = "<input>");
JudgeMatrix parse_judges_text(std::string_view text, std::size_t expected_shifts,
                              const std::string& source = "<input>");

}  // namespace dlgctl
