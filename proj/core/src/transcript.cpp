#include "dlgctl/transcript.hpp"

#include <istream>
#include <sstream>

#include "dlgctl/errors.hpp"
#include "dlgctl/text.hpp"

namespace dlgctl {

const char* to_string(Role r) { return r == Role::Expert ? "expert" : "client"; }

const char* to_string(UtteranceType t) {
    switch (t) {
        case UtteranceType::Assertion: return "assertion";
        case UtteranceType::Command: return "command";
        case UtteranceType::Question: return "question";
        case UtteranceType::Prompt: return "prompt";
    }
    return "?";
}

char type_code(UtteranceType t) {
    switch (t) {
        case UtteranceType::Assertion: return 'A';
        case UtteranceType::Command: return 'C';
        case UtteranceType::Question: return 'Q';
        case UtteranceType::Prompt: return 'P';
    }
    return '?';
}

std::optional<UtteranceType> type_from_code(char code) {
    switch (code) {
        case 'A': return UtteranceType::Assertion;
        case 'C': return UtteranceType::Command;
        case 'Q': return UtteranceType::Question;
        case 'P': return UtteranceType::Prompt;
        default: return std::nullopt;
    }
}

namespace {

struct FlagName {
    const char* name;
    bool UtteranceFlags::* member;
};

constexpr FlagName kFlagNames[] = {
    {"rep", &UtteranceFlags::repetition},
    {"sum", &UtteranceFlags::summary},
    {"vital", &UtteranceFlags::vital},
    {"clar", &UtteranceFlags::clarification},
    {"cue", &UtteranceFlags::cue_prefix},
};

UtteranceFlags parse_flags(const std::string& field, const std::string& source, int line) {
    UtteranceFlags flags;
    if (field == "-") return flags;
    std::stringstream ss(field);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        bool known = false;
        for (const auto& f : kFlagNames) {
            if (item == f.name) {
                if (flags.*(f.member))
                    throw ParseError(source, line, "duplicate flag '" + item + "'");
                flags.*(f.member) = true;
                known = true;
                break;
            }
        }
        if (!known) throw ParseError(source, line, "unknown flag '" + item + "'");
    }
    if (flags.repetition && flags.summary)
        throw ParseError(source, line, "flags 'rep' and 'sum' cannot both be set");
    return flags;
}

std::string flags_to_field(const UtteranceFlags& flags) {
    std::string out;
    for (const auto& f : kFlagNames) {
        if (flags.*(f.member)) {
            if (!out.empty()) out.push_back(',');
            out += f.name;
        }
    }
    return out.empty() ? "-" : out;
}

bool valid_tag(const std::string& tag) {
    if (tag.empty()) return false;
    for (char c : tag)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '=') return false;
    return true;
}

// Splits an utterance line into speaker, type code, flags and text on the
// first three tabs; the text may itself contain tabs.
bool split_line(const std::string& line, std::string out[4]) {
    size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) return false;
        out[i] = line.substr(pos, tab - pos);
        pos = tab + 1;
    }
    out[3] = line.substr(pos);
    return true;
}

}  // namespace

Dialogue parse_transcript(std::istream& in, const std::string& source) {
    Dialogue d;
    bool have_id = false;
    bool have_roles = false;
    std::string line;
    int lineno = 0;
    int utterance_lines = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        if (stripped.front() == '!') {
            if (stripped.rfind("!dialogue", 0) == 0) {
                if (have_id) throw ParseError(source, lineno, "duplicate !dialogue directive");
                d.id = trim(stripped.substr(9));
                if (d.id.empty()) throw ParseError(source, lineno, "!dialogue requires an id");
                have_id = true;
            } else if (stripped.rfind("!roles", 0) == 0) {
                if (!have_id)
                    throw ParseError(source, lineno, "!roles before !dialogue");
                if (have_roles) throw ParseError(source, lineno, "duplicate !roles directive");
                std::stringstream ss(stripped.substr(6));
                std::string entry;
                bool saw_expert = false, saw_client = false;
                while (ss >> entry) {
                    size_t eq = entry.find('=');
                    if (eq == std::string::npos)
                        throw ParseError(source, lineno, "role entry '" + entry + "' is not tag=role");
                    std::string tag = entry.substr(0, eq);
                    std::string role = entry.substr(eq + 1);
                    if (!valid_tag(tag))
                        throw ParseError(source, lineno, "invalid speaker tag '" + tag + "'");
                    if (role == "expert") {
                        if (saw_expert) throw ParseError(source, lineno, "expert declared twice");
                        d.expert = {Role::Expert, tag};
                        saw_expert = true;
                    } else if (role == "client") {
                        if (saw_client) throw ParseError(source, lineno, "client declared twice");
                        d.client = {Role::Client, tag};
                        saw_client = true;
                    } else {
                        throw ParseError(source, lineno, "unknown role '" + role + "'");
                    }
                }
                if (!saw_expert || !saw_client)
                    throw ParseError(source, lineno, "!roles must declare one expert and one client");
                if (d.expert.tag == d.client.tag)
                    throw ParseError(source, lineno, "speaker tags must be distinct");
                have_roles = true;
            } else {
                throw ParseError(source, lineno, "unknown directive: " + stripped);
            }
            continue;
        }

        // Utterance line.
        if (!have_roles)
            throw ParseError(source, lineno, "utterance line before !dialogue/!roles headers");
        std::string fields[4];
        if (!split_line(line, fields))
            throw ParseError(source, lineno,
                             "expected <speaker> TAB <type> TAB <flags> TAB <text>");
        std::string tag = trim(fields[0]);
        std::string code = trim(fields[1]);
        std::string flag_field = trim(fields[2]);
        std::string text = trim(fields[3]);

        Role speaker;
        if (tag == d.expert.tag) speaker = Role::Expert;
        else if (tag == d.client.tag) speaker = Role::Client;
        else throw ParseError(source, lineno, "unknown speaker tag '" + tag + "'");

        Utterance u;
        if (code == "?") {
            u.gold_type = std::nullopt;
        } else if (code.size() == 1) {
            auto t = type_from_code(code[0]);
            if (!t) throw ParseError(source, lineno, "unknown type code '" + code + "'");
            u.gold_type = t;
        } else {
            throw ParseError(source, lineno, "unknown type code '" + code + "'");
        }
        u.flags = parse_flags(flag_field, source, lineno);
        if (text.empty()) throw ParseError(source, lineno, "utterance text is empty");
        u.text = std::move(text);

        ++utterance_lines;
        if (!d.turns.empty() && d.turns.back().speaker == speaker) {
            d.turns.back().utterances.push_back(std::move(u));
        } else {
            Turn t;
            t.index = static_cast<int>(d.turns.size());
            t.speaker = speaker;
            t.utterances.push_back(std::move(u));
            d.turns.push_back(std::move(t));
        }
    }

    if (!have_id) throw ParseError(source, lineno, "empty file: missing !dialogue header");
    if (!have_roles) throw ParseError(source, lineno, "missing !roles header");
    if (utterance_lines == 0) throw ParseError(source, lineno, "transcript has no utterances");
    return d;
}

Dialogue parse_transcript_text(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_transcript(in, source);
}

std::string serialize_transcript(const Dialogue& d) {
    std::ostringstream out;
    out << "!dialogue " << d.id << "\n";
    out << "!roles " << d.expert.tag << "=expert " << d.client.tag << "=client\n";
    for (const auto& turn : d.turns) {
        for (const auto& u : turn.utterances) {
            out << d.tag(turn.speaker) << '\t'
                << (u.gold_type ? std::string(1, type_code(*u.gold_type)) : std::string("?"))
                << '\t' << flags_to_field(u.flags) << '\t' << u.text << "\n";
        }
    }
    return out.str();
}

JudgeMatrix parse_judges(std::istream& in, std::size_t expected_shifts, const std::string& source) {
    JudgeMatrix m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(trim(field));
        if (fields.size() < 2)
            throw ParseError(source, lineno, "expected <ordinal> TAB <votes...>");

        size_t expected_ordinal = m.votes.size();
        try {
            if (static_cast<size_t>(std::stoul(fields[0])) != expected_ordinal)
                throw ParseError(source, lineno,
                                 "shift ordinal must be " + std::to_string(expected_ordinal));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(source, lineno, "invalid shift ordinal '" + fields[0] + "'");
        }

        std::vector<bool> row;
        for (size_t i = 1; i < fields.size(); ++i) {
            if (fields[i] == "y") row.push_back(true);
            else if (fields[i] == "n") row.push_back(false);
            else throw ParseError(source, lineno, "invalid vote '" + fields[i] + "' (want y or n)");
        }
        if (!m.votes.empty() && row.size() != m.votes.front().size())
            throw ParseError(source, lineno,
                             "ragged row: expected " + std::to_string(m.votes.front().size()) +
                                 " votes, found " + std::to_string(row.size()));
        m.votes.push_back(std::move(row));
    }
    if (m.votes.size() != expected_shifts)
        throw ParseError(source, lineno,
                         "expected " + std::to_string(expected_shifts) + " vote rows, found " +
                             std::to_string(m.votes.size()));
    return m;
}

JudgeMatrix parse_judges_text(std::string_view text, std::size_t expected_shifts,
                              const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_judges(in, expected_shifts, source);
}

}  // namespace dlgctl
