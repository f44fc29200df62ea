#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dlgctl {

std::string to_lower(std::string_view s);

/// Strips leading and trailing ASCII whitespace.
std::string trim(std::string_view s);

/// Lower-cased word tokens.  Apostrophes and hyphens are kept when they sit
/// between word characters ("that's", "uh-huh"); everything else separates.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens joined with single spaces; the canonical form used for prefix
/// matching and lexicon entries.
std::string normalize(std::string_view text);

}  // namespace dlgctl
