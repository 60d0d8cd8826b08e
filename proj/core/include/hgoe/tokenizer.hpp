#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hgoe {

// Lowercase unigrams. ASCII letters and digits (and any byte >= 0x80, so UTF-8
// sequences stay whole) form tokens; every other byte separates them.
// Duplicates are preserved.
std::vector<std::string> tokenize(std::string_view text);

// tokenize() followed by sort + unique.
std::vector<std::string> unique_tokens(std::string_view text);

}  // namespace hgoe
