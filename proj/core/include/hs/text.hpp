#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hs {

/// SQuAD-style answer tokens: NFKC, lowercase, punctuation removed, the
/// articles a/an/the dropped, split on whitespace.
std::vector<std::string> normalize_tokens(std::string_view text);

}  // namespace hs
