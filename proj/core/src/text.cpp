#include "hs/text.hpp"

#include "hs/unicode.hpp"

namespace hs {

std::vector<std::string> normalize_tokens(std::string_view text) {
  const auto folded = unicode::decode(unicode::to_lower(unicode::nfkc(text)));
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (current.empty()) return;
    auto tok = unicode::encode(current);
    current.clear();
    if (tok == "a" || tok == "an" || tok == "the") return;
    tokens.push_back(std::move(tok));
  };
  for (char32_t c : folded) {
    if (unicode::is_space(c)) {
      flush();
    } else if (!unicode::is_punct(c)) {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

}  // namespace hs
