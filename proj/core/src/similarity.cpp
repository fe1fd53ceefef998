#include "hs/similarity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hs/errors.hpp"
#include "hs/unicode.hpp"

namespace hs {

namespace {

// Bit-parallel LCS (Hyyrö). Bit i of the state is cleared once pattern
// position i takes part in the current longest common subsequence.
class LcsPattern {
 public:
  explicit LcsPattern(std::u32string_view pattern)
      : size_(pattern.size()), words_((pattern.size() + 63) / 64) {
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      auto& mask = masks_[pattern[i]];
      if (mask.empty()) mask.assign(words_, 0);
      mask[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    last_mask_ = size_ % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size() const { return size_; }
  std::size_t words() const { return words_; }

  void reset(std::vector<std::uint64_t>& state) const {
    state.assign(words_, ~std::uint64_t{0});
    if (words_) state.back() = last_mask_;
  }

  void step(std::vector<std::uint64_t>& state, char32_t c) const {
    const auto it = masks_.find(c);
    if (it == masks_.end()) return;
    const auto& mask = it->second;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t s = state[w];
      const std::uint64_t u = s & mask[w];
      const std::uint64_t t = s + u;
      const std::uint64_t sum = t + carry;
      carry = (t < s || sum < t) ? 1 : 0;
      state[w] = sum | (s - u);
    }
    if (words_) state.back() &= last_mask_;
  }

  std::size_t lcs(const std::vector<std::uint64_t>& state) const {
    std::size_t ones = 0;
    for (auto w : state) ones += static_cast<std::size_t>(std::popcount(w));
    return size_ - ones;
  }

 private:
  std::size_t size_;
  std::size_t words_;
  std::uint64_t last_mask_ = 0;
  std::unordered_map<char32_t, std::vector<std::uint64_t>> masks_;
};

// a/(m+wa) > b/(m+wb) on exact integers
bool better(std::size_t lcs_a, std::size_t total_a, std::size_t lcs_b, std::size_t total_b) {
  return static_cast<unsigned __int128>(lcs_a) * total_b > static_cast<unsigned __int128>(lcs_b) * total_a;
}

bool meets_threshold(std::size_t distance, std::size_t total, double threshold) {
  if (total == 0) return 100.0 >= threshold;
  return 100.0 * static_cast<double>(total - distance) >= threshold * static_cast<double>(total);
}

}  // namespace

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() > b.size()) std::swap(a, b);
  LcsPattern pattern(a);
  std::vector<std::uint64_t> state;
  pattern.reset(state);
  for (char32_t c : b) pattern.step(state, c);
  return pattern.lcs(state);
}

double indel_score(std::size_t distance, std::size_t total_length) {
  if (total_length == 0) return 100.0;
  return 100.0 * (1.0 - static_cast<double>(distance) / static_cast<double>(total_length));
}

double similarity(std::string_view a, std::string_view b) {
  const auto ua = unicode::decode(unicode::nfc(a));
  const auto ub = unicode::decode(unicode::nfc(b));
  return indel_score(indel_distance(ua, ub), ua.size() + ub.size());
}

WindowBand window_band(std::size_t query_length, std::size_t min_length, std::size_t text_length) {
  WindowBand band;
  band.min = std::max<std::size_t>({(4 * query_length + 4) / 5, min_length, 1});
  band.max = std::min(6 * query_length / 5, text_length);
  return band;
}

std::optional<WindowMatch> best_window(std::u32string_view text, std::u32string_view query,
                                       const HighlightLimits& limits) {
  const auto band = window_band(query.size(), limits.min_length, text.size());
  if (query.empty() || band.empty()) return std::nullopt;

  const LcsPattern pattern(query);
  const std::size_t m = query.size();
  std::vector<std::uint64_t> state;
  std::size_t best_start = 0, best_len = 0, best_lcs = 0;
  bool found = false;

  for (std::size_t start = 0; start + band.min <= text.size(); ++start) {
    pattern.reset(state);
    const std::size_t limit = std::min(band.max, text.size() - start);
    for (std::size_t len = 1; len <= limit; ++len) {
      pattern.step(state, text[start + len - 1]);
      if (len < band.min) continue;
      const std::size_t l = pattern.lcs(state);
      if (!found || better(l, m + len, best_lcs, m + best_len)) {
        best_start = start;
        best_len = len;
        best_lcs = l;
        found = true;
      }
    }
    if (found && best_lcs == m && best_len == m) break;  // exact match cannot be beaten later
  }
  if (!found) return std::nullopt;
  const std::size_t total = m + best_len;
  const std::size_t distance = total - 2 * best_lcs;
  if (!meets_threshold(distance, total, limits.threshold)) return std::nullopt;
  return WindowMatch{best_start, best_start + best_len, indel_score(distance, total)};
}

std::optional<ScoredSpan> best_span(const Document& doc, std::string_view query, const HighlightLimits& limits) {
  if (query.empty()) throw InvalidArgument("best_span needs a non-empty query");
  const auto text = unicode::decode(doc.text);
  const auto q = unicode::decode(unicode::nfc(query));
  const auto match = best_window(text, q, limits);
  if (!match) return std::nullopt;
  Span span{doc.id, match->start, match->end,
            unicode::encode(std::u32string_view(text).substr(match->start, match->end - match->start))};
  return ScoredSpan{std::move(span), match->score};
}

}  // namespace hs
