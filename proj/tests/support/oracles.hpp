#pragma once

// Slow, obviously-correct reference implementations used to check the
// optimized library code. None of these call into hs_core.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

/// Textbook O(nm) LCS table.
inline std::size_t lcs(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

inline std::size_t indel(const std::u32string& a, const std::u32string& b) { return a.size() + b.size() - 2 * lcs(a, b); }

/// A similarity score kept as the exact fraction (total - dist) / total.
struct Ratio {
  std::size_t num = 0;
  std::size_t den = 1;
  bool operator<(const Ratio& o) const { return num * o.den < o.num * den; }
  bool operator==(const Ratio& o) const { return num * o.den == o.num * den; }
};

inline Ratio ratio(const std::u32string& a, const std::u32string& b) {
  const auto total = a.size() + b.size();
  if (total == 0) return {1, 1};
  return {total - indel(a, b), total};
}

struct SubstringOptimum {
  Ratio best;
  /// Some optimal substring has a length inside [band_min, band_max].
  bool optimum_in_band = false;
  std::size_t best_length_anywhere = 0;
};

/// Scores every non-empty substring of `text` against `query`.
inline SubstringOptimum best_substring(const std::u32string& text, const std::u32string& query, std::size_t band_min,
                                       std::size_t band_max) {
  SubstringOptimum out;
  bool first = true;
  std::vector<std::pair<Ratio, std::size_t>> all;
  for (std::size_t s = 0; s < text.size(); ++s) {
    for (std::size_t len = 1; s + len <= text.size(); ++len) {
      const auto r = ratio(text.substr(s, len), query);
      all.push_back({r, len});
      if (first || out.best < r) {
        out.best = r;
        out.best_length_anywhere = len;
        first = false;
      }
    }
  }
  for (const auto& [r, len] : all) {
    if (r == out.best && len >= band_min && len <= band_max) out.optimum_in_band = true;
  }
  return out;
}

/// Multiset intersection by repeated removal.
inline std::size_t multiset_hits(const std::vector<std::string>& from, std::vector<std::string> pool) {
  std::size_t hits = 0;
  for (const auto& t : from) {
    const auto it = std::find(pool.begin(), pool.end(), t);
    if (it != pool.end()) {
      ++hits;
      pool.erase(it);
    }
  }
  return hits;
}

/// Pearson coefficient straight from the covariance definition.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

struct Interval {
  std::string doc;
  std::size_t start;
  std::size_t end;
};

/// True iff any two intervals of the same document share a position.
inline bool any_overlap(const std::vector<Interval>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i].doc == xs[j].doc && xs[i].start < xs[j].end && xs[j].start < xs[i].end) return true;
    }
  }
  return false;
}

}  // namespace oracle
