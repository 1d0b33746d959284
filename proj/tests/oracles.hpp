#pragma once

// Independent brute-force oracles used to derive the frozen values in the
// unit tests. They only read tables through the public accessors and never
// call the library's constructions.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "gext/groupoid.hpp"

namespace oracle {

using gext::FiniteGroupoid;

inline int loop_order(const FiniteGroupoid& g, int a) {
  if (g.src(a) != g.tgt(a)) return 0;
  int x = a, k = 1;
  while (!g.is_unit_arrow(x)) {
    x = g.comp(x, a);
    ++k;
  }
  return k;
}

/// Plain backtracking search for an isomorphism of composition tables.
inline std::optional<std::vector<int>> isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  const int n = g.num_arrows();
  if (n != h.num_arrows() || g.num_units() != h.num_units()) return std::nullopt;
  std::vector<int> sig_g(n), sig_h(n);
  for (int a = 0; a < n; ++a) {
    sig_g[a] = loop_order(g, a);
    sig_h[a] = loop_order(h, a);
  }
  std::vector<int> map(n, -1), unit(g.num_units(), -1), unit_used(h.num_units(), 0);
  std::vector<char> used(n, 0);
  std::function<bool(int)> go = [&](int a) -> bool {
    if (a == n) return true;
    for (int b = 0; b < n; ++b) {
      if (used[b] || sig_g[a] != sig_h[b]) continue;
      // endpoints
      std::vector<std::pair<int, int>> fresh;
      bool ok = true;
      for (auto [x, y] : {std::pair{g.src(a), h.src(b)}, std::pair{g.tgt(a), h.tgt(b)}}) {
        if (unit[x] == -1) {
          if (unit_used[y]) { ok = false; break; }
          unit[x] = y;
          unit_used[y] = 1;
          fresh.push_back({x, y});
        } else if (unit[x] != y) {
          ok = false;
          break;
        }
      }
      map[a] = b;
      used[b] = 1;
      for (int c = 0; ok && c <= a; ++c) {
        if (g.composable(a, c)) {
          const int ac = g.comp(a, c);
          if (map[ac] != -1 && map[ac] != h.comp(b, map[c])) ok = false;
        }
        if (ok && g.composable(c, a)) {
          const int ca = g.comp(c, a);
          if (map[ca] != -1 && map[ca] != h.comp(map[c], b)) ok = false;
        }
      }
      // images of composites already fixed must also be consistent backwards
      for (int c = 0; ok && c < a; ++c)
        for (int d = 0; ok && d <= a; ++d)
          if (g.composable(c, d) && g.comp(c, d) == a && map[d] != -1 &&
              h.comp(map[c], map[d]) != b)
            ok = false;
      if (ok && go(a + 1)) return true;
      map[a] = -1;
      used[b] = 0;
      for (auto [x, y] : fresh) {
        unit[x] = -1;
        unit_used[y] = 0;
      }
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return map;
}

inline bool isomorphic(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  return isomorphism(g, h).has_value();
}

}  // namespace oracle
