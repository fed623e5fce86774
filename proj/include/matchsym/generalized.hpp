// Copyright 2026 The matchsym Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The outside-option model. Individuals may stay single: a generalized
// matching is an involution whose non-trivial cycles pair a woman with a man,
// and a generalized profile ranks the own id among the other side.

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <vector>

#include "matchsym/matching.hpp"
#include "matchsym/permutation.hpp"
#include "matchsym/profile.hpp"

namespace matchsym {

using GeneralizedMatching = Permutation;

inline bool is_generalized_matching(const Permutation& a) {
  const int n = a.n();
  for (int z = 1; z <= 2 * n; ++z) {
    const int w = a(z);
    if (a(w) != z) return false;
    if (w != z && is_woman(n, z) == is_woman(n, w)) return false;
  }
  return true;
}

// Ordered by the number k of couples, then by the set of matched women
// (lexicographic combinations), then by the men assigned to them
// (lexicographic). There are sum_k C(n,k)^2 k! of them.
inline const std::vector<GeneralizedMatching>& all_generalized_matchings(int n) {
  check_half_size(n);
  static std::array<std::once_flag, kMaxN + 1> flags;
  static std::array<std::vector<GeneralizedMatching>, kMaxN + 1> cache;
  std::call_once(flags[n], [n] {
    auto& out = cache[n];
    for (int k = 0; k <= n; ++k) {
      // Women subsets of size k, lexicographic.
      std::vector<int> women(k);
      std::iota(women.begin(), women.end(), 1);
      while (true) {
        // Injections women -> men, lexicographic on the image tuple.
        std::vector<int> men(k);
        std::vector<bool> used(2 * n + 1, false);
        auto rec = [&](auto&& self, int i) -> void {
          if (i == k) {
            std::vector<int> imgs(2 * n);
            std::iota(imgs.begin(), imgs.end(), 1);
            for (int j = 0; j < k; ++j) {
              imgs[women[j] - 1] = men[j];
              imgs[men[j] - 1] = women[j];
            }
            out.push_back(Permutation::from_images(n, imgs));
            return;
          }
          for (int y = n + 1; y <= 2 * n; ++y) {
            if (used[y]) continue;
            used[y] = true;
            men[i] = y;
            self(self, i + 1);
            used[y] = false;
          }
        };
        rec(rec, 0);
        // Next combination.
        int i = k - 1;
        while (i >= 0 && women[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++women[i];
        for (int j = i + 1; j < k; ++j) women[j] = women[j - 1] + 1;
      }
    }
  });
  return cache[n];
}

inline GeneralizedProfile act_gen(const GeneralizedProfile& p, const Permutation& phi) {
  return act(p, phi);
}

inline void check_gen_pair(const GeneralizedProfile& p, const Permutation& mu) {
  if (p.n() != mu.n()) throw SizeError("profile and matching sizes differ");
  if (!is_generalized_matching(mu)) {
    throw DomainError(to_string(mu) + " is not a generalized matching");
  }
}

// Individually rational (nobody prefers being single to the partner) and no
// blocking couple.
inline bool is_stable_gen(const GeneralizedProfile& p, const GeneralizedMatching& mu) {
  check_gen_pair(p, mu);
  const detail::RankTable<1> r(p);
  const int n = p.n();
  for (int z = 1; z <= 2 * n; ++z) {
    if (r(z, z) < r(z, mu(z))) return false;
  }
  for (int x = 1; x <= n; ++x) {
    for (int y = n + 1; y <= 2 * n; ++y) {
      if (mu(x) == y) continue;
      if (r(x, y) < r(x, mu(x)) && r(y, x) < r(y, mu(y))) return false;
    }
  }
  return true;
}

inline bool pareto_dominates_gen(const GeneralizedProfile& p,
                                 const GeneralizedMatching& a,
                                 const GeneralizedMatching& b) {
  return detail::pareto_dominates(detail::RankTable<1>(p), a, b);
}

inline bool is_pareto_gen(const GeneralizedProfile& p, const GeneralizedMatching& mu) {
  check_gen_pair(p, mu);
  const detail::RankTable<1> r(p);
  for (const auto& other : all_generalized_matchings(p.n())) {
    if (detail::pareto_dominates(r, other, mu)) return false;
  }
  return true;
}

// Appends every individual's own id at the bottom of their ranking.
inline GeneralizedProfile embed_phi(const PreferenceProfile& p) {
  std::vector<std::vector<int>> orders;
  for (int z = 1; z <= 2 * p.n(); ++z) {
    auto o = p.order(z);
    o.push_back(z);
    orders.push_back(std::move(o));
  }
  return GeneralizedProfile::from_orders(p.n(), orders);
}

// Everybody ranks being single last.
inline bool in_pbar_star(const GeneralizedProfile& p) {
  for (int z = 1; z <= 2 * p.n(); ++z) {
    if (p.bottom(z) != z) return false;
  }
  return true;
}

// Inverse of embed_phi on P-bar-star.
inline PreferenceProfile strip_phi(const GeneralizedProfile& p) {
  if (!in_pbar_star(p)) throw DomainError("profile is not in the image of the embedding");
  std::vector<std::vector<int>> orders;
  for (int z = 1; z <= 2 * p.n(); ++z) {
    auto o = p.order(z);
    o.pop_back();
    orders.push_back(std::move(o));
  }
  return PreferenceProfile::from_orders(p.n(), orders);
}

// When some woman x and some man y are both single under mu, pairing them is
// a Pareto improvement on P-bar-star. Returns that improvement.
inline std::optional<GeneralizedMatching> pair_singles(const GeneralizedMatching& mu) {
  const int n = mu.n();
  int x = 0, y = 0;
  for (int z = 1; z <= n && !x; ++z) {
    if (mu(z) == z) x = z;
  }
  for (int z = n + 1; z <= 2 * n && !y; ++z) {
    if (mu(z) == z) y = z;
  }
  if (!x || !y) return std::nullopt;
  std::vector<int> imgs = mu.images();
  imgs[x - 1] = y;
  imgs[y - 1] = x;
  return Permutation::from_images(n, imgs);
}

}  // namespace matchsym
