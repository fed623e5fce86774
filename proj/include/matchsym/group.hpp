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

// Extensional permutation groups. Every group is stored as its sorted element
// list, which is adequate for subgroups of G* up to n = 6 (|G*| = 2 (n!)^2).

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "matchsym/errors.hpp"
#include "matchsym/permutation.hpp"

namespace matchsym {

class PermGroup {
 public:
  PermGroup() = default;

  // `elements` must already be closed under composition; it is sorted here.
  // Use generate() when only generators are known.
  PermGroup(int n, std::vector<Permutation> elements,
            std::vector<Permutation> generators = {})
      : n_(n), elements_(std::move(elements)), gens_(std::move(generators)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()),
                    elements_.end());
  }

  static PermGroup trivial(int n) {
    return PermGroup(n, {Permutation::identity(n)});
  }

  int n() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  bool contains(const Permutation& a) const {
    return std::binary_search(elements_.begin(), elements_.end(), a);
  }

  bool is_subset_of(const PermGroup& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(),
                         elements_.begin(), elements_.end());
  }

  // A generating set: the one supplied at construction, or a greedy one
  // (elements of highest order first, each added only if it is not yet in the
  // closure of the earlier picks). The greedy set is recomputed on every call.
  std::vector<Permutation> generators() const;

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.n_ == b.n_ && a.elements_ == b.elements_;
  }

 private:
  int n_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> gens_;
};

// Smallest group containing `gens`, by breadth-first closure under right
// multiplication by generators. generate(n, {}) is the trivial group.
inline PermGroup generate(int n, std::span<const Permutation> gens) {
  check_half_size(n);
  std::vector<Permutation> useful;
  for (const auto& g : gens) {
    if (g.n() != n) throw SizeError("generator on a different population");
    if (!g.is_identity()) useful.push_back(g);
  }
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> frontier;
  const Permutation id = Permutation::identity(n);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    const Permutation cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : useful) {
      Permutation next = compose(cur, g);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<Permutation> elems(seen.begin(), seen.end());
  return PermGroup(n, std::move(elems), useful);
}

inline PermGroup generate(int n, std::initializer_list<Permutation> gens) {
  return generate(n, std::span<const Permutation>(gens.begin(), gens.size()));
}

inline PermGroup cyclic(const Permutation& g) {
  return generate(g.n(), std::span<const Permutation>(&g, 1));
}

inline std::vector<Permutation> PermGroup::generators() const {
  if (!gens_.empty() || elements_.size() <= 1) return gens_;
  std::vector<Permutation> picked;
  std::vector<Permutation> closure{Permutation::identity(n_)};
  // Prefer high-order elements so that few generators are needed.
  std::vector<Permutation> candidates = elements_;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Permutation& a, const Permutation& b) {
                     return matchsym::order(a) > matchsym::order(b);
                   });
  for (const auto& c : candidates) {
    if (std::binary_search(closure.begin(), closure.end(), c)) continue;
    picked.push_back(c);
    closure = generate(n_, picked).elements();
    if (closure.size() == elements_.size()) break;
  }
  return picked;
}

namespace detail {

inline std::vector<std::vector<int>> all_arrangements(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline PermGroup build_partition_group(int n, bool with_swaps) {
  const auto arr = detail::all_arrangements(n);
  std::vector<Permutation> elems;
  elems.reserve(arr.size() * arr.size() * (with_swaps ? 2 : 1));
  for (const auto& w : arr) {
    for (const auto& m : arr) {
      std::vector<int> fixed(2 * n);
      for (int i = 0; i < n; ++i) {
        fixed[i] = w[i] + 1;
        fixed[n + i] = n + m[i] + 1;
      }
      elems.push_back(Permutation::from_images(n, fixed));
      if (with_swaps) {
        std::vector<int> swapped(2 * n);
        for (int i = 0; i < n; ++i) {
          swapped[i] = n + w[i] + 1;
          swapped[n + i] = m[i] + 1;
        }
        elems.push_back(Permutation::from_images(n, swapped));
      }
    }
  }
  return PermGroup(n, std::move(elems));
}

inline std::vector<Permutation> standard_g_generators(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> t(2 * n), c(2 * n), tm(2 * n), cm(2 * n);
    std::iota(t.begin(), t.end(), 1);
    c = tm = cm = t;
    std::swap(t[0], t[1]);
    std::swap(tm[n], tm[n + 1]);
    for (int i = 0; i < n; ++i) {
      c[i] = (i + 1) % n + 1;
      cm[n + i] = n + (i + 1) % n + 1;
    }
    gens.push_back(Permutation::from_images(n, t));
    gens.push_back(Permutation::from_images(n, tm));
    if (n >= 3) {
      gens.push_back(Permutation::from_images(n, c));
      gens.push_back(Permutation::from_images(n, cm));
    }
  }
  return gens;
}

}  // namespace detail

// The matching (1 n+1)(2 n+2)...(n 2n).
inline Permutation diagonal_matching(int n) {
  std::vector<int> imgs(2 * n);
  for (int i = 0; i < n; ++i) {
    imgs[i] = n + i + 1;
    imgs[n + i] = i + 1;
  }
  return Permutation::from_images(n, imgs);
}

// G* = { phi : {phi(W), phi(M)} = {W, M} }, cached per n.
inline const PermGroup& gstar(int n) {
  check_half_size(n);
  if (n > 6) throw UnsupportedError("G* is enumerated only for n <= 6");
  static std::array<std::once_flag, kMaxN + 1> flags;
  static std::array<PermGroup, kMaxN + 1> cache;
  std::call_once(flags[n], [n] {
    PermGroup g = detail::build_partition_group(n, true);
    auto gens = detail::standard_g_generators(n);
    gens.push_back(diagonal_matching(n));
    cache[n] = PermGroup(n, g.elements(), std::move(gens));
  });
  return cache[n];
}

// G = { phi : phi(W) = W, phi(M) = M }, cached per n.
inline const PermGroup& g_group(int n) {
  check_half_size(n);
  if (n > 6) throw UnsupportedError("G is enumerated only for n <= 6");
  static std::array<std::once_flag, kMaxN + 1> flags;
  static std::array<PermGroup, kMaxN + 1> cache;
  std::call_once(flags[n], [n] {
    PermGroup g = detail::build_partition_group(n, false);
    cache[n] = PermGroup(n, g.elements(), detail::standard_g_generators(n));
  });
  return cache[n];
}

// G_W (only women move) and G_M (only men move).
inline PermGroup gw_group(int n) {
  std::vector<Permutation> elems;
  for (const auto& a : g_group(n)) {
    if (classify(a).in_gw) elems.push_back(a);
  }
  return PermGroup(n, std::move(elems));
}

inline PermGroup gm_group(int n) {
  std::vector<Permutation> elems;
  for (const auto& a : g_group(n)) {
    if (classify(a).in_gm) elems.push_back(a);
  }
  return PermGroup(n, std::move(elems));
}

inline bool is_subgroup_of_gstar(const PermGroup& s) {
  return std::all_of(s.begin(), s.end(),
                     [](const Permutation& a) { return in_gstar(a); });
}

// C_{G*}(s), by scanning G*.
inline PermGroup centralizer_in_gstar(const PermGroup& s) {
  if (!is_subgroup_of_gstar(s)) {
    throw DomainError("centralizer_in_gstar: subgroup is not inside G*");
  }
  const auto gens = s.generators();
  std::vector<Permutation> out;
  for (const auto& h : gstar(s.n())) {
    bool ok = true;
    for (const auto& k : gens) {
      if (!commute(h, k)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(h);
  }
  return PermGroup(s.n(), std::move(out));
}

// Only the identity fixes a point.
inline bool is_semiregular(const PermGroup& s) {
  for (const auto& a : s) {
    if (a.is_identity()) continue;
    for (int i = 0; i < a.degree(); ++i) {
      if (a.image0(i) == i) return false;
    }
  }
  return true;
}

// Orbit partition of {1..2n}; blocks sorted, listed by least point.
inline std::vector<std::vector<int>> orbits(const PermGroup& s) {
  const int deg = 2 * s.n();
  std::vector<int> block(deg, -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < deg; ++i) {
    if (block[i] >= 0) continue;
    std::vector<int> orbit;
    for (const auto& a : s) {
      const int j = a.image0(i);
      if (block[j] < 0) {
        block[j] = static_cast<int>(out.size());
        orbit.push_back(j + 1);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

// An involution of G* \ G that commutes with every element of the
// semiregular subgroup s (n odd). W-orbits are paired with M-orbits in the
// order of their least points, and the least point of each orbit serves as
// its representative. When s moves women to men, the involution of s found
// first in element order transports each W-representative to its partner.
inline Permutation commuting_involution(const PermGroup& s) {
  const int n = s.n();
  if (n % 2 == 0) {
    throw UnsupportedError("commuting_involution requires n odd");
  }
  if (!is_subgroup_of_gstar(s)) {
    throw PreconditionError("commuting_involution: subgroup is not inside G*");
  }
  if (!is_semiregular(s)) {
    throw PreconditionError("commuting_involution: subgroup is not semiregular");
  }
  std::vector<int> img(2 * n, 0);
  // phi(t(x)) = t(y) for every t in s; well defined by unique representation.
  auto spread = [&](int x, int y) {
    for (const auto& t : s) {
      img[t(x) - 1] = t(y);
    }
  };
  const auto orbs = orbits(s);
  const bool inside_g = std::all_of(s.begin(), s.end(),
                                    [](const Permutation& a) { return in_g(a); });
  if (inside_g) {
    std::vector<int> w_reps, m_reps;
    for (const auto& o : orbs) {
      (is_woman(n, o.front()) ? w_reps : m_reps).push_back(o.front());
    }
    for (std::size_t j = 0; j < w_reps.size(); ++j) {
      spread(w_reps[j], m_reps[j]);
      spread(m_reps[j], w_reps[j]);
    }
  } else {
    const Permutation* involution = nullptr;
    for (const auto& t : s) {
      if (!t.is_identity() && is_involution(t)) {
        involution = &t;
        break;
      }
    }
    if (involution == nullptr) {
      throw PreconditionError("commuting_involution: no involution in s");
    }
    for (const auto& o : orbs) {
      const int x = *std::find_if(o.begin(), o.end(),
                                  [n](int z) { return is_woman(n, z); });
      spread(x, (*involution)(x));
    }
  }
  return Permutation::from_images(n, img);
}

// Every subgroup of G*, found as joins of cyclic subgroups until no new group
// appears. Only for n <= 3.
inline std::vector<PermGroup> all_subgroups_of_gstar(int n) {
  if (n > 3) throw UnsupportedError("subgroup enumeration is limited to n <= 3");
  const PermGroup& full = gstar(n);
  std::map<std::vector<Permutation>, PermGroup> found;
  std::vector<PermGroup> cyclics;
  for (const auto& a : full) {
    PermGroup c = cyclic(a);
    if (found.emplace(c.elements(), c).second) cyclics.push_back(c);
  }
  std::vector<PermGroup> frontier = cyclics;
  while (!frontier.empty()) {
    std::vector<PermGroup> next;
    for (const auto& h : frontier) {
      for (const auto& c : cyclics) {
        if (c.is_subset_of(h)) continue;
        std::vector<Permutation> gens = h.generators();
        gens.push_back(c.generators().front());
        PermGroup j = generate(n, gens);
        if (found.emplace(j.elements(), j).second) next.push_back(j);
      }
    }
    frontier = std::move(next);
  }
  std::vector<PermGroup> out;
  out.reserve(found.size());
  for (auto& [k, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace matchsym
