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

// Matchings, optimality predicates, deferred acceptance, envy measures and
// the fixed roster of matching mechanisms.
//
// A matching is a Permutation that is an involution exchanging W and M; there
// is no separate type, so conjugation and composition apply directly.

#include <algorithm>
#include <array>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matchsym/errors.hpp"
#include "matchsym/permutation.hpp"
#include "matchsym/profile.hpp"

namespace matchsym {

using Matching = Permutation;
// Sorted, duplicate-free.
using MatchingSet = std::vector<Permutation>;

inline const Permutation& as_matching(const Permutation& a) {
  if (!is_matching_permutation(a)) {
    throw DomainError(to_string(a) + " is not a matching");
  }
  return a;
}

inline Matching parse_matching(std::string_view text, int n) {
  return as_matching(parse_permutation(text, n));
}

inline void normalize(MatchingSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// { mu^phi : mu in s }.
inline MatchingSet conjugate_set(const MatchingSet& s, const Permutation& phi) {
  MatchingSet out;
  out.reserve(s.size());
  for (const auto& mu : s) out.push_back(conjugate(mu, phi));
  normalize(out);
  return out;
}

inline bool contains(const MatchingSet& s, const Permutation& mu) {
  return std::binary_search(s.begin(), s.end(), mu);
}

inline MatchingSet intersect(const MatchingSet& a, const MatchingSet& b) {
  MatchingSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool is_subset(const MatchingSet& a, const MatchingSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// All n! matchings, ordered lexicographically by image sequence.
inline const std::vector<Matching>& all_matchings(int n) {
  check_half_size(n);
  static std::array<std::once_flag, kMaxN + 1> flags;
  static std::array<std::vector<Matching>, kMaxN + 1> cache;
  std::call_once(flags[n], [n] {
    std::vector<int> men(n);
    std::iota(men.begin(), men.end(), n + 1);
    std::vector<int> imgs(2 * n);
    do {
      for (int i = 0; i < n; ++i) {
        imgs[i] = men[i];
        imgs[men[i] - 1] = i + 1;
      }
      cache[n].push_back(Permutation::from_images(n, imgs));
    } while (std::next_permutation(men.begin(), men.end()));
  });
  return cache[n];
}

namespace detail {

// rank[z][x] for the 2n rankings of a profile, 1-based.
template <int E>
struct RankTable {
  explicit RankTable(const BasicProfile<E>& p) : n(p.n()) {
    for (int z = 1; z <= 2 * n; ++z) {
      for (int k = 0; k < p.width(); ++k) r[z][p.at(z, k)] = static_cast<std::uint8_t>(k + 1);
    }
  }
  int operator()(int z, int x) const { return r[z][x]; }

  int n;
  std::array<std::array<std::uint8_t, 2 * kMaxN + 1>, 2 * kMaxN + 1> r{};
};

inline void check_pair(const PreferenceProfile& p, const Permutation& mu) {
  if (p.n() != mu.n()) throw SizeError("profile and matching sizes differ");
}

}  // namespace detail

// Pairs (x, y), x a woman and y a man, that both prefer each other to their
// partners under mu. Sorted.
inline std::vector<std::pair<int, int>> blocking_pairs(const PreferenceProfile& p,
                                                       const Matching& mu) {
  detail::check_pair(p, mu);
  const detail::RankTable<0> r(p);
  const int n = p.n();
  std::vector<std::pair<int, int>> out;
  for (int x = 1; x <= n; ++x) {
    for (int y = n + 1; y <= 2 * n; ++y) {
      if (mu(x) == y) continue;
      if (r(x, y) < r(x, mu(x)) && r(y, x) < r(y, mu(y))) out.emplace_back(x, y);
    }
  }
  return out;
}

inline bool is_stable(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  const detail::RankTable<0> r(p);
  const int n = p.n();
  for (int x = 1; x <= n; ++x) {
    const int rx = r(x, mu(x));
    for (int k = 0; k < rx - 1; ++k) {
      const int y = p.at(x, k);
      if (r(y, x) < r(y, mu(y))) return false;
    }
  }
  return true;
}

namespace detail {

template <int E>
bool pareto_dominates(const RankTable<E>& r, const Permutation& a, const Permutation& b) {
  bool strict = false;
  for (int z = 1; z <= 2 * r.n; ++z) {
    const int ra = r(z, a(z)), rb = r(z, b(z));
    if (ra > rb) return false;
    strict |= ra < rb;
  }
  return strict;
}

template <int E>
bool strictly_dominates(const RankTable<E>& r, const Permutation& a, const Permutation& b) {
  for (int z = 1; z <= 2 * r.n; ++z) {
    if (r(z, a(z)) >= r(z, b(z))) return false;
  }
  return true;
}

}  // namespace detail

// a Pareto-dominates b: nobody prefers b and somebody prefers a.
inline bool pareto_dominates(const PreferenceProfile& p, const Matching& a,
                             const Matching& b) {
  return detail::pareto_dominates(detail::RankTable<0>(p), a, b);
}

// Everybody strictly prefers a to b.
inline bool strictly_dominates(const PreferenceProfile& p, const Matching& a,
                               const Matching& b) {
  return detail::strictly_dominates(detail::RankTable<0>(p), a, b);
}

inline bool is_pareto(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  const detail::RankTable<0> r(p);
  for (const auto& other : all_matchings(p.n())) {
    if (detail::pareto_dominates(r, other, mu)) return false;
  }
  return true;
}

inline bool is_weak_pareto(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  const detail::RankTable<0> r(p);
  for (const auto& other : all_matchings(p.n())) {
    if (detail::strictly_dominates(r, other, mu)) return false;
  }
  return true;
}

// Somebody is not matched to their last choice.
inline bool is_min_optimal(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  for (int z = 1; z <= 2 * p.n(); ++z) {
    if (p.bottom(z) != mu(z)) return true;
  }
  return false;
}

// The map sending everybody to their last choice, when it is a matching.
inline std::optional<Matching> sigma_p(const PreferenceProfile& p) {
  const int n = p.n();
  std::vector<int> imgs(2 * n);
  std::vector<bool> hit(2 * n + 1, false);
  for (int z = 1; z <= 2 * n; ++z) {
    const int w = p.bottom(z);
    if (hit[w]) return std::nullopt;
    hit[w] = true;
    imgs[z - 1] = w;
  }
  Permutation s = Permutation::from_images(n, imgs);
  if (!is_involution(s)) return std::nullopt;
  return s;
}

enum class Side { kWomen, kMen };

inline Side parse_side(std::string_view s) {
  if (s == "women" || s == "w" || s == "W") return Side::kWomen;
  if (s == "men" || s == "m" || s == "M") return Side::kMen;
  throw DomainError("unknown side \"" + std::string(s) + "\"");
}

// Deferred acceptance with `side` proposing. Each round every free proposer,
// in ascending id order, proposes to the best receiver not yet tried; each
// receiver keeps the best proposal held so far.
inline Matching gale_shapley(const PreferenceProfile& p, Side side) {
  const int n = p.n();
  const detail::RankTable<0> r(p);
  const int first = side == Side::kWomen ? 1 : n + 1;
  std::vector<int> next(2 * n + 1, 0);
  std::vector<int> held(2 * n + 1, 0);  // receiver -> proposer
  std::vector<int> partner(2 * n + 1, 0);
  bool any_free = true;
  while (any_free) {
    any_free = false;
    for (int a = first; a < first + n; ++a) {
      if (partner[a] != 0) continue;
      any_free = true;
      const int b = p.at(a, next[a]++);
      const int cur = held[b];
      if (cur == 0 || r(b, a) < r(b, cur)) {
        if (cur != 0) partner[cur] = 0;
        held[b] = a;
        partner[a] = b;
      }
    }
  }
  std::vector<int> imgs(2 * n);
  for (int a = first; a < first + n; ++a) {
    imgs[a - 1] = partner[a];
    imgs[partner[a] - 1] = a;
  }
  return Permutation::from_images(n, imgs);
}

// |sum of women's ranks of their partners - sum of men's ranks|.
inline int delta(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  const int n = p.n();
  int w = 0, m = 0;
  for (int x = 1; x <= n; ++x) w += p.rank(x, mu(x));
  for (int y = n + 1; y <= 2 * n; ++y) m += p.rank(y, mu(y));
  return w > m ? w - m : m - w;
}

// Sum of everybody's rank of their partner.
inline int envy_total(const PreferenceProfile& p, const Matching& mu) {
  detail::check_pair(p, mu);
  int e = 0;
  for (int z = 1; z <= 2 * p.n(); ++z) e += p.rank(z, mu(z));
  return e;
}

enum class MechanismId { TO, ST, PO, WPO, MO, GS, GS_w, GS_m, SE, ES };

inline constexpr std::array<MechanismId, 10> kAllMechanisms = {
    MechanismId::TO, MechanismId::ST,   MechanismId::PO,   MechanismId::WPO,
    MechanismId::MO, MechanismId::GS,   MechanismId::GS_w, MechanismId::GS_m,
    MechanismId::SE, MechanismId::ES};

inline std::string to_string(MechanismId id) {
  switch (id) {
    case MechanismId::TO: return "TO";
    case MechanismId::ST: return "ST";
    case MechanismId::PO: return "PO";
    case MechanismId::WPO: return "WPO";
    case MechanismId::MO: return "MO";
    case MechanismId::GS: return "GS";
    case MechanismId::GS_w: return "GS_w";
    case MechanismId::GS_m: return "GS_m";
    case MechanismId::SE: return "SE";
    case MechanismId::ES: return "ES";
  }
  return "?";
}

inline MechanismId parse_mechanism(std::string_view s) {
  for (auto id : kAllMechanisms) {
    if (to_string(id) == s) return id;
  }
  throw DomainError("unknown mechanism \"" + std::string(s) + "\"");
}

namespace detail {

template <class Pred>
MatchingSet filter_matchings(int n, Pred pred) {
  MatchingSet out;
  for (const auto& mu : all_matchings(n)) {
    if (pred(mu)) out.push_back(mu);
  }
  return out;
}

template <class Cost>
MatchingSet argmin_stable(const PreferenceProfile& p, Cost cost) {
  MatchingSet st = filter_matchings(p.n(), [&](const Matching& mu) { return is_stable(p, mu); });
  int best = std::numeric_limits<int>::max();
  for (const auto& mu : st) best = std::min(best, cost(mu));
  MatchingSet out;
  for (const auto& mu : st) {
    if (cost(mu) == best) out.push_back(mu);
  }
  return out;
}

}  // namespace detail

// The set F(p) chosen by mechanism `id`. SE and ES return full argmin sets.
inline MatchingSet evaluate_mechanism(MechanismId id, const PreferenceProfile& p) {
  const int n = p.n();
  switch (id) {
    case MechanismId::TO:
      return all_matchings(n);
    case MechanismId::ST:
      return detail::filter_matchings(n, [&](const Matching& mu) { return is_stable(p, mu); });
    case MechanismId::PO:
      return detail::filter_matchings(n, [&](const Matching& mu) { return is_pareto(p, mu); });
    case MechanismId::WPO:
      return detail::filter_matchings(n, [&](const Matching& mu) { return is_weak_pareto(p, mu); });
    case MechanismId::MO:
      return detail::filter_matchings(n, [&](const Matching& mu) { return is_min_optimal(p, mu); });
    case MechanismId::GS: {
      MatchingSet s{gale_shapley(p, Side::kWomen), gale_shapley(p, Side::kMen)};
      normalize(s);
      return s;
    }
    case MechanismId::GS_w:
      return {gale_shapley(p, Side::kWomen)};
    case MechanismId::GS_m:
      return {gale_shapley(p, Side::kMen)};
    case MechanismId::SE:
      return detail::argmin_stable(p, [&](const Matching& mu) { return delta(p, mu); });
    case MechanismId::ES:
      return detail::argmin_stable(p, [&](const Matching& mu) { return envy_total(p, mu); });
  }
  throw DomainError("unknown mechanism");
}

}  // namespace matchsym
