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

// Special profiles with prescribed symmetry, and one executable verification
// suite per existence/impossibility result.
//
// Profile templates leave some ranking tails free; the builders here always
// fill them in ascending order.

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matchsym/generalized.hpp"
#include "matchsym/group.hpp"
#include "matchsym/matching.hpp"
#include "matchsym/mechanism.hpp"
#include "matchsym/profile.hpp"
#include "matchsym/report.hpp"

namespace matchsym {

inline constexpr const char* kTailFill = "free ranking tails filled in ascending order";

// (1 n+1 2 n+2 ... n 2n).
inline Permutation interleaved_cycle(int n) {
  std::vector<int> imgs(2 * n);
  for (int x = 1; x <= n; ++x) {
    imgs[x - 1] = n + x;
    imgs[n + x - 1] = x == n ? 1 : x + 1;
  }
  return Permutation::from_images(n, imgs);
}

// Stabilizer <interleaved_cycle(n)>. Woman x ranks the men rotated x-1 steps
// along (n+1 ... 2n); man y ranks the women rotated y steps along (1 ... n).
inline PreferenceProfile profile_two_n_cycle(int n) {
  check_half_size(n);
  if (n < 2) throw SizeError("profile_two_n_cycle needs n >= 2");
  std::vector<std::vector<int>> orders(2 * n);
  for (int x = 1; x <= n; ++x) {
    for (int i = 0; i < n; ++i) orders[x - 1].push_back(n + 1 + (i + x - 1) % n);
  }
  for (int y = n + 1; y <= 2 * n; ++y) {
    for (int i = 0; i < n; ++i) orders[y - 1].push_back(1 + (i + y) % n);
  }
  return PreferenceProfile::from_orders(n, orders);
}

// n odd. Stabilizer <phi> with phi = interleaved_cycle(n), and everybody's
// image under phi^n ranked last.
inline PreferenceProfile profile_ciclone_odd(int n) {
  check_half_size(n);
  if (n % 2 == 0 || n < 3) throw UnsupportedError("profile_ciclone_odd needs odd n >= 3");
  const Permutation phi = interleaved_cycle(n);
  const int last = (3 * n + 1) / 2;
  std::vector<int> base;
  for (int y = n + 1; y <= 2 * n; ++y) {
    if (y != last) base.push_back(y);
  }
  base.push_back(last);
  std::vector<std::vector<int>> orders(2 * n);
  auto image = [&](int e) {
    const Permutation pw = power(phi, e);
    std::vector<int> o;
    for (int v : base) o.push_back(pw(v));
    return o;
  };
  for (int x = 1; x <= n; ++x) orders[x - 1] = image(2 * (x - 1));
  for (int y = n + 1; y <= 2 * n; ++y) orders[y - 1] = image(2 * y - 2 * n - 1);
  return PreferenceProfile::from_orders(n, orders);
}

// n >= 3, phi a matching; writes y_x = phi(x). A profile fixed by phi on
// which no stable matching commutes with phi.
inline PreferenceProfile endriss_profile(int n, const Matching& phi) {
  check_half_size(n);
  if (n < 3) throw UnsupportedError("endriss_profile needs n >= 3");
  if (phi.n() != n) throw SizeError("endriss_profile: matching size differs");
  as_matching(phi);
  auto y = [&](int x) { return phi(x); };
  std::vector<std::vector<int>> orders(2 * n);
  const int women_heads[3][3] = {{2, 3, 1}, {3, 1, 2}, {1, 2, 3}};
  for (int x = 1; x <= 3; ++x) {
    auto& o = orders[x - 1];
    for (int h : women_heads[x - 1]) o.push_back(y(h));
    for (int t = 4; t <= n; ++t) o.push_back(y(t));
    auto& om = orders[y(x) - 1];
    for (int h : women_heads[x - 1]) om.push_back(h);
    for (int t = 4; t <= n; ++t) om.push_back(t);
  }
  // sigma = (1 2 ... n)(y_1 ... y_n), applied x-1 times to [1..n] / [y_1..y_n].
  for (int x = 4; x <= n; ++x) {
    auto& o = orders[x - 1];
    auto& om = orders[y(x) - 1];
    for (int i = 1; i <= n; ++i) {
      const int shifted = (i - 1 + x - 1) % n + 1;
      o.push_back(y(shifted));
      om.push_back(shifted);
    }
  }
  return PreferenceProfile::from_orders(n, orders);
}

// The six matchings that agree with phi on women 4..n, numbered as in the
// impossibility argument: mu_1 = phi, ..., mu_5 = (1 y2)(2 y3)(3 y1)...,
// mu_6 = (1 y3)(2 y1)(3 y2)... Index 0 is unused.
inline std::vector<Matching> endriss_matchings(int n, const Matching& phi) {
  const int heads[7][3] = {{0, 0, 0}, {1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                           {3, 2, 1}, {2, 3, 1}, {3, 1, 2}};
  std::vector<Matching> out(7, Permutation::identity(n));
  for (int i = 1; i <= 6; ++i) {
    std::vector<int> imgs(2 * n);
    for (int x = 1; x <= n; ++x) {
      const int yx = x <= 3 ? phi(heads[i][x - 1]) : phi(x);
      imgs[x - 1] = yx;
      imgs[yx - 1] = x;
    }
    out[i] = Permutation::from_images(n, imgs);
  }
  return out;
}

// Woman x ranks y_x = n+x first; man y_1 ranks 2 first, y_2 ranks 1 first,
// y_x ranks x first for x >= 3. Returned with phi = (1 y_1)...(n y_n).
inline std::pair<PreferenceProfile, Matching> gs_asymmetry_profile(int n) {
  check_half_size(n);
  if (n < 2) throw SizeError("gs_asymmetry_profile needs n >= 2");
  std::vector<std::vector<int>> orders(2 * n);
  for (int x = 1; x <= n; ++x) {
    orders[x - 1].push_back(n + x);
    for (int y = n + 1; y <= 2 * n; ++y) {
      if (y != n + x) orders[x - 1].push_back(y);
    }
  }
  for (int x = 1; x <= n; ++x) {
    const int head = x == 1 ? 2 : x == 2 ? 1 : x;
    auto& o = orders[n + x - 1];
    o.push_back(head);
    for (int w = 1; w <= n; ++w) {
      if (w != head) o.push_back(w);
    }
  }
  return {PreferenceProfile::from_orders(n, orders), diagonal_matching(n)};
}

// A weakly Pareto optimal matching commuting with the stabilizer of p in
// <phi>. If phi fixes p: phi itself when it gives woman 1 her first choice,
// otherwise phi conjugated by the transposition of phi(1) and that choice.
// If not: the least weakly Pareto optimal matching.
inline Matching wpo_symmetric_choice(const PreferenceProfile& p, const Matching& phi) {
  if (!is_matching_permutation(phi)) {
    throw PreconditionError("wpo_symmetric_choice: phi is not a matching");
  }
  if (phi.n() != p.n()) throw SizeError("wpo_symmetric_choice: sizes differ");
  if (!fixes(p, phi)) return evaluate_mechanism(MechanismId::WPO, p).front();
  const int y1 = p.top(1);
  const int y0 = phi(1);
  if (y0 == y1) return phi;
  std::vector<int> imgs(2 * p.n());
  std::iota(imgs.begin(), imgs.end(), 1);
  std::swap(imgs[y0 - 1], imgs[y1 - 1]);
  return conjugate(phi, Permutation::from_images(p.n(), imgs));
}

inline Selector<0> wpo_selector(const Matching& phi) {
  return [phi](const PreferenceProfile& rep, const PermGroup&, const MatchingSet&) {
    return wpo_symmetric_choice(rep, phi);
  };
}

struct TheoremReport {
  std::string theorem;
  int n = 0;
  std::string status;  // "verified", "refuted" or "skipped"
  Json evidence = Json::object();
  std::uint64_t seed = 0;
  double elapsed_ms = 0;

  Json to_json(bool with_timing = true) const {
    Json j;
    j["theorem"] = theorem;
    j["n"] = n;
    j["status"] = status;
    j["evidence"] = evidence;
    j["seed"] = seed;
    j["elapsed_ms"] = with_timing ? elapsed_ms : 0.0;
    return j;
  }
};

namespace detail {

// Named sub-claims; the suite is verified iff all hold.
class Checklist {
 public:
  void add(const std::string& name, bool ok, Json detail = nullptr) {
    Json item;
    item["claim"] = name;
    item["holds"] = ok;
    if (!detail.is_null()) item["detail"] = std::move(detail);
    items_.push_back(std::move(item));
    all_ok_ = all_ok_ && ok;
  }
  bool all_ok() const { return all_ok_; }
  Json json() const { return items_; }

 private:
  Json items_ = Json::array();
  bool all_ok_ = true;
};

inline Json pairs_json(const std::vector<std::pair<int, int>>& v) {
  Json j = Json::array();
  for (const auto& [a, b] : v) j.push_back({a, b});
  return j;
}

inline bool has_pair(const std::vector<std::pair<int, int>>& v, int a, int b) {
  return std::find(v.begin(), v.end(), std::make_pair(a, b)) != v.end();
}

// Checks a resolute table on every profile: symmetric under its group,
// contained in C^U and satisfying `pred`.
template <class Pred>
void check_table(Checklist& cl, const MechanismTable& t, const std::string& what,
                 Pred pred, int jobs) {
  const auto sym = is_u_symmetric<0>(t, t.group(), Scope::exhaustive(jobs));
  cl.add(what + " table is symmetric under its group on every profile", sym.verdict,
         Json{{"profiles", sym.points_checked}, {"generators", sym.generators}});
  const ProfileSpace space(t.n());
  const std::uint64_t bad = parallel_count(space.size(), jobs, [&](std::uint64_t i) {
    const auto p = space.at(i);
    const Matching mu = t.evaluate(p);
    return !(is_matching_permutation(mu) && contains(c_u(p, t.group()), mu) && pred(p, mu));
  });
  cl.add(what + " table is resolute, inside C^U and " + what + " on every profile",
         bad == 0, Json{{"profiles", space.size()}, {"violations", bad}});
}

inline TheoremReport skipped(const std::string& th, int n, const std::string& why) {
  TheoremReport r;
  r.theorem = th;
  r.n = n;
  r.status = "skipped";
  r.evidence = {{"reason", why}};
  return r;
}

inline TheoremReport suite_t2(int n, int jobs) {
  if (n % 2 != 0 || n < 2 || n > 6) return skipped("T2", n, "needs even n with 2 <= n <= 6");
  Checklist cl;
  const PermGroup& gs = gstar(n);
  const PreferenceProfile p = profile_two_n_cycle(n);
  const Permutation phi = interleaved_cycle(n);
  const PermGroup st = stabilizer(p, gs);
  cl.add("stabilizer of the 2n-cycle profile is generated by the 2n-cycle",
         st == cyclic(phi), Json{{"profile", to_json(p)}, {"stabilizer", to_json(st)}});
  const MatchingSet c = c_u(p, gs);
  cl.add("C^{G*} is empty on the 2n-cycle profile", c.empty(), Json{{"c_u", to_json(c)}});
  if (n == 2) {
    const auto pspeciale = PreferenceProfile::from_orders(2, {{3, 4}, {4, 3}, {2, 1}, {1, 2}});
    cl.add("construction reproduces the n=2 four-element-stabilizer profile", p == pspeciale);
    std::uint64_t empty = 0;
    ProfileSpace(2).for_each([&](const PreferenceProfile& q) { empty += c_u(q, gs).empty(); });
    cl.add("exhaustive scan finds profiles with empty C^{G*}", empty >= 1,
           Json{{"profiles", 16}, {"empty", empty}});
    const auto f = feasibility(MechanismId::TO, gs, 2, jobs);
    cl.add("feasibility(TO, G*) fails", !f.feasible,
           f.witness ? Json{{"witness", to_json(*f.witness)}} : Json(nullptr));
  }
  TheoremReport r{"T2", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
  return r;
}

inline TheoremReport suite_t3(int n, int jobs) {
  if (n != 3) return skipped("T3", n, "exhaustive verification only at n = 3");
  Checklist cl;
  const PermGroup& gs = gstar(n);
  const ProfileSpace space(n);
  const std::uint64_t empty = parallel_count(space.size(), jobs, [&](std::uint64_t i) {
    return c_u(space.at(i), gs).empty();
  });
  cl.add("C^{G*} is nonempty on every profile", empty == 0,
         Json{{"profiles", space.size()}, {"empty", empty}});
  const auto syn = synthesize<0>(gs, MechanismId::TO, lex_least_selector<0>(), jobs);
  cl.add("synthesis of a resolute G*-symmetric refinement of TO succeeds",
         syn.table.has_value(),
         Json{{"orbits", syn.table ? syn.table->entries().size() : 0}});
  if (syn.table) {
    check_table(cl, *syn.table, "TO", [](const PreferenceProfile&, const Matching&) { return true; },
                jobs);
  }
  return {"T3", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
}

inline TheoremReport suite_t4(int n, int jobs) {
  if (n != 3 && n != 5) return skipped("T4", n, "needs n in {3, 5}");
  Checklist cl;
  const PermGroup& gs = gstar(n);
  const PreferenceProfile p = profile_ciclone_odd(n);
  const Permutation phi = interleaved_cycle(n);
  const PermGroup st = stabilizer(p, gs);
  cl.add("stabilizer is generated by the 2n-cycle", st == cyclic(phi),
         Json{{"profile", to_json(p)}, {"generator", to_string(phi)}, {"order", st.order()}});
  const Permutation phin = power(phi, n);
  bool last = true;
  for (int z = 1; z <= 2 * n; ++z) last = last && p.rank(z, phin(z)) == n;
  cl.add("everybody ranks their phi^n image last", last);
  const MatchingSet both = intersect(c_u(p, gs), evaluate_mechanism(MechanismId::MO, p));
  cl.add("C^{G*} and MO are disjoint", both.empty(), Json{{"intersection", to_json(both)}});
  if (n == 3) {
    const auto f = feasibility(MechanismId::MO, gs, 3, jobs);
    cl.add("feasibility(MO, G*) fails", !f.feasible,
           f.witness ? Json{{"witness", to_json(*f.witness)}} : Json(nullptr));
  }
  return {"T4", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
}

inline TheoremReport suite_t6(int n, int jobs) {
  if (n != 2 && n != 3) return skipped("T6", n, "exhaustive verification only at n in {2, 3}");
  Checklist cl;
  const Matching phi = diagonal_matching(n);
  const PermGroup u = cyclic(phi);
  const auto syn = synthesize<0>(u, MechanismId::WPO, wpo_selector(phi), jobs);
  cl.add("synthesis with the WPO symmetric selector succeeds", syn.table.has_value(),
         Json{{"phi", to_string(phi)}, {"orbits", syn.table ? syn.table->entries().size() : 0}});
  if (syn.table) {
    check_table(cl, *syn.table, "WPO",
                [](const PreferenceProfile& p, const Matching& mu) { return is_weak_pareto(p, mu); },
                jobs);
  }
  return {"T6", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
}

inline TheoremReport suite_t7(int n, int jobs) {
  if (n != 2) return skipped("T7", n, "the stable case holds only at n = 2");
  Checklist cl;
  for (const auto& phi : all_matchings(2)) {
    const PermGroup u = cyclic(phi);
    const auto syn = synthesize<0>(u, MechanismId::ST, lex_least_selector<0>(), jobs);
    cl.add("synthesis of a stable <" + to_string(phi) + ">-symmetric mechanism succeeds",
           syn.table.has_value());
    if (syn.table) {
      check_table(cl, *syn.table, "ST",
                  [](const PreferenceProfile& p, const Matching& mu) { return is_stable(p, mu); },
                  jobs);
    }
  }
  return {"T7", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
}

inline TheoremReport suite_t8(int n, int jobs) {
  if (n < 3 || n > 5) return skipped("T8", n, "needs 3 <= n <= 5");
  Checklist cl;
  const Matching phi = diagonal_matching(n);
  const PermGroup u = cyclic(phi);
  const PreferenceProfile p = endriss_profile(n, phi);
  cl.add("profile is fixed by phi", act(p, phi) == p, Json{{"profile", to_json(p)}});
  const auto mu = endriss_matchings(n, phi);
  const MatchingSet st = evaluate_mechanism(MechanismId::ST, p);
  cl.add("ST(p) lies in {mu5, mu6}", is_subset(st, [&] {
           MatchingSet s{mu[5], mu[6]};
           normalize(s);
           return s;
         }()),
         Json{{"ST", to_json(st)}});
  auto y = [&](int x) { return phi(x); };
  const std::pair<int, int> expected[5] = {{0, 0}, {1, y(2)}, {1, y(3)}, {3, y(2)}, {2, y(1)}};
  for (int i = 1; i <= 4; ++i) {
    const auto bp = blocking_pairs(p, mu[i]);
    cl.add("mu" + std::to_string(i) + " is blocked by (" + std::to_string(expected[i].first) +
               ", " + std::to_string(expected[i].second) + ")",
           has_pair(bp, expected[i].first, expected[i].second),
           Json{{"matching", to_string(mu[i])}, {"blocking_pairs", pairs_json(bp)}});
  }
  const MatchingSet both = intersect(c_u(p, u), st);
  cl.add("C^{<phi>} and ST are disjoint", both.empty());
  const bool m5 = compose(mu[5], phi)(1) == 3 && compose(phi, mu[5])(1) == 2;
  const bool m6 = compose(mu[6], phi)(1) == 2 && compose(phi, mu[6])(1) == 3;
  cl.add("mu5 phi(1) = 3, phi mu5(1) = 2, mu6 phi(1) = 2, phi mu6(1) = 3", m5 && m6);
  if (n == 3) {
    const auto f = feasibility(MechanismId::ST, u, 3, jobs);
    cl.add("feasibility(ST, <phi>) fails", !f.feasible,
           f.witness ? Json{{"witness", to_json(*f.witness)}} : Json(nullptr));
  }
  TheoremReport r{"T8", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
  r.evidence["tails"] = kTailFill;
  return r;
}

// Supporting lemmas only: the embedding of P into P-bar-star is a bijection
// commuting with G*, and every generalized matching with a single individual
// is Pareto-dominated on P-bar-star.
inline TheoremReport suite_t9(int n, int jobs) {
  if (n != 2 && n != 3) return skipped("T9-support", n, "needs n in {2, 3}");
  Checklist cl;
  const PermGroup& gs = gstar(n);
  const ProfileSpace space(n);
  // Injectivity and membership in P-bar-star.
  std::vector<GeneralizedProfile> images;
  images.reserve(space.size());
  bool inside = true, inverse_ok = true;
  space.for_each([&](const PreferenceProfile& p) {
    const auto g = embed_phi(p);
    inside = inside && in_pbar_star(g);
    inverse_ok = inverse_ok && strip_phi(g) == p;
    images.push_back(g);
  });
  std::sort(images.begin(), images.end());
  const bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  Json bij{{"profiles", space.size()}, {"distinct_images", images.size()}};
  bool onto = true;
  if (n == 2) {
    std::vector<GeneralizedProfile> star;
    GeneralizedProfileSpace(2).for_each([&](const GeneralizedProfile& g) {
      if (in_pbar_star(g)) star.push_back(g);
    });
    onto = star == images;
    bij["pbar_star_size"] = star.size();
  }
  cl.add("embedding is a bijection onto P-bar-star", inside && inverse_ok && injective && onto,
         bij);
  const std::uint64_t bad_eq = parallel_count(space.size(), jobs, [&](std::uint64_t i) {
    const auto p = space.at(i);
    const auto g = embed_phi(p);
    std::uint64_t bad = 0;
    for (const auto& phi : gs) bad += embed_phi(act(p, phi)) != act(g, phi);
    return bad;
  });
  cl.add("embedding commutes with every element of G*", bad_eq == 0,
         Json{{"pairs", space.size() * gs.order()}, {"violations", bad_eq}});
  const auto& gms = all_generalized_matchings(n);
  const std::uint64_t undominated = parallel_count(space.size(), jobs, [&](std::uint64_t i) {
    const auto g = embed_phi(space.at(i));
    const detail::RankTable<1> r(g);
    std::uint64_t bad = 0;
    for (const auto& mu : gms) {
      if (is_matching_permutation(mu)) continue;
      bool dominated = false;
      for (const auto& other : gms) {
        if (detail::pareto_dominates(r, other, mu)) {
          dominated = true;
          break;
        }
      }
      bad += !dominated;
    }
    return bad;
  });
  cl.add("every generalized matching with a single is Pareto-dominated on P-bar-star",
         undominated == 0, Json{{"profiles", space.size()}, {"undominated", undominated}});
  TheoremReport r{"T9-support", n, cl.all_ok() ? "verified" : "refuted", {{"checks", cl.json()}}};
  r.evidence["scope"] = "supporting-lemma verification";
  return r;
}

}  // namespace detail

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"T2", "T3", "T4", "T6", "T7", "T8", "T9-support"};
  return ids;
}

// Runs one verification suite. Sizes outside a suite's range give a skipped
// report with the reason. The seed is recorded; the suites are exhaustive
// and do not draw from it.
inline TheoremReport run_theorem_suite(const std::string& theorem, int n,
                                       std::uint64_t seed = 0, int jobs = 1) {
  const auto start = std::chrono::steady_clock::now();
  TheoremReport r;
  if (theorem == "T2") {
    r = detail::suite_t2(n, jobs);
  } else if (theorem == "T3") {
    r = detail::suite_t3(n, jobs);
  } else if (theorem == "T4") {
    r = detail::suite_t4(n, jobs);
  } else if (theorem == "T6") {
    r = detail::suite_t6(n, jobs);
  } else if (theorem == "T7") {
    r = detail::suite_t7(n, jobs);
  } else if (theorem == "T8") {
    r = detail::suite_t8(n, jobs);
  } else if (theorem == "T9-support" || theorem == "T9") {
    r = detail::suite_t9(n, jobs);
  } else {
    throw DomainError("unknown theorem \"" + theorem + "\"");
  }
  r.seed = seed;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

}  // namespace matchsym
