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

// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails. Library results are cross-checked against the
// brute-force oracles in test_util.hpp where one exists.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matchsym/matchsym.hpp"
#include "property_suite.hpp"
#include "test_util.hpp"

namespace matchsym {
namespace {

using testing::P;

// Collects failed sub-checks; an empty list means the criterion passed.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failed_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failed_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& f : failed_) os << "\n    failed: " << f;
    for (const auto& n : notes_) os << "\n    " << n;
    return os.str();
  }

 private:
  std::vector<std::string> failed_;
  std::vector<std::string> notes_;
};

// Matchings commuting with every element of the stabilizer, both found by
// scanning all of u.
MatchingSet OracleCu(const PreferenceProfile& p, const PermGroup& u) {
  std::vector<Permutation> st;
  for (const auto& a : u) {
    if (testing::OracleAct(p, a) == p) st.push_back(a);
  }
  MatchingSet out;
  for (const auto& mu : all_matchings(p.n())) {
    bool all = true;
    for (const auto& a : st) {
      for (int z = 1; z <= 2 * p.n() && all; ++z) all = mu(a(z)) == a(mu(z));
    }
    if (all) out.push_back(mu);
  }
  return out;
}

// No matching makes everyone strictly better off.
bool OracleWeakPareto(const PreferenceProfile& p, const Permutation& mu) {
  for (const auto& nu : all_matchings(p.n())) {
    bool all_better = true;
    for (int z = 1; z <= 2 * p.n() && all_better; ++z) {
      all_better = p.rank(z, nu(z)) < p.rank(z, mu(z));
    }
    if (all_better) return false;
  }
  return true;
}

bool OracleDominates(const GeneralizedProfile& p, const Permutation& a, const Permutation& b) {
  bool strict = false;
  for (int z = 1; z <= 2 * p.n(); ++z) {
    const int ra = p.rank(z, a(z)), rb = p.rank(z, b(z));
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

MatchingSet ConjugateSet(const MatchingSet& s, const Permutation& phi) {
  MatchingSet out;
  for (const auto& mu : s) out.push_back(conjugate(mu, phi));
  normalize(out);
  return out;
}

const int kJobs = default_jobs();

void Ac1(Ledger& l) {
  const auto t0 = std::chrono::steady_clock::now();
  int empty = 0;
  ProfileSpace(2).for_each([&](const PreferenceProfile& p) {
    const auto cu = c_u(p, gstar(2));
    l.expect(cu == OracleCu(p, gstar(2)), "c_u agrees with the oracle on " + to_inline(p));
    if (cu.empty()) ++empty;
  });
  l.expect(empty >= 1, "some n=2 profile has empty C^{G*}");
  const auto p = profile_two_n_cycle(2);
  l.expect(p == testing::PSpeciale(), "cycle construction reproduces the order-4 profile");
  const std::set<Permutation> want{Permutation::identity(2), P(2, "(1 3 2 4)"), P(2, "(1 2)(3 4)"),
                                   P(2, "(1 4 2 3)")};
  const auto st = stabilizer(p, gstar(2));
  l.expect(std::set<Permutation>(st.begin(), st.end()) == want, "stabilizer of the constructed profile");
  l.expect(c_u(p, gstar(2)).empty() && OracleCu(p, gstar(2)).empty(), "C^{G*} empty on it");
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  l.expect(ms < 1000.0, "runtime under 1 s");
  l.note(std::to_string(empty) + " of 16 profiles with empty C^{G*}");
}

void Ac2(Ledger& l) {
  const auto t0 = std::chrono::steady_clock::now();
  const ProfileSpace space(3);
  const auto& g = gstar(3);
  const auto empty = parallel_count(space.size(), 1, [&](std::uint64_t i) {
    return c_u(space.at(i), g).empty();
  });
  l.expect(empty == 0, "C^{G*} nonempty on all 46656 profiles");
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const auto p = space.sample(rng);
    l.expect(c_u(p, g) == OracleCu(p, g), "c_u agrees with the oracle on " + to_inline(p));
  }
  const auto syn = synthesize<0>(g, MechanismId::TO, lex_least_selector<0>(), 1);
  l.expect(syn.table.has_value(), "synthesize(G*, TO) succeeds");
  if (syn.table) {
    const auto& t = *syn.table;
    l.expect(is_u_symmetric<0>(t, g, Scope::exhaustive(1)).verdict, "table is G*-symmetric");
    const auto bad = parallel_count(space.size(), 1, [&](std::uint64_t i) {
      const auto out = t(space.at(i));
      return out.size() != 1 || !is_matching_permutation(out.front());
    });
    l.expect(bad == 0, "table is resolute on every profile");
    l.note(std::to_string(t.entries().size()) + " orbit entries");
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  l.expect(s < 60.0, "single-threaded runtime under 60 s");
  std::ostringstream os;
  os.precision(3);
  os << "single-threaded " << s << " s";
  l.note(os.str());
}

void Ac3(Ledger& l) {
  const auto p = profile_ciclone_odd(3);
  const Permutation cyc = P(3, "(1 4 2 5 3 6)");
  l.expect(stabilizer(p, gstar(3)) == cyclic(cyc), "stabilizer is generated by (142536)");
  const Permutation cube = power(cyc, 3);
  for (int z = 1; z <= 6; ++z) {
    l.expect(p.rank(z, cube(z)) == 3, "rank of phi^3(" + std::to_string(z) + ") is 3");
  }
  const auto mo = evaluate_mechanism(MechanismId::MO, p);
  l.expect(intersect(OracleCu(p, gstar(3)), mo).empty(), "C^{G*} and MO disjoint");
  const auto f = feasibility(MechanismId::MO, gstar(3), 3, kJobs);
  l.expect(!f.feasible, "feasibility(MO, G*, 3) fails");
}

void Ac4(Ledger& l) {
  const Matching phi = P(3, "(1 4)(2 5)(3 6)");
  const PermGroup u = cyclic(phi);
  const auto syn = synthesize<0>(u, MechanismId::WPO, wpo_selector(phi), kJobs);
  l.expect(syn.table.has_value(), "synthesis with the symmetric WPO choice succeeds");
  if (!syn.table) return;
  const auto& t = *syn.table;
  l.expect(is_u_symmetric<0>(t, u, Scope::exhaustive(kJobs)).verdict, "table is <phi>-symmetric");
  const ProfileSpace space(3);
  const auto bad = parallel_count(space.size(), kJobs, [&](std::uint64_t i) {
    const auto p = space.at(i);
    const auto out = t(p);
    return out.size() != 1 || !OracleWeakPareto(p, out.front()) ||
           t.evaluate(act(p, phi)) != conjugate(out.front(), phi);
  });
  l.expect(bad == 0, "resolute, WPO and equivariant on all 46656 profiles");
}

void Ac5(Ledger& l) {
  for (const auto& phi : all_matchings(2)) {
    const PermGroup u = cyclic(phi);
    const auto syn = synthesize<0>(u, MechanismId::ST);
    l.expect(syn.table.has_value(), "stable synthesis for " + to_string(phi));
    if (!syn.table) continue;
    ProfileSpace(2).for_each([&](const PreferenceProfile& p) {
      const Matching mu = syn.table->evaluate(p);
      l.expect(contains(testing::OracleStable(p), mu), "stable on " + to_inline(p));
      l.expect(syn.table->evaluate(act(p, phi)) == conjugate(mu, phi), "symmetric on " + to_inline(p));
    });
  }
}

void Ac6(Ledger& l) {
  const Matching phi = P(3, "(1 4)(2 5)(3 6)");
  const auto p = endriss_profile(3, phi);
  const auto mu = endriss_matchings(3, phi);
  l.expect(act(p, phi) == p, "profile fixed by phi");
  const auto st = testing::OracleStable(p);
  for (const auto& m : st) l.expect(m == mu[5] || m == mu[6], "stable matching " + to_string(m) + " is mu5 or mu6");
  const std::pair<int, int> pairs[5] = {{0, 0}, {1, 5}, {1, 6}, {3, 5}, {2, 4}};
  for (int i = 1; i <= 4; ++i) {
    const auto bp = blocking_pairs(p, mu[i]);
    l.expect(std::find(bp.begin(), bp.end(), pairs[i]) != bp.end(),
             "mu" + std::to_string(i) + " blocked by (" + std::to_string(pairs[i].first) + "," +
                 std::to_string(pairs[i].second) + ")");
  }
  l.expect(intersect(OracleCu(p, cyclic(phi)), st).empty(), "C^{<phi>} and ST disjoint");
  l.expect(!feasibility(MechanismId::ST, cyclic(phi), 3, kJobs).feasible, "feasibility(ST, <phi>, 3) fails");
}

bool ChainHolds(const PreferenceProfile& p) {
  const MechanismId chain[] = {MechanismId::GS, MechanismId::ST, MechanismId::PO,
                               MechanismId::WPO, MechanismId::MO, MechanismId::TO};
  MatchingSet prev = evaluate_mechanism(chain[0], p);
  for (int i = 1; i < 6; ++i) {
    MatchingSet cur = evaluate_mechanism(chain[i], p);
    if (!is_subset(prev, cur)) return false;
    prev = std::move(cur);
  }
  return !evaluate_mechanism(MechanismId::GS, p).empty();
}

void Ac7(Ledger& l) {
  ProfileSpace(2).for_each([&](const PreferenceProfile& p) { l.expect(ChainHolds(p), "chain on " + to_inline(p)); });
  for (int n = 3; n <= 4; ++n) {
    const ProfileSpace space(n);
    const auto bad = parallel_count(10000, kJobs, [&](std::uint64_t i) {
      Rng rng = Rng::for_item(700 + n, i);
      return !ChainHolds(space.sample(rng));
    });
    l.expect(bad == 0, "chain on 10000 random profiles at n=" + std::to_string(n));
  }
}

void Ac8(Ledger& l) {
  for (int n = 2; n <= 3; ++n) {
    const ProfileSpace space(n);
    const auto bad = parallel_count(space.size(), kJobs, [&](std::uint64_t i) {
      const auto st = stabilizer(space.at(i), gstar(n));
      if (!is_semiregular(st)) return true;
      for (const auto& a : st) {
        const auto t = cycle_type(a);
        if (!t.is_uniform()) return true;
        if (!in_g(a) && std::any_of(t.parts.begin(), t.parts.end(), [](int k) { return k % 2 != 0; })) {
          return true;
        }
      }
      return false;
    });
    l.expect(bad == 0, "stabilizers at n=" + std::to_string(n));
  }
}

bool GoodInvolution(const PermGroup& s) {
  const Permutation phi = commuting_involution(s);
  if (order(phi) != 2 || !in_gstar(phi) || in_g(phi)) return false;
  return std::all_of(s.begin(), s.end(), [&](const Permutation& a) { return commute(a, phi); });
}

void Ac9(Ledger& l) {
  std::set<std::vector<Permutation>> seen;
  std::vector<PermGroup> groups;
  ProfileSpace(3).for_each([&](const PreferenceProfile& p) {
    const auto st = stabilizer(p, gstar(3));
    std::vector<Permutation> key(st.begin(), st.end());
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) groups.push_back(st);
  });
  for (const auto& s : groups) l.expect(GoodInvolution(s), "involution for a stabilizer at n=3");
  int tested = 0;
  for (std::uint64_t i = 0; tested < 50; ++i) {
    Rng rng = Rng::for_item(905, i);
    const PermGroup s = cyclic(random_gstar_element(5, rng));
    if (!is_semiregular(s)) continue;
    ++tested;
    l.expect(GoodInvolution(s), "involution for " + to_string(s.generators().front()));
  }
  l.note(std::to_string(groups.size()) + " distinct stabilizers at n=3, " + std::to_string(tested) +
         " cyclic subgroups at n=5");
}

void Ac10(Ledger& l) {
  const MechanismId ids[] = {MechanismId::ST, MechanismId::PO, MechanismId::WPO, MechanismId::MO,
                             MechanismId::TO, MechanismId::GS, MechanismId::SE, MechanismId::ES};
  auto equivariant = [](MechanismId id, const PreferenceProfile& p, const Permutation& phi) {
    return evaluate_mechanism(id, act(p, phi)) == ConjugateSet(evaluate_mechanism(id, p), phi);
  };
  ProfileSpace(2).for_each([&](const PreferenceProfile& p) {
    for (const auto& phi : gstar(2)) {
      for (auto id : ids) l.expect(equivariant(id, p, phi), to_string(id) + " at n=2");
      for (auto id : {MechanismId::GS_w, MechanismId::GS_m}) {
        if (in_g(phi)) l.expect(equivariant(id, p, phi), to_string(id) + " under G at n=2");
      }
    }
  });
  const ProfileSpace space(3);
  const auto bad = parallel_count(1000, kJobs, [&](std::uint64_t i) {
    Rng rng = Rng::for_item(1010, i);
    const auto p = space.sample(rng);
    const auto phi = random_gstar_element(3, rng);
    const auto psi = random_g_element(3, rng);
    for (auto id : ids) {
      if (!equivariant(id, p, phi)) return true;
    }
    return !equivariant(MechanismId::GS_w, p, psi) || !equivariant(MechanismId::GS_m, p, psi);
  });
  l.expect(bad == 0, "1000 sampled (p, phi) at n=3");
  for (int n = 2; n <= 3; ++n) {
    const auto [p, phi] = gs_asymmetry_profile(n);
    const Matching lhs = gale_shapley(act(p, phi), Side::kWomen);
    l.expect(lhs == gale_shapley(p, Side::kMen), "GS_w(p^phi) = GS_m(p) at n=" + std::to_string(n));
    l.expect(lhs != conjugate(gale_shapley(p, Side::kWomen), phi), "GS_w not G*-symmetric at n=" + std::to_string(n));
  }
}

void Ac11(Ledger& l) {
  std::atomic<int> se{0}, es{0};
  std::string se_ex, es_ex;
  ProfileSpace(3).for_each([&](const PreferenceProfile& p) {
    if (evaluate_mechanism(MechanismId::SE, p).size() >= 2 && se++ == 0) se_ex = to_inline(p);
    if (evaluate_mechanism(MechanismId::ES, p).size() >= 2 && es++ == 0) es_ex = to_inline(p);
  });
  l.expect(se > 0, "some n=3 profile with |SE| >= 2");
  l.expect(es > 0, "some n=3 profile with |ES| >= 2");
  l.note("SE: " + std::to_string(se) + " profiles, first " + se_ex);
  l.note("ES: " + std::to_string(es) + " profiles, first " + es_ex);
}

void Ac12(Ledger& l) {
  const std::vector<Permutation> listed{Permutation::identity(2), P(2, "(1 3)"), P(2, "(1 4)"),
                                        P(2, "(2 3)"), P(2, "(2 4)"), P(2, "(1 3)(2 4)"),
                                        P(2, "(1 4)(2 3)")};
  const auto& all = all_generalized_matchings(2);
  l.expect(std::set<Permutation>(all.begin(), all.end()) == std::set<Permutation>(listed.begin(), listed.end()) &&
               all.size() == 7,
           "seven generalized matchings at n=2");
  std::set<GeneralizedProfile> images;
  ProfileSpace(2).for_each([&](const PreferenceProfile& p) {
    const auto g = embed_phi(p);
    images.insert(g);
    l.expect(strip_phi(g) == p, "strip inverts embed");
    for (const auto& phi : gstar(2)) {
      l.expect(embed_phi(act(p, phi)) == testing::OracleAct(g, phi), "embedding equivariant");
    }
  });
  std::set<GeneralizedProfile> star;
  GeneralizedProfileSpace(2).for_each([&](const GeneralizedProfile& g) {
    bool own_last = true;
    for (int z = 1; z <= 4; ++z) own_last = own_last && g.bottom(z) == z;
    if (own_last) star.insert(g);
  });
  l.expect(images.size() == 16 && images == star, "embedding is a bijection onto 16 profiles");
  for (int n = 2; n <= 3; ++n) {
    ProfileSpace(n).for_each([&](const PreferenceProfile& base) {
      const auto p = embed_phi(base);
      for (const auto& mu : all_generalized_matchings(n)) {
        if (is_matching_permutation(mu)) continue;
        bool dominated = false;
        for (const auto& nu : all_generalized_matchings(n)) dominated = dominated || OracleDominates(p, nu, mu);
        l.expect(dominated, "matching with a single is dominated");
      }
    });
  }
}

void Ac13(Ledger& l) {
  std::uint64_t total = 0;
  for (const auto& r : props::RunAll(20260401)) {
    total += r.cases;
    l.expect(r.failures == 0, r.name + ": " + r.first_failure);
    l.note(r.name + ": " + std::to_string(r.cases) + " cases");
  }
  l.expect(total >= 100000, "at least 1e5 cases");
  l.note("total " + std::to_string(total) + " cases");
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<void(Ledger&)> run;
};

int Main() {
  const Criterion all[] = {
      {"AC1", "n=2 has profiles with empty C^{G*}; cycle construction", Ac1},
      {"AC2", "n=3 resolute G*-symmetric table from TO", Ac2},
      {"AC3", "no symmetric MO choice at n=3", Ac3},
      {"AC4", "<phi>-symmetric WPO table at n=3", Ac4},
      {"AC5", "<phi>-symmetric stable tables at n=2", Ac5},
      {"AC6", "no <phi>-symmetric stable choice at n=3", Ac6},
      {"AC7", "refinement chain GS <= ST <= PO <= WPO <= MO <= TO", Ac7},
      {"AC8", "stabilizers semiregular with uniform cycle types", Ac8},
      {"AC9", "commuting involution outside G", Ac9},
      {"AC10", "mechanism equivariance; GS_w asymmetry", Ac10},
      {"AC11", "SE and ES are not resolute at n=3", Ac11},
      {"AC12", "generalized model at n=2", Ac12},
      {"AC13", "seeded property suite", Ac13},
  };
  int failed = 0;
  for (const auto& c : all) {
    Ledger l;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(l);
    } catch (const std::exception& e) {
      l.expect(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!l.ok()) ++failed;
    std::printf("[%s] %s %s (%.0f ms)%s\n", l.ok() ? "PASS" : "FAIL", c.id, c.title, ms, l.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace matchsym

int main() { return matchsym::Main(); }
