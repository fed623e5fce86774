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

#include "matchsym/generalized.hpp"

#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace matchsym {
namespace {

using testing::P;
using testing::TablePGen;

GeneralizedProfile Gen(int n, const std::vector<std::vector<int>>& orders) {
  return GeneralizedProfile::from_orders(n, orders);
}

// Involutions of {1..2n} whose non-fixed points pair a woman with a man,
// found by filtering every permutation.
std::set<Permutation> OracleGeneralizedMatchings(int n) {
  std::vector<int> imgs(2 * n);
  std::iota(imgs.begin(), imgs.end(), 1);
  std::set<Permutation> out;
  do {
    bool ok = true;
    for (int z = 1; z <= 2 * n && ok; ++z) {
      const int w = imgs[z - 1];
      ok = imgs[w - 1] == z && (w == z || (z <= n) != (w <= n));
    }
    if (ok) out.insert(Permutation::from_images(n, imgs));
  } while (std::next_permutation(imgs.begin(), imgs.end()));
  return out;
}

// Pareto domination read off the rankings.
bool OracleDominates(const GeneralizedProfile& p, const Permutation& a, const Permutation& b) {
  bool strict = false;
  for (int z = 1; z <= 2 * p.n(); ++z) {
    const int ra = p.rank(z, a(z)), rb = p.rank(z, b(z));
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

TEST(GeneralizedTest, MatchingsAtTwoInListedOrder) {
  EXPECT_EQ(all_generalized_matchings(2),
            (std::vector<Permutation>{Permutation::identity(2), P(2, "(1 3)"), P(2, "(1 4)"),
                                      P(2, "(2 3)"), P(2, "(2 4)"), P(2, "(1 3)(2 4)"),
                                      P(2, "(1 4)(2 3)")}));
}

TEST(GeneralizedTest, MatchingCounts) {
  EXPECT_EQ(all_generalized_matchings(3).size(), 34u);
  for (int n = 1; n <= 4; ++n) {
    const auto& all = all_generalized_matchings(n);
    const std::set<Permutation> s(all.begin(), all.end());
    EXPECT_EQ(s.size(), all.size());
    EXPECT_EQ(s, OracleGeneralizedMatchings(n)) << n;
    EXPECT_EQ(all.front(), Permutation::identity(n));
    std::uint64_t expected = 0;
    for (int k = 0; k <= n; ++k) {
      const std::uint64_t c = factorial(n) / (factorial(k) * factorial(n - k));
      expected += c * c * factorial(k);
    }
    EXPECT_EQ(all.size(), expected);
  }
  for (const auto& mu : all_generalized_matchings(3)) EXPECT_TRUE(is_generalized_matching(mu));
  EXPECT_FALSE(is_generalized_matching(P(2, "(1 2)")));
  EXPECT_FALSE(is_generalized_matching(P(2, "(1 3 2 4)")));
}

TEST(GeneralizedTest, ActWorkedExamples) {
  const auto p = TablePGen();
  EXPECT_EQ(act_gen(p, P(3, "(1 2 3)(4 6)")),
            Gen(3, {{4, 5, 1, 6}, {6, 2, 4, 5}, {6, 4, 3, 5}, {4, 3, 2, 1}, {1, 5, 3, 2}, {3, 2, 1, 6}}));
  EXPECT_EQ(act_gen(p, P(3, "(1 4 2 6)(3 5)")),
            Gen(3, {{1, 6, 4, 5}, {6, 4, 5, 2}, {5, 3, 6, 4}, {2, 4, 1, 3}, {1, 3, 5, 2}, {2, 1, 6, 3}}));
  EXPECT_EQ(act_gen(p, Permutation::identity(3)), p);
  EXPECT_EQ(act_gen(p, P(3, "(1 4 2 6)(3 5)")), testing::OracleAct(p, P(3, "(1 4 2 6)(3 5)")));
}

TEST(GeneralizedTest, ConjugateExample) {
  EXPECT_EQ(conjugate(P(3, "(1 5)(2 6)"), P(3, "(1 4 2 6)(3 5)")), P(3, "(4 3)(6 1)"));
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto phi = random_gstar_element(3, rng);
    const auto& all = all_generalized_matchings(3);
    const auto mu = all[rng.below(all.size())];
    EXPECT_TRUE(is_generalized_matching(conjugate(mu, phi)));
  }
}

TEST(GeneralizedTest, ActionAxiomsExhaustiveAtTwo) {
  const auto& g = gstar(2);
  GeneralizedProfileSpace(2).for_each([&](const GeneralizedProfile& p) {
    ASSERT_EQ(act_gen(p, Permutation::identity(2)), p);
    for (const auto& a : g) {
      const auto pa = act_gen(p, a);
      ASSERT_EQ(pa, testing::OracleAct(p, a));
      for (const auto& b : g) ASSERT_EQ(act_gen(pa, b), act_gen(p, compose(b, a)));
    }
  });
}

TEST(GeneralizedTest, StableImpliesParetoAtTwo) {
  int stable_seen = 0;
  GeneralizedProfileSpace(2).for_each([&](const GeneralizedProfile& p) {
    for (const auto& mu : all_generalized_matchings(2)) {
      bool undominated = true;
      for (const auto& nu : all_generalized_matchings(2)) {
        if (OracleDominates(p, nu, mu)) undominated = false;
      }
      ASSERT_EQ(is_pareto_gen(p, mu), undominated);
      if (is_stable_gen(p, mu)) {
        ++stable_seen;
        ASSERT_TRUE(is_pareto_gen(p, mu)) << to_inline(p) << " " << to_string(mu);
      }
    }
  });
  EXPECT_GT(stable_seen, 0);
}

TEST(GeneralizedTest, StabilityExamples) {
  // Everybody's top choice is their partner.
  const auto tops = Gen(2, {{3, 1, 4}, {4, 2, 3}, {1, 3, 2}, {2, 4, 1}});
  EXPECT_TRUE(is_stable_gen(tops, P(2, "(1 3)(2 4)")));
  EXPECT_FALSE(is_stable_gen(tops, Permutation::identity(2)));
  // Woman 1 would rather be single than with man 3.
  const auto single = Gen(2, {{1, 4, 3}, {4, 2, 3}, {1, 3, 2}, {2, 4, 1}});
  EXPECT_FALSE(is_stable_gen(single, P(2, "(1 3)(2 4)")));
  EXPECT_THROW(is_stable_gen(tops, P(2, "(1 2)")), DomainError);
}

TEST(GeneralizedTest, EmbeddingExamples) {
  const auto g = embed_phi(testing::TableP());
  EXPECT_EQ(g.order(1), (std::vector<int>{4, 5, 6, 1}));
  EXPECT_TRUE(in_pbar_star(g));
  EXPECT_EQ(strip_phi(g), testing::TableP());
  EXPECT_FALSE(in_pbar_star(TablePGen()));
  EXPECT_THROW(strip_phi(TablePGen()), DomainError);
}

TEST(GeneralizedTest, EmbeddingIsEquivariantBijectionAtTwo) {
  std::set<GeneralizedProfile> images;
  ProfileSpace(2).for_each([&](const PreferenceProfile& p) {
    images.insert(embed_phi(p));
    for (const auto& phi : gstar(2)) {
      ASSERT_EQ(embed_phi(act(p, phi)), act_gen(embed_phi(p), phi));
    }
  });
  std::set<GeneralizedProfile> star;
  GeneralizedProfileSpace(2).for_each([&](const GeneralizedProfile& g) {
    if (in_pbar_star(g)) star.insert(g);
  });
  EXPECT_EQ(images.size(), 16u);
  EXPECT_EQ(images, star);
}

TEST(GeneralizedTest, SinglesAreDominatedOnPBarStar) {
  for (int n = 2; n <= 3; ++n) {
    ProfileSpace(n).for_each([&](const PreferenceProfile& base) {
      const auto p = embed_phi(base);
      ASSERT_FALSE(is_pareto_gen(p, Permutation::identity(n)));
      for (const auto& mu : all_generalized_matchings(n)) {
        if (is_matching_permutation(mu)) continue;
        const auto better = pair_singles(mu);
        ASSERT_TRUE(better.has_value()) << to_string(mu);
        ASSERT_TRUE(OracleDominates(p, *better, mu));
        ASSERT_FALSE(is_pareto_gen(p, mu));
      }
    });
  }
  EXPECT_EQ(pair_singles(P(2, "(1 3)(2 4)")), std::nullopt);
  EXPECT_EQ(pair_singles(P(2, "(1 3)")), P(2, "(1 3)(2 4)"));
}

TEST(GeneralizedTest, ExploratoryFeasibilityAtTwo) {
  // The identity commutes with every stabilizer, so C^{G*} is never empty
  // in the generalized model.
  GeneralizedProfileSpace(2).for_each([](const GeneralizedProfile& p) {
    ASSERT_TRUE(contains(c_u(p, gstar(2)), Permutation::identity(2)));
  });
  auto stable = [](const GeneralizedProfile& p) {
    MatchingSet s;
    for (const auto& mu : all_generalized_matchings(p.n())) {
      if (is_stable_gen(p, mu)) s.push_back(mu);
    }
    normalize(s);
    return s;
  };
  auto pareto = [](const GeneralizedProfile& p) {
    MatchingSet s;
    for (const auto& mu : all_generalized_matchings(p.n())) {
      if (is_pareto_gen(p, mu)) s.push_back(mu);
    }
    normalize(s);
    return s;
  };
  EXPECT_TRUE(is_u_symmetric<1>(stable, gstar(2), Scope::exhaustive()).verdict);
  EXPECT_TRUE(is_u_symmetric<1>(pareto, gstar(2), Scope::exhaustive()).verdict);
  const auto f = feasibility<1>(pareto, gstar(2), 2);
  // A resolute symmetric Pareto optimal generalized mechanism would restrict
  // to one on P-bar-star, which does not exist at even n.
  EXPECT_FALSE(f.feasible);
  ASSERT_TRUE(f.witness.has_value());
  EXPECT_TRUE(intersect(pareto(*f.witness), c_u(*f.witness, gstar(2))).empty());
  const auto syn = synthesize<1>(gstar(2), [](const GeneralizedProfile& p) {
    return outcome_space<1>(p.n());
  });
  ASSERT_TRUE(syn.table.has_value());
  EXPECT_EQ(load_table<1>(save_table(*syn.table)), *syn.table);
}

}  // namespace
}  // namespace matchsym
