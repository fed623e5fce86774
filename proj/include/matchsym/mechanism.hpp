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

// Symmetry of mechanisms, the container mechanism C^U, feasibility of
// resolute symmetric refinements and their synthesis.
//
// Everything here works on standard profiles (E = 0, outcomes are matchings)
// and generalized profiles (E = 1, outcomes are generalized matchings). A
// mechanism is any callable mapping a profile to a MatchingSet.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matchsym/errors.hpp"
#include "matchsym/generalized.hpp"
#include "matchsym/group.hpp"
#include "matchsym/matching.hpp"
#include "matchsym/parallel.hpp"
#include "matchsym/profile.hpp"

namespace matchsym {

template <int E>
const std::vector<Permutation>& outcome_space(int n) {
  if constexpr (E == 0) {
    return all_matchings(n);
  } else {
    return all_generalized_matchings(n);
  }
}

// C^u(p): outcomes commuting with every element of Stab_u(p).
template <int E>
MatchingSet c_u(const BasicProfile<E>& p, const PermGroup& u) {
  const PermGroup st = stabilizer(p, u);
  MatchingSet out;
  for (const auto& mu : outcome_space<E>(p.n())) {
    bool ok = true;
    for (const auto& s : st) {
      if (!commute(mu, s)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(mu);
  }
  normalize(out);
  return out;
}

inline auto mechanism_fn(MechanismId id) {
  return [id](const PreferenceProfile& p) { return evaluate_mechanism(id, p); };
}

// Which profiles a check visits: all of them, or `samples` uniform draws
// derived from `seed`.
struct Scope {
  enum class Kind { kExhaustive, kSample };
  Kind kind = Kind::kExhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;

  static Scope exhaustive(int jobs = 1) { return {Kind::kExhaustive, 0, 0, jobs}; }
  static Scope sample(std::uint64_t count, std::uint64_t seed, int jobs = 1) {
    return {Kind::kSample, count, seed, jobs};
  }
};

template <int E>
class PointSource {
 public:
  PointSource(int n, const Scope& scope) : space_(n), scope_(scope) {
    if (scope.kind == Scope::Kind::kExhaustive) space_.require_exhaustive();
  }
  std::uint64_t count() const {
    return scope_.kind == Scope::Kind::kExhaustive ? space_.size() : scope_.samples;
  }
  BasicProfile<E> operator()(std::uint64_t i) const {
    if (scope_.kind == Scope::Kind::kExhaustive) return space_.at(i);
    Rng rng = Rng::for_item(scope_.seed, i);
    return space_.sample(rng);
  }

 private:
  BasicProfileSpace<E> space_;
  Scope scope_;
};

template <int E>
struct SymmetryWitness {
  BasicProfile<E> profile;
  Permutation phi;
  MatchingSet expected;  // F(p)^phi
  MatchingSet actual;    // F(p^phi)
};

template <int E>
struct SymmetryReport {
  bool verdict = true;
  std::optional<SymmetryWitness<E>> witness;
  std::uint64_t points_checked = 0;
  std::uint64_t generators = 0;
};

namespace detail {

template <int E, class F>
std::optional<SymmetryWitness<E>> symmetry_failure(const F& f,
                                                   std::span<const Permutation> gens,
                                                   const BasicProfile<E>& p) {
  const MatchingSet fp = f(p);
  for (const auto& g : gens) {
    MatchingSet expected = conjugate_set(fp, g);
    MatchingSet actual = f(act(p, g));
    normalize(actual);
    if (expected != actual) return SymmetryWitness<E>{p, g, expected, actual};
  }
  return std::nullopt;
}

}  // namespace detail

// Checks F(p^g) = F(p)^g for every profile in scope and every generator g.
// Checking generators suffices for the whole generated group.
template <int E = 0, class F>
SymmetryReport<E> is_u_symmetric(const F& f, std::span<const Permutation> gens,
                                 int n, const Scope& scope) {
  for (const auto& g : gens) {
    if (g.n() != n) throw SizeError("is_u_symmetric: generator size differs");
    require_in_gstar(g);
  }
  const PointSource<E> points(n, scope);
  const std::uint64_t total = points.count();
  const auto first = parallel_find_first(total, scope.jobs, [&](std::uint64_t i) {
    return detail::symmetry_failure<E>(f, gens, points(i)).has_value();
  });
  SymmetryReport<E> rep;
  rep.generators = gens.size();
  if (first) {
    rep.verdict = false;
    rep.witness = detail::symmetry_failure<E>(f, gens, points(*first));
    rep.points_checked = *first + 1;
  } else {
    rep.points_checked = total;
  }
  return rep;
}

template <int E = 0, class F>
SymmetryReport<E> is_u_symmetric(const F& f, const PermGroup& u, const Scope& scope) {
  const auto gens = u.generators();
  return is_u_symmetric<E>(f, std::span<const Permutation>(gens), u.n(), scope);
}

// Checks only the given profiles.
template <int E, class F>
SymmetryReport<E> is_u_symmetric_on(const F& f, std::span<const Permutation> gens,
                                    std::span<const BasicProfile<E>> points) {
  SymmetryReport<E> rep;
  rep.generators = gens.size();
  for (const auto& p : points) {
    ++rep.points_checked;
    if (auto w = detail::symmetry_failure<E>(f, gens, p)) {
      rep.verdict = false;
      rep.witness = std::move(w);
      return rep;
    }
  }
  return rep;
}

template <int E>
struct FeasibilityResult {
  bool feasible = true;
  std::optional<BasicProfile<E>> witness;  // F(p) and C^u(p) are disjoint
  std::uint64_t representatives = 0;
};

template <int E>
std::string describe(const SymmetryWitness<E>& w) {
  return "profile " + to_inline(w.profile) + ", phi " + to_string(w.phi);
}

// Whether F has a resolute u-symmetric refinement: F(p) meets C^u(p) on every
// profile. Both sides are u-equivariant, so one profile per orbit is scanned.
template <int E = 0, class F>
FeasibilityResult<E> feasibility(const F& f, const PermGroup& u, int n, int jobs = 1) {
  if (u.n() != n) throw SizeError("feasibility: group size differs");
  const auto sym = is_u_symmetric<E>(f, u, Scope::exhaustive(jobs));
  if (!sym.verdict) {
    throw PreconditionError("mechanism is not u-symmetric: " + describe(*sym.witness));
  }
  const auto reps = orbit_transversal<E>(u, n);
  FeasibilityResult<E> res;
  res.representatives = reps.size();
  const auto first = parallel_find_first(reps.size(), jobs, [&](std::uint64_t i) {
    return intersect(f(reps[i]), c_u(reps[i], u)).empty();
  });
  if (first) {
    res.feasible = false;
    res.witness = reps[*first];
  }
  return res;
}

inline FeasibilityResult<0> feasibility(MechanismId id, const PermGroup& u, int n,
                                        int jobs = 1) {
  return feasibility<0>(mechanism_fn(id), u, n, jobs);
}

// Picks one outcome for an orbit representative from the candidates
// F(rep) ∩ C^u(rep). `stab` is Stab_u(rep).
template <int E>
using Selector = std::function<Permutation(const BasicProfile<E>& rep,
                                           const PermGroup& stab,
                                           const MatchingSet& candidates)>;

template <int E = 0>
Selector<E> lex_least_selector() {
  return [](const BasicProfile<E>&, const PermGroup&, const MatchingSet& c) {
    return c.front();
  };
}

inline std::string fnv_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// A resolute u-symmetric mechanism given by one outcome per orbit
// representative. The outcome on p = rep^phi is mu^phi.
template <int E>
class BasicMechanismTable {
 public:
  using Profile = BasicProfile<E>;

  BasicMechanismTable(PermGroup u, std::map<Profile, Permutation> entries)
      : u_(std::move(u)), entries_(std::move(entries)) {}

  int n() const noexcept { return u_.n(); }
  const PermGroup& group() const noexcept { return u_; }
  const std::map<Profile, Permutation>& entries() const noexcept { return entries_; }

  Permutation evaluate(const Profile& p) const {
    if (p.n() != n()) throw SizeError("evaluate: profile size differs from table");
    const auto c = canonical_representative(p, u_);
    const auto it = entries_.find(c.rep);
    if (it == entries_.end()) {
      throw PreconditionError("table has no entry for the orbit of " + to_inline(p));
    }
    return conjugate(it->second, c.phi);
  }

  MatchingSet operator()(const Profile& p) const { return {evaluate(p)}; }

  friend bool operator==(const BasicMechanismTable& a, const BasicMechanismTable& b) {
    return a.u_ == b.u_ && a.entries_ == b.entries_;
  }

 private:
  PermGroup u_;
  std::map<Profile, Permutation> entries_;
};

using MechanismTable = BasicMechanismTable<0>;

template <int E>
Permutation evaluate(const BasicMechanismTable<E>& t, const BasicProfile<E>& p) {
  return t.evaluate(p);
}

template <int E>
struct SynthesisResult {
  std::optional<BasicMechanismTable<E>> table;
  std::optional<BasicProfile<E>> witness;  // representative with no candidate
};

// Builds the table over the orbit transversal of u. Fails at the first
// representative where constraint(rep) ∩ C^u(rep) is empty.
template <int E = 0, class F>
SynthesisResult<E> synthesize(const PermGroup& u, const F& constraint,
                              Selector<E> selector = lex_least_selector<E>(),
                              int jobs = 1, bool check_constraint = true) {
  const int n = u.n();
  if (check_constraint) {
    const auto sym = is_u_symmetric<E>(constraint, u, Scope::exhaustive(jobs));
    if (!sym.verdict) {
      throw PreconditionError("constraint is not u-symmetric: " + describe(*sym.witness));
    }
  }
  const auto reps = orbit_transversal<E>(u, n);
  std::vector<std::optional<Permutation>> picks(reps.size());
  parallel_chunks(reps.size(), jobs, [&](int, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      const auto& p = reps[i];
      const MatchingSet cand = intersect(constraint(p), c_u(p, u));
      if (cand.empty()) continue;
      const Permutation mu = selector(p, stabilizer(p, u), cand);
      if (!contains(cand, mu)) {
        throw PreconditionError("selector returned " + to_string(mu) +
                                " outside the candidates for " + to_inline(p));
      }
      picks[i] = mu;
    }
  });
  SynthesisResult<E> res;
  std::map<BasicProfile<E>, Permutation> entries;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!picks[i]) {
      res.witness = reps[i];
      return res;
    }
    entries.emplace_hint(entries.end(), reps[i], *picks[i]);
  }
  res.table.emplace(u, std::move(entries));
  return res;
}

template <int E = 0>
SynthesisResult<E> synthesize(const PermGroup& u, MechanismId constraint,
                              Selector<E> selector = lex_least_selector<E>(),
                              int jobs = 1) {
  return synthesize<E>(u, mechanism_fn(constraint), std::move(selector), jobs);
}

template <int E>
struct RefinementReport {
  bool verdict = true;
  std::optional<BasicProfile<E>> witness;  // F1(p) is not inside F2(p)
  std::uint64_t points_checked = 0;
};

// F1(p) ⊆ F2(p) for every p in scope.
template <int E = 0, class F1, class F2>
RefinementReport<E> is_refinement(const F1& f1, const F2& f2, int n, const Scope& scope) {
  const PointSource<E> points(n, scope);
  const std::uint64_t total = points.count();
  const auto first = parallel_find_first(total, scope.jobs, [&](std::uint64_t i) {
    const auto p = points(i);
    MatchingSet a = f1(p), b = f2(p);
    normalize(a);
    normalize(b);
    return !is_subset(a, b);
  });
  RefinementReport<E> rep;
  if (first) {
    rep.verdict = false;
    rep.witness = points(*first);
    rep.points_checked = *first + 1;
  } else {
    rep.points_checked = total;
  }
  return rep;
}

// Resolute u-symmetric mechanism for sizes where no global table can be
// built. Orbit representatives are computed on demand and their selections
// cached; nothing is certified beyond the profiles actually evaluated.
class LazySymmetricMechanism {
 public:
  using Constraint = std::function<MatchingSet(const PreferenceProfile&)>;

  LazySymmetricMechanism(PermGroup u, Constraint constraint,
                         Selector<0> selector = lex_least_selector<0>())
      : u_(std::move(u)), constraint_(std::move(constraint)), selector_(std::move(selector)) {}

  // Throws PreconditionError when the orbit of p admits no symmetric choice.
  Permutation evaluate(const PreferenceProfile& p) const {
    const auto c = canonical_representative(p, u_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      const auto it = cache_.find(c.rep);
      if (it != cache_.end()) return conjugate(it->second, c.phi);
    }
    const MatchingSet cand = intersect(constraint_(c.rep), c_u(c.rep, u_));
    if (cand.empty()) {
      throw PreconditionError("no u-symmetric choice on the orbit of " + to_inline(p));
    }
    const Permutation pick = selector_(c.rep, stabilizer(c.rep, u_), cand);
    if (!contains(cand, pick)) {
      throw PreconditionError("selector returned a non-candidate for " + to_inline(c.rep));
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(c.rep, pick);
    return conjugate(pick, c.phi);
  }

  MatchingSet operator()(const PreferenceProfile& p) const { return {evaluate(p)}; }

  std::size_t cached_orbits() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.size();
  }

 private:
  PermGroup u_;
  Constraint constraint_;
  Selector<0> selector_;
  mutable std::mutex mu_;
  mutable std::map<PreferenceProfile, Permutation> cache_;
};

// File format:
//   matchsym-mech v1 n=<k> |U|=<m>
//   generators <g>
//   <g lines, one generator of U each, cycle notation>
//   <hash> <inline profile> -> <matching>      (one line per orbit)
// <hash> is the 64-bit FNV-1a of the inline profile text, in hex.
template <int E>
std::string save_table(const BasicMechanismTable<E>& t) {
  std::ostringstream os;
  os << "matchsym-mech v1 n=" << t.n() << " |U|=" << t.group().order() << "\n";
  const auto gens = t.group().generators();
  os << "generators " << gens.size() << "\n";
  for (const auto& g : gens) os << to_string(g) << "\n";
  for (const auto& [p, mu] : t.entries()) {
    const std::string inl = to_inline(p);
    os << fnv_hex(inl) << " " << inl << " -> " << to_string(mu) << "\n";
  }
  return os.str();
}

// Parses and re-verifies a table: the group matches its declared order,
// every key is the canonical representative of its orbit, no orbit appears
// twice, every stored outcome lies in C^U of its key, and (when the profile
// space is small enough) every orbit is covered.
template <int E = 0>
BasicMechanismTable<E> load_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!detail::trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(1, "empty mechanism table");
  int n = 0;
  unsigned long long order = 0;
  if (std::sscanf(line.c_str(), "matchsym-mech v1 n=%d |U|=%llu", &n, &order) != 2) {
    throw ParseError(lineno, "bad header");
  }
  if (n < 2 || n > kMaxN) throw ParseError(lineno, "bad n in header");
  if (!next_line()) throw ParseError(lineno + 1, "missing generator count");
  int ngens = -1;
  if (std::sscanf(line.c_str(), "generators %d", &ngens) != 1 || ngens < 0) {
    throw ParseError(lineno, "expected \"generators <count>\"");
  }
  std::vector<Permutation> gens;
  for (int i = 0; i < ngens; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "missing generator");
    try {
      gens.push_back(parse_permutation(detail::trim(line), n));
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
    if (!in_gstar(gens.back())) throw ParseError(lineno, "generator outside G*");
  }
  PermGroup u = generate(n, gens);
  if (u.order() != order) {
    throw ParseError(lineno, "generators give a group of order " +
                                 std::to_string(u.order()) + ", header says " +
                                 std::to_string(order));
  }
  std::map<BasicProfile<E>, Permutation> entries;
  while (next_line()) {
    const std::string t = detail::trim(line);
    const auto sp = t.find(' ');
    const auto arrow = t.find(" -> ");
    if (sp == std::string::npos || arrow == std::string::npos || arrow < sp) {
      throw ParseError(lineno, "expected \"<hash> <profile> -> <matching>\"");
    }
    const std::string hash = t.substr(0, sp);
    const std::string inl = t.substr(sp + 1, arrow - sp - 1);
    if (fnv_hex(inl) != hash) throw ParseError(lineno, "hash mismatch");
    BasicProfile<E> p;
    Permutation mu;
    try {
      p = parse_inline<E>(n, inl);
      mu = parse_permutation(t.substr(arrow + 4), n);
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
    const bool outcome_ok = E == 0 ? is_matching_permutation(mu) : is_generalized_matching(mu);
    if (!outcome_ok) throw ParseError(lineno, "outcome is not a valid matching");
    if (canonical_representative(p, u).rep != p) {
      throw ParseError(lineno, "profile is not the canonical representative of its orbit");
    }
    if (!contains(c_u(p, u), mu)) {
      throw ParseError(lineno, "outcome does not commute with the stabilizer");
    }
    if (!entries.emplace(p, mu).second) throw ParseError(lineno, "duplicate orbit");
  }
  BasicProfileSpace<E> space(n);
  if (space.exhaustive_allowed()) {
    const auto reps = orbit_transversal<E>(u, n);
    if (reps.size() != entries.size()) {
      throw ParseError(lineno + 1, "table covers " + std::to_string(entries.size()) +
                                       " orbits of " + std::to_string(reps.size()));
    }
  }
  return BasicMechanismTable<E>(std::move(u), std::move(entries));
}

}  // namespace matchsym
