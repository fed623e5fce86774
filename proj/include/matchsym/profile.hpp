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

// Preference profiles and the action of G* on them.
//
// A profile assigns to every woman a strict ranking of the men and to every
// man a strict ranking of the women. The generalized variant (outside option)
// additionally places each individual's own id somewhere in their ranking,
// meaning "stay single". Both share one implementation, BasicProfile<Extra>,
// where Extra is the number of additional entries per ranking (0 or 1).
//
// The action is p^phi(phi(z)) = phi(p(z)), entries mapped one by one.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matchsym/errors.hpp"
#include "matchsym/group.hpp"
#include "matchsym/permutation.hpp"
#include "matchsym/random.hpp"

namespace matchsym {

// A ranking from best to worst. The ground set is the set of listed entries.
struct LinearOrder {
  std::vector<int> ranking;

  std::vector<int> over() const {
    std::vector<int> s = ranking;
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(const LinearOrder&, const LinearOrder&) = default;
};

// 1-based position of x.
inline int rank(const LinearOrder& r, int x) {
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    if (r.ranking[i] == x) return static_cast<int>(i) + 1;
  }
  throw DomainError(std::to_string(x) + " is not ranked by this order");
}

// [x1, ..., xm] -> [phi(x1), ..., phi(xm)].
inline LinearOrder permute_order(const Permutation& phi, const LinearOrder& r) {
  require_in_gstar(phi);
  LinearOrder out;
  out.ranking.reserve(r.ranking.size());
  for (int x : r.ranking) {
    if (x < 1 || x > phi.degree()) {
      throw DomainError("order entry " + std::to_string(x) + " outside {1.." +
                        std::to_string(phi.degree()) + "}");
    }
    out.ranking.push_back(phi(x));
  }
  return out;
}

namespace detail {
struct ProfileAccess;
}

template <int Extra>
class BasicProfile {
 public:
  static_assert(Extra == 0 || Extra == 1);
  static constexpr int kExtra = Extra;
  static constexpr int kStride = kMaxN + 1;

  BasicProfile() = default;

  // Ground set of individual z's ranking, ascending.
  static std::vector<int> ground_set(int n, int z) {
    std::vector<int> g;
    if (is_woman(n, z)) {
      if (Extra) g.push_back(z);
      for (int y = n + 1; y <= 2 * n; ++y) g.push_back(y);
    } else {
      for (int x = 1; x <= n; ++x) g.push_back(x);
      if (Extra) g.push_back(z);
    }
    return g;
  }

  // `orders[z-1]` is the ranking of individual z.
  static BasicProfile from_orders(int n,
                                  const std::vector<std::vector<int>>& orders) {
    check_half_size(n);
    if (static_cast<int>(orders.size()) != 2 * n) {
      throw SizeError("expected " + std::to_string(2 * n) + " rankings, got " +
                      std::to_string(orders.size()));
    }
    BasicProfile p;
    p.n_ = static_cast<std::uint8_t>(n);
    for (int z = 1; z <= 2 * n; ++z) {
      const auto& o = orders[z - 1];
      std::vector<int> sorted = o;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != ground_set(n, z)) {
        throw DomainError("ranking of individual " + std::to_string(z) +
                          " is not an order of its ground set");
      }
      for (int k = 0; k < n + Extra; ++k) {
        p.r_[(z - 1) * kStride + k] = static_cast<std::uint8_t>(o[k]);
      }
    }
    return p;
  }

  int n() const noexcept { return n_; }
  int width() const noexcept { return n_ + Extra; }

  // k-th entry (0-based position) of z's ranking.
  int at(int z, int k) const noexcept { return r_[(z - 1) * kStride + k]; }
  int top(int z) const noexcept { return at(z, 0); }
  int bottom(int z) const noexcept { return at(z, width() - 1); }

  std::vector<int> order(int z) const {
    std::vector<int> o(width());
    for (int k = 0; k < width(); ++k) o[k] = at(z, k);
    return o;
  }

  LinearOrder linear_order(int z) const { return LinearOrder{order(z)}; }

  // 1-based rank of x in z's ranking.
  int rank(int z, int x) const {
    for (int k = 0; k < width(); ++k) {
      if (at(z, k) == x) return k + 1;
    }
    throw DomainError(std::to_string(x) + " is not ranked by individual " +
                      std::to_string(z));
  }

  // True when z strictly prefers a to b.
  bool prefers(int z, int a, int b) const { return rank(z, a) < rank(z, b); }

  // Lexicographic on the concatenated rankings of individuals 1..2n.
  friend auto operator<=>(const BasicProfile&, const BasicProfile&) = default;
  friend bool operator==(const BasicProfile&, const BasicProfile&) = default;

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (int z = 1; z <= 2 * n_; ++z) {
      for (int k = 0; k < width(); ++k) {
        h ^= static_cast<std::uint64_t>(at(z, k));
        h *= 1099511628211ull;
      }
    }
    return static_cast<std::size_t>(h);
  }

 private:
  friend struct detail::ProfileAccess;

  std::uint8_t n_ = 0;
  std::array<std::uint8_t, 2 * kMaxN * kStride> r_{};
};

using PreferenceProfile = BasicProfile<0>;
using GeneralizedProfile = BasicProfile<1>;

struct ProfileHash {
  template <int E>
  std::size_t operator()(const BasicProfile<E>& p) const noexcept {
    return p.hash();
  }
};

namespace detail {
struct ProfileAccess {
  template <int E>
  static BasicProfile<E> blank(int n) {
    BasicProfile<E> p;
    p.n_ = static_cast<std::uint8_t>(n);
    return p;
  }
  template <int E>
  static void set(BasicProfile<E>& p, int z, int k, int v) {
    p.r_[(z - 1) * BasicProfile<E>::kStride + k] = static_cast<std::uint8_t>(v);
  }
};
}  // namespace detail

// p^phi, defined by p^phi(phi(z)) = phi(p(z)). phi must lie in G*.
template <int E>
BasicProfile<E> act(const BasicProfile<E>& p, const Permutation& phi) {
  if (phi.n() != p.n()) throw SizeError("act: permutation and profile sizes differ");
  require_in_gstar(phi);
  auto q = detail::ProfileAccess::blank<E>(p.n());
  for (int z = 1; z <= 2 * p.n(); ++z) {
    const int fz = phi(z);
    for (int k = 0; k < p.width(); ++k) {
      detail::ProfileAccess::set(q, fz, k, phi(p.at(z, k)));
    }
  }
  return q;
}

// p^phi == p, without building p^phi.
template <int E>
bool fixes(const BasicProfile<E>& p, const Permutation& phi) {
  for (int z = 1; z <= 2 * p.n(); ++z) {
    const int fz = phi(z);
    for (int k = 0; k < p.width(); ++k) {
      if (p.at(fz, k) != phi(p.at(z, k))) return false;
    }
  }
  return true;
}

// Stab_u(p) = { phi in u : p^phi = p }.
template <int E>
PermGroup stabilizer(const BasicProfile<E>& p, const PermGroup& u) {
  if (u.n() != p.n()) throw SizeError("stabilizer: group and profile sizes differ");
  std::vector<Permutation> out;
  for (const auto& phi : u) {
    if (!in_gstar(phi)) throw DomainError("stabilizer: group is not inside G*");
    if (fixes(p, phi)) out.push_back(phi);
  }
  return PermGroup(p.n(), std::move(out));
}

template <int E>
PermGroup stabilizer(const BasicProfile<E>& p) {
  return stabilizer(p, gstar(p.n()));
}

inline std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// The profile space P (or its generalized counterpart) for fixed n, with a
// mixed-radix index that agrees with the lexicographic profile order.
template <int E>
class BasicProfileSpace {
 public:
  using Profile = BasicProfile<E>;

  explicit BasicProfileSpace(int n) : n_(n) {
    check_half_size(n);
    if (n < 2) throw SizeError("profile spaces need n >= 2");
    orders_per_individual_ = factorial(n + E);
    const long double total =
        std::pow(static_cast<long double>(orders_per_individual_), 2.0L * n);
    estimate_ = static_cast<double>(total);
    indexable_ = total < 9.0e18L;
    if (indexable_) {
      for (int z = 1; z <= 2 * n; ++z) {
        std::vector<int> g = Profile::ground_set(n, z);
        std::vector<std::vector<int>> all;
        do {
          all.push_back(g);
        } while (std::next_permutation(g.begin(), g.end()));
        orders_.push_back(std::move(all));
      }
    }
  }

  int n() const noexcept { return n_; }
  double count_estimate() const noexcept { return estimate_; }
  bool indexable() const noexcept { return indexable_; }

  // Exhaustive scans are limited to desk scale: 46656 profiles at n = 3, and
  // 1296 generalized profiles at n = 2.
  bool exhaustive_allowed() const noexcept { return n_ <= (E == 0 ? 3 : 2); }

  void require_exhaustive() const {
    if (!exhaustive_allowed()) {
      std::ostringstream os;
      os << "exhaustive enumeration refused at n=" << n_ << ": about "
         << estimate_ << " profiles";
      throw UnsupportedError(os.str());
    }
  }

  std::uint64_t size() const {
    require_indexable();
    std::uint64_t s = 1;
    for (int i = 0; i < 2 * n_; ++i) s *= orders_per_individual_;
    return s;
  }

  Profile at(std::uint64_t index) const {
    require_indexable();
    auto p = detail::ProfileAccess::blank<E>(n_);
    for (int z = 2 * n_; z >= 1; --z) {
      const auto& o = orders_[z - 1][index % orders_per_individual_];
      index /= orders_per_individual_;
      for (int k = 0; k < n_ + E; ++k) detail::ProfileAccess::set(p, z, k, o[k]);
    }
    return p;
  }

  std::uint64_t index_of(const Profile& p) const {
    require_indexable();
    if (p.n() != n_) throw SizeError("index_of: profile size differs");
    std::uint64_t idx = 0;
    for (int z = 1; z <= 2 * n_; ++z) {
      idx = idx * orders_per_individual_ + lex_rank(p, z);
    }
    return idx;
  }

  // Uniform random profile.
  Profile sample(Rng& rng) const {
    auto p = detail::ProfileAccess::blank<E>(n_);
    for (int z = 1; z <= 2 * n_; ++z) {
      std::vector<int> g = Profile::ground_set(n_, z);
      rng.shuffle(g);
      for (int k = 0; k < n_ + E; ++k) detail::ProfileAccess::set(p, z, k, g[k]);
    }
    return p;
  }

  // Calls f(profile) for every profile in lexicographic order.
  template <class F>
  void for_each(F&& f) const {
    require_exhaustive();
    const std::uint64_t total = size();
    for (std::uint64_t i = 0; i < total; ++i) f(at(i));
  }

 private:
  void require_indexable() const {
    if (!indexable_) {
      std::ostringstream os;
      os << "profile space at n=" << n_ << " is too large to index (about "
         << estimate_ << " profiles)";
      throw UnsupportedError(os.str());
    }
  }

  // Lexicographic rank of z's ranking among the orders of its ground set.
  std::uint64_t lex_rank(const Profile& p, int z) const {
    const int w = n_ + E;
    std::uint64_t r = 0;
    std::array<bool, 2 * kMaxN + 1> used{};
    const std::vector<int> g = Profile::ground_set(n_, z);
    for (int k = 0; k < w; ++k) {
      const int x = p.at(z, k);
      int smaller = 0;
      for (int y : g) {
        if (y < x && !used[y]) ++smaller;
      }
      used[x] = true;
      r = r * static_cast<std::uint64_t>(w - k) + static_cast<std::uint64_t>(smaller);
    }
    return r;
  }

  int n_;
  std::uint64_t orders_per_individual_ = 0;
  double estimate_ = 0;
  bool indexable_ = false;
  std::vector<std::vector<std::vector<int>>> orders_;
};

using ProfileSpace = BasicProfileSpace<0>;
using GeneralizedProfileSpace = BasicProfileSpace<1>;

template <int E>
struct Canonical {
  BasicProfile<E> rep;
  Permutation phi;  // rep^phi == p
};

// Least profile of the orbit p^u, and the least phi in u carrying it to p.
template <int E>
Canonical<E> canonical_representative(const BasicProfile<E>& p,
                                      const PermGroup& u) {
  if (u.n() != p.n()) throw SizeError("canonical_representative: sizes differ");
  BasicProfile<E> best = p;
  for (const auto& phi : u) {
    BasicProfile<E> q = act(p, phi);
    if (q < best) best = q;
  }
  for (const auto& phi : u) {
    if (act(best, phi) == p) return {best, phi};
  }
  throw PreconditionError("canonical_representative: u is not a group");
}

// One canonical representative per u-orbit, ascending. Exhaustive, so only
// within the desk-scale bound of the profile space.
template <int E = 0>
std::vector<BasicProfile<E>> orbit_transversal(const PermGroup& u, int n) {
  if (u.n() != n) throw SizeError("orbit_transversal: group size differs");
  BasicProfileSpace<E> space(n);
  space.require_exhaustive();
  const std::uint64_t total = space.size();
  std::vector<bool> seen(total, false);
  std::vector<BasicProfile<E>> reps;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (seen[i]) continue;
    BasicProfile<E> p = space.at(i);
    reps.push_back(p);
    for (const auto& phi : u) seen[space.index_of(act(p, phi))] = true;
  }
  return reps;
}

// Text format: a header line "n=<k>", then one line per individual
// "<z>: <ranking best to worst>". Lines may come in any order; blank lines and
// lines starting with '#' are ignored.
template <int E>
std::string to_text(const BasicProfile<E>& p) {
  std::ostringstream os;
  os << "n=" << p.n() << "\n";
  for (int z = 1; z <= 2 * p.n(); ++z) {
    os << z << ":";
    for (int k = 0; k < p.width(); ++k) os << " " << p.at(z, k);
    os << "\n";
  }
  return os.str();
}

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::optional<std::vector<int>> parse_ints(std::string_view s) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000) return std::nullopt;
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

template <int E>
BasicProfile<E> parse_profile_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  int n = 0;
  std::vector<std::vector<int>> orders;
  std::vector<bool> have;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (n == 0) {
      if (line.rfind("n=", 0) != 0) {
        throw ParseError(lineno, "expected header \"n=<k>\"");
      }
      const auto v = detail::parse_ints(std::string_view(line).substr(2));
      if (!v || v->size() != 1 || (*v)[0] < 2 || (*v)[0] > kMaxN) {
        throw ParseError(lineno, "bad half-population size in header");
      }
      n = (*v)[0];
      orders.assign(2 * n, {});
      have.assign(2 * n, false);
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError(lineno, "expected \"<individual>: <ranking>\"");
    }
    const auto who = detail::parse_ints(std::string_view(line).substr(0, colon));
    if (!who || who->size() != 1 || (*who)[0] < 1 || (*who)[0] > 2 * n) {
      throw ParseError(lineno, "bad individual id");
    }
    const int z = (*who)[0];
    if (have[z - 1]) {
      throw ParseError(lineno, "individual " + std::to_string(z) + " listed twice");
    }
    const auto ranking = detail::parse_ints(std::string_view(line).substr(colon + 1));
    if (!ranking) throw ParseError(lineno, "ranking is not a list of integers");
    std::vector<int> sorted = *ranking;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != BasicProfile<E>::ground_set(n, z)) {
      throw ParseError(lineno, "ranking of individual " + std::to_string(z) +
                                   " is not an order of its ground set");
    }
    orders[z - 1] = *ranking;
    have[z - 1] = true;
  }
  if (n == 0) throw ParseError(lineno + 1, "missing header \"n=<k>\"");
  for (int z = 1; z <= 2 * n; ++z) {
    if (!have[z - 1]) {
      throw ParseError(lineno + 1, "no ranking for individual " + std::to_string(z));
    }
  }
  return BasicProfile<E>::from_orders(n, orders);
}

inline PreferenceProfile parse_profile(std::string_view text) {
  return parse_profile_text<0>(text);
}

inline GeneralizedProfile parse_generalized_profile(std::string_view text) {
  return parse_profile_text<1>(text);
}

// Single-line form used in mechanism tables: rankings of 1..2n separated by
// '|', e.g. "4 5 6|4 6 5|6 5 4|2 1 3|3 1 2|3 2 1".
template <int E>
std::string to_inline(const BasicProfile<E>& p) {
  std::string s;
  for (int z = 1; z <= 2 * p.n(); ++z) {
    if (z > 1) s += "|";
    for (int k = 0; k < p.width(); ++k) {
      if (k) s += " ";
      s += std::to_string(p.at(z, k));
    }
  }
  return s;
}

template <int E = 0>
BasicProfile<E> parse_inline(int n, std::string_view s) {
  std::vector<std::vector<int>> orders;
  std::size_t start = 0;
  while (true) {
    const auto bar = s.find('|', start);
    const auto part = s.substr(start, bar == std::string_view::npos ? s.npos : bar - start);
    const auto v = detail::parse_ints(part);
    if (!v) throw DomainError("malformed inline profile \"" + std::string(s) + "\"");
    orders.push_back(*v);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return BasicProfile<E>::from_orders(n, orders);
}

}  // namespace matchsym
