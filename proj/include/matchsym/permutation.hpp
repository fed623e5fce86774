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

// Permutations of the population I = {1, ..., 2n}, where W = {1, ..., n} are
// the women and M = {n+1, ..., 2n} the men.
//
// Products are right-to-left: compose(a, b)(z) == a(b(z)). Conjugation is
// k^h = h k h^-1. Both conventions hold everywhere in this library.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matchsym/errors.hpp"

namespace matchsym {

// Largest supported half-population. Values are stored inline, so every
// Permutation and profile is a fixed-size, allocation-free value.
inline constexpr int kMaxN = 8;

inline void check_half_size(int n) {
  if (n < 1 || n > kMaxN) {
    throw SizeError("half-population size " + std::to_string(n) +
                    " outside [1, " + std::to_string(kMaxN) + "]");
  }
}

inline bool is_woman(int n, int z) { return z >= 1 && z <= n; }
inline bool is_man(int n, int z) { return z > n && z <= 2 * n; }

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    check_half_size(n);
    Permutation p;
    p.n_ = static_cast<std::uint8_t>(n);
    std::iota(p.img_.begin(), p.img_.begin() + std::min(2 * n, 2 * kMaxN), std::uint8_t{0});
    return p;
  }

  // `images[i]` is the 1-based image of individual i+1.
  static Permutation from_images(int n, const std::vector<int>& images) {
    check_half_size(n);
    if (static_cast<int>(images.size()) != 2 * n) {
      throw SizeError("expected " + std::to_string(2 * n) + " images, got " +
                      std::to_string(images.size()));
    }
    Permutation p;
    p.n_ = static_cast<std::uint8_t>(n);
    std::array<bool, 2 * kMaxN> seen{};
    for (int i = 0; i < 2 * n; ++i) {
      const int z = images[i];
      if (z < 1 || z > 2 * n || seen[z - 1]) {
        throw DomainError("image list is not a bijection of {1.." +
                          std::to_string(2 * n) + "}");
      }
      seen[z - 1] = true;
      p.img_[i] = static_cast<std::uint8_t>(z - 1);
    }
    return p;
  }

  int n() const noexcept { return n_; }
  int degree() const noexcept { return 2 * n_; }

  // 1-based evaluation.
  int operator()(int z) const noexcept { return img_[z - 1] + 1; }
  // 0-based evaluation, for inner loops.
  int image0(int i) const noexcept { return img_[i]; }

  std::vector<int> images() const {
    std::vector<int> out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = img_[i] + 1;
    return out;
  }

  bool is_identity() const noexcept {
    for (int i = 0; i < degree(); ++i) {
      if (img_[i] != i) return false;
    }
    return true;
  }

  // Lexicographic on the image sequence (after n). Unused slots are zero.
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (int i = 0; i < degree(); ++i) {
      h ^= img_[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::uint8_t n_ = 0;
  std::array<std::uint8_t, 2 * kMaxN> img_{};
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    return p.hash();
  }
};

inline void check_same_size(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) {
    throw SizeError("permutations on different populations (n=" +
                    std::to_string(a.n()) + " vs n=" + std::to_string(b.n()) +
                    ")");
  }
}

// (a b)(z) = a(b(z)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  check_same_size(a, b);
  Permutation r;
  r.n_ = a.n_;
  for (int i = 0; i < a.degree(); ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

inline Permutation inverse(const Permutation& a) {
  Permutation r;
  r.n_ = a.n_;
  for (int i = 0; i < a.degree(); ++i) r.img_[a.img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

// k^h = h k h^-1.
inline Permutation conjugate(const Permutation& k, const Permutation& h) {
  return compose(compose(h, k), inverse(h));
}

inline Permutation power(const Permutation& a, long long e) {
  Permutation base = e < 0 ? inverse(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                               : static_cast<unsigned long long>(e);
  Permutation acc = Permutation::identity(a.n());
  while (k != 0) {
    if (k & 1u) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1u;
  }
  return acc;
}

inline bool commute(const Permutation& a, const Permutation& b) {
  return compose(a, b) == compose(b, a);
}

// Cycles of `a` including fixed points, each rotated to start at its least
// point, listed by least point. Points are 1-based.
inline std::vector<std::vector<int>> cycles(const Permutation& a) {
  std::vector<std::vector<int>> out;
  std::array<bool, 2 * kMaxN> seen{};
  for (int i = 0; i < a.degree(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = a.image0(j)) {
      seen[j] = true;
      cyc.push_back(j + 1);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

// Unordered multiset of cycle lengths, stored ascending. Fixed points count
// as parts of size 1.
struct CycleType {
  std::vector<int> parts;

  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

  long long lcm() const {
    long long l = 1;
    for (int b : parts) l = std::lcm(l, static_cast<long long>(b));
    return l;
  }

  // True when all parts are equal, i.e. the type is [b^(r)].
  bool is_uniform() const {
    return std::adjacent_find(parts.begin(), parts.end(),
                              std::not_equal_to<>()) == parts.end();
  }

  bool has_fixed_point() const {
    return !parts.empty() && parts.front() == 1;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
};

inline CycleType cycle_type(const Permutation& a) {
  CycleType t;
  for (const auto& c : cycles(a)) t.parts.push_back(static_cast<int>(c.size()));
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

inline long long order(const Permutation& a) { return cycle_type(a).lcm(); }

inline std::string to_string(const CycleType& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.parts[i]);
  }
  return s + "]";
}

// Cycle notation, e.g. "(1 3 2 4)(5 6)"; "id" for the identity.
inline std::string to_string(const Permutation& a) {
  std::string s;
  for (const auto& c : cycles(a)) {
    if (c.size() < 2) continue;
    s += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(c[i]);
    }
    s += ")";
  }
  return s.empty() ? "id" : s;
}

// Parses cycle notation over {1..2n}. Points inside a cycle are separated by
// whitespace or commas; cycles may be adjacent or separated by whitespace.
// Cycles are applied right-to-left, so overlapping cycles compose as a
// product.
inline Permutation parse_permutation(std::string_view text, int n) {
  check_half_size(n);
  Permutation result = Permutation::identity(n);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
            text[i] == '\n')) {
      ++i;
    }
  };
  skip_ws();
  if (text.substr(i, 2) == "id") {
    i += 2;
    skip_ws();
    if (i != text.size()) {
      throw DomainError("trailing characters after 'id' in \"" +
                        std::string(text) + "\"");
    }
    return result;
  }
  std::vector<std::vector<int>> parsed;
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') {
      throw DomainError("expected '(' in \"" + std::string(text) + "\"");
    }
    ++i;
    std::vector<int> cyc;
    while (true) {
      while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
      if (i == text.size()) {
        throw DomainError("unterminated cycle in \"" + std::string(text) + "\"");
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9') {
        throw DomainError("unexpected character '" + std::string(1, text[i]) +
                          "' in \"" + std::string(text) + "\"");
      }
      int v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > 2 * n) {
        throw DomainError("point " + std::to_string(v) + " outside {1.." +
                          std::to_string(2 * n) + "}");
      }
      if (std::find(cyc.begin(), cyc.end(), v) != cyc.end()) {
        throw DomainError("point " + std::to_string(v) +
                          " repeated inside a cycle");
      }
      cyc.push_back(v);
    }
    parsed.push_back(std::move(cyc));
  }
  if (parsed.empty()) throw DomainError("empty permutation text");
  for (auto it = parsed.rbegin(); it != parsed.rend(); ++it) {
    std::vector<int> imgs(2 * n);
    std::iota(imgs.begin(), imgs.end(), 1);
    const auto& c = *it;
    for (std::size_t k = 0; k < c.size(); ++k) {
      imgs[c[k] - 1] = c[(k + 1) % c.size()];
    }
    result = compose(Permutation::from_images(n, imgs), result);
  }
  return result;
}

// Membership in the distinguished subsets of Sym(I).
struct Membership {
  bool in_gstar = false;  // preserves the partition {W, M}
  bool in_g = false;      // fixes W and M setwise
  bool in_gw = false;     // fixes every man
  bool in_gm = false;     // fixes every woman
  bool is_matching = false;
};

inline bool maps_w_to_w(const Permutation& a) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    if (a.image0(i) >= n) return false;
  }
  return true;
}

inline bool maps_w_to_m(const Permutation& a) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    if (a.image0(i) < n) return false;
  }
  return true;
}

inline bool in_g(const Permutation& a) { return maps_w_to_w(a); }
inline bool in_gstar(const Permutation& a) {
  return maps_w_to_w(a) || maps_w_to_m(a);
}
inline bool swaps_sides(const Permutation& a) { return maps_w_to_m(a); }

inline bool is_involution(const Permutation& a) {
  return compose(a, a).is_identity();
}

inline bool is_matching_permutation(const Permutation& a) {
  return a.n() > 0 && maps_w_to_m(a) && is_involution(a);
}

inline Membership classify(const Permutation& a) {
  Membership m;
  const int n = a.n();
  m.in_g = maps_w_to_w(a);
  m.in_gstar = m.in_g || maps_w_to_m(a);
  bool fixes_men = true;
  bool fixes_women = true;
  for (int i = 0; i < n; ++i) fixes_women &= a.image0(i) == i;
  for (int i = n; i < 2 * n; ++i) fixes_men &= a.image0(i) == i;
  m.in_gw = fixes_men;
  m.in_gm = fixes_women;
  m.is_matching = is_matching_permutation(a);
  return m;
}

inline void require_in_gstar(const Permutation& a) {
  if (!in_gstar(a)) {
    throw DomainError(to_string(a) + " does not preserve the partition {W, M}");
  }
}

}  // namespace matchsym
