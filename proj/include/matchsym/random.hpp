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

// Seeded randomness. std::uniform_int_distribution differs between standard
// libraries, so bounded draws are done here to keep sampled runs identical
// across platforms.

#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "matchsym/permutation.hpp"

namespace matchsym {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Stream for item `index` of a scan seeded with `seed`; independent of how
  // the scan is split across workers.
  static Rng for_item(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index)));
  }

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound > 0. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - (~0ull % bound);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  bool coin() { return (eng_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Uniform element of G*.
inline Permutation random_gstar_element(int n, Rng& rng) {
  check_half_size(n);
  std::vector<int> w(n), m(n);
  std::iota(w.begin(), w.end(), 1);
  std::iota(m.begin(), m.end(), n + 1);
  rng.shuffle(w);
  rng.shuffle(m);
  std::vector<int> imgs(2 * n);
  const bool swap_sides = rng.coin();
  for (int i = 0; i < n; ++i) {
    imgs[i] = swap_sides ? m[i] : w[i];
    imgs[n + i] = swap_sides ? w[i] : m[i];
  }
  return Permutation::from_images(n, imgs);
}

// Uniform element of G (side-preserving).
inline Permutation random_g_element(int n, Rng& rng) {
  check_half_size(n);
  std::vector<int> w(n), m(n);
  std::iota(w.begin(), w.end(), 1);
  std::iota(m.begin(), m.end(), n + 1);
  rng.shuffle(w);
  rng.shuffle(m);
  std::vector<int> imgs(2 * n);
  for (int i = 0; i < n; ++i) {
    imgs[i] = w[i];
    imgs[n + i] = m[i];
  }
  return Permutation::from_images(n, imgs);
}

// Uniform matching.
inline Permutation random_matching(int n, Rng& rng) {
  check_half_size(n);
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), n + 1);
  rng.shuffle(m);
  std::vector<int> imgs(2 * n);
  for (int i = 0; i < n; ++i) {
    imgs[i] = m[i];
    imgs[m[i] - 1] = i + 1;
  }
  return Permutation::from_images(n, imgs);
}

}  // namespace matchsym
