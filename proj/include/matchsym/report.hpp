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

// JSON encodings of library values.

#include <string>
#include <vector>

#include "json.hpp"
#include "matchsym/group.hpp"
#include "matchsym/matching.hpp"
#include "matchsym/profile.hpp"

namespace matchsym {

using Json = nlohmann::ordered_json;

// {"1": [4,5,6], "2": [...], ...}
template <int E>
Json to_json(const BasicProfile<E>& p) {
  Json j = Json::object();
  for (int z = 1; z <= 2 * p.n(); ++z) j[std::to_string(z)] = p.order(z);
  return j;
}

inline Json to_json(const MatchingSet& s) {
  Json j = Json::array();
  for (const auto& mu : s) j.push_back(to_string(mu));
  return j;
}

inline Json to_json(const PermGroup& g) {
  Json j = Json::array();
  for (const auto& a : g) j.push_back(to_string(a));
  return j;
}

inline Json mechanism_report(const PreferenceProfile& p, MechanismId id) {
  Json j;
  j["profile"] = to_json(p);
  j["mechanism"] = to_string(id);
  Json ms = Json::array();
  for (const auto& mu : evaluate_mechanism(id, p)) {
    Json m;
    m["matching"] = to_string(mu);
    m["metrics"] = {{"delta", delta(p, mu)}, {"e", envy_total(p, mu)}};
    ms.push_back(m);
  }
  j["matchings"] = ms;
  return j;
}

}  // namespace matchsym
