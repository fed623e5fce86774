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

// matchsym command-line front end. Every verb prints one JSON document.
// Exit codes: 0 success, 1 usage or input error, 2 a checked invariant failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matchsym/matchsym.hpp"

namespace matchsym {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefuted = 2;

struct Options {
  int n = 0;
  std::string group = "G*";
  std::string mechanism = "TO";
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string profile;
  std::string side = "women";
  std::string theorem;
  std::string table;
  std::string selector = "lex";
  std::uint64_t sample = 0;
  bool pretty = false;
  bool timing = false;
  bool explore = false;
  bool list = false;
};

struct Outcome {
  Json report;
  int code = kExitOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// "G*", "G", "GW", "GM", "trivial", or generators in cycle notation
// separated by ';'.
PermGroup parse_group(const std::string& spec, int n) {
  const std::string s = detail::trim(spec);
  if (s == "G*" || s == "Gstar") return gstar(n);
  if (s == "G") return g_group(n);
  if (s == "GW") return gw_group(n);
  if (s == "GM") return gm_group(n);
  if (s == "trivial" || s.empty()) return PermGroup::trivial(n);
  std::vector<Permutation> gens;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto semi = s.find(';', start);
    const std::string part =
        detail::trim(s.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
    if (!part.empty()) {
      Permutation g = parse_permutation(part, n);
      if (!in_gstar(g)) throw DomainError(to_string(g) + " is not in G*");
      gens.push_back(g);
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return generate(n, gens);
}

Json group_json(const PermGroup& u) {
  Json j;
  j["order"] = u.order();
  Json gens = Json::array();
  for (const auto& g : u.generators()) gens.push_back(to_string(g));
  j["generators"] = gens;
  return j;
}

PreferenceProfile load_profile(const Options& o) {
  if (o.profile.empty()) throw CLI::RequiredError("--profile");
  return parse_profile(read_file(o.profile));
}

Outcome cmd_analyze(const Options& o) {
  const auto p = load_profile(o);
  const PermGroup u = parse_group(o.group, p.n());
  Outcome r;
  Json& j = r.report;
  j["profile"] = to_json(p);
  j["group"] = group_json(u);
  const PermGroup st = stabilizer(p, u);
  j["stabilizer"] = to_json(st);
  j["c_u"] = to_json(c_u(p, u));
  Json mech = Json::object();
  std::vector<MatchingSet> chain;
  for (auto id : {MechanismId::GS, MechanismId::ST, MechanismId::PO, MechanismId::WPO,
                  MechanismId::MO, MechanismId::TO}) {
    chain.push_back(evaluate_mechanism(id, p));
    mech[to_string(id)] = to_json(chain.back());
  }
  for (auto id : {MechanismId::GS_w, MechanismId::GS_m, MechanismId::SE, MechanismId::ES}) {
    mech[to_string(id)] = to_json(evaluate_mechanism(id, p));
  }
  j["mechanisms"] = mech;
  Json metrics = Json::array();
  for (const auto& mu : all_matchings(p.n())) {
    metrics.push_back({{"matching", to_string(mu)},
                       {"delta", delta(p, mu)},
                       {"e", envy_total(p, mu)},
                       {"blocking_pairs", detail::pairs_json(blocking_pairs(p, mu))}});
  }
  j["metrics"] = metrics;
  const auto sigma = sigma_p(p);
  j["sigma_p"] = sigma ? Json(to_string(*sigma)) : Json(nullptr);
  bool chain_ok = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    chain_ok = chain_ok && is_subset(chain[i], chain[i + 1]);
  }
  j["refinement_chain_holds"] = chain_ok;
  if (!chain_ok) r.code = kExitRefuted;
  return r;
}

Outcome cmd_stabilizer(const Options& o) {
  const auto p = load_profile(o);
  const PermGroup u = parse_group(o.group, p.n());
  const PermGroup st = stabilizer(p, u);
  Outcome r;
  r.report["profile"] = to_json(p);
  r.report["group"] = group_json(u);
  r.report["stabilizer"] = to_json(st);
  r.report["order"] = st.order();
  r.report["orbit_size"] = u.order() / st.order();
  r.report["semiregular"] = is_semiregular(st);
  Json types = Json::array();
  for (const auto& a : st) types.push_back(to_string(cycle_type(a)));
  r.report["cycle_types"] = types;
  if (!is_semiregular(st) && u.order() == gstar(p.n()).order()) r.code = kExitRefuted;
  return r;
}

Outcome cmd_cu(const Options& o) {
  const auto p = load_profile(o);
  const PermGroup u = parse_group(o.group, p.n());
  Outcome r;
  r.report["profile"] = to_json(p);
  r.report["group"] = group_json(u);
  r.report["stabilizer"] = to_json(stabilizer(p, u));
  r.report["c_u"] = to_json(c_u(p, u));
  return r;
}

Outcome cmd_gs(const Options& o) {
  const auto p = load_profile(o);
  const Side side = parse_side(o.side);
  const Matching mu = gale_shapley(p, side);
  Outcome r;
  r.report["profile"] = to_json(p);
  r.report["side"] = side == Side::kWomen ? "women" : "men";
  r.report["matching"] = to_string(mu);
  const bool stable = is_stable(p, mu);
  r.report["stable"] = stable;
  if (!stable) r.code = kExitRefuted;
  return r;
}

Outcome cmd_mech(const Options& o) {
  const auto p = load_profile(o);
  Outcome r;
  if (!o.table.empty()) {
    const auto t = load_table(read_file(o.table));
    r.report["profile"] = to_json(p);
    r.report["table"] = {{"n", t.n()}, {"group_order", t.group().order()},
                         {"orbits", t.entries().size()}};
    r.report["matching"] = to_string(t.evaluate(p));
    return r;
  }
  r.report = mechanism_report(p, parse_mechanism(o.mechanism));
  return r;
}

Outcome cmd_synth(const Options& o) {
  if (o.n < 2) throw CLI::ValidationError("--n", "synth needs --n >= 2");
  const PermGroup u = parse_group(o.group, o.n);
  const MechanismId id = parse_mechanism(o.mechanism);
  Selector<0> selector = lex_least_selector<0>();
  if (o.selector == "wpo") {
    const auto gens = u.generators();
    if (gens.size() != 1 || !is_matching_permutation(gens.front())) {
      throw DomainError("the wpo selector needs a group generated by one matching");
    }
    selector = wpo_selector(gens.front());
  } else if (o.selector != "lex") {
    throw DomainError("unknown selector \"" + o.selector + "\"");
  }
  const auto res = synthesize<0>(u, id, selector, o.jobs);
  Outcome r;
  Json& j = r.report;
  j["n"] = o.n;
  j["group"] = group_json(u);
  j["mechanism"] = to_string(id);
  j["selector"] = o.selector;
  if (!res.table) {
    j["status"] = "infeasible";
    const auto& w = *res.witness;
    j["witness"] = {{"profile", to_json(w)},
                    {"stabilizer", to_json(stabilizer(w, u))},
                    {"c_u", to_json(c_u(w, u))},
                    {"F", to_json(evaluate_mechanism(id, w))}};
    return r;
  }
  const auto& t = *res.table;
  j["status"] = "synthesized";
  j["orbits"] = t.entries().size();
  // Independent re-check of the synthesized table.
  const auto sym = is_u_symmetric<0>(t, u, Scope::exhaustive(o.jobs));
  const auto ref = is_refinement<0>(t, mechanism_fn(id), o.n, Scope::exhaustive(o.jobs));
  j["verified"] = {{"symmetric", sym.verdict}, {"refines", ref.verdict},
                   {"profiles", ProfileSpace(o.n).size()}};
  if (!o.table.empty()) {
    std::ofstream f(o.table, std::ios::binary);
    if (!f) throw DomainError("cannot write \"" + o.table + "\"");
    f << save_table(t);
    j["table_file"] = o.table;
  }
  if (!sym.verdict || !ref.verdict) r.code = kExitRefuted;
  return r;
}

int default_n(const std::string& theorem) {
  if (theorem == "T2" || theorem == "T7" || theorem == "T9" || theorem == "T9-support") return 2;
  return 3;
}

Outcome cmd_verify(const Options& o) {
  if (o.theorem.empty()) throw CLI::RequiredError("--theorem");
  Outcome r;
  auto run = [&](const std::string& th) {
    const int n = o.n > 0 ? o.n : default_n(th);
    const TheoremReport rep = run_theorem_suite(th, n, o.seed, o.jobs);
    if (rep.status == "refuted") r.code = kExitRefuted;
    return rep.to_json(o.timing);
  };
  if (o.theorem == "all") {
    r.report = Json::array();
    for (const auto& th : theorem_ids()) r.report.push_back(run(th));
  } else {
    r.report = run(o.theorem);
  }
  return r;
}

Outcome cmd_orbits(const Options& o) {
  if (o.n < 2) throw CLI::ValidationError("--n", "orbits needs --n >= 2");
  const PermGroup u = parse_group(o.group, o.n);
  const ProfileSpace space(o.n);
  const auto reps = orbit_transversal<0>(u, o.n);
  // Burnside cross-check: average number of profiles fixed by an element.
  std::uint64_t fixed = 0;
  for (const auto& phi : u) {
    fixed += parallel_count(space.size(), o.jobs,
                            [&](std::uint64_t i) { return fixes(space.at(i), phi); });
  }
  Outcome r;
  Json& j = r.report;
  j["n"] = o.n;
  j["group"] = group_json(u);
  j["profiles"] = space.size();
  j["orbits"] = reps.size();
  j["burnside"] = fixed / u.order();
  if (o.list) {
    Json l = Json::array();
    for (const auto& p : reps) {
      l.push_back({{"representative", to_inline(p)},
                   {"stabilizer_order", stabilizer(p, u).order()}});
    }
    j["representatives"] = l;
  }
  if (fixed % u.order() != 0 || fixed / u.order() != reps.size()) r.code = kExitRefuted;
  return r;
}

Outcome cmd_enumerate(const Options& o) {
  if (o.n < 1) throw CLI::ValidationError("--n", "enumerate needs --n >= 1");
  check_half_size(o.n);
  Outcome r;
  Json& j = r.report;
  j["n"] = o.n;
  j["matchings"] = to_json(all_matchings(o.n));
  j["matching_count"] = all_matchings(o.n).size();
  j["generalized_matching_count"] = all_generalized_matchings(o.n).size();
  if (o.n >= 2) {
    const ProfileSpace space(o.n);
    if (space.indexable()) {
      j["profile_count"] = space.size();
    } else {
      j["profile_count_estimate"] = space.count_estimate();
    }
    if (o.sample > 0) {
      Json s = Json::array();
      for (std::uint64_t i = 0; i < o.sample; ++i) {
        Rng rng = Rng::for_item(o.seed, i);
        s.push_back(to_inline(space.sample(rng)));
      }
      j["seed"] = o.seed;
      j["samples"] = s;
    }
  }
  return r;
}

MatchingSet stable_gen_set(const GeneralizedProfile& p) {
  MatchingSet s;
  for (const auto& mu : all_generalized_matchings(p.n())) {
    if (is_stable_gen(p, mu)) s.push_back(mu);
  }
  normalize(s);
  return s;
}

MatchingSet pareto_gen_set(const GeneralizedProfile& p) {
  MatchingSet s;
  for (const auto& mu : all_generalized_matchings(p.n())) {
    if (is_pareto_gen(p, mu)) s.push_back(mu);
  }
  normalize(s);
  return s;
}

Outcome cmd_gen(const Options& o) {
  Outcome r;
  Json& j = r.report;
  if (!o.profile.empty()) {
    const auto p = parse_generalized_profile(read_file(o.profile));
    const PermGroup u = parse_group(o.group, p.n());
    j["profile"] = to_json(p);
    j["in_pbar_star"] = in_pbar_star(p);
    j["stabilizer"] = to_json(stabilizer(p, u));
    j["c_u"] = to_json(c_u(p, u));
    const auto st = stable_gen_set(p);
    const auto po = pareto_gen_set(p);
    j["stable"] = to_json(st);
    j["pareto"] = to_json(po);
    j["stable_within_pareto"] = is_subset(st, po);
    if (!is_subset(st, po)) r.code = kExitRefuted;
    return r;
  }
  if (o.n < 1) throw CLI::ValidationError("--n", "gen needs --n or --profile");
  check_half_size(o.n);
  j["n"] = o.n;
  j["generalized_matchings"] = to_json(all_generalized_matchings(o.n));
  j["count"] = all_generalized_matchings(o.n).size();
  if (o.explore) {
    // Exploratory scan over all generalized profiles; no general-n claim.
    if (o.n != 2) throw UnsupportedError("--explore scans generalized profiles only at n = 2");
    const PermGroup u = parse_group(o.group, o.n);
    Json e;
    e["group"] = group_json(u);
    const auto to = synthesize<1>(u, [](const GeneralizedProfile& p) {
      return outcome_space<1>(p.n());
    }, lex_least_selector<1>(), o.jobs);
    e["resolute_symmetric_exists"] = to.table.has_value();
    e["note"] = "the identity commutes with every stabilizer, so C^U is never empty";
    for (const auto& [name, f] :
         std::vector<std::pair<std::string, MatchingSet (*)(const GeneralizedProfile&)>>{
             {"stable", &stable_gen_set}, {"pareto", &pareto_gen_set}}) {
      const auto fr = feasibility<1>(f, u, o.n, o.jobs);
      Json k = {{"feasible", fr.feasible}, {"representatives", fr.representatives}};
      if (fr.witness) k["witness"] = to_json(*fr.witness);
      e[name] = k;
    }
    j["explore"] = e;
  }
  return r;
}

using Handler = Outcome (*)(const Options&);

int run(int argc, char** argv) {
  CLI::App app{"Symmetric matching mechanisms: analysis, synthesis and verification"};
  app.require_subcommand(1);
  Options o;
  o.jobs = default_jobs();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write the report to this file instead of stdout");
    sub->add_flag("--pretty", o.pretty, "indent the JSON report");
    sub->add_option("--jobs", o.jobs, "worker threads (default: MATCHSYM_JOBS or 1)")
        ->check(CLI::Range(1, 256));
    sub->add_option("--seed", o.seed, "seed for sampled runs (recorded in reports)");
  };
  auto with_profile = [&](CLI::App* sub) {
    sub->add_option("--profile", o.profile, "profile file")->required();
  };
  auto with_group = [&](CLI::App* sub) {
    sub->add_option("--group", o.group,
                    "G*, G, GW, GM, trivial, or generators in cycle notation separated by ';'");
  };
  std::vector<std::pair<CLI::App*, Handler>> verbs;

  auto* analyze = app.add_subcommand("analyze", "stabilizer, C^U, mechanism sets and metrics");
  with_profile(analyze);
  with_group(analyze);
  verbs.emplace_back(analyze, &cmd_analyze);

  auto* stab = app.add_subcommand("stabilizer", "stabilizer of a profile in a group");
  with_profile(stab);
  with_group(stab);
  verbs.emplace_back(stab, &cmd_stabilizer);

  auto* cu = app.add_subcommand("cu", "matchings commuting with the stabilizer");
  with_profile(cu);
  with_group(cu);
  verbs.emplace_back(cu, &cmd_cu);

  auto* gs = app.add_subcommand("gs", "deferred acceptance");
  with_profile(gs);
  gs->add_option("--side", o.side, "proposing side: women or men");
  verbs.emplace_back(gs, &cmd_gs);

  auto* mech = app.add_subcommand("mech", "evaluate a mechanism or a stored table on a profile");
  with_profile(mech);
  mech->add_option("--mechanism", o.mechanism, "TO, ST, PO, WPO, MO, GS, GS_w, GS_m, SE, ES");
  mech->add_option("--table", o.table, "mechanism table file written by synth");
  verbs.emplace_back(mech, &cmd_mech);

  auto* synth = app.add_subcommand("synth", "build a resolute symmetric refinement");
  synth->add_option("--n", o.n, "half population size")->required();
  with_group(synth);
  synth->add_option("--mechanism", o.mechanism, "constraint mechanism");
  synth->add_option("--selector", o.selector, "lex or wpo");
  synth->add_option("--table", o.table, "write the mechanism table to this file");
  verbs.emplace_back(synth, &cmd_synth);

  auto* verify = app.add_subcommand("verify", "run a theorem verification suite");
  verify->add_option("--theorem", o.theorem, "T2, T3, T4, T6, T7, T8, T9-support or all")
      ->required();
  verify->add_option("--n", o.n, "half population size (default depends on the theorem)");
  verify->add_flag("--timing", o.timing, "record elapsed_ms instead of 0");
  verbs.emplace_back(verify, &cmd_verify);

  auto* orbits = app.add_subcommand("orbits", "orbit transversal of the profile space");
  orbits->add_option("--n", o.n, "half population size")->required();
  with_group(orbits);
  orbits->add_flag("--list", o.list, "list the representatives");
  verbs.emplace_back(orbits, &cmd_orbits);

  auto* enumerate = app.add_subcommand("enumerate", "matchings and profile counts");
  enumerate->add_option("--n", o.n, "half population size")->required();
  enumerate->add_option("--sample", o.sample, "also draw this many random profiles");
  verbs.emplace_back(enumerate, &cmd_enumerate);

  auto* gen = app.add_subcommand("gen", "model with an outside option");
  gen->add_option("--n", o.n, "half population size");
  gen->add_option("--profile", o.profile, "generalized profile file");
  with_group(gen);
  gen->add_flag("--explore", o.explore, "exploratory feasibility scan at n = 2");
  verbs.emplace_back(gen, &cmd_gen);

  for (auto& [sub, h] : verbs) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Outcome result;
  try {
    for (auto& [sub, h] : verbs) {
      if (sub->parsed()) result = h(o);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = result.report.dump(o.pretty ? 2 : -1) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write \"" << o.out << "\"\n";
      return kExitUsage;
    }
    f << text;
  }
  return result.code;
}

}  // namespace
}  // namespace matchsym

int main(int argc, char** argv) { return matchsym::run(argc, argv); }
