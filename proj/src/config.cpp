// Copyright 2026 The ibtom Authors. All rights reserved.
//
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

#include "ibtom/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "ibtom/errors.hpp"

namespace ibtom {

using nlohmann::json;

namespace {

constexpr const char* kParamKeys[] = {"beta",        "noise",         "decay",
                                      "exploration", "default_outcome", "temperature",
                                      "opponent_beta", "opponent_update", "prediction",
                                      "ucb_softmax"};

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw UsageError(key, "invalid value for '" + key + "': " + why);
}

void check_keys(const json& obj, std::span<const char* const> allowed, const std::string& where) {
  if (!obj.is_object()) bad(where.empty() ? "config" : where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      const std::string full = where.empty() ? k : where + "." + k;
      throw UsageError(full, "unknown key '" + full + "'");
    }
  }
}

template <typename T>
T get(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad(key, "wrong type");
  }
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad(key, "expected an integer");
  return j.get<int>();
}

template <typename F>
auto parse_enum(const json& j, const std::string& key, F from_string) {
  if (!j.is_string()) bad(key, "expected a string");
  try {
    return from_string(j.get<std::string>());
  } catch (const InputError& e) {
    bad(key, e.what());
  }
}

std::vector<ModelKind> parse_kinds(const json& j, const std::string& key) {
  if (!j.is_array()) bad(key, "expected a list of model names");
  std::vector<ModelKind> kinds;
  for (const auto& e : j) kinds.push_back(parse_enum(e, key, model_kind_from_string));
  return kinds;
}

json kinds_to_json(const std::vector<ModelKind>& kinds) {
  json a = json::array();
  for (auto k : kinds) a.push_back(std::string(to_string(k)));
  return a;
}

ParamOverrides parse_params(const json& j, const std::string& where) {
  check_keys(j, kParamKeys, where);
  ParamOverrides p;
  auto num = [&](const char* k, std::optional<double>& dst) {
    if (!j.contains(k) || j.at(k).is_null()) return;
    dst = get_number(j.at(k), where + "." + k);
  };
  num("beta", p.beta);
  num("noise", p.noise);
  num("decay", p.decay);
  num("exploration", p.exploration);
  num("default_outcome", p.default_outcome);
  num("temperature", p.temperature);
  num("opponent_beta", p.opponent_beta);
  if (j.contains("opponent_update") && !j.at("opponent_update").is_null()) {
    p.opponent_update =
        parse_enum(j.at("opponent_update"), where + ".opponent_update", opponent_update_from_string);
  }
  if (j.contains("prediction") && !j.at("prediction").is_null()) {
    p.prediction =
        parse_enum(j.at("prediction"), where + ".prediction", prediction_use_from_string);
  }
  if (j.contains("ucb_softmax") && !j.at("ucb_softmax").is_null()) {
    if (!j.at("ucb_softmax").is_boolean()) bad(where + ".ucb_softmax", "expected true/false");
    p.ucb_softmax = j.at("ucb_softmax").get<bool>();
  }
  return p;
}

json params_to_json(const ParamOverrides& p, bool include_unset) {
  json j = json::object();
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
    else if (include_unset) j[k] = nullptr;
  };
  put("beta", p.beta);
  put("noise", p.noise);
  put("decay", p.decay);
  put("exploration", p.exploration);
  put("default_outcome", p.default_outcome);
  put("temperature", p.temperature);
  put("opponent_beta", p.opponent_beta);
  if (p.opponent_update) j["opponent_update"] = std::string(to_string(*p.opponent_update));
  else if (include_unset) j["opponent_update"] = nullptr;
  if (p.prediction) j["prediction"] = std::string(to_string(*p.prediction));
  else if (include_unset) j["prediction"] = nullptr;
  if (p.ucb_softmax) j["ucb_softmax"] = *p.ucb_softmax;
  else if (include_unset) j["ucb_softmax"] = nullptr;
  return j;
}

void validate_params(const ParamOverrides& p, const std::string& where) {
  auto name = [&](const char* k) { return where.empty() ? std::string(k) : where + "." + k; };
  auto finite = [](double x) { return std::isfinite(x); };
  if (p.beta && !(*p.beta > 0.0 && finite(*p.beta))) bad(name("beta"), "must be > 0");
  if (p.noise && !(*p.noise >= 0.0 && finite(*p.noise))) bad(name("noise"), "must be >= 0");
  if (p.decay && !(*p.decay >= 0.0 && finite(*p.decay))) bad(name("decay"), "must be >= 0");
  if (p.exploration && !(*p.exploration >= 0.0 && finite(*p.exploration))) {
    bad(name("exploration"), "must be >= 0");
  }
  if (p.default_outcome && !finite(*p.default_outcome)) bad(name("default_outcome"), "must be finite");
  if (p.temperature && !(*p.temperature > 0.0 && finite(*p.temperature))) {
    bad(name("temperature"), "must be > 0");
  }
  if (p.opponent_beta && !(*p.opponent_beta > 0.0 && finite(*p.opponent_beta))) {
    bad(name("opponent_beta"), "must be > 0");
  }
}

Experiment experiment_from_string(const std::string& s) {
  if (s == "pairings") return Experiment::kPairings;
  if (s == "ood") return Experiment::kOod;
  if (s == "demo") return Experiment::kDemo;
  throw InputError("unknown experiment '" + s + "' (pairings, ood, demo)");
}

EpisodeReward episode_reward_from_string(const std::string& s) {
  if (s == "mean") return EpisodeReward::kMeanPerTrial;
  if (s == "sum") return EpisodeReward::kSum;
  throw InputError("unknown episode reward '" + s + "' (mean, sum)");
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kPairings: return "pairings";
    case Experiment::kOod: return "ood";
    case Experiment::kDemo: return "demo";
  }
  return "?";
}

AgentParams RunConfig::params_for(ModelKind kind) const {
  ParamOverrides p = params;
  if (auto it = overrides.find(kind); it != overrides.end()) {
    const auto& o = it->second;
    if (o.beta) p.beta = o.beta;
    if (o.noise) p.noise = o.noise;
    if (o.decay) p.decay = o.decay;
    if (o.exploration) p.exploration = o.exploration;
    if (o.default_outcome) p.default_outcome = o.default_outcome;
    if (o.temperature) p.temperature = o.temperature;
    if (o.opponent_beta) p.opponent_beta = o.opponent_beta;
    if (o.opponent_update) p.opponent_update = o.opponent_update;
    if (o.prediction) p.prediction = o.prediction;
    if (o.ucb_softmax) p.ucb_softmax = o.ucb_softmax;
  }
  AgentParams a = AgentParams::defaults(kind);
  a.ibl.beta = *p.beta;
  a.ibl.noise = *p.noise;
  a.ibl.decay = *p.decay;
  a.ibl.default_outcome = *p.default_outcome;
  a.ibl.temperature = p.temperature;
  a.ucb_c = *p.exploration;
  a.opponent_beta = p.opponent_beta;
  a.opponent_update = *p.opponent_update;
  a.prediction = *p.prediction;
  a.ucb_softmax = *p.ucb_softmax;
  if (auto it = transfer.find(kind); it != transfer.end()) a.transfer = it->second;
  return a;
}

std::vector<AgentParams> RunConfig::agent_params(std::span<const ModelKind> kinds) const {
  std::vector<AgentParams> out;
  for (auto k : kinds) out.push_back(params_for(k));
  return out;
}

void RunConfig::validate() const {
  if (pairs < 1) bad("pairs", "must be >= 1");
  if (samples < 1) bad("samples", "must be >= 1");
  if (episode.trials_per_role < 1) bad("trials_per_role", "must be >= 1");
  if (episode.assets.alpha.size() < 2) bad("assets.alpha", "need at least two assets");
  for (double a : episode.assets.alpha) {
    if (!(a > 0.0 && std::isfinite(a))) bad("assets.alpha", "components must be > 0");
  }
  if (!(episode.assets.scale > 0.0 && std::isfinite(episode.assets.scale))) {
    bad("assets.scale", "must be > 0");
  }
  if (models.empty()) bad("models", "must name at least one model");
  if (trained.empty()) bad("trained", "must name at least one model");
  if (opponents.empty()) bad("opponents", "must name at least one model");
  validate_params(params, "");
  for (const auto& [kind, o] : overrides) {
    validate_params(o, "overrides." + std::string(to_string(kind)));
  }
  for (const auto& [kind, mode] : transfer) {
    if (mode == TransferMode::kSwap && kind != ModelKind::kIBToM && kind != ModelKind::kRandom) {
      bad("transfer." + std::string(to_string(kind)), "swap is only valid for IBToM");
    }
  }
  if (!(randomization.multiplier > 0.0)) bad("randomization.multiplier", "must be > 0");
  if (!(randomization.beta_a > 0.0)) bad("randomization.beta_a", "must be > 0");
  if (!(randomization.beta_b > 0.0)) bad("randomization.beta_b", "must be > 0");
  if (threads < 0) bad("threads", "must be >= 0");
  if (output.dir.empty()) bad("output.dir", "must not be empty");
  // Noise 0 with a derived temperature leaves retrieval undefined.
  for (auto k : {ModelKind::kIBL, ModelKind::kIBToM}) {
    const auto a = params_for(k);
    if (!(a.ibl.tau() > 0.0)) bad("temperature", "must be set when noise is 0");
  }
}

json RunConfig::to_json() const {
  json j;
  j["version"] = kVersion;
  j["experiment"] = std::string(to_string(experiment));
  j["seed"] = seed;
  j["pairs"] = pairs;
  j["samples"] = samples;
  j["trials_per_role"] = episode.trials_per_role;
  j["first_role"] = std::string(to_string(episode.first_role));
  j["models"] = kinds_to_json(models);
  j["trained"] = kinds_to_json(trained);
  j["opponents"] = kinds_to_json(opponents);
  j["assets"] = {{"alpha", episode.assets.alpha}, {"scale", episode.assets.scale}};
  j["params"] = params_to_json(params, true);
  j["overrides"] = json::object();
  for (const auto& [kind, o] : overrides) {
    j["overrides"][std::string(to_string(kind))] = params_to_json(o, false);
  }
  j["transfer"] = json::object();
  for (auto k : {ModelKind::kRandom, ModelKind::kUCB, ModelKind::kIBL, ModelKind::kIBToM}) {
    const auto it = transfer.find(k);
    j["transfer"][std::string(to_string(k))] =
        std::string(to_string(it != transfer.end() ? it->second : default_transfer(k)));
  }
  j["randomization"] = {{"multiplier", randomization.multiplier},
                        {"beta_a", randomization.beta_a},
                        {"beta_b", randomization.beta_b}};
  j["ood_reward"] = ood_reward == EpisodeReward::kSum ? "sum" : "mean";
  json formats = json::array();
  if (output.csv) formats.push_back("csv");
  if (output.json) formats.push_back("json");
  j["output"] = {{"dir", output.dir},
                 {"formats", formats},
                 {"trace", output.trace},
                 {"plot", output.plot}};
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  static constexpr const char* kTop[] = {
      "version", "experiment", "seed",       "pairs",      "samples",       "trials_per_role",
      "first_role", "models",  "trained",    "opponents",  "assets",        "params",
      "overrides", "transfer", "randomization", "ood_reward", "threads",    "output"};
  check_keys(j, kTop, "");
  RunConfig c;
  if (j.contains("version") && get_int(j.at("version"), "version") != kVersion) {
    bad("version", "unsupported config version");
  }
  if (j.contains("experiment")) {
    c.experiment = parse_enum(j.at("experiment"), "experiment", experiment_from_string);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() &&
                                                j.at("seed").get<long long>() >= 0)) {
      bad("seed", "expected a nonnegative integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("pairs")) c.pairs = get_int(j.at("pairs"), "pairs");
  if (j.contains("samples")) c.samples = get_int(j.at("samples"), "samples");
  if (j.contains("trials_per_role")) {
    c.episode.trials_per_role = get_int(j.at("trials_per_role"), "trials_per_role");
  }
  if (j.contains("first_role")) {
    c.episode.first_role = parse_enum(j.at("first_role"), "first_role", [](const std::string& s) {
      return role_from_string(s);
    });
  }
  if (j.contains("models")) c.models = parse_kinds(j.at("models"), "models");
  if (j.contains("trained")) c.trained = parse_kinds(j.at("trained"), "trained");
  if (j.contains("opponents")) c.opponents = parse_kinds(j.at("opponents"), "opponents");
  if (j.contains("assets")) {
    static constexpr const char* kAssets[] = {"alpha", "scale"};
    const auto& a = j.at("assets");
    check_keys(a, kAssets, "assets");
    if (a.contains("alpha")) {
      if (!a.at("alpha").is_array()) bad("assets.alpha", "expected a list of numbers");
      c.episode.assets.alpha.clear();
      for (const auto& x : a.at("alpha")) {
        c.episode.assets.alpha.push_back(get_number(x, "assets.alpha"));
      }
    }
    if (a.contains("scale")) c.episode.assets.scale = get_number(a.at("scale"), "assets.scale");
  }
  if (j.contains("params")) {
    const ParamOverrides p = parse_params(j.at("params"), "params");
    if (p.beta) c.params.beta = p.beta;
    if (p.noise) c.params.noise = p.noise;
    if (p.decay) c.params.decay = p.decay;
    if (p.exploration) c.params.exploration = p.exploration;
    if (p.default_outcome) c.params.default_outcome = p.default_outcome;
    c.params.temperature = p.temperature;
    c.params.opponent_beta = p.opponent_beta;
    if (p.opponent_update) c.params.opponent_update = p.opponent_update;
    if (p.prediction) c.params.prediction = p.prediction;
    if (p.ucb_softmax) c.params.ucb_softmax = p.ucb_softmax;
  }
  if (j.contains("overrides")) {
    const auto& o = j.at("overrides");
    if (!o.is_object()) bad("overrides", "expected an object keyed by model name");
    for (const auto& [name, body] : o.items()) {
      const ModelKind k = parse_enum(json(name), "overrides", model_kind_from_string);
      c.overrides[k] = parse_params(body, "overrides." + name);
    }
  }
  if (j.contains("transfer")) {
    const auto& t = j.at("transfer");
    if (!t.is_object()) bad("transfer", "expected an object keyed by model name");
    for (const auto& [name, mode] : t.items()) {
      const ModelKind k = parse_enum(json(name), "transfer", model_kind_from_string);
      c.transfer[k] = parse_enum(mode, "transfer." + name, transfer_mode_from_string);
    }
  }
  if (j.contains("randomization")) {
    static constexpr const char* kRand[] = {"multiplier", "beta_a", "beta_b"};
    const auto& r = j.at("randomization");
    check_keys(r, kRand, "randomization");
    if (r.contains("multiplier")) {
      c.randomization.multiplier = get_number(r.at("multiplier"), "randomization.multiplier");
    }
    if (r.contains("beta_a")) c.randomization.beta_a = get_number(r.at("beta_a"), "randomization.beta_a");
    if (r.contains("beta_b")) c.randomization.beta_b = get_number(r.at("beta_b"), "randomization.beta_b");
  }
  if (j.contains("ood_reward")) {
    c.ood_reward = parse_enum(j.at("ood_reward"), "ood_reward", episode_reward_from_string);
  }
  if (j.contains("threads")) c.threads = get_int(j.at("threads"), "threads");
  if (j.contains("output")) {
    static constexpr const char* kOut[] = {"dir", "formats", "trace", "plot"};
    const auto& o = j.at("output");
    check_keys(o, kOut, "output");
    if (o.contains("dir")) c.output.dir = get<std::string>(o.at("dir"), "output.dir");
    if (o.contains("formats")) {
      if (!o.at("formats").is_array()) bad("output.formats", "expected a list");
      c.output.csv = false;
      c.output.json = false;
      for (const auto& f : o.at("formats")) {
        const auto s = get<std::string>(f, "output.formats");
        if (s == "csv") c.output.csv = true;
        else if (s == "json") c.output.json = true;
        else bad("output.formats", "unknown format '" + s + "' (csv, json)");
      }
    }
    if (o.contains("trace")) c.output.trace = get<bool>(o.at("trace"), "output.trace");
    if (o.contains("plot")) c.output.plot = get<bool>(o.at("plot"), "output.plot");
  }
  c.validate();
  return c;
}

std::optional<RunConfig> parse_config(std::span<const std::string> args, std::ostream& out) {
  CLI::App app{"Stackelberg security game simulator with IBL, IBToM, UCB and Random agents",
               "ssgsim"};
  std::string config_file;
  std::string experiment, first_role, opponent_update, prediction, ood_reward, out_dir;
  std::uint64_t seed = 0;
  int pairs = 0, samples = 0, trials = 0, threads = 0;
  double beta = 0, noise = 0, decay = 0, exploration = 0, default_outcome = 0, temperature = 0,
         opponent_beta = 0;
  std::vector<std::string> models, trained, opponents, formats, transfer, sets;
  bool ucb_softmax = false, trace = false, plot = false;

  app.add_option("--config", config_file, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_exp = app.add_option("--experiment", experiment, "pairings | ood | demo");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_pairs = app.add_option("--pairs", pairs, "episodes per ordered model pairing");
  auto* o_samples = app.add_option("--samples", samples, "randomized opponents per kind (ood)");
  auto* o_trials = app.add_option("--trials-per-role", trials, "trials before the role switch");
  auto* o_first = app.add_option("--first-role", first_role, "focal agent's first role");
  auto* o_models = app.add_option("--models", models, "models to pair")->delimiter(',');
  auto* o_trained = app.add_option("--trained", trained, "ood: defending models")->delimiter(',');
  auto* o_opps =
      app.add_option("--opponents", opponents, "ood: opponent population kinds")->delimiter(',');
  auto* o_beta = app.add_option("--beta", beta, "choice inverse temperature");
  auto* o_noise = app.add_option("--noise", noise, "activation noise sigma");
  auto* o_decay = app.add_option("--decay", decay, "memory decay d");
  auto* o_expl = app.add_option("--exploration", exploration, "UCB exploration c");
  auto* o_def = app.add_option("--default-outcome", default_outcome, "prepopulated outcome");
  auto* o_temp = app.add_option("--temperature", temperature, "retrieval temperature override");
  auto* o_obeta = app.add_option("--opponent-beta", opponent_beta, "IBToM prediction beta");
  auto* o_oupd = app.add_option("--opponent-update", opponent_update, "outcome | indicator");
  auto* o_pred = app.add_option("--prediction", prediction, "IBToM: sample | expected");
  auto* o_soft = app.add_flag("--ucb-softmax", ucb_softmax, "softmax over UCB scores");
  app.add_option("--set", sets, "per-model override MODEL.key=value");
  app.add_option("--transfer", transfer, "MODEL=carry|reset|swap");
  auto* o_oodr = app.add_option("--ood-reward", ood_reward, "mean | sum");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_fmt = app.add_option("--format", formats, "csv, json")->delimiter(',');
  auto* o_trace = app.add_flag("--trace", trace, "write per-trial trace CSV");
  auto* o_plot = app.add_flag("--plot", plot, "write plot-ready CSV");
  auto* o_threads = app.add_option("--threads", threads, "worker threads (0 = all)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError("arguments", e.what());
  }

  json merged = RunConfig{}.to_json();
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config", std::string("cannot parse config file: ") + e.what());
    }
    if (!file.is_object()) throw UsageError("config", "config file must hold a JSON object");
    // Validate the file on its own so unknown keys are reported against it.
    (void)RunConfig::from_json(file);
    merged.merge_patch(file);
  }

  json flags = json::object();
  if (*o_exp) flags["experiment"] = experiment;
  if (*o_seed) flags["seed"] = seed;
  if (*o_pairs) flags["pairs"] = pairs;
  if (*o_samples) flags["samples"] = samples;
  if (*o_trials) flags["trials_per_role"] = trials;
  if (*o_first) flags["first_role"] = first_role;
  if (*o_models) flags["models"] = models;
  if (*o_trained) flags["trained"] = trained;
  if (*o_opps) flags["opponents"] = opponents;
  if (*o_beta) flags["params"]["beta"] = beta;
  if (*o_noise) flags["params"]["noise"] = noise;
  if (*o_decay) flags["params"]["decay"] = decay;
  if (*o_expl) flags["params"]["exploration"] = exploration;
  if (*o_def) flags["params"]["default_outcome"] = default_outcome;
  if (*o_temp) flags["params"]["temperature"] = temperature;
  if (*o_obeta) flags["params"]["opponent_beta"] = opponent_beta;
  if (*o_oupd) flags["params"]["opponent_update"] = opponent_update;
  if (*o_pred) flags["params"]["prediction"] = prediction;
  if (*o_soft) flags["params"]["ucb_softmax"] = ucb_softmax;
  for (const auto& s : sets) {
    const auto dot = s.find('.');
    const auto eq = s.find('=');
    if (dot == std::string::npos || eq == std::string::npos || eq < dot) {
      throw UsageError("set", "expected MODEL.key=value, got '" + s + "'");
    }
    const std::string model = s.substr(0, dot);
    const std::string key = s.substr(dot + 1, eq - dot - 1);
    const std::string value = s.substr(eq + 1);
    if (key == "opponent_update" || key == "prediction") {
      flags["overrides"][model][key] = value;
    } else if (key == "ucb_softmax") {
      flags["overrides"][model][key] = value == "true" || value == "1";
    } else {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        flags["overrides"][model][key] = v;
      } catch (const std::exception&) {
        throw UsageError(model + "." + key, "invalid value for '" + key + "': " + value);
      }
    }
  }
  for (const auto& t : transfer) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("transfer", "expected MODEL=mode, got '" + t + "'");
    flags["transfer"][t.substr(0, eq)] = t.substr(eq + 1);
  }
  if (*o_oodr) flags["ood_reward"] = ood_reward;
  if (*o_out) flags["output"]["dir"] = out_dir;
  if (*o_fmt) flags["output"]["formats"] = formats;
  if (*o_trace) flags["output"]["trace"] = trace;
  if (*o_plot) flags["output"]["plot"] = plot;
  if (*o_threads) flags["threads"] = threads;

  merged.merge_patch(flags);
  return RunConfig::from_json(merged);
}

}  // namespace ibtom
