// Copyright 2026 The metric-audit Authors.
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

#include "metric_audit/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <string_view>

#include "metric_audit/error.h"

namespace metric_audit {
namespace {

namespace fs = std::filesystem;

constexpr const char *kPathKeys[] = {
    "prompts",      "images",  "questions", "answers",   "similarities",
    "concreteness", "imageability", "classes", "stopwords"};

constexpr const char *kVariants[] = {"shuffled_images", "shuffled_text",
                                     "retrieval_qa", "text_only_qa"};

std::optional<fs::path> *PathField(RunConfig &c, std::string_view key) {
  if (key == "prompts") return &c.prompts;
  if (key == "images") return &c.images;
  if (key == "questions") return &c.questions;
  if (key == "answers") return &c.answers;
  if (key == "similarities") return &c.similarities;
  if (key == "concreteness") return &c.concreteness;
  if (key == "imageability") return &c.imageability;
  if (key == "classes") return &c.classes;
  if (key == "stopwords") return &c.stopwords;
  return nullptr;
}

fs::path Resolve(const fs::path &base, const std::string &value) {
  fs::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

class Reader {
 public:
  Reader(const Json &json, std::vector<std::string> &problems)
      : json_(json), problems_(problems) {}

  template <typename T>
  void Number(const char *key, T &out) {
    auto it = json_.find(key);
    if (it == json_.end()) return;
    if (!it->is_number()) {
      problems_.push_back(std::string(key) + ": expected a number");
      return;
    }
    if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) {
        problems_.push_back(std::string(key) + ": expected an integer");
        return;
      }
    }
    out = it->get<T>();
  }

  void Bool(const char *key, bool &out) {
    auto it = json_.find(key);
    if (it == json_.end()) return;
    if (!it->is_boolean()) {
      problems_.push_back(std::string(key) + ": expected true or false");
      return;
    }
    out = it->get<bool>();
  }

  std::optional<std::string> String(const char *key) {
    auto it = json_.find(key);
    if (it == json_.end()) return std::nullopt;
    if (!it->is_string()) {
      problems_.push_back(std::string(key) + ": expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

 private:
  const Json &json_;
  std::vector<std::string> &problems_;
};

void CheckKeys(const Json &json, const std::set<std::string> &allowed,
               const std::string &where, std::vector<std::string> &problems) {
  for (const auto &[key, value] : json.items()) {
    if (!allowed.count(key)) {
      problems.push_back(where + "unknown key '" + key + "'");
    }
  }
}

std::optional<uint64_t> ParseSeed(std::string_view text) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

void ThrowIfAny(const std::vector<std::string> &problems) {
  if (problems.empty()) return;
  std::string msg = "invalid configuration (" +
                    std::to_string(problems.size()) + " problem" +
                    (problems.size() == 1 ? "" : "s") + ")";
  throw AuditError(ErrorKind::kConfig, msg, problems);
}

}  // namespace

RunConfig ParseConfig(const Json &json, const fs::path &base_dir) {
  std::vector<std::string> problems;
  RunConfig c;
  if (!json.is_object()) {
    ThrowIfAny({"configuration must be a JSON object"});
  }
  std::set<std::string> top = {"paths", "ablations", "seed", "alpha", "tau",
                               "shortcut_thresholds", "missing_policy",
                               "yngve_aggregate", "chance_trials", "exact_p",
                               "derangement", "svg", "out"};
  CheckKeys(json, top, "", problems);

  if (auto it = json.find("paths"); it != json.end()) {
    if (!it->is_object()) {
      problems.push_back("paths: expected an object");
    } else {
      CheckKeys(*it, {std::begin(kPathKeys), std::end(kPathKeys)}, "paths: ",
                problems);
      Reader r(*it, problems);
      for (const char *key : kPathKeys) {
        if (auto v = r.String(key)) *PathField(c, key) = Resolve(base_dir, *v);
      }
    }
  }

  if (auto it = json.find("ablations"); it != json.end()) {
    if (!it->is_object()) {
      problems.push_back("ablations: expected an object");
    } else {
      CheckKeys(*it, {std::begin(kVariants), std::end(kVariants)},
                "ablations: ", problems);
      for (const char *variant : kVariants) {
        auto v = it->find(variant);
        if (v == it->end()) continue;
        if (!v->is_object()) {
          problems.push_back(std::string("ablations.") + variant +
                             ": expected an object");
          continue;
        }
        const std::string where = std::string("ablations.") + variant + ": ";
        CheckKeys(*v, {"answers", "similarities"}, where, problems);
        Reader r(*v, problems);
        AblationInputs inputs;
        if (auto p = r.String("answers")) inputs.answers = Resolve(base_dir, *p);
        if (auto p = r.String("similarities")) {
          inputs.similarities = Resolve(base_dir, *p);
        }
        if (!inputs.answers && !inputs.similarities) {
          problems.push_back(where + "needs 'answers' or 'similarities'");
        }
        c.ablations[variant] = inputs;
      }
    }
  }

  Reader r(json, problems);
  if (auto it = json.find("seed"); it != json.end()) {
    if (it->is_number_unsigned()) {
      c.seed = it->get<uint64_t>();
    } else {
      problems.push_back("seed: expected a non-negative integer");
    }
  }
  r.Number("alpha", c.alpha);
  r.Number("tau", c.tau);
  r.Number("chance_trials", c.chance_trials);
  r.Bool("exact_p", c.exact_p);
  r.Bool("derangement", c.derangement);
  r.Bool("svg", c.svg);
  if (auto v = r.String("out")) c.out = Resolve(base_dir, *v);
  if (auto v = r.String("missing_policy")) {
    if (auto p = ParseMissingWordPolicy(*v)) {
      c.missing_policy = *p;
    } else {
      problems.push_back("missing_policy: '" + *v +
                         "' is not one of lowest, zero, omit");
    }
  }
  if (auto v = r.String("yngve_aggregate")) {
    if (*v == "mean") {
      c.yngve = YngveAggregate::kMean;
    } else if (*v == "max") {
      c.yngve = YngveAggregate::kMax;
    } else {
      problems.push_back("yngve_aggregate: '" + *v + "' is not mean or max");
    }
  }
  if (auto it = json.find("shortcut_thresholds"); it != json.end()) {
    if (!it->is_object()) {
      problems.push_back("shortcut_thresholds: expected an object");
    } else {
      CheckKeys(*it, {"yes_pct", "first_pct", "rho"}, "shortcut_thresholds: ",
                problems);
      Reader t(*it, problems);
      t.Number("yes_pct", c.shortcuts.yes_pct);
      t.Number("first_pct", c.shortcuts.first_pct);
      t.Number("rho", c.shortcuts.rho);
    }
  }
  ThrowIfAny(problems);
  return c;
}

RunConfig LoadConfig(const fs::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw AuditError(ErrorKind::kConfig,
                     "cannot open config file " + path.string());
  }
  Json json;
  try {
    json = Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw AuditError(ErrorKind::kConfig,
                     path.string() + ": not valid JSON: " + e.what());
  }
  return ParseConfig(json, path.parent_path());
}

void ApplyOverrides(RunConfig &config, const ConfigOverrides &overrides,
                    const char *env_seed) {
  std::vector<std::string> problems;
  if (overrides.seed) config.seed = overrides.seed;
  if (overrides.alpha) config.alpha = *overrides.alpha;
  if (overrides.tau) config.tau = *overrides.tau;
  if (overrides.derangement) config.derangement = *overrides.derangement;
  if (overrides.exact_p) config.exact_p = *overrides.exact_p;
  if (overrides.out) config.out = *overrides.out;
  if (overrides.missing_policy) {
    if (auto p = ParseMissingWordPolicy(*overrides.missing_policy)) {
      config.missing_policy = *p;
    } else {
      problems.push_back("--missing-policy: '" + *overrides.missing_policy +
                         "' is not one of lowest, zero, omit");
    }
  }
  if (!config.seed && env_seed != nullptr && *env_seed != '\0') {
    if (auto s = ParseSeed(env_seed)) {
      config.seed = s;
    } else {
      problems.push_back(std::string(kSeedEnvVar) + ": '" + env_seed +
                         "' is not a non-negative integer");
    }
  }
  ThrowIfAny(problems);
}

std::vector<std::string> ConfigProblems(const RunConfig &c, bool needs_seed) {
  std::vector<std::string> problems;
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
    problems.push_back("alpha must lie in (0, 1)");
  }
  if (!(c.tau >= 0.0 && c.tau <= 1.0)) {
    problems.push_back("tau must lie in [0, 1]");
  }
  if (!(c.shortcuts.yes_pct >= 0.0 && c.shortcuts.yes_pct <= 100.0)) {
    problems.push_back("shortcut_thresholds.yes_pct must lie in [0, 100]");
  }
  if (!(c.shortcuts.first_pct >= 0.0 && c.shortcuts.first_pct <= 100.0)) {
    problems.push_back("shortcut_thresholds.first_pct must lie in [0, 100]");
  }
  if (!(c.shortcuts.rho >= 0.0 && c.shortcuts.rho <= 1.0)) {
    problems.push_back("shortcut_thresholds.rho must lie in [0, 1]");
  }
  if (c.chance_trials < 1) problems.push_back("chance_trials must be >= 1");
  if (needs_seed && !c.seed) {
    problems.push_back(std::string("seed is required (config 'seed', --seed "
                                   "or ") +
                       kSeedEnvVar + ")");
  }
  if (!c.prompts) problems.push_back("paths.prompts is required");
  auto check = [&problems](const std::string &name,
                           const std::optional<fs::path> &p) {
    if (p && !fs::is_regular_file(*p)) {
      problems.push_back(name + ": file not found: " + p->string());
    }
  };
  const std::pair<const char *, const std::optional<fs::path> *> paths[] = {
      {"paths.prompts", &c.prompts},
      {"paths.images", &c.images},
      {"paths.questions", &c.questions},
      {"paths.answers", &c.answers},
      {"paths.similarities", &c.similarities},
      {"paths.concreteness", &c.concreteness},
      {"paths.imageability", &c.imageability},
      {"paths.classes", &c.classes},
      {"paths.stopwords", &c.stopwords}};
  for (const auto &[name, p] : paths) check(name, *p);
  for (const auto &[variant, inputs] : c.ablations) {
    check("ablations." + variant + ".answers", inputs.answers);
    check("ablations." + variant + ".similarities", inputs.similarities);
    if (inputs.answers && !c.questions) {
      problems.push_back("ablations." + variant +
                         ".answers needs paths.questions");
    }
  }
  if (c.answers && !c.questions) {
    problems.push_back("paths.answers needs paths.questions");
  }
  return problems;
}

void ValidateConfig(const RunConfig &config, bool needs_seed) {
  ThrowIfAny(ConfigProblems(config, needs_seed));
}

Json ConfigJson(const RunConfig &c) {
  Json j = Json::object();
  Json paths = Json::object();
  RunConfig copy = c;
  for (const char *key : kPathKeys) {
    if (const auto &p = *PathField(copy, key)) paths[key] = p->generic_string();
  }
  j["paths"] = paths;
  Json ablations = Json::object();
  for (const auto &[variant, inputs] : c.ablations) {
    Json v = Json::object();
    if (inputs.answers) v["answers"] = inputs.answers->generic_string();
    if (inputs.similarities) {
      v["similarities"] = inputs.similarities->generic_string();
    }
    ablations[variant] = v;
  }
  j["ablations"] = ablations;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["alpha"] = c.alpha;
  j["tau"] = c.tau;
  j["shortcut_thresholds"] = {{"yes_pct", c.shortcuts.yes_pct},
                              {"first_pct", c.shortcuts.first_pct},
                              {"rho", c.shortcuts.rho}};
  j["missing_policy"] = MissingWordPolicyName(c.missing_policy);
  j["yngve_aggregate"] = c.yngve == YngveAggregate::kMean ? "mean" : "max";
  j["chance_trials"] = c.chance_trials;
  j["exact_p"] = c.exact_p;
  j["derangement"] = c.derangement;
  j["svg"] = c.svg;
  return j;
}

}  // namespace metric_audit
