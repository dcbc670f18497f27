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

// metric-audit: command-line entry point.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "metric_audit/ablate.h"
#include "metric_audit/config.h"
#include "metric_audit/error.h"
#include "metric_audit/pipeline.h"

namespace {

using metric_audit::AuditError;
using metric_audit::ErrorKind;
using metric_audit::Json;

int ReportError(ErrorKind kind, const std::string &message,
                const std::vector<std::string> &problems) {
  Json error = {{"error",
                 {{"kind", std::string(metric_audit::ErrorKindName(kind))},
                  {"message", message},
                  {"problems", problems}}}};
  std::cerr << error.dump() << '\n';
  return metric_audit::ExitCodeFor(kind);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Audit text-image consistency metrics.", "metric-audit"};
  std::string command;
  std::string kind;
  std::string config_path;
  metric_audit::ConfigOverrides overrides;
  uint64_t seed = 0;
  double alpha = 0.0;
  double tau = 0.0;
  std::string missing_policy;
  bool derangement = false;
  bool exact_p = false;
  std::string out;

  app.add_option("command", command,
                 "validate | props | score | correlate | matrix | ablate | "
                 "audit | report | all")
      ->required();
  app.add_option("kind", kind,
                 "ablation kind: shuffle_images | shuffle_text | "
                 "retrieval_qa | text_only_qa");
  app.add_option("--config", config_path, "JSON run configuration");
  auto *seed_opt = app.add_option("--seed", seed, "seed for every random draw");
  auto *alpha_opt = app.add_option("--alpha", alpha, "significance level");
  auto *tau_opt = app.add_option("--tau", tau, "|rho| threshold for bold cells");
  auto *policy_opt = app.add_option("--missing-policy", missing_policy,
                                    "lowest | zero | omit");
  auto *derangement_opt = app.add_flag(
      "--derangement,!--no-derangement", derangement,
      "shuffle_images never keeps an image with its own prompt");
  auto *exact_opt = app.add_flag("--exact-p,!--no-exact-p", exact_p,
                                 "permutation p-values for n < 30");
  auto *out_opt = app.add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return ReportError(ErrorKind::kConfig, e.what(), {});
  }

  try {
    const auto parsed = metric_audit::ParseCommand(command);
    if (!parsed) {
      return ReportError(ErrorKind::kConfig, "unknown command '" + command + "'",
                         {});
    }
    std::optional<metric_audit::AblationKind> ablation;
    if (*parsed == metric_audit::Command::kAblate) {
      ablation = metric_audit::ParseAblationKind(kind);
      if (!ablation) {
        return ReportError(ErrorKind::kConfig,
                           "ablate needs a kind: shuffle_images, shuffle_text, "
                           "retrieval_qa or text_only_qa",
                           {});
      }
    } else if (!kind.empty()) {
      return ReportError(ErrorKind::kConfig,
                         "unexpected argument '" + kind + "'", {});
    }

    metric_audit::RunConfig config;
    if (!config_path.empty()) config = metric_audit::LoadConfig(config_path);
    if (seed_opt->count()) overrides.seed = seed;
    if (alpha_opt->count()) overrides.alpha = alpha;
    if (tau_opt->count()) overrides.tau = tau;
    if (policy_opt->count()) overrides.missing_policy = missing_policy;
    if (derangement_opt->count()) overrides.derangement = derangement;
    if (exact_opt->count()) overrides.exact_p = exact_p;
    if (out_opt->count()) overrides.out = out;
    metric_audit::ApplyOverrides(config, overrides,
                                 std::getenv(metric_audit::kSeedEnvVar));
    metric_audit::RunCommand(*parsed, config, ablation, std::cout);
  } catch (const AuditError &e) {
    return ReportError(e.kind(), e.what(), e.problems());
  } catch (const std::exception &e) {
    return ReportError(ErrorKind::kData, e.what(), {});
  }
  return 0;
}
