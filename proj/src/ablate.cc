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

#include "metric_audit/ablate.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

#include "metric_audit/error.h"
#include "metric_audit/random.h"
#include "metric_audit/tokenizer.h"

namespace metric_audit {
namespace {

void WriteProvenance(std::ostream &out, const Json &provenance) {
  Json header = Json::object();
  header[std::string(kProvenanceKey)] = provenance;
  out << header.dump() << '\n';
}

}  // namespace

std::string_view AblationKindName(AblationKind kind) {
  switch (kind) {
    case AblationKind::kShuffleImages:
      return "shuffle_images";
    case AblationKind::kShuffleText:
      return "shuffle_text";
    case AblationKind::kRetrievalQa:
      return "retrieval_qa";
    case AblationKind::kTextOnlyQa:
      return "text_only_qa";
  }
  return "unknown";
}

std::optional<AblationKind> ParseAblationKind(std::string_view name) {
  for (AblationKind kind :
       {AblationKind::kShuffleImages, AblationKind::kShuffleText,
        AblationKind::kRetrievalQa, AblationKind::kTextOnlyQa}) {
    if (AblationKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

Json AblationPlan::Provenance() const {
  Json p = Json::object();
  p["kind"] = std::string(AblationKindName(kind));
  p["seed"] = seed;
  p["options"] = {{"derangement", derangement}};
  return p;
}

std::vector<ImageRef> ShuffleImages(const Corpus &corpus, uint64_t seed,
                                    bool derangement) {
  const std::vector<ImageRef> &images = corpus.images();
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> groups;
  for (size_t i = 0; i < images.size(); ++i) {
    const PromptRecord *prompt = corpus.FindPrompt(images[i].prompt_id);
    const std::string dataset = prompt ? prompt->dataset : std::string();
    groups[{dataset, images[i].source}].push_back(i);
  }
  std::vector<ImageRef> out = images;
  for (const auto &[key, members] : groups) {
    if (members.size() < 2) {
      if (derangement) {
        ThrowData("cannot derange a group of one image (dataset '" +
                  key.first + "', source '" + key.second + "')");
      }
      continue;
    }
    Rng rng(DeriveSeed(seed, key.first + "\x1f" + key.second));
    const std::vector<size_t> perm =
        derangement ? RandomDerangement(members.size(), rng)
                    : RandomPermutation(members.size(), rng);
    for (size_t i = 0; i < members.size(); ++i) {
      out[members[i]].image_key = images[members[perm[i]]].image_key;
    }
  }
  return out;
}

std::string ShuffleText(std::string_view text, uint64_t seed) {
  TokenSequence seq = Tokenize(text);
  size_t movable = seq.size();
  if (movable > 0 && !seq.is_word.back()) --movable;
  Rng rng(seed);
  FisherYatesShuffle(std::span<std::string>(seq.tokens.data(), movable), rng);
  return seq.Joined();
}

std::vector<QuestionRecord> ShuffleQuestionTexts(
    const std::vector<QuestionRecord> &questions, uint64_t seed) {
  std::vector<QuestionRecord> out = questions;
  for (QuestionRecord &q : out) {
    q.text = ShuffleText(q.text, DeriveSeed(seed, q.question_id));
  }
  return out;
}

RetrievalCaptionSet BuildRetrievalCaptions(const QuestionRecord &question) {
  if (question.choices.size() < 2) {
    ThrowData("question " + question.question_id +
              " needs at least 2 choices for retrieval captions");
  }
  std::string stem = question.text;
  while (!stem.empty() && std::isspace(static_cast<unsigned char>(stem.back()))) {
    stem.pop_back();
  }
  if (!stem.empty() && stem.back() == '?') stem.pop_back();

  RetrievalCaptionSet set;
  set.question_id = question.question_id;
  set.prompt_id = question.prompt_id;
  for (size_t i = 0; i < question.choices.size(); ++i) {
    const std::string &choice = question.choices[i];
    set.captions.emplace_back(choice, stem + "? " + choice);
    if (choice == question.gold) set.correct_index = i;
  }
  return set;
}

std::string RetrievalVariantName(std::string_view question_id, size_t index) {
  return std::string(question_id) + "#" + std::to_string(index);
}

Json RetrievalCaptionJson(const RetrievalCaptionSet &set, size_t index) {
  Json j = Json::object();
  j["question_id"] = set.question_id;
  j["prompt_id"] = set.prompt_id;
  j["caption_variant"] = RetrievalVariantName(set.question_id, index);
  j["caption"] = set.captions.at(index).second;
  j["choice"] = set.captions.at(index).first;
  j["choice_index"] = index;
  j["correct_index"] = set.correct_index;
  return j;
}

std::vector<MetricScore> ScoreRetrievalQa(
    const std::vector<QuestionRecord> &questions,
    const std::vector<SimilarityRecord> &similarities,
    std::string_view source) {
  std::map<std::pair<std::string, std::string>, double> lookup;
  std::map<std::string, bool> prompts_with_records;
  for (const SimilarityRecord &s : similarities) {
    if (s.source != source) continue;
    lookup[{s.prompt_id, s.caption_variant}] = s.score;
    prompts_with_records[s.prompt_id] = true;
  }

  std::map<QuestionGroupKey, std::vector<QuestionRecord>> groups;
  for (const QuestionRecord &q : questions) {
    groups[{q.prompt_id, q.metric}].push_back(q);
  }

  std::vector<MetricScore> scores;
  std::vector<std::string> missing;
  for (const auto &[key, group] : groups) {
    if (!prompts_with_records.count(key.first)) continue;
    std::vector<bool> raw;
    bool complete = true;
    for (const QuestionRecord &q : group) {
      const RetrievalCaptionSet set = BuildRetrievalCaptions(q);
      std::vector<double> values;
      for (size_t i = 0; i < set.captions.size(); ++i) {
        const std::string variant = RetrievalVariantName(q.question_id, i);
        auto it = lookup.find({q.prompt_id, variant});
        if (it == lookup.end()) {
          missing.push_back("(" + q.question_id + ", " +
                            set.captions[i].second + ")");
          complete = false;
          continue;
        }
        values.push_back(it->second);
      }
      if (!complete) continue;
      bool correct = true;
      for (size_t i = 0; i < values.size(); ++i) {
        if (i != set.correct_index && values[i] >= values[set.correct_index]) {
          correct = false;  // ties at the maximum earn no credit
        }
      }
      raw.push_back(correct);
    }
    if (!complete) continue;
    MetricScore score;
    score.prompt_id = key.first;
    score.source = std::string(source);
    score.metric = key.second;
    score.value = AggregateCorrectness(key.second, group, raw);
    score.n_questions = static_cast<int>(group.size());
    scores.push_back(std::move(score));
  }
  if (!missing.empty()) {
    throw AuditError(ErrorKind::kData,
                     std::to_string(missing.size()) +
                         " retrieval captions lack a similarity from '" +
                         std::string(source) + "', first: " + missing.front(),
                     missing);
  }
  std::sort(scores.begin(), scores.end(),
            [](const MetricScore &a, const MetricScore &b) {
              return std::tie(a.metric, a.prompt_id) <
                     std::tie(b.metric, b.prompt_id);
            });
  return scores;
}

std::string FormatTextOnlyQa(const QuestionRecord &question) {
  if (question.choices.empty()) {
    ThrowData("question " + question.question_id + " has no choices");
  }
  std::string choices;
  for (size_t i = 0; i < question.choices.size(); ++i) {
    if (i) choices += ", ";
    choices += question.choices[i];
  }
  return "Question: " + question.text + " Choices: " + choices + " Answer:";
}

std::string EmitAblation(const Corpus &corpus, const AblationPlan &plan) {
  std::ostringstream out;
  const Json provenance = plan.Provenance();
  switch (plan.kind) {
    case AblationKind::kShuffleImages:
      WriteRecords(out, ShuffleImages(corpus, plan.seed, plan.derangement),
                   &provenance);
      break;
    case AblationKind::kShuffleText:
      WriteRecords(out, ShuffleQuestionTexts(corpus.questions(), plan.seed),
                   &provenance);
      break;
    case AblationKind::kRetrievalQa: {
      WriteProvenance(out, provenance);
      for (const QuestionRecord &q : corpus.questions()) {
        const RetrievalCaptionSet set = BuildRetrievalCaptions(q);
        for (size_t i = 0; i < set.captions.size(); ++i) {
          Json line = RetrievalCaptionJson(set, i);
          line["metric"] = std::string(MetricName(q.metric));
          out << line.dump() << '\n';
        }
      }
      break;
    }
    case AblationKind::kTextOnlyQa: {
      WriteProvenance(out, provenance);
      for (const QuestionRecord &q : corpus.questions()) {
        Json line = Json::object();
        line["question_id"] = q.question_id;
        line["prompt_id"] = q.prompt_id;
        line["metric"] = std::string(MetricName(q.metric));
        line["input"] = FormatTextOnlyQa(q);
        line["choices"] = q.choices;
        out << line.dump() << '\n';
      }
      break;
    }
  }
  return out.str();
}

}  // namespace metric_audit
