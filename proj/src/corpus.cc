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

#include "metric_audit/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <unordered_set>

#include "metric_audit/error.h"
#include "metric_audit/parse_tree.h"
#include "metric_audit/tokenizer.h"

namespace metric_audit {
namespace {

struct Line {
  size_t number;
  Json object;
};

// Reads JSON objects one per line. Malformed lines are reported and skipped.
template <typename T>
std::vector<Line> ReadLines(std::istream &in, const std::string &name,
                            ReadResult<T> &result) {
  std::vector<Line> lines;
  std::string text;
  size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (std::all_of(text.begin(), text.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    Json object = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (object.is_discarded() || !object.is_object()) {
      result.problems.push_back(name + ":" + std::to_string(number) +
                                ": malformed record line");
      continue;
    }
    if (object.size() == 1 && object.contains(kProvenanceKey)) {
      result.provenance = object[std::string(kProvenanceKey)];
      continue;
    }
    lines.push_back({number, std::move(object)});
  }
  return lines;
}

// Pulls typed fields out of one record, collecting every problem.
class FieldReader {
 public:
  FieldReader(const Json &object, std::string where)
      : object_(object), where_(std::move(where)) {}

  std::string String(const char *key, bool required = true) {
    seen_.insert(key);
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) {
      if (required) Problem(std::string("missing key '") + key + "'");
      return {};
    }
    if (!it->is_string()) {
      Problem(std::string("key '") + key + "' must be a string");
      return {};
    }
    return it->get<std::string>();
  }

  std::optional<std::string> OptionalString(const char *key) {
    seen_.insert(key);
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      Problem(std::string("key '") + key + "' must be a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  std::vector<std::string> StringList(const char *key, bool required) {
    seen_.insert(key);
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) {
      if (required) Problem(std::string("missing key '") + key + "'");
      return {};
    }
    std::vector<std::string> out;
    if (!it->is_array()) {
      Problem(std::string("key '") + key + "' must be an array of strings");
      return out;
    }
    for (const Json &v : *it) {
      if (!v.is_string()) {
        Problem(std::string("key '") + key + "' must be an array of strings");
        return {};
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  double Number(const char *key) {
    seen_.insert(key);
    auto it = object_.find(key);
    if (it == object_.end() || !it->is_number()) {
      Problem(std::string("key '") + key + "' must be a number");
      return 0.0;
    }
    return it->get<double>();
  }

  Json Extra() const {
    Json extra = Json::object();
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!seen_.count(it.key())) extra[it.key()] = it.value();
    }
    return extra;
  }

  void Problem(const std::string &message) {
    problems_.push_back(where_ + ": " + message);
  }

  const std::vector<std::string> &problems() const { return problems_; }
  const std::string &where() const { return where_; }

 private:
  const Json &object_;
  std::string where_;
  std::set<std::string> seen_;
  std::vector<std::string> problems_;
};

std::string Where(const std::string &name, size_t line) {
  return name + ":" + std::to_string(line);
}

template <typename T>
void Absorb(ReadResult<T> &result, const FieldReader &reader) {
  result.problems.insert(result.problems.end(), reader.problems().begin(),
                         reader.problems().end());
}

template <typename T, typename ReadFn>
std::vector<T> LoadFile(const std::filesystem::path &path, ReadFn read) {
  std::ifstream in(path);
  if (!in) ThrowData("cannot open " + path.string());
  ReadResult<T> result = read(in, path.string());
  if (!result.problems.empty()) {
    std::string message = path.string() + ": " +
                          std::to_string(result.problems.size()) +
                          " invalid record(s); first: " +
                          result.problems.front();
    throw AuditError(ErrorKind::kData, message, result.problems);
  }
  return std::move(result.records);
}

void CopyExtra(Json &out, const Json &extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    if (!out.contains(it.key())) out[it.key()] = it.value();
  }
}

std::string CycleText(const std::vector<std::string> &cycle) {
  std::string out;
  for (size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += cycle[i];
  }
  return out;
}

}  // namespace

std::vector<std::string> CheckQuestion(const QuestionRecord &q) {
  std::vector<std::string> problems;
  if (q.question_id.empty()) problems.push_back("empty question_id");
  if (q.text.empty()) problems.push_back("empty question text");
  if (q.choices.empty()) problems.push_back("no choices");
  if (std::find(q.choices.begin(), q.choices.end(), q.gold) ==
      q.choices.end()) {
    problems.push_back("gold answer '" + q.gold + "' is not among choices");
  }
  if (q.qtype == QuestionType::kYesNo &&
      q.choices != std::vector<std::string>{"yes", "no"}) {
    problems.push_back("yes_no question must have choices [\"yes\",\"no\"]");
  }
  if (q.qtype == QuestionType::kMultipleChoice && q.choices.size() < 2) {
    problems.push_back("multiple_choice question needs at least 2 choices");
  }
  if (!q.depends_on.empty() && q.metric != Metric::kDsg) {
    problems.push_back("depends_on is only allowed for dsg questions");
  }
  std::set<std::string> unique(q.choices.begin(), q.choices.end());
  if (unique.size() != q.choices.size()) {
    problems.push_back("duplicate choices");
  }
  return problems;
}

ReadResult<PromptRecord> ReadPrompts(std::istream &in,
                                     const std::string &name) {
  ReadResult<PromptRecord> result;
  std::unordered_set<std::string> ids;
  for (const Line &line : ReadLines(in, name, result)) {
    FieldReader reader(line.object, Where(name, line.number));
    PromptRecord r;
    r.id = reader.String("id");
    r.dataset = reader.String("dataset");
    r.text = reader.String("text");
    r.parse = reader.OptionalString("parse");
    r.extra = reader.Extra();
    if (reader.problems().empty()) {
      if (r.id.empty()) reader.Problem("empty id");
      if (r.text.empty()) reader.Problem("empty text for prompt " + r.id);
      if (!r.id.empty() && !ids.insert(r.id).second) {
        reader.Problem("duplicate prompt id '" + r.id + "'");
      }
      if (r.parse) {
        try {
          ParseTree tree = ParseBracketed(*r.parse);
          std::string leaves;
          for (const std::string &leaf : tree.Leaves()) leaves += leaf + " ";
          if (Tokenize(leaves).empty()) {
            reader.Problem("parse of prompt " + r.id + " has no tokens");
          }
        } catch (const AuditError &e) {
          reader.Problem("invalid parse for prompt " + r.id + ": " + e.what());
        }
      }
    }
    Absorb(result, reader);
    if (reader.problems().empty()) result.records.push_back(std::move(r));
  }
  return result;
}

ReadResult<ImageRef> ReadImages(std::istream &in, const std::string &name,
                                const Corpus &corpus) {
  ReadResult<ImageRef> result;
  std::set<std::pair<std::string, std::string>> keys;
  for (const Line &line : ReadLines(in, name, result)) {
    FieldReader reader(line.object, Where(name, line.number));
    ImageRef r;
    r.prompt_id = reader.String("prompt_id");
    r.source = reader.String("source");
    r.image_key = reader.String("image_key");
    r.extra = reader.Extra();
    if (reader.problems().empty()) {
      if (corpus.FindPrompt(r.prompt_id) == nullptr) {
        reader.Problem("dangling prompt_id '" + r.prompt_id + "'");
      }
      if (!keys.insert({r.prompt_id, r.source}).second) {
        reader.Problem("duplicate image for (" + r.prompt_id + ", " +
                       r.source + ")");
      }
    }
    Absorb(result, reader);
    if (reader.problems().empty()) result.records.push_back(std::move(r));
  }
  return result;
}

ReadResult<QuestionRecord> ReadQuestions(std::istream &in,
                                         const std::string &name,
                                         const Corpus &corpus) {
  ReadResult<QuestionRecord> result;
  std::unordered_set<std::string> ids;
  std::vector<size_t> line_numbers;
  for (const Line &line : ReadLines(in, name, result)) {
    FieldReader reader(line.object, Where(name, line.number));
    QuestionRecord q;
    q.question_id = reader.String("question_id");
    q.prompt_id = reader.String("prompt_id");
    const std::string metric = reader.String("metric");
    q.text = reader.String("text");
    const std::string qtype = reader.String("qtype");
    q.choices = reader.StringList("choices", /*required=*/true);
    q.gold = reader.String("gold");
    q.depends_on = reader.StringList("depends_on", /*required=*/false);
    q.extra = reader.Extra();
    if (reader.problems().empty()) {
      auto m = ParseMetric(metric);
      if (!m || *m == Metric::kClipScore) {
        reader.Problem("unknown question metric '" + metric + "'");
      } else {
        q.metric = *m;
      }
      auto t = ParseQuestionType(qtype);
      if (!t) {
        reader.Problem("unknown qtype '" + qtype + "'");
      } else {
        q.qtype = *t;
      }
    }
    if (reader.problems().empty()) {
      for (const std::string &p : CheckQuestion(q)) {
        reader.Problem("question " + q.question_id + ": " + p);
      }
      if (corpus.FindPrompt(q.prompt_id) == nullptr) {
        reader.Problem("dangling prompt_id '" + q.prompt_id + "'");
      }
      if (!q.question_id.empty() && !ids.insert(q.question_id).second) {
        reader.Problem("duplicate question id '" + q.question_id + "'");
      }
    }
    Absorb(result, reader);
    if (reader.problems().empty()) {
      result.records.push_back(std::move(q));
      line_numbers.push_back(line.number);
    }
  }

  // Dependency edges must stay inside one (prompt, metric) group.
  std::unordered_map<std::string, const QuestionRecord *> by_id;
  for (const QuestionRecord &q : result.records) by_id[q.question_id] = &q;
  bool edges_ok = true;
  for (size_t i = 0; i < result.records.size(); ++i) {
    const QuestionRecord &q = result.records[i];
    for (const std::string &dep : q.depends_on) {
      auto it = by_id.find(dep);
      const std::string where = Where(name, line_numbers[i]);
      if (it == by_id.end()) {
        result.problems.push_back(where + ": question " + q.question_id +
                                  " depends on unknown question '" + dep +
                                  "'");
        edges_ok = false;
      } else if (it->second->prompt_id != q.prompt_id ||
                 it->second->metric != q.metric) {
        result.problems.push_back(where + ": question " + q.question_id +
                                  " depends on '" + dep +
                                  "' from another prompt or metric");
        edges_ok = false;
      }
    }
  }
  if (edges_ok) {
    if (auto cycle = FindDependencyCycle(result.records)) {
      result.problems.push_back(name + ": dependency cycle: " +
                                CycleText(*cycle));
    }
  }
  return result;
}

ReadResult<AnswerRecord> ReadAnswers(std::istream &in, const std::string &name,
                                     const Corpus &corpus) {
  ReadResult<AnswerRecord> result;
  std::set<std::pair<std::string, std::string>> keys;
  for (const Line &line : ReadLines(in, name, result)) {
    FieldReader reader(line.object, Where(name, line.number));
    AnswerRecord r;
    r.question_id = reader.String("question_id");
    r.source = reader.String("source");
    r.predicted = reader.String("predicted");
    r.extra = reader.Extra();
    if (reader.problems().empty()) {
      if (corpus.FindQuestion(r.question_id) == nullptr) {
        reader.Problem("dangling question_id '" + r.question_id + "'");
      }
      if (!keys.insert({r.question_id, r.source}).second) {
        reader.Problem("duplicate answer for (" + r.question_id + ", " +
                       r.source + ")");
      }
    }
    Absorb(result, reader);
    if (reader.problems().empty()) result.records.push_back(std::move(r));
  }
  return result;
}

ReadResult<SimilarityRecord> ReadSimilarities(std::istream &in,
                                              const std::string &name,
                                              const Corpus &corpus) {
  ReadResult<SimilarityRecord> result;
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (const Line &line : ReadLines(in, name, result)) {
    FieldReader reader(line.object, Where(name, line.number));
    SimilarityRecord r;
    r.prompt_id = reader.String("prompt_id");
    r.source = reader.String("source");
    r.caption_variant = reader.String("caption_variant");
    r.score = reader.Number("score");
    r.extra = reader.Extra();
    if (reader.problems().empty()) {
      if (!std::isfinite(r.score) || r.score < -1.0 || r.score > 1.0) {
        reader.Problem("score must be finite and within [-1, 1]");
      }
      if (corpus.FindPrompt(r.prompt_id) == nullptr) {
        reader.Problem("dangling prompt_id '" + r.prompt_id + "'");
      }
      if (!keys.insert({r.prompt_id, r.source, r.caption_variant}).second) {
        reader.Problem("duplicate similarity for (" + r.prompt_id + ", " +
                       r.source + ", " + r.caption_variant + ")");
      }
    }
    Absorb(result, reader);
    if (reader.problems().empty()) result.records.push_back(std::move(r));
  }
  return result;
}

std::vector<PromptRecord> LoadPrompts(const std::filesystem::path &path) {
  return LoadFile<PromptRecord>(path, [](std::istream &in,
                                         const std::string &name) {
    return ReadPrompts(in, name);
  });
}

std::vector<ImageRef> LoadImages(const std::filesystem::path &path,
                                 const Corpus &corpus) {
  return LoadFile<ImageRef>(
      path, [&](std::istream &in, const std::string &name) {
        return ReadImages(in, name, corpus);
      });
}

std::vector<QuestionRecord> LoadQuestions(const std::filesystem::path &path,
                                          const Corpus &corpus) {
  return LoadFile<QuestionRecord>(
      path, [&](std::istream &in, const std::string &name) {
        return ReadQuestions(in, name, corpus);
      });
}

std::vector<AnswerRecord> LoadAnswers(const std::filesystem::path &path,
                                      const Corpus &corpus) {
  return LoadFile<AnswerRecord>(
      path, [&](std::istream &in, const std::string &name) {
        return ReadAnswers(in, name, corpus);
      });
}

std::vector<SimilarityRecord> LoadSimilarities(
    const std::filesystem::path &path, const Corpus &corpus) {
  return LoadFile<SimilarityRecord>(
      path, [&](std::istream &in, const std::string &name) {
        return ReadSimilarities(in, name, corpus);
      });
}

std::optional<std::vector<std::string>> FindDependencyCycle(
    const std::vector<QuestionRecord> &questions) {
  std::unordered_map<std::string, const QuestionRecord *> by_id;
  for (const QuestionRecord &q : questions) by_id[q.question_id] = &q;

  enum class Mark { kNone, kActive, kDone };
  std::unordered_map<std::string, Mark> marks;
  std::vector<std::string> stack;
  std::optional<std::vector<std::string>> cycle;

  std::function<bool(const std::string &)> visit =
      [&](const std::string &id) -> bool {
    Mark &mark = marks[id];
    if (mark == Mark::kDone) return false;
    if (mark == Mark::kActive) {
      auto start = std::find(stack.begin(), stack.end(), id);
      std::vector<std::string> found(start, stack.end());
      found.push_back(id);
      cycle = std::move(found);
      return true;
    }
    mark = Mark::kActive;
    stack.push_back(id);
    auto it = by_id.find(id);
    if (it != by_id.end()) {
      for (const std::string &dep : it->second->depends_on) {
        if (visit(dep)) return true;
      }
    }
    stack.pop_back();
    marks[id] = Mark::kDone;
    return false;
  };

  for (const QuestionRecord &q : questions) {
    if (visit(q.question_id)) return cycle;
  }
  return std::nullopt;
}

Json ToJson(const PromptRecord &r) {
  Json out = Json::object();
  out["id"] = r.id;
  out["dataset"] = r.dataset;
  out["text"] = r.text;
  if (r.parse) out["parse"] = *r.parse;
  CopyExtra(out, r.extra);
  return out;
}

Json ToJson(const ImageRef &r) {
  Json out = Json::object();
  out["prompt_id"] = r.prompt_id;
  out["source"] = r.source;
  out["image_key"] = r.image_key;
  CopyExtra(out, r.extra);
  return out;
}

Json ToJson(const QuestionRecord &r) {
  Json out = Json::object();
  out["question_id"] = r.question_id;
  out["prompt_id"] = r.prompt_id;
  out["metric"] = std::string(MetricName(r.metric));
  out["text"] = r.text;
  out["qtype"] = std::string(QuestionTypeName(r.qtype));
  out["choices"] = r.choices;
  out["gold"] = r.gold;
  if (!r.depends_on.empty()) out["depends_on"] = r.depends_on;
  CopyExtra(out, r.extra);
  return out;
}

Json ToJson(const AnswerRecord &r) {
  Json out = Json::object();
  out["question_id"] = r.question_id;
  out["source"] = r.source;
  out["predicted"] = r.predicted;
  CopyExtra(out, r.extra);
  return out;
}

Json ToJson(const SimilarityRecord &r) {
  Json out = Json::object();
  out["prompt_id"] = r.prompt_id;
  out["source"] = r.source;
  out["caption_variant"] = r.caption_variant;
  out["score"] = r.score;
  CopyExtra(out, r.extra);
  return out;
}

void Corpus::SetPrompts(std::vector<PromptRecord> prompts) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < prompts.size(); ++i) {
    if (prompts[i].text.empty()) {
      ThrowData("empty text for prompt " + prompts[i].id);
    }
    if (!index.emplace(prompts[i].id, i).second) {
      ThrowData("duplicate prompt id '" + prompts[i].id + "'");
    }
  }
  prompts_ = std::move(prompts);
  prompt_index_ = std::move(index);
}

void Corpus::SetImages(std::vector<ImageRef> images) {
  std::set<std::pair<std::string, std::string>> keys;
  for (const ImageRef &r : images) {
    if (!FindPrompt(r.prompt_id)) {
      ThrowData("image refers to unknown prompt '" + r.prompt_id + "'");
    }
    if (!keys.insert({r.prompt_id, r.source}).second) {
      ThrowData("duplicate image for (" + r.prompt_id + ", " + r.source + ")");
    }
  }
  images_ = std::move(images);
}

void Corpus::SetQuestions(std::vector<QuestionRecord> questions) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < questions.size(); ++i) {
    const QuestionRecord &q = questions[i];
    auto problems = CheckQuestion(q);
    if (!problems.empty()) {
      throw AuditError(ErrorKind::kData,
                       "invalid question " + q.question_id + ": " +
                           problems.front(),
                       problems);
    }
    if (!FindPrompt(q.prompt_id)) {
      ThrowData("question " + q.question_id + " refers to unknown prompt '" +
                q.prompt_id + "'");
    }
    if (!index.emplace(q.question_id, i).second) {
      ThrowData("duplicate question id '" + q.question_id + "'");
    }
  }
  for (const QuestionRecord &q : questions) {
    for (const std::string &dep : q.depends_on) {
      auto it = index.find(dep);
      if (it == index.end()) {
        ThrowData("question " + q.question_id +
                  " depends on unknown question '" + dep + "'");
      }
      const QuestionRecord &parent = questions[it->second];
      if (parent.prompt_id != q.prompt_id || parent.metric != q.metric) {
        ThrowData("question " + q.question_id + " depends on '" + dep +
                  "' from another prompt or metric");
      }
    }
  }
  if (auto cycle = FindDependencyCycle(questions)) {
    ThrowData("dependency cycle: " + CycleText(*cycle));
  }
  questions_ = std::move(questions);
  question_index_ = std::move(index);
  question_groups_.clear();
  for (const QuestionRecord &q : questions_) {
    question_groups_[{q.prompt_id, q.metric}].push_back(q);
  }
}

void Corpus::SetAnswers(std::vector<AnswerRecord> answers) {
  std::set<std::pair<std::string, std::string>> keys;
  for (const AnswerRecord &a : answers) {
    if (!FindQuestion(a.question_id)) {
      ThrowData("answer refers to unknown question '" + a.question_id + "'");
    }
    if (!keys.insert({a.question_id, a.source}).second) {
      ThrowData("duplicate answer for (" + a.question_id + ", " + a.source +
                ")");
    }
  }
  answers_ = std::move(answers);
}

void Corpus::SetSimilarities(std::vector<SimilarityRecord> similarities) {
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (const SimilarityRecord &s : similarities) {
    if (!FindPrompt(s.prompt_id)) {
      ThrowData("similarity refers to unknown prompt '" + s.prompt_id + "'");
    }
    if (!std::isfinite(s.score) || s.score < -1.0 || s.score > 1.0) {
      ThrowData("similarity score out of range for prompt " + s.prompt_id);
    }
    if (!keys.insert({s.prompt_id, s.source, s.caption_variant}).second) {
      ThrowData("duplicate similarity for (" + s.prompt_id + ", " + s.source +
                ", " + s.caption_variant + ")");
    }
  }
  similarities_ = std::move(similarities);
}

const PromptRecord *Corpus::FindPrompt(std::string_view id) const {
  auto it = prompt_index_.find(std::string(id));
  return it == prompt_index_.end() ? nullptr : &prompts_[it->second];
}

const QuestionRecord *Corpus::FindQuestion(std::string_view id) const {
  auto it = question_index_.find(std::string(id));
  return it == question_index_.end() ? nullptr : &questions_[it->second];
}

std::vector<std::string> Corpus::AnswerSources() const {
  std::set<std::string> sources;
  for (const AnswerRecord &a : answers_) sources.insert(a.source);
  return {sources.begin(), sources.end()};
}

std::vector<std::string> Corpus::SimilaritySources() const {
  std::set<std::string> sources;
  for (const SimilarityRecord &s : similarities_) sources.insert(s.source);
  return {sources.begin(), sources.end()};
}

}  // namespace metric_audit
