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

#include "support/fixtures.h"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

#include "metric_audit/random.h"

namespace metric_audit::testing {

PromptRecord Prompt(const std::string &id, const std::string &text,
                    const std::string &dataset,
                    std::optional<std::string> parse) {
  PromptRecord p;
  p.id = id;
  p.text = text;
  p.dataset = dataset;
  p.parse = std::move(parse);
  return p;
}

QuestionRecord YesNo(const std::string &qid, const std::string &pid,
                     Metric metric, const std::string &gold,
                     std::vector<std::string> depends_on) {
  QuestionRecord q;
  q.question_id = qid;
  q.prompt_id = pid;
  q.metric = metric;
  q.text = "Is there something?";
  q.qtype = QuestionType::kYesNo;
  q.choices = {"yes", "no"};
  q.gold = gold;
  q.depends_on = std::move(depends_on);
  return q;
}

QuestionRecord MultipleChoice(const std::string &qid, const std::string &pid,
                              Metric metric, std::vector<std::string> choices,
                              const std::string &gold,
                              std::vector<std::string> depends_on) {
  QuestionRecord q;
  q.question_id = qid;
  q.prompt_id = pid;
  q.metric = metric;
  q.text = "What is it?";
  q.qtype = QuestionType::kMultipleChoice;
  q.choices = std::move(choices);
  q.gold = gold;
  q.depends_on = std::move(depends_on);
  return q;
}

AnswerRecord Answer(const std::string &qid, const std::string &source,
                    const std::string &predicted) {
  AnswerRecord a;
  a.question_id = qid;
  a.source = source;
  a.predicted = predicted;
  return a;
}

std::vector<AnswerRecord> StubAnswers(
    const std::vector<QuestionRecord> &questions, const std::string &source) {
  std::vector<AnswerRecord> out;
  out.reserve(questions.size());
  for (const QuestionRecord &q : questions) {
    out.push_back(Answer(q.question_id, source,
                         q.qtype == QuestionType::kYesNo ? "yes"
                                                         : q.choices.front()));
  }
  return out;
}

Corpus MakeCorpus(std::vector<PromptRecord> prompts,
                  std::vector<QuestionRecord> questions,
                  std::vector<AnswerRecord> answers,
                  std::vector<SimilarityRecord> similarities) {
  Corpus c;
  c.SetPrompts(std::move(prompts));
  c.SetQuestions(std::move(questions));
  c.SetAnswers(std::move(answers));
  c.SetSimilarities(std::move(similarities));
  return c;
}

QaStatsFixture MakeQaStatsFixture() {
  constexpr size_t kYesGold = 70787;
  constexpr size_t kNoGold = 213;
  constexpr size_t kFirstGold = 50760;
  constexpr size_t kOtherGold = 3240;
  const std::vector<std::string> choices = {"a", "b", "c", "d"};

  // Question kinds in the order they are dealt out.
  enum Kind { kYes, kNo, kFirst, kOther };
  std::vector<Kind> good;
  good.insert(good.end(), kYesGold, kYes);
  good.insert(good.end(), kFirstGold, kFirst);
  std::vector<Kind> bad;
  bad.insert(bad.end(), kNoGold, kNo);
  bad.insert(bad.end(), kOtherGold, kOther);

  QaStatsFixture f;
  size_t next_good = 0;
  size_t prompt_no = 0;
  auto add_prompt = [&](std::vector<Kind> kinds) {
    const std::string pid = "coco-" + std::to_string(prompt_no++);
    f.prompts.push_back(Prompt(pid, "a photo", "coco"));
    for (size_t i = 0; i < kinds.size(); ++i) {
      const std::string qid = pid + "-" + std::to_string(i);
      switch (kinds[i]) {
        case kYes:
          f.questions.push_back(YesNo(qid, pid, Metric::kTifa, "yes"));
          break;
        case kNo:
          f.questions.push_back(YesNo(qid, pid, Metric::kTifa, "no"));
          break;
        case kFirst:
          f.questions.push_back(
              MultipleChoice(qid, pid, Metric::kTifa, choices, "a"));
          break;
        case kOther:
          f.questions.push_back(
              MultipleChoice(qid, pid, Metric::kTifa, choices, "c"));
          break;
      }
    }
  };
  for (Kind k : bad) {
    std::vector<Kind> kinds(good.begin() + next_good,
                            good.begin() + next_good + 7);
    next_good += 7;
    kinds.push_back(k);
    add_prompt(std::move(kinds));
  }
  while (next_good < good.size()) {
    const size_t take = std::min<size_t>(4, good.size() - next_good);
    add_prompt({good.begin() + next_good, good.begin() + next_good + take});
    next_good += take;
  }
  return f;
}

DagFixture RandomDagFixture(size_t n, uint64_t seed,
                            const std::string &source) {
  Rng rng(seed);
  DagFixture f;
  // Edges only point to earlier questions, so the graph is acyclic; the
  // order is then shuffled so files need not be topologically sorted.
  std::vector<QuestionRecord> qs;
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::string> deps;
    for (size_t j = 0; j < i; ++j) {
      if (rng.Below(4) == 0) deps.push_back("q" + std::to_string(j));
    }
    qs.push_back(YesNo("q" + std::to_string(i), "p", Metric::kDsg, "yes",
                       std::move(deps)));
  }
  FisherYatesShuffle(std::span<QuestionRecord>(qs), rng);
  for (const QuestionRecord &q : qs) {
    f.answers.push_back(
        Answer(q.question_id, source, rng.Below(2) == 0 ? "yes" : "no"));
  }
  f.questions = std::move(qs);
  return f;
}

std::filesystem::path ScratchDir(const std::string &name) {
  static std::atomic<int> counter{0};
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("metric_audit_" + name + "_" + std::to_string(::getpid()) + "_" +
       std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string ReadText(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int RunShell(const std::string &command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace metric_audit::testing
