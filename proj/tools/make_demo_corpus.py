#!/usr/bin/env python3
# Copyright 2026 The metric-audit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the small demo corpus under data/demo.

Answers and similarities are synthetic: two pretend T2I sources whose
accuracy drops as prompts get longer, so the demo report has something to
show. Re-running with the same seed reproduces the files byte for byte.
"""

import argparse
import json
import os
import random

ADJ = ["red", "small", "wooden", "fluffy", "old", "blue", "shiny", "tall"]
NOUN = ["dog", "cat", "bench", "car", "bird", "clock", "vase", "horse",
        "umbrella", "bicycle"]
PREP = ["on", "under", "beside", "behind"]
VERB = ["sits", "rests", "waits", "stands"]

CONCRETENESS = {"dog": 4.85, "cat": 4.86, "bench": 4.71, "car": 4.89,
                "bird": 4.9, "clock": 4.79, "vase": 4.67, "horse": 4.93,
                "umbrella": 4.85, "bicycle": 4.9, "red": 3.7, "small": 2.9,
                "wooden": 4.3, "fluffy": 3.93, "old": 2.47, "blue": 3.73,
                "shiny": 3.67, "tall": 3.29, "sits": 3.82, "rests": 2.9,
                "waits": 2.52, "stands": 3.2}
CLASSES = ["dog", "cat", "bench", "car", "bird", "clock", "vase", "horse",
           "umbrella", "bicycle", "person", "traffic light", "teddy bear"]


def np(adj, noun, det="a"):
    return f"(NP (DT {det}) (JJ {adj}) (NN {noun}))", f"{det} {adj} {noun}"


def make_prompt(rng, shape):
    a1, a2 = rng.sample(ADJ, 2)
    n1, n2, n3 = rng.sample(NOUN, 3)
    if shape == 0:
        tree, text = np(a1, n1)
        return text, tree, (a1, n1)
    if shape == 1:
        inner, t1 = np(a1, n1)
        p = rng.choice(PREP)
        tree = (f"(NP {inner} (PP (IN {p}) (NP (DT the) (NN {n2}))))")
        return f"{t1} {p} the {n2}", tree, (a1, n1)
    if shape == 2:
        v = rng.choice(VERB)
        inner, t2 = np(a2, n2)
        tree = (f"(S (NP (DT the) (JJ {a1}) (NN {n1})) (VP (VBZ {v}) "
                f"(PP (IN near) {inner})))")
        return f"the {a1} {n1} {v} near {t2}", tree, (a1, n1)
    v = rng.choice(VERB)
    p = rng.choice(PREP)
    left, t1 = np(a1, n1)
    right, t2 = np(a2, n2)
    tree = (f"(S (NP {left} (CC and) {right}) (VP (VBP {v.rstrip('s')}) "
            f"(PP (IN {p}) (NP (DT the) (NN {n3})))) (. .))")
    return (f"{t1} and {t2} {v.rstrip('s')} {p} the {n3}.", tree, (a1, n1))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/demo")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--prompts", type=int, default=32)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)

    prompts, images, questions = [], [], []
    for i in range(args.prompts):
        shape = i % 4
        text, tree, (adj, noun) = make_prompt(rng, shape)
        pid = f"p{i:03d}"
        dataset = "coco" if i % 2 == 0 else "drawbench"
        prompts.append({"id": pid, "dataset": dataset, "text": text,
                        "parse": tree, "shape": shape})
        for source in ("model_a", "model_b"):
            images.append({"prompt_id": pid, "source": source,
                           "image_key": f"{source}/{pid}.png"})
        others = [a for a in ADJ if a != adj]
        colors = [adj] + rng.sample(others, 3)
        if rng.random() < 0.5:
            rng.shuffle(colors)
        for metric in ("tifa", "vpeval", "dsg"):
            q0 = {"question_id": f"{pid}-{metric}-0", "prompt_id": pid,
                  "metric": metric, "text": f"Is there a {noun}?",
                  "qtype": "yes_no", "choices": ["yes", "no"], "gold": "yes"}
            q1 = {"question_id": f"{pid}-{metric}-1", "prompt_id": pid,
                  "metric": metric, "text": f"Is the {noun} {adj}?",
                  "qtype": "yes_no", "choices": ["yes", "no"], "gold": "yes"}
            q2 = {"question_id": f"{pid}-{metric}-2", "prompt_id": pid,
                  "metric": metric, "text": f"What describes the {noun}?",
                  "qtype": "multiple_choice", "choices": colors, "gold": adj}
            if metric == "dsg":
                q1["depends_on"] = [q0["question_id"]]
                q2["depends_on"] = [q0["question_id"]]
            qs = [q0, q1, q2]
            if metric == "tifa" and shape >= 2:
                qs.append({"question_id": f"{pid}-{metric}-3",
                           "prompt_id": pid, "metric": metric,
                           "text": "Is this a photo?", "qtype": "yes_no",
                           "choices": ["yes", "no"], "gold": "yes"})
            questions.extend(qs)

    shape_of = {p["id"]: p["shape"] for p in prompts}

    def answer(q, skill):
        if rng.random() < skill:
            return q["gold"]
        wrong = [c for c in q["choices"] if c != q["gold"]]
        return rng.choice(wrong)

    def answers_for(source_skill):
        out = []
        for source, base in source_skill:
            for q in questions:
                skill = base - 0.12 * shape_of[q["prompt_id"]]
                out.append({"question_id": q["question_id"], "source": source,
                            "predicted": answer(q, skill)})
        return out

    def sims_for(source_base):
        out = []
        for source, base in source_base:
            for p in prompts:
                score = base - 0.01 * p["shape"] + rng.gauss(0, 0.01)
                out.append({"prompt_id": p["id"], "source": source,
                            "caption_variant": "full_prompt",
                            "score": round(score, 4)})
        return out

    answers = answers_for([("model_a", 0.95), ("model_b", 0.85)])
    sims = sims_for([("model_a", 0.32), ("model_b", 0.30)])
    shuffled_images_answers = answers_for([("model_a", 0.55),
                                           ("model_b", 0.5)])
    shuffled_images_sims = sims_for([("model_a", 0.16), ("model_b", 0.15)])
    shuffled_text_answers = answers_for([("model_a", 0.85),
                                         ("model_b", 0.75)])
    text_only_answers = []
    for q in questions:
        text_only_answers.append({"question_id": q["question_id"],
                                  "source": "text_lm",
                                  "predicted": answer(q, 0.7)})
    retrieval = []
    for source in ("model_a", "model_b"):
        for q in questions:
            gold = q["choices"].index(q["gold"])
            hit = rng.random() < 0.6
            for i in range(len(q["choices"])):
                score = 0.2 + rng.random() * 0.05
                if hit and i == gold:
                    score += 0.1
                retrieval.append({"prompt_id": q["prompt_id"],
                                  "source": source,
                                  "caption_variant":
                                      f"{q['question_id']}#{i}",
                                  "score": round(score, 4)})

    for p in prompts:
        del p["shape"]

    def dump(name, rows):
        with open(os.path.join(args.out, name), "w") as f:
            for r in rows:
                f.write(json.dumps(r) + "\n")

    dump("prompts.jsonl", prompts)
    dump("images.jsonl", images)
    dump("questions.jsonl", questions)
    dump("answers.jsonl", answers)
    dump("similarities.jsonl", sims)
    dump("ablation_shuffled_images_answers.jsonl", shuffled_images_answers)
    dump("ablation_shuffled_images_similarities.jsonl", shuffled_images_sims)
    dump("ablation_shuffled_text_answers.jsonl", shuffled_text_answers)
    dump("ablation_text_only_answers.jsonl", text_only_answers)
    dump("ablation_retrieval_similarities.jsonl", retrieval)
    with open(os.path.join(args.out, "concreteness.tsv"), "w") as f:
        for w, r in sorted(CONCRETENESS.items()):
            f.write(f"{w}\t{r}\n")
    with open(os.path.join(args.out, "imageability.tsv"), "w") as f:
        for w, r in sorted(CONCRETENESS.items()):
            f.write(f"{w}\t{round(100 + r * 120)}\n")
    with open(os.path.join(args.out, "classes.txt"), "w") as f:
        f.write("\n".join(CLASSES) + "\n")
    config = {
        "paths": {
            "prompts": "prompts.jsonl",
            "images": "images.jsonl",
            "questions": "questions.jsonl",
            "answers": "answers.jsonl",
            "similarities": "similarities.jsonl",
            "concreteness": "concreteness.tsv",
            "imageability": "imageability.tsv",
            "classes": "classes.txt",
        },
        "ablations": {
            "shuffled_images": {
                "answers": "ablation_shuffled_images_answers.jsonl",
                "similarities": "ablation_shuffled_images_similarities.jsonl",
            },
            "shuffled_text": {
                "answers": "ablation_shuffled_text_answers.jsonl"},
            "retrieval_qa": {
                "similarities": "ablation_retrieval_similarities.jsonl"},
            "text_only_qa": {
                "answers": "ablation_text_only_answers.jsonl"},
        },
        "seed": 7,
        "alpha": 0.05,
        "tau": 0.4,
    }
    with open(os.path.join(args.out, "run.json"), "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
