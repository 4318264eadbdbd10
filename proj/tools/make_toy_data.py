#!/usr/bin/env python3
# Copyright 2026 The ASE Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/toy/: a 30-paper segmented corpus and a 16-d embedding table.

Deterministic; rerunning produces byte-identical files.
"""

import json
import pathlib
import random

DIM = 16
OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"

TOPICS = {
    "crowd": ["crowd", "synthesis", "categories", "clusters", "qualitative", "analysts", "themes"],
    "robot": ["robot", "navigation", "maps", "environments", "localization", "egocentric", "camera"],
    "language": ["translation", "language", "sentences", "parsing", "dialogue", "speech", "text"],
    "biology": ["protein", "folding", "genome", "cells", "molecular", "sequences", "structure"],
}
MECHANISMS = {
    "neural": ["neural", "network", "deep", "convolutional", "recurrent", "embedding"],
    "crowdsourcing": ["crowdsourcing", "workers", "microtasks", "voting", "aggregation"],
    "graph": ["graph", "search", "shortest", "paths", "nodes", "edges"],
    "bayesian": ["bayesian", "sampling", "posterior", "priors", "inference", "markov"],
    "reward": ["reinforcement", "reward", "policy", "agent", "exploration"],
}
GENERIC = ["we", "the", "a", "of", "to", "and", "in", "this", "paper", "study",
           "present", "results", "show", "that", "approach", "method", "improves",
           "novel", "data", "task"]


def make_embeddings(rng):
    table = {}
    for group in list(TOPICS.values()) + list(MECHANISMS.values()):
        center = [rng.gauss(0.0, 1.0) for _ in range(DIM)]
        for word in group:
            table[word] = [c + rng.gauss(0.0, 0.25) for c in center]
    for word in GENERIC:
        table[word] = [rng.gauss(0.0, 0.15) for _ in range(DIM)]
    return table


def sample(rng, words, n):
    return [rng.choice(words) for _ in range(n)]


def capitalize_first(tokens):
    return [tokens[0].capitalize()] + tokens[1:] if tokens else tokens


def make_paper(rng, idx, topic, mechanism, with_mechanism, with_background):
    topic_words = TOPICS[topic]
    mech_words = MECHANISMS[mechanism]
    seg = {}
    if with_background:
        seg["background_tokens"] = capitalize_first(
            sample(rng, topic_words, 4) + sample(rng, GENERIC, 3))
    seg["big_problem_tokens"] = capitalize_first(
        sample(rng, topic_words, 3) + sample(rng, GENERIC, 2))
    seg["problem_tokens"] = capitalize_first(
        ["we"] + sample(rng, topic_words, 4) + sample(rng, GENERIC, 2))
    if with_mechanism:
        seg["mechanism_tokens"] = capitalize_first(
            ["we", "introduce"] + sample(rng, mech_words, 4) + sample(rng, GENERIC, 1))
    seg["method_tokens"] = capitalize_first(
        sample(rng, GENERIC, 3) + sample(rng, mech_words, 2) + sample(rng, topic_words, 1))
    seg["findings_tokens"] = capitalize_first(
        ["results", "show"] + sample(rng, topic_words, 2) + sample(rng, GENERIC, 2))

    order = ["background_tokens", "big_problem_tokens", "problem_tokens", "mechanism_tokens",
             "method_tokens", "findings_tokens"]
    abstract_tokens = [t for key in order for t in seg.get(key, [])]
    title_words = sample(rng, topic_words, 2) + sample(rng, mech_words, 1)
    title = " ".join(w.capitalize() for w in title_words) + f": Study {idx}"
    record = {
        "paper_id": f"toy_{idx:02d}",
        "title": title,
        "abstract": " ".join(abstract_tokens) + " .",
        "abstract_tokens": abstract_tokens,
    }
    for key in order:
        record[key] = seg.get(key, [])
    return record


def main():
    rng = random.Random(20181201)
    OUT.mkdir(parents=True, exist_ok=True)

    table = make_embeddings(rng)
    with open(OUT / "embeddings.txt", "w") as f:
        for word, vec in table.items():
            f.write(word + " " + " ".join(f"{v:.6f}" for v in vec) + "\n")

    topics = list(TOPICS)
    mechanisms = list(MECHANISMS)
    papers = []
    for idx in range(30):
        topic = topics[idx % len(topics)]
        mechanism = mechanisms[(idx * 3 + idx // 4) % len(mechanisms)]
        with_mechanism = idx % 6 != 5
        with_background = idx % 7 != 3
        papers.append(make_paper(rng, idx, topic, mechanism, with_mechanism, with_background))

    with open(OUT / "corpus.jsonl", "w") as f:
        for p in papers:
            f.write(json.dumps(p, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
