# Copyright 2026 The Litpipe Authors
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

"""Writes titles200.json: 200 paper records whose titles are 90 base
titles plus randomly perturbed near-copies (typos, case, punctuation,
dropped or appended words), for deduplication property tests."""

import json
import random
from pathlib import Path

HEADS = ["Reasoning", "Planning", "Retrieval", "Memory", "Tool Use", "Alignment",
         "Instruction Tuning", "Code Generation", "Evaluation", "Web Navigation"]
MIDS = ["with Large Language Models", "for Autonomous Agents", "in Multi-Agent Systems",
        "under Distribution Shift", "via Reinforcement Learning", "at Scale",
        "from Human Feedback", "for Scientific Discovery", "in Open-Ended Environments"]


def perturb(rng, title):
    kind = rng.randrange(6)
    chars = list(title)
    if kind == 0:
        i = rng.randrange(len(chars))
        chars[i] = rng.choice("abcdefghijklmnopqrstuvwxyz")
        return "".join(chars)
    if kind == 1:
        return title.upper() if rng.random() < 0.5 else title.lower()
    if kind == 2:
        return title.replace(" ", ": ", 1) + "."
    if kind == 3:
        words = title.split()
        del words[rng.randrange(len(words))]
        return " ".join(words)
    if kind == 4:
        return title + " " + rng.choice(["Revisited", "v2", "A Survey", "(Extended)"])
    i = rng.randrange(len(chars))
    del chars[i]
    return "".join(chars)


def main():
    rng = random.Random(200)
    bases = [f"{h} {m}" for h in HEADS for m in MIDS]
    titles = list(bases)
    while len(titles) < 200:
        t = rng.choice(titles)
        titles.append(perturb(rng, t))
    rng.shuffle(titles)
    records = []
    for i, t in enumerate(titles):
        records.append({"id": f"t{i:03d}", "title": t, "citations": rng.randrange(0, 50),
                        "source": "arxiv" if i % 3 == 0 else "semantic-scholar"})
    path = Path(__file__).with_name("titles200.json")
    path.write_text(json.dumps(records, indent=1) + "\n")


if __name__ == "__main__":
    main()
