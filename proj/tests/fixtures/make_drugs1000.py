#!/usr/bin/env python3
"""Builds the 1,000-drug timeline fixture.

Exactly 181 drugs get a basic article no later than their first clinical
article. The rest are split between drugs with only basic articles, drugs
with only clinical articles and drugs whose first clinical article
predates the first basic one. Articles are labelled A (basic) or H
(clinical) so either default label set picks them up.

Run from the repository root:  python3 tests/fixtures/make_drugs1000.py
"""

import json
import math
import os
import random

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "drugs1000")
COUNTS = {"translated": 181, "non_translated": 600, "clinical_only": 200, "anomalous": 19}


def main():
    rng = random.Random(181)
    kinds = [k for k, n in COUNTS.items() for _ in range(n)]
    rng.shuffle(kinds)

    articles = []  # (pmid, year, label)
    pairs = []
    next_pmid = 100000

    def article(year, label):
        nonlocal next_pmid
        next_pmid += 1
        articles.append((next_pmid, year, label))
        return next_pmid

    lags = []
    for i, kind in enumerate(kinds):
        drug = "DRUG%04d" % (i + 1)
        eb = ec = None
        if kind in ("translated", "non_translated", "anomalous"):
            eb = rng.randint(1900, 1990)
        if kind == "translated":
            ec = eb + rng.randint(0, 25)
            lags.append(ec - eb + 1)
        elif kind == "clinical_only":
            ec = rng.randint(1900, 2015)
        elif kind == "anomalous":
            ec = eb - rng.randint(1, 10)
        if eb is not None:
            pairs.append((article(eb, "A"), drug))
            for _ in range(rng.randint(0, 2)):
                pairs.append((article(eb + rng.randint(0, 20), "A"), drug))
        if ec is not None:
            pairs.append((article(ec, "H"), drug))
            for _ in range(rng.randint(0, 2)):
                pairs.append((article(ec + rng.randint(0, 20), "H"), drug))
        # Undated articles never move a timeline.
        if rng.random() < 0.1:
            pairs.append((article(None, "H"), drug))

    os.makedirs(HERE, exist_ok=True)
    with open(os.path.join(HERE, "classifications.jsonl"), "w") as f:
        for pmid, year, label in articles:
            n_a, n_h = (1, 0) if label == "A" else (0, 1)
            x, y = (math.sqrt(3) / 2, -0.5) if label == "A" else (0.0, 1.0)
            f.write(json.dumps({"pmid": pmid, "year": year, "n_a": n_a, "n_c": 0, "n_h": n_h,
                                "label": label, "x": x, "y": y}, separators=(",", ":")) + "\n")
    with open(os.path.join(HERE, "pairs.tsv"), "w") as f:
        for pmid, drug in sorted(pairs):
            f.write("%d\t%s\n" % (pmid, drug))
    with open(os.path.join(HERE, "expected.json"), "w") as f:
        json.dump({"drugs": len(kinds), "status": COUNTS, "translation_rate": 0.181,
                   "translated_lags_sum": sum(lags)}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
