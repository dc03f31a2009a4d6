#!/usr/bin/env python3
# Copyright 2026 The qaaug Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Brute-force reference for answer normalization, exact match and token F1.

Written independently of the C++ implementation. Run it to regenerate
tests/data/metric_oracle_cases.json; the C++ tests only read the frozen file.

    python3 tests/oracle/metric_oracle.py > tests/data/metric_oracle_cases.json
"""

import json
import sys
import unicodedata
from fractions import Fraction

ASCII_SYMBOLS = set("$+<=>^`|~")
ARTICLES = {"a", "an", "the"}


def is_punct(ch):
    return unicodedata.category(ch).startswith("P") or ch in ASCII_SYMBOLS


def normalize(s):
    s = s.lower()
    s = "".join(ch for ch in s if not is_punct(ch))
    tokens = [t for t in s.split() if t not in ARTICLES]
    return " ".join(tokens)


def exact_match(pred, golds):
    return int(any(normalize(pred) == normalize(g) for g in golds))


def f1_single(pred, gold):
    p = normalize(pred).split()
    g = normalize(gold).split()
    if not p and not g:
        return Fraction(1)
    if not p or not g:
        return Fraction(0)
    # Multiset intersection by exhaustive pairing: each gold token may be
    # consumed once.
    remaining = list(g)
    overlap = 0
    for tok in p:
        for i, cand in enumerate(remaining):
            if cand == tok:
                overlap += 1
                del remaining[i]
                break
    if overlap == 0:
        return Fraction(0)
    precision = Fraction(overlap, len(p))
    recall = Fraction(overlap, len(g))
    return 2 * precision * recall / (precision + recall)


def token_f1(pred, golds):
    return max(f1_single(pred, g) for g in golds)


CASES = [
    # Worked examples.
    ("New York", ["new york."]),
    ("New York City", ["New York"]),
    ("a cat sat", ["cat sat down"]),
    ("The COVID-19 virus.", ["covid19 virus"]),
    ("an  Answer", ["answer"]),
    # Identity and reflexivity.
    ("$540", ["$540"]),
    ("Paris", ["Paris"]),
    # Disjoint.
    ("red apple", ["green pear"]),
    # Empty handling.
    ("", [""]),
    ("", ["something"]),
    ("something", [""]),
    ("the", ["a"]),
    ("the", ["an apple"]),
    ("...", ["!!!"]),
    # Multiple golds, max wins.
    ("blue whale", ["whale", "the blue whale", "orca"]),
    ("two weeks", ["14 days", "2 weeks", "two weeks."]),
    # Repeated tokens exercise multiset intersection.
    ("the the cat cat cat", ["cat dog cat"]),
    ("go go go", ["go"]),
    ("yes no yes no", ["no no no yes"]),
    # Punctuation and symbols.
    ("U.S.A.", ["USA"]),
    ("state-of-the-art", ["state of the art"]),
    ("42%", ["42"]),
    ("x+y=z", ["xyz"]),
    ("(approximately) 3,000 people", ["3000 people"]),
    ("“quoted” text", ['"quoted" text']),
    ("¿Qué?", ["qué"]),
    # Whitespace variants.
    ("  leading and\ttrailing  \n", ["leading and trailing"]),
    ("new york", ["new york"]),
    # Articles only as whole tokens.
    ("theater", ["ater"]),
    ("an anthem", ["anthem"]),
    ("A Tale of Two Cities", ["tale of two cities"]),
    # Partial overlap with unequal lengths.
    ("the fee is 540 dollars", ["540"]),
    ("540", ["the fee is 540 dollars"]),
    ("social distancing and masks", ["masks and hand washing"]),
    ("Ünïcödé Façade", ["ünïcödé façade"]),
]

NORMALIZE_CASES = [
    "The COVID-19 virus.",
    "",
    "an  Answer",
    "New York",
    "  A  the AN  ",
    "U.S.A.",
    "x+y=z",
    "Ünïcödé Façade!",
    "state-of-the-art",
    "¿Qué?",
]


def main():
    cases = []
    for pred, golds in CASES:
        f1 = token_f1(pred, golds)
        cases.append({
            "prediction": pred,
            "golds": golds,
            "exact_match": exact_match(pred, golds),
            "token_f1": float(f1),
            "token_f1_fraction": f"{f1.numerator}/{f1.denominator}",
        })
    out = {
        "unicode_version": unicodedata.unidata_version,
        "cases": cases,
        "normalize": [{"input": s, "expected": normalize(s)} for s in NORMALIZE_CASES],
    }
    json.dump(out, sys.stdout, ensure_ascii=False, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
