"""Writes a synthetic 50-pair dataset whose rate differences follow a known
linear rule in the feature deltas, plus Gaussian noise.

Output: crates/core/tests/fixtures/planted_pairs.csv (default column map).
"""

import csv
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures/planted_pairs.csv"

PAIRS = 50
N_RESPONSES = 805
BASE_RATE = 0.22
NOISE_SD = 0.01
# Planted per-feature coefficients on (a - b) deltas.
PLANTED = {
    "definitions": 0.002,
    "synonyms": 0.001,
    "word_length": -0.004,
    "frequency": 0.01,
}
CONSONANTS = "bdfgklmnprstvz"
VOWELS = "aeiou"


def pseudo_word(rng, used):
    while True:
        syl = rng.randint(1, 4)
        w = "".join(rng.choice(CONSONANTS) + rng.choice(VOWELS) for _ in range(syl))
        if rng.random() < 0.4:
            w += rng.choice(CONSONANTS)
        if w not in used:
            used.add(w)
            return w


def features(rng, word):
    pos = rng.randint(0, 8) / 8
    neg = rng.randint(0, 8 - int(pos * 8)) / 8
    return {
        "definitions": rng.randint(1, 15),
        "synonyms": rng.randint(0, 20),
        "hypernyms": rng.randint(0, 6),
        "hyponyms": rng.randint(0, 30),
        "word_length": len(word),
        "syllables": rng.randint(1, 4),
        "pos_max": pos,
        "neg_max": neg,
        "emotionality": pos + neg,
        "frequency": round(rng.uniform(1.0, 7.0), 2),
    }


def main():
    rng = random.Random(20241015)
    used = set()
    rows = []
    for p in range(1, PAIRS + 1):
        a, b = pseudo_word(rng, used), pseudo_word(rng, used)
        fa, fb = features(rng, a), features(rng, b)
        delta = sum(c * (fa[k] - fb[k]) for k, c in PLANTED.items()) + rng.gauss(0, NOISE_SD)
        ra = min(max(BASE_RATE + delta / 2, 0.0), 1.0)
        rb = min(max(BASE_RATE - delta / 2, 0.0), 1.0)
        for w, f, r in ((a, fa, ra), (b, fb, rb)):
            rows.append({"word": w, "pair_id": f"p{p:02d}", "selection_rate": f"{r:.6f}",
                         "n_responses": N_RESPONSES, **f})
    with OUT.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
