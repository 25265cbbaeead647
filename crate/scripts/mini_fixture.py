"""Write the hand-built mini resource set used by API, CLI and advisor tests.

Usage: python3 scripts/mini_fixture.py crates/core/tests/fixtures/mini

Produces WNDB data/index files whose synset offsets are true byte offsets,
a SentiWordNet-format score file and a Zipf table. Every expected feature
value in the tests can be read off the SYNSETS table below.
"""
import os
import sys

HEADER = [
    "  1 Hand-built lexical fixture in WordNet database format.",
    "  2 Lines starting with two spaces are license/header lines.",
]

# key: (pos, lex_filenum, lemmas, hypernym keys, gloss)
SYNSETS = {
    "act": ("v", 41, ["act", "move"], [], "perform an action"),
    "help": ("v", 41, ["help", "assist", "aid"], ["act"], "give help or assistance"),
    "facilitate": ("v", 41, ["help", "facilitate"], [], "be of use"),
    "buy": ("v", 40, ["buy", "purchase"], ["act"], "obtain by paying money for it"),
    "vehicle": ("n", 6, ["motor_vehicle", "automotive_vehicle"], [], "a self-propelled wheeled vehicle"),
    "car": ("n", 6, ["car", "auto", "automobile", "machine", "motorcar"], ["vehicle"], "a motor vehicle with four wheels"),
    "aid": ("n", 4, ["help", "aid", "assistance", "assist"], [], "the activity of contributing to the fulfillment of a need"),
    "big": ("a", 0, ["big", "large"], [], "above average in size"),
    "prominent": ("s", 0, ["big", "prominent"], [], "conspicuous in position or importance"),
    "happy": ("a", 0, ["happy"], [], "enjoying or showing joy"),
    "glad": ("s", 0, ["glad", "happy"], [], "eagerly disposed to act"),
    "quickly": ("r", 2, ["quickly", "rapidly", "speedily", "chop-chop", "apace"], [], "with rapid movements"),
    "fast": ("r", 2, ["quickly", "quick", "fast"], [], "with little or no delay"),
}

SENTIMENT = {
    "help": (0.125, 0.0),
    "facilitate": (0.25, 0.0),
    "aid": (0.375, 0.0),
    "big": (0.25, 0.125),
    "prominent": (0.5, 0.0),
    "happy": (0.875, 0.0),
    "glad": (0.5, 0.125),
    "quickly": (0.0, 0.0),
}

ZIPF = {
    "help": 5.9, "assist": 4.6, "aid": 4.9, "facilitate": 3.9, "act": 5.2,
    "move": 5.7, "buy": 5.6, "purchase": 4.7, "car": 5.6, "auto": 4.4,
    "automobile": 3.9, "machine": 4.9, "motorcar": 1.6, "assistance": 4.6,
    "big": 5.8, "large": 5.4, "prominent": 4.3, "happy": 5.8, "glad": 5.1,
    "quickly": 5.0, "rapidly": 4.4, "speedily": 2.3, "apace": 1.9,
    "quick": 5.2, "fast": 5.2, "the": 7.73, "me": 6.6,
}

FILES = {"n": "noun", "v": "verb", "a": "adj", "s": "adj", "r": "adv"}


def main(out):
    os.makedirs(out, exist_ok=True)
    hypo = {k: [] for k in SYNSETS}
    for k, (_, _, _, hyper, _) in SYNSETS.items():
        for h in hyper:
            hypo[h].append(k)

    offsets = {}
    by_file = {}
    for k, v in SYNSETS.items():
        by_file.setdefault(FILES[v[0]], []).append(k)

    def line(k):
        pos, lex, lemmas, hyper, gloss = SYNSETS[k]
        ptr_pos = "a" if pos == "s" else pos
        words = " ".join(f"{w} 0" for w in lemmas)
        ptrs = [("@", h) for h in hyper] + [("~", h) for h in hypo[k]]
        p = " ".join(f"{s} {offsets[t]:08d} {ptr_pos} 0000" for s, t in ptrs)
        frames = " 01 + 02 00" if pos == "v" else ""
        body = f"{offsets[k]:08d} {lex:02d} {pos} {len(lemmas):02x} {words} {len(ptrs):03d}"
        if p:
            body += " " + p
        return f"{body}{frames} | {gloss}  "

    # Offsets depend on line lengths, which depend on offsets only through
    # fixed-width fields, so one layout pass with placeholders suffices.
    for name, keys in by_file.items():
        for k in keys:
            offsets[k] = 0
    for name, keys in by_file.items():
        pos = sum(len(h) + 1 for h in HEADER)
        for k in keys:
            offsets[k] = pos
            pos += len(line(k)) + 1
    for name, keys in by_file.items():
        with open(os.path.join(out, f"data.{name}"), "w", newline="\n") as f:
            for h in HEADER:
                f.write(h + "\n")
            for k in keys:
                f.write(line(k) + "\n")
        index = {}
        for k in keys:
            for w in SYNSETS[k][2]:
                index.setdefault(w, []).append(k)
        ipos = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}[name]
        with open(os.path.join(out, f"index.{name}"), "w", newline="\n") as f:
            for h in HEADER:
                f.write(h + "\n")
            for w in sorted(index):
                ks = index[w]
                syms = sorted({s for k in ks for s, present in (("@", SYNSETS[k][3]), ("~", hypo[k])) if present})
                offs = " ".join(f"{offsets[k]:08d}" for k in ks)
                f.write(f"{w} {ipos} {len(ks)} {len(syms)} {' '.join(syms) + ' ' if syms else ''}{len(ks)} 0 {offs}  \n")

    with open(os.path.join(out, "sentiwordnet.tsv"), "w") as f:
        f.write("# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss\n")
        for k, (p, n) in SENTIMENT.items():
            pos, _, lemmas, _, gloss = SYNSETS[k]
            terms = " ".join(f"{w}#{i + 1}" for i, w in enumerate(lemmas))
            f.write(f"{'a' if pos == 's' else pos}\t{offsets[k]:08d}\t{p}\t{n}\t{terms}\t{gloss}\n")

    with open(os.path.join(out, "zipf.tsv"), "w") as f:
        for w, z in ZIPF.items():
            f.write(f"{w}\t{z}\n")


if __name__ == "__main__":
    main(sys.argv[1])
