"""Extract a self-contained WNDB subset for the pinned word list.

Usage: python3 scripts/wordnet_subset.py WORDNET_DICT_DIR OUT_DIR

Keeps every synset containing a pinned word verbatim, plus the synsets one
hypernym/hyponym link away. Neighbour synsets have their hypernym/hyponym
pointers that leave the subset removed so the subset loads without dangling
links. Index files keep only the pinned lemmas' lines, verbatim.
"""
import os
import re
import sys

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
HIER = {"@", "@i", "~", "~i"}
MARKER = re.compile(r"\([a-z]+\)$")


def words(path):
    with open(path) as f:
        return [w.strip() for w in f if w.strip() and not w.startswith("#")]


def read_lines(path):
    with open(path, newline="") as f:
        return [l.rstrip("\r\n") for l in f]


def parse(line):
    f = line.split(" ")
    off, lex, ss = f[0], f[1], f[2]
    wcnt = int(f[3], 16)
    lemmas = [MARKER.sub("", f[4 + 2 * i]).lower() for i in range(wcnt)]
    i = 4 + 2 * wcnt
    pcnt = int(f[i])
    ptrs = []
    for k in range(pcnt):
        sym, toff, tpos, st = f[i + 1 + 4 * k : i + 5 + 4 * k]
        ptrs.append((sym, toff, "a" if tpos == "s" else tpos, st))
    return off, lemmas, ptrs, i, pcnt


def main(src, out):
    pinned = set(words(os.path.join(os.path.dirname(__file__), "..", "data", "pinned_words.txt")))
    pinned.add("dog")
    data = {}
    headers = {}
    for p, name in POS_FILES.items():
        lines = read_lines(os.path.join(src, "data." + name))
        headers[p] = [l for l in lines if l.startswith("  ")]
        for l in lines:
            if l.startswith("  ") or not l:
                continue
            data[(p, l.split(" ", 1)[0])] = l
    targets = set()
    for key, l in data.items():
        if pinned & set(parse(l)[1]):
            targets.add(key)
    keep = set(targets)
    for key in targets:
        for sym, toff, tpos, _ in parse(data[key])[2]:
            if sym in HIER:
                keep.add((tpos, toff))
    os.makedirs(out, exist_ok=True)
    for p, name in POS_FILES.items():
        with open(os.path.join(out, "data." + name), "w", newline="\n") as f:
            for h in headers[p]:
                f.write(h + "\n")
            for key in sorted(k for k in keep if k[0] == p):
                line = data[key]
                if key not in targets:
                    off, lemmas, ptrs, i, pcnt = parse(line)
                    fields = line.split(" ")
                    kept = [
                        fields[i + 1 + 4 * k : i + 5 + 4 * k]
                        for k, (sym, toff, tpos, _) in enumerate(ptrs)
                        if sym not in HIER or (tpos, toff) in keep
                    ]
                    rest = fields[i + 1 + 4 * pcnt :]
                    fields = fields[:i] + ["%03d" % len(kept)] + [x for ptr in kept for x in ptr] + rest
                    line = " ".join(fields)
                f.write(line + "\n")
        idx = read_lines(os.path.join(src, "index." + name))
        with open(os.path.join(out, "index." + name), "w", newline="\n") as f:
            for l in idx:
                if l.startswith("  "):
                    f.write(l + "\n")
                elif l and l.split(" ", 1)[0] in pinned:
                    offs = [x for x in l.split(" ") if re.fullmatch(r"\d{8}", x)]
                    assert all((p, o) in targets for o in offs), l
                    f.write(l + "\n")
    print(len(targets), "target synsets,", len(keep), "total")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
