"""Zipf frequencies from wordfreq for every single-word lemma in the WNDB subset.

Usage: python3 scripts/frequency_fixture.py SUBSET_DIR > data/zipf_wn30_subset.tsv
"""
import os
import re
import sys

import wordfreq

MARKER = re.compile(r"\([a-z]+\)$")
subset = sys.argv[1]
lemmas = {"the"}
for name in ("noun", "verb", "adj", "adv"):
    for line in open(os.path.join(subset, "data." + name)):
        if line.startswith("  "):
            continue
        f = line.split(" ")
        for i in range(int(f[3], 16)):
            w = MARKER.sub("", f[4 + 2 * i]).lower()
            if "_" not in w and w.isalpha():
                lemmas.add(w)
for w in sorted(lemmas):
    z = wordfreq.zipf_frequency(w, "en")
    if z > 0:
        print("%s\t%.2f" % (w, z))
