"""Reference representativeness counts from NLTK's WordNet reader.

Usage: python3 scripts/representativeness_oracle.py > crates/core/tests/fixtures/representativeness_wn30.tsv

Requires NLTK with the WordNet 3.0 corpus installed. Senses come from the
index files (no morphological lookup); one-level hypernym/hyponym counts
include instance links.
"""
import warnings

warnings.simplefilter("ignore")
from nltk.corpus import wordnet as wn


def counts(word):
    synsets = []
    for pos, offsets in sorted(wn._lemma_pos_offset_map.get(word, {}).items()):
        if pos == "s":
            continue
        synsets.extend(wn.synset_from_pos_and_offset(pos, o) for o in offsets)
    synonyms = {l.name().lower() for s in synsets for l in s.lemmas()} - {word}
    hypers = {h for s in synsets for h in s.hypernyms() + s.instance_hypernyms()}
    hypos = {h for s in synsets for h in s.hyponyms() + s.instance_hyponyms()}
    return len(synsets), len(synonyms), len(hypers), len(hypos)


words = [w.strip() for w in open("data/pinned_words.txt") if w.strip() and not w.startswith("#")]
print("# word\tdefinitions\tsynonyms\thypernyms\thyponyms  (NLTK %s, WordNet %s)" % (__import__("nltk").__version__, wn.get_version()))
for w in words + ["dog"]:
    print(w, *counts(w), sep="\t")
