"""Gold syllable counts from CMUdict for a deterministic sample of English words.

Usage: python3 scripts/syllable_fixture.py > crates/core/tests/fixtures/syllables_cmudict.tsv

Candidates are wordfreq's top 30k English words that are purely alphabetic,
at least three letters long and present in CMUdict; every 250th candidate is
kept. Gold count = number of stressed vowels in the first CMUdict pronunciation.
"""
import cmudict
import wordfreq

cmu = cmudict.dict()
cands = [w for w in wordfreq.top_n_list("en", 30000) if w.isalpha() and w.isascii() and len(w) >= 3 and w in cmu]
print("# word\tsyllables  (CMUdict, first pronunciation)")
for w in cands[::250][:100]:
    print(w, sum(ph[-1].isdigit() for ph in cmu[w][0]), sep="\t")
