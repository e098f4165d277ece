#!/usr/bin/env python3
# Copyright 2026 The wordevo Authors.
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
"""Regenerates the fixture bundle under fixtures/.

Output is deterministic; rerunning must not change any committed file.

  rapture/     the rapturous--ecstatic synset with exact eleven-year sums,
              catvar clusters, and syllable exceptions.
  synthetic/  50 engineered synsets for the Train1/Test1 pair at a
              fifty-year cycle. 25 synsets only survive the training window
              (a member dies before 1895), 25 only survive the test window
              (a member is born in 1880). The future winner of every synset
              carries the interior trigram "zzz" and has the highest linear
              extrapolation of its relative frequency.
"""

import gzip
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
LAST_YEAR = 2008


def spread(total, years):
    """Splits total over years so that the sum is exact."""
    base, rem = divmod(total, len(years))
    return {y: base + (1 if i < rem else 0) for i, y in enumerate(years)}


def window(center, half=5):
    return list(range(center - half, center + half + 1))


def write_rows(path, rows):
    text = "".join(f"{w}_{p}\t{y}\t{c}\t{max(1, c // 3)}\n"
                   for (w, p, y, c) in rows)
    if path.endswith(".gz"):
        with open(path, "wb") as raw:
            with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0,
                               filename="") as gz:
                gz.write(text.encode("utf-8"))
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def rapture():
    out = os.path.join(HERE, "rapture")
    os.makedirs(out, exist_ok=True)
    births = {"ecstatic": 1687, "enraptured": 1710, "rapt": 1600,
              "rapturous": 1642, "rhapsodic": 1775}
    # Eleven-year sums; 1850/1900/1950 are the published Test1 values.
    sums = {
        1800: {"ecstatic": 1900, "enraptured": 2100, "rapt": 2600,
               "rapturous": 4200, "rhapsodic": 12},
        1850: {"ecstatic": 5576, "enraptured": 4334, "rapt": 5243,
               "rapturous": 8645, "rhapsodic": 45},
        1900: {"ecstatic": 21716, "enraptured": 7148, "rapt": 18750,
               "rapturous": 15320, "rhapsodic": 696},
        1950: {"ecstatic": 30829, "enraptured": 5263, "rapt": 14845,
               "rapturous": 9544, "rhapsodic": 3595},
        2000: {"ecstatic": 52000, "enraptured": 3100, "rapt": 16000,
               "rapturous": 6200, "rhapsodic": 4800},
    }
    centers = sorted(sums)
    rows = []
    for word, birth in sorted(births.items()):
        annual = {}
        for c in centers:
            annual.update(spread(sums[c][word], window(c)))
        # Linear interpolation of the yearly average between windows.
        for a, b in zip(centers, centers[1:]):
            lo, hi = sums[a][word] / 11.0, sums[b][word] / 11.0
            for y in range(a + 6, b - 5):
                t = (y - a) / float(b - a)
                annual[y] = max(1, int(round(lo + t * (hi - lo))))
        for y in range(2006, LAST_YEAR + 1):
            annual[y] = max(1, sums[2000][word] // 11)
        first = sums[1800][word] / 11.0
        for y in range(birth, 1795):
            t = (y - birth + 1) / float(1795 - birth + 1)
            annual[y] = max(1, int(round(first * t)))
        for y in sorted(annual):
            rows.append((word, "ADJ", y, annual[y]))

    # Categorial variations and their first attestations.
    catvar_births = {
        ("rapture", "NOUN"): 1590, ("rapturously", "ADV"): 1650,
        ("rapturousness", "NOUN"): 1700, ("ecstasy", "NOUN"): 1600,
        ("ecstatically", "ADV"): 1720, ("ecstaticism", "NOUN"): 1930,
        ("raptness", "NOUN"): 1660, ("enrapture", "VERB"): 1740,
        ("hunger", "NOUN"): 1550, ("hunger", "VERB"): 1560,
        ("hungry", "ADJ"): 1550,
    }
    for (word, pos), birth in sorted(catvar_births.items()):
        for y in range(birth, LAST_YEAR + 1, 7):
            rows.append((word, pos, y, 3 + (y % 5)))

    # Distractor vocabulary for the eligibility filters.
    for word in ("happy", "glad", "gladsome", "palfrey", "joyful", "joyous"):
        for y in range(1790, LAST_YEAR + 1, 3):
            rows.append((word, "ADJ" if word != "palfrey" else "NOUN", y,
                         10 + len(word)))
    write_rows(os.path.join(out, "corpus.tsv"), rows)

    with open(os.path.join(out, "lexicon.tsv"), "w", newline="\n") as f:
        f.write("# synset_id\tpos\tlemmas\n")
        f.write("a00001\ta\trapturous,ecstatic,rapt,enraptured,rhapsodic\n")
        f.write("a00002\ta\thappy,glad\n")
        f.write("a00003\ts\tglad,gladsome\n")
        f.write("n00004\tn\tpalfrey\n")
        f.write("v00005\tv\tre-enter,reenter\n")
        f.write("a00006\ta\tjoyful,joyous\n")
    with open(os.path.join(out, "catvar.tsv"), "w", newline="\n") as f:
        f.write("# one cluster per line\n")
        f.write("rapturous_ADJ,rapture_NOUN,rapturously_ADV,"
                "rapturousness_NOUN\n")
        f.write("ecstatic_ADJ,ecstasy_NOUN,ecstatically_ADV,"
                "ecstaticism_NOUN\n")
        f.write("rapt_ADJ,raptness_NOUN\n")
        f.write("enraptured_ADJ,enrapture_VERB,enrapturement_NOUN\n")
        f.write("hunger_NOUN,hunger_VERB,hungry_ADJ\n")
    with open(os.path.join(out, "syllables.tsv"), "w", newline="\n") as f:
        f.write("# lemma\tcount\n")
        f.write("enraptured\t3\n")


def synthetic_lemma(rng, letters, used, winner):
    while True:
        head = "".join(rng.choice(letters) for _ in range(rng.randint(2, 3)))
        tail = "".join(rng.choice(letters) for _ in range(rng.randint(2, 3)))
        lemma = head + "zzz" + tail if winner else head + tail
        if lemma not in used:
            used.add(lemma)
            return lemma


def synthetic():
    out = os.path.join(HERE, "synthetic")
    os.makedirs(out, exist_ok=True)
    rng = random.Random(20180101)
    used = set()
    lexicon_rows, rows = [], []
    for idx in range(50):
        train_only = idx < 25
        letters = "abcdefghijk" if train_only else "lmnopqrstuvwxy"
        anchors = (1800, 1850, 1900) if train_only else (1850, 1900, 1950)
        n_live = 2 + (idx % 2)
        changed = idx % 5 in (0, 2)
        winner = synthetic_lemma(rng, letters, used, True)
        losers = [synthetic_lemma(rng, letters, used, False)
                  for _ in range(n_live - 1)]
        extra = synthetic_lemma(rng, letters, used, False)
        j = rng.uniform(-0.02, 0.02)
        if changed:
            w_sh = (0.10 + j, 0.34 + j, 0.58 + j)
            lead = (0.58, 0.44, 0.28)
        else:
            w_sh = (0.40 + j, 0.50 + j, 0.60 + j)
            lead = (0.30, 0.26, 0.22)
        if train_only:
            extra_sh = (0.06, 0.04, 0.0)
        else:
            extra_sh = (0.0, 0.05, 0.07)
        shares = {winner: w_sh, extra: extra_sh}
        if n_live == 2:
            shares[losers[0]] = tuple(1.0 - w_sh[k] - extra_sh[k]
                                      for k in range(3))
        else:
            shares[losers[0]] = lead
            shares[losers[1]] = tuple(1.0 - w_sh[k] - lead[k] - extra_sh[k]
                                      for k in range(3))
        members = [winner] + losers + [extra]
        rng.shuffle(members)
        sid = f"s{idx + 1:03d}"
        lexicon_rows.append(f"{sid}\ta\t{','.join(members)}\n")

        # Anchor shares extend flat outside the window and interpolate
        # linearly inside it.
        totals = {y: 900 + rng.randint(0, 200) for y in range(1790, 2009)}
        for word in members:
            birth = 1880 if word == extra and not train_only \
                else rng.randint(1500, 1780)
            sh = shares[word]
            if birth < 1790:
                rows.append((word, "ADJ", birth, 1))
            for y in range(max(1790, birth), LAST_YEAR + 1):
                if y <= anchors[0]:
                    s = sh[0]
                elif y <= anchors[1]:
                    t = (y - anchors[0]) / 50.0
                    s = sh[0] + t * (sh[1] - sh[0])
                elif y <= anchors[2]:
                    t = (y - anchors[1]) / 50.0
                    s = sh[1] + t * (sh[2] - sh[1])
                else:
                    s = sh[2]
                if word == extra and train_only and y >= 1880:
                    s = 0.0
                count = int(round(s * totals[y]))
                if word == extra and not train_only and y >= birth:
                    count = max(count, 1)
                if count > 0:
                    rows.append((word, "ADJ", y, count))
    rows.sort()
    half = len(rows) // 2
    write_rows(os.path.join(out, "corpus_a.tsv"), rows[:half])
    write_rows(os.path.join(out, "corpus_b.tsv.gz"), rows[half:])
    with open(os.path.join(out, "lexicon.tsv"), "w", newline="\n") as f:
        f.write("# engineered synsets; winners carry the trigram zzz\n")
        f.writelines(lexicon_rows)
    with open(os.path.join(out, "catvar.tsv"), "w", newline="\n") as f:
        f.write("# no categorial variations in the synthetic bundle\n")


if __name__ == "__main__":
    rapture()
    synthetic()
