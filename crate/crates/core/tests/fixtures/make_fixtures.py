"""Regenerates the fixture corpus and its derivation goldens.

The corpus is synthetic. The goldens are computed here with a separate
implementation of tokenization, sentence splitting, ROUGE-L, a recursive
greedy sentence search and the background boundary rules, so they do not
depend on the Rust code.

    python3 make_fixtures.py
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

SUBJECTS = [
    "Malaria parasites", "Dengue virus", "Tuberculosis bacteria", "Influenza strains",
    "Gut microbes", "Cancer cells", "Immune T cells", "Kidney stones", "Heart muscle cells",
    "Zika infections", "Antibiotic resistant bacteria", "Sleep deprivation", "Air pollution",
    "Childhood obesity", "Chronic pain", "Type 2 diabetes",
]
VERBS = [
    "increase", "reduce", "alter", "predict", "accompany", "trigger", "suppress", "regulate",
]
OBJECTS = [
    "the risk of severe disease in older adults", "inflammatory signaling in the lung",
    "the expression of several stress response genes", "hospital admissions during winter",
    "blood glucose control over twelve months", "the survival of patients after surgery",
    "cognitive performance in school age children", "the diversity of bacterial communities",
    "transmission between households in dense cities", "the response to standard treatment",
]
QUALIFIERS = [
    "in a cohort of 1200 participants", "across three independent clinical sites",
    "according to a randomized controlled trial", "in mice fed a high fat diet",
    "after adjusting for age and sex", "in a meta-analysis of 40 studies",
    "as shown in Fig. 2 of the supplement", "compared with matched healthy controls",
]
BACKGROUND = [
    "Scientists have long wondered why some people get sicker than others.",
    "A vaccine teaches the body to recognize a germ before it causes harm.",
    "Mosquitoes spread several serious diseases in warm parts of the world.",
    "Bacteria are tiny living things, and most of them are harmless to us.",
    "Genes are instructions inside our cells that tell the body how to work.",
    "Inflammation is the way the body responds to injury or infection.",
    "Doctors use blood tests to check how well the body handles sugar.",
    "Clinical trials compare a new treatment with the usual care, e.g. a standard drug.",
    "Why does this matter?",
    "This is important.",
    "Many families worry about these illnesses every year.",
    "Researchers often study mice because their biology resembles ours.",
]
SHORT = [
    "Results were robust.", "Effects varied by site.", "Data are public.",
    "Funding was external.",
]


def technical_sentence(rng):
    s = f"{rng.choice(SUBJECTS)} {rng.choice(VERBS)} {rng.choice(OBJECTS)} {rng.choice(QUALIFIERS)}."
    if rng.random() < 0.2:
        s = s[:-1] + " (P < 0.05)."
    return s


def lay_version(rng, sentence):
    words = sentence.rstrip(".").split()
    kept = [w for w in words if rng.random() > 0.3]
    if not kept:
        kept = words[:3]
    kept[0] = kept[0][:1].upper() + kept[0][1:]
    return " ".join(kept) + "."


def make_record(rng, i):
    n_src = rng.randint(3, 7)
    source = []
    for _ in range(n_src):
        source.append(rng.choice(SHORT) if rng.random() < 0.15 else technical_sentence(rng))
    target = []
    for s in source:
        if rng.random() < 0.35:
            target.append(rng.choice(BACKGROUND))
        if rng.random() < 0.6:
            target.append(lay_version(rng, s) if rng.random() < 0.7 else s)
    if not target:
        target.append(rng.choice(BACKGROUND))
    journal = rng.choice(["PNAS", "eLife", "PLOS Biology", "Cochrane"])
    sep = lambda: rng.choice([" ", "  ", "\n"])
    src_text = source[0] + "".join(sep() + s for s in source[1:])
    tgt_text = target[0] + "".join(sep() + s for s in target[1:])
    return {"id": f"rec{i:03d}", "journal": journal, "src": src_text, "tgt": tgt_text}


# ---- independent reference implementation ----

ABBREV = {
    "al.", "approx.", "ca.", "cf.", "dr.", "e.g.", "eq.", "eqs.", "fig.", "figs.", "i.e.",
    "mr.", "mrs.", "ms.", "prof.", "ref.", "refs.", "sp.", "spp.", "vol.", "vs.",
}
CLOSERS = set(".!?\"')]”’")


def words(text):
    out, cur = [], ""
    for ch in text:
        if ch.isalnum():
            cur += ch
        else:
            if cur:
                out.append(cur.lower())
            cur = ""
    if cur:
        out.append(cur.lower())
    return out


def sentences(text):
    cuts = []
    k, n = 0, len(text)
    while k < n:
        if text[k] not in ".!?":
            k += 1
            continue
        e = k + 1
        while e < n and text[e] in CLOSERS:
            e += 1
        m = e
        while m < n and text[m].isspace():
            m += 1
        ok = m > e and m < n and (text[m].isupper() or text[m].isnumeric())
        if text[k] == ".":
            chunk = text[:k + 1].split()[-1] if text[:k + 1].split() else ""
            chunk = chunk.lstrip("([\"'“‘").lower()
            if chunk in ABBREV:
                ok = False
        if ok:
            cuts.append(e)
        k = max(e, k + 1)
    cuts.append(n)
    out, start = [], 0
    for c in cuts:
        piece = " ".join(text[start:c].split())
        start = c
        if piece:
            out.append(piece)
    return out


def lcs(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a)):
        for j in range(len(b)):
            table[i + 1][j + 1] = table[i][j] + 1 if a[i] == b[j] else max(table[i][j + 1], table[i + 1][j])
    return table[-1][-1]


def rouge_f1(cand, ref):
    l = lcs(cand, ref)
    p = l / len(cand) if cand else 0.0
    r = l / len(ref) if ref else 0.0
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def greedy_search(score, s0, s1, t0, t1, out):
    if s0 >= s1 or t0 >= t1:
        return
    best = None
    for i in range(s0, s1):
        for j in range(t0, t1):
            if best is None or score[i][j] > score[best[0]][best[1]]:
                best = (i, j)
    i, j = best
    out.append((i, j, score[i][j]))
    greedy_search(score, s0, i, t0, j, out)
    greedy_search(score, i + 1, s1, j + 1, t1, out)


def align(src_sents, tgt_sents, min_score):
    sw = [words(s) for s in src_sents]
    tw = [words(t) for t in tgt_sents]
    score = [[rouge_f1(t, s) for t in tw] for s in sw]
    out = []
    greedy_search(score, 0, len(sw), 0, len(tw), out)
    return sorted((p for p in out if p[2] >= min_score), key=lambda p: p[0])


def simplification(rec, min_score, lo, hi):
    ss, ts = sentences(rec["src"]), sentences(rec["tgt"])
    out = []
    for i, j, _ in align(ss, ts, min_score):
        if lo <= len(words(ss[i])) <= hi and lo <= len(words(ts[j])) <= hi:
            out.append({"id": f"{rec['id']}:s{i}-t{j}", "kind": "simplification", "src": ss[i], "tgt": ts[j]})
    return out


def background(rec, boundary, min_score):
    ss, ts = sentences(rec["src"]), sentences(rec["tgt"])
    pairs = align(ss, ts, min_score)
    if len(pairs) < boundary:
        return None
    i, j, _ = pairs[boundary - 1]
    src_side = ss[:i]
    tgt_side = ts[:j + 1] if boundary == 1 else ts[:j]
    if not src_side or not tgt_side:
        return None
    return {"id": f"{rec['id']}:bg{boundary}", "kind": "background",
            "src": " ".join(src_side), "tgt": " ".join(tgt_side)}


def dump(path, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")


def main():
    rng = random.Random(20231206)
    corpus = [make_record(rng, i) for i in range(50)]
    dump(HERE / "corpus50.jsonl", corpus)
    for min_score in (0.0, 0.3):
        tag = f"{int(min_score * 10):02d}"
        dump(HERE / f"simplification_min{tag}.jsonl",
             [p for r in corpus for p in simplification(r, min_score, 10, 150)])
        for b in (1, 2, 3):
            dump(HERE / f"background_b{b}_min{tag}.jsonl",
                 [p for r in corpus if (p := background(r, b, min_score))])


if __name__ == "__main__":
    main()
