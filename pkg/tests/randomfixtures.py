"""Seeded generators for randomized inventories, corpora and instance lists."""
import random
from pathlib import Path

from glosswsd.disambiguate import DisambiguatedInstance
from glosswsd.inventory import SenseInventory, Synset
from glosswsd.model import PartOfSpeech, Resource, Source

SYLLABLES = ["ka", "lo", "mi", "ne", "ru", "ta", "vo", "zi", "pe", "su"]
POS_CHOICES = [PartOfSpeech.NOUN] * 4 + [PartOfSpeech.VERB, PartOfSpeech.ADJ, PartOfSpeech.ADV]


def words(rng: random.Random, n):
    vocab = set()
    while len(vocab) < n:
        vocab.add("".join(rng.choice(SYLLABLES) for _ in range(rng.randint(2, 3))))
    return sorted(vocab)


def write_corpus(rng: random.Random, root: Path, n_synsets=18, n_lemmas=10, n_glosses=12):
    """Write an inventory directory plus a vectors file; returns (inventory_dir, vectors_path)."""
    root.mkdir(parents=True, exist_ok=True)
    lemmas = words(rng, n_lemmas)
    synsets = []
    for i in range(n_synsets):
        pos = rng.choice(POS_CHOICES)
        lex = {(rng.choice(lemmas), "en") for _ in range(rng.randint(1, 2))}
        if rng.random() < 0.3:
            lex.add((rng.choice(lemmas), "es"))
        if rng.random() < 0.15:
            lex.add((rng.choice(lemmas) + "_" + rng.choice(lemmas), "en"))
        synsets.append((f"s{i:02d}", pos, sorted(lex)))
    (root / "synsets.tsv").write_text("".join(
        f"{sid}\t{pos.value}\t{'|'.join(f'{l}@{g}' for l, g in lex)}\n" for sid, pos, lex in synsets
    ), encoding="utf-8")

    ids = [sid for sid, _, _ in synsets]
    edges = []
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if rng.random() < 0.18:
                edges.append(f"{a}\t{b}\t{rng.uniform(0.05, 1.0):.3f}\n")
    (root / "edges.tsv").write_text("".join(edges), encoding="utf-8")

    gloss_lines = []
    for g in range(n_glosses):
        definiendum = rng.choice(ids)
        lang = rng.choice(["en", "en", "es"])
        text = " ".join(rng.choice(lemmas + ["the", "of", ","]) for _ in range(rng.randint(3, 9)))
        text = text[0].upper() + text[1:] + "."
        resource = rng.choice(list(Resource))
        gloss_lines.append(f"g{g:03d}\t{definiendum}\t{resource.value}\t{lang}\t{text}\n")
    (root / "glosses.tsv").write_text("".join(gloss_lines), encoding="utf-8")
    (root / "stopwords.en.txt").write_text("the\nof\n", encoding="utf-8")

    vectors = root / "vectors.tsv"
    with open(vectors, "w", encoding="utf-8") as handle:
        for sid in ids:
            if rng.random() < 0.85:
                vec = [rng.uniform(0.0, 1.0) for _ in range(3)]
                vec[0] += 0.01
                handle.write(sid + " " + " ".join(f"{x:.4f}" for x in vec) + "\n")
    return root, vectors


def random_instances(rng: random.Random, n_lemmas=5, n_instances=10):
    """An inventory with ambiguous lemmas and a document of instances over it."""
    lemmas = words(rng, n_lemmas)
    synsets, by_lemma = [], {}
    for lemma in lemmas:
        for k in range(rng.randint(1, 4)):
            pos = rng.choice(POS_CHOICES)
            sid = f"{lemma}.{pos.value}.{k}"
            synsets.append(Synset(sid, pos, ((lemma, "en"),)))
            by_lemma.setdefault(lemma, []).append((sid, pos))
    inventory = SenseInventory(synsets)
    vectors = {}
    for synset in synsets:
        if rng.random() < 0.8:
            vectors[synset.id] = [rng.uniform(0, 1) for _ in range(3)]
    instances = []
    for i in range(n_instances):
        lemma = rng.choice(lemmas)
        sid, pos = rng.choice(by_lemma[lemma])
        bf = rng.choice([rng.random(), 0.7, 1.0])
        source = Source.BABELFY if bf >= 0.7 else Source.MCS
        if source is Source.MCS:
            sid, pos = by_lemma[lemma][0]
        coh = rng.choice([0.0, 0.125, rng.random()])
        instances.append(DisambiguatedInstance(
            "g", Resource.WIKIPEDIA, "en", lemma, 8 * i, 8 * i + len(lemma), lemma, pos, sid,
            bf, coh, source, candidates=tuple(s for s, _ in by_lemma[lemma])))
    return inventory, vectors, instances
