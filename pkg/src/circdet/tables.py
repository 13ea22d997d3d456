"""Prime tables per label below a bound."""

from __future__ import annotations

from dataclasses import dataclass

from .classify import classify_mod3, classify_mod5, classify_mod9
from .ntheory import primes_congruent

CONTEXTS = {
    # name: (modulus, residue, classifier)
    "mod5": (5, 1, classify_mod5),
    "mod9": (9, 1, classify_mod9),
    "mod4mod9": (9, 4, classify_mod3),
    "mod7mod9": (9, 7, classify_mod3),
    "mod3": (3, 1, classify_mod3),
}

CLASSIFY_LIMIT = 10**6


@dataclass
class TableReport:
    context: str
    bound: int
    lists: dict[str, list[int]]

    @property
    def counts(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.lists.items()}

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "bound": self.bound,
            "counts": self.counts,
            "lists": {k: [str(q) for q in v] for k, v in self.lists.items()},
        }


def _labels_for(context: str) -> list[str]:
    if context == "mod5":
        return ["Perissad", "Artiad"]
    if context == "mod9":
        return ["Type1", "Type3", "Type4"]
    return ["Type1", "Type2"]


def _classify_chunk(args):
    context, qs = args
    fn = CONTEXTS[context][2]
    return [(q, fn(q).label.value) for q in qs]


def tables(context: str, bound: int, workers: int = 1) -> TableReport:
    if context not in CONTEXTS:
        raise ValueError(f"unknown table context {context!r}")
    if bound > CLASSIFY_LIMIT:
        raise ValueError(f"bound {bound} exceeds the classification limit {CLASSIFY_LIMIT}")
    modulus, residue, _ = CONTEXTS[context]
    qs = [q for q in primes_congruent(modulus, residue, bound) if q != modulus]
    if workers > 1 and len(qs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [(context, qs[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = [x for part in pool.map(_classify_chunk, chunks) for x in part]
    else:
        pairs = _classify_chunk((context, qs))
    lists = {label: [] for label in _labels_for(context)}
    for q, label in sorted(pairs):
        lists.setdefault(label, []).append(q)
    return TableReport(context, bound, lists)
