"""Exhaustive and stratified coefficient searches with exact measures.

Coefficient vectors (a_0, ..., a_d) are visited in lexicographic order.
The first positions form a prefix walked one index at a time (shards are
contiguous blocks of prefix indices); the remaining positions form a
suffix block handled as a numpy table.  Norms are screened in floating
point with an explicit error bound: a value is used only if rounding is
provably exact, otherwise the exact resultant is computed.  Every emitted
record is recomputed exactly before it leaves this module.
"""

from __future__ import annotations

import gzip
import hashlib
import itertools
import json
import math
import os
import random
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Callable, Iterable, Iterator

import numpy as np

from .cyclo import NormProfile, norm, norm_profile
from .errors import BudgetExceeded, FactorizationFailed, InfeasibleStrata, NotApplicable
from .ntheory import valuation
from .poly import IntPoly, cyclotomic_poly, resultant

SUFFIX_ROWS = 200_000
EPS = np.finfo(float).eps


# specs --------------------------------------------------------------------


@dataclass(frozen=True)
class Strata:
    """Fix the coefficient sums over residue classes j = r mod ``modulus``.

    Equivalently F mod x^modulus - 1 is fixed, which pins F(1) and every
    N_k with p^k dividing the modulus.  ``fixed`` pins single coefficients.
    """

    modulus: int
    sums: tuple[int, ...]
    fixed: tuple[tuple[int, int], ...] = ()

    def base(self) -> IntPoly:
        return IntPoly(self.sums)

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "sums": list(self.sums), "fixed": [list(x) for x in self.fixed]}

    @classmethod
    def from_dict(cls, d: dict) -> Strata:
        return cls(int(d["modulus"]), tuple(int(s) for s in d["sums"]), tuple(tuple(x) for x in d.get("fixed", ())))


@dataclass(frozen=True)
class SearchSpec:
    p: int
    t: int
    coefficient_set: tuple[int, ...] = (-1, 0, 1)
    max_degree: int = 12
    f1_targets: tuple[int, ...] | None = None
    vp_window: tuple[int, int] | None = None
    strata: Strata | None = None
    shard: tuple[int, int] = (0, 1)
    budget: int | None = None
    screen: bool = True

    def __post_init__(self):
        if self.p < 3 or self.t < 1:
            raise NotApplicable("need an odd prime p and t >= 1")
        i, k = self.shard
        if not 0 <= i < k:
            raise ValueError(f"bad shard {self.shard}")
        object.__setattr__(self, "coefficient_set", tuple(sorted(set(self.coefficient_set))))

    @property
    def n(self) -> int:
        return self.p**self.t

    def space_dict(self) -> dict:
        """Everything that determines the search space (not shard or budget)."""
        return {
            "p": self.p,
            "t": self.t,
            "coefficient_set": list(self.coefficient_set),
            "max_degree": self.max_degree,
            "f1_targets": None if self.f1_targets is None else list(self.f1_targets),
            "vp_window": None if self.vp_window is None else list(self.vp_window),
            "strata": None if self.strata is None else self.strata.to_dict(),
        }

    def to_dict(self) -> dict:
        d = self.space_dict()
        d.update(shard=list(self.shard), budget=self.budget, screen=self.screen)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SearchSpec:
        return cls(
            int(d["p"]),
            int(d["t"]),
            tuple(d["coefficient_set"]),
            int(d["max_degree"]),
            None if d.get("f1_targets") is None else tuple(int(x) for x in d["f1_targets"]),
            None if d.get("vp_window") is None else tuple(d["vp_window"]),
            None if d.get("strata") is None else Strata.from_dict(d["strata"]),
            tuple(d.get("shard", (0, 1))),
            d.get("budget"),
            d.get("screen", True),
        )

    def spec_hash(self) -> str:
        blob = json.dumps(self.space_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def with_shard(self, i: int, k: int) -> SearchSpec:
        return SearchSpec(**{**self.__dict__, "shard": (i, k)})


# records ----------------------------------------------------------------


def _small_factors(m: int, bound: int = 10_000) -> tuple[dict[int, int], int]:
    m = abs(m)
    out = {}
    q = 2
    while q < bound and q * q <= m:
        while m % q == 0:
            out[q] = out.get(q, 0) + 1
            m //= q
        q += 1 if q == 2 else 2
    if 1 < m < bound * bound:
        out[m] = out.get(m, 0) + 1
        m = 1
    return out, m


@dataclass
class MeasureRecord:
    F: IntPoly
    profile: NormProfile
    p: int
    p_valuation: int | None
    cofactor: int
    hints: dict[int, int] = field(default_factory=dict)
    unfactored: int = 1

    @classmethod
    def build(cls, F: IntPoly, p: int, t: int) -> MeasureRecord:
        prof = norm_profile(F, p, t)
        m = prof.measure
        if m == 0:
            return cls(F, prof, p, None, 0)
        v = valuation(m, p)
        cof = m // p**v
        hints, rest = _small_factors(cof)
        return cls(F, prof, p, v, cof, hints, rest)

    @property
    def t(self) -> int:
        return len(self.profile.norms)

    @property
    def measure(self) -> int:
        return self.profile.measure

    def to_dict(self) -> dict:
        return {
            "F": self.F.format(),
            "p": self.p,
            "t": self.t,
            "f1": str(self.profile.f_at_1),
            "norms": [str(x) for x in self.profile.norms],
            "measure": str(self.profile.measure),
            "vp": self.p_valuation,
            "m": str(self.cofactor),
            "hints": {str(q): e for q, e in sorted(self.hints.items())},
            "unfactored": str(self.unfactored),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict, verify: bool = True) -> MeasureRecord:
        F = IntPoly.parse(d["F"])
        p, t = int(d["p"]), int(d["t"])
        prof = NormProfile(int(d["f1"]), tuple(int(x) for x in d["norms"]), int(d["measure"]))
        rec = cls(
            F,
            prof,
            p,
            d["vp"],
            int(d["m"]),
            {int(q): int(e) for q, e in d.get("hints", {}).items()},
            int(d.get("unfactored", 1)),
        )
        if verify and norm_profile(F, p, t) != prof:
            raise ValueError(f"record for {d['F']} does not re-verify")
        return rec


# floating screening -------------------------------------------------------


@dataclass
class _RootTable:
    half: np.ndarray  # (positions, roots) one root from each conjugate pair


def _root_tables(p: int, t: int, positions: int) -> list[np.ndarray]:
    tables = []
    deg = np.arange(positions)[:, None]
    for k in range(1, t + 1):
        order = p**k
        js = np.array([j for j in range(1, (order + 1) // 2) if j % p])
        ang = 2 * np.pi * ((deg * js[None, :]) % order) / order
        tables.append(np.exp(1j * ang))
    return tables


def screen_norms(rows: np.ndarray, tables: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Float norms and a flag per (row, level) that rounding is provably exact.

    Bound: each |F(z)| carries absolute error <= 2 (d + 3) u sum|a_j|; the
    relative errors of the |F(z)|^2 factors compound multiplicatively.
    """
    rows_f = rows.astype(float)
    n_pos = rows.shape[1]
    l1 = np.abs(rows_f).sum(axis=1)
    abs_err = 2 * (n_pos + 3) * EPS * l1 + 1e-300
    vals = np.empty((rows.shape[0], len(tables)))
    ok = np.empty((rows.shape[0], len(tables)), dtype=bool)
    for k, Z in enumerate(tables):
        V = rows_f @ Z
        mod = np.abs(V)
        lower = mod - abs_err[:, None]
        good = np.all(lower > 0, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            e = np.where(lower > 0, abs_err[:, None] / np.where(lower > 0, lower, 1.0), np.inf)
            rel = 2 * e + e * e + 4 * EPS
            log_rel = np.log1p(rel).sum(axis=1) + Z.shape[1] * 2 * EPS
            approx = np.prod(mod * mod, axis=1)
            bound = 2 * approx * np.expm1(log_rel)
        vals[:, k] = approx
        ok[:, k] = good & (bound < 0.25) & (approx < 2.0**51)
    return vals, ok


def _vp_array(x: np.ndarray, p: int) -> np.ndarray:
    x = np.abs(x.astype(np.int64))
    v = np.zeros(x.shape, dtype=np.int64)
    live = x != 0
    while True:
        div = live & (x % p == 0)
        if not div.any():
            break
        v[div] += 1
        x[div] //= p
    return v


# enumeration core ---------------------------------------------------------


class _Evaluator:
    """Batch evaluation and window filtering shared by all enumerators."""

    def __init__(self, spec: SearchSpec, positions: int):
        self.spec = spec
        self.tables = _root_tables(spec.p, spec.t, positions)
        self.phis = [cyclotomic_poly(spec.p, k) for k in range(1, spec.t + 1)]
        self.screened = 0
        self.exact_fallbacks = 0

    def _exact_norm(self, row, k: int) -> int:
        F = IntPoly(int(a) for a in row)
        if F.is_zero():
            return 0
        return resultant(self.phis[k], F % self.phis[k])

    def records(self, rows: np.ndarray) -> list[MeasureRecord]:
        spec = self.spec
        if rows.shape[0] == 0:
            return []
        p = spec.p
        f1 = rows.sum(axis=1)
        win = spec.vp_window
        if spec.screen and win is not None:
            vals, ok = screen_norms(rows, self.tables)
            self.screened += rows.shape[0]
            keep = []
            for r in range(rows.shape[0]):
                if f1[r] == 0:
                    continue
                v = valuation(int(f1[r]), p)
                zero = False
                for k in range(spec.t):
                    if ok[r, k]:
                        nk = int(round(vals[r, k]))
                    else:
                        self.exact_fallbacks += 1
                        nk = self._exact_norm(rows[r], k)
                    if nk == 0:
                        zero = True
                        break
                    v += valuation(nk, p)
                    if v > win[1]:
                        break
                if not zero and win[0] <= v <= win[1]:
                    keep.append(r)
        else:
            keep = range(rows.shape[0])
        out = []
        for r in keep:
            rec = MeasureRecord.build(IntPoly(int(a) for a in rows[r]), p, spec.t)
            if win is not None and (rec.p_valuation is None or not win[0] <= rec.p_valuation <= win[1]):
                if spec.screen:
                    raise ArithmeticError(f"screening disagreed with exact evaluation for {rec.F}")
                continue
            out.append(rec)
        return out


def _reachable(s: int, remaining: int, cset: tuple[int, ...], targets) -> bool:
    if targets is None:
        return True
    lo, hi = s + remaining * cset[0], s + remaining * cset[-1]
    return any(lo <= x <= hi for x in targets)


def _split(positions: int, radix: int) -> int:
    """Suffix length L with radix^L near SUFFIX_ROWS."""
    L = 0
    while L < positions and radix ** (L + 1) <= SUFFIX_ROWS:
        L += 1
    return max(L, min(positions, 1))


def prefix_layout(spec: SearchSpec) -> tuple[int, int, int]:
    """(prefix length, suffix length, number of prefixes)."""
    positions = spec.max_degree + 1
    R = len(spec.coefficient_set)
    L = _split(positions, R)
    P = positions - L
    return P, L, R**P


def shard_range(spec: SearchSpec) -> tuple[int, int]:
    _, _, N = prefix_layout(spec)
    i, k = spec.shard
    return i * N // k, (i + 1) * N // k


def _decode(idx: int, P: int, cset: tuple[int, ...]) -> list[int]:
    R = len(cset)
    out = [0] * P
    for pos in range(P - 1, -1, -1):
        idx, d = divmod(idx, R)
        out[pos] = cset[d]
    return out


def _iter_prefixes(spec: SearchSpec, lo: int, hi: int, P: int) -> Iterator[tuple[int, list[int]]]:
    cset, R = spec.coefficient_set, len(spec.coefficient_set)
    positions = spec.max_degree + 1
    idx = lo
    while idx < hi:
        pre = _decode(idx, P, cset)
        s, bad = 0, None
        for k in range(P):
            s += pre[k]
            if not _reachable(s, positions - k - 1, cset, spec.f1_targets):
                bad = k
                break
        if bad is None:
            yield idx, pre
            idx += 1
        else:
            step = R ** (P - bad - 1)
            idx = (idx // step + 1) * step


def enumerate_measures(
    spec: SearchSpec, sink: Callable[[MeasureRecord], None] | None = None, cursor: int | None = None
) -> Iterator[MeasureRecord]:
    """Visit every vector of the (sharded) space once and yield matching records.

    With a budget, BudgetExceeded is raised before the first prefix that
    would overrun it (the first prefix of a call always runs); its
    resume_token holds the prefix cursor to restart from.
    """
    if spec.strata is not None:
        yield from stratified_family_search(spec.p, spec.t, spec.strata, spec, sink=sink)
        return
    if not spec.coefficient_set or spec.max_degree < 0:
        return
    P, L, _ = prefix_layout(spec)
    lo, hi = shard_range(spec)
    if cursor is not None:
        lo = max(lo, cursor)
    suffix = np.array(list(itertools.product(spec.coefficient_set, repeat=L)), dtype=np.int64).reshape(-1, L)
    ssum = suffix.sum(axis=1)
    ev = _Evaluator(spec, P + L)
    visited = 0
    for idx, pre in _iter_prefixes(spec, lo, hi, P):
        s = sum(pre)
        if spec.f1_targets is None:
            block = suffix
        else:
            block = suffix[np.isin(ssum, [x - s for x in spec.f1_targets])]
        if block.shape[0] == 0:
            continue
        # at least one prefix per call, so a tiny budget still makes progress
        if spec.budget is not None and visited and visited + block.shape[0] > spec.budget:
            raise BudgetExceeded(
                f"budget {spec.budget} reached at prefix {idx}",
                {"cursor": idx, "spec_hash": spec.spec_hash(), "shard": list(spec.shard)},
            )
        visited += block.shape[0]
        rows = np.hstack([np.tile(np.array(pre, dtype=np.int64), (block.shape[0], 1)), block]) if P else block
        for rec in ev.records(rows):
            if sink is not None:
                sink(rec)
            yield rec
    enumerate_measures.last_stats = {"visited": visited, "exact_fallbacks": ev.exact_fallbacks}


enumerate_measures.last_stats = {}


def space_size(spec: SearchSpec) -> int:
    return len(spec.coefficient_set) ** (spec.max_degree + 1)


# stratified families -------------------------------------------------------


def _class_layout(strata: Strata, max_degree: int) -> list[tuple[list[int], int]]:
    """Per residue class: free positions and the sum they must carry."""
    fixed = dict(strata.fixed)
    out = []
    for r in range(strata.modulus):
        pos = [j for j in range(r, max_degree + 1, strata.modulus)]
        need = strata.sums[r] - sum(fixed.get(j, 0) for j in pos)
        out.append(([j for j in pos if j not in fixed], need))
    return out


def _class_vectors(n: int, need: int, cset: tuple[int, ...]) -> list[tuple[int, ...]]:
    if cset == (0, 1):
        if not 0 <= need <= n:
            return []
        out = []
        for ones in itertools.combinations(range(n), need):
            v = [0] * n
            for j in ones:
                v[j] = 1
            out.append(tuple(v))
        return sorted(out)
    return [v for v in itertools.product(cset, repeat=n) if sum(v) == need]


def _class_count(n: int, need: int, cset: tuple[int, ...]) -> int:
    if cset == (0, 1):
        return comb(n, need) if 0 <= need <= n else 0
    # coefficient of x^need in (sum x^c)^n
    poly = {0: 1}
    for _ in range(n):
        nxt = {}
        for s, c in poly.items():
            for a in cset:
                nxt[s + a] = nxt.get(s + a, 0) + c
        poly = nxt
    return poly.get(need, 0)


def check_strata(strata: Strata, spec: SearchSpec) -> list[tuple[list[int], int]]:
    if len(strata.sums) != strata.modulus:
        raise InfeasibleStrata("one sum per residue class is required")
    total = sum(strata.sums)
    if spec.f1_targets is not None and total not in spec.f1_targets:
        raise InfeasibleStrata(f"class sums add to {total}, outside the F(1) targets {spec.f1_targets}")
    layout = _class_layout(strata, spec.max_degree)
    cset = spec.coefficient_set
    for r, (free, need) in enumerate(layout):
        if not len(free) * cset[0] <= need <= len(free) * cset[-1]:
            raise InfeasibleStrata(f"class {r} cannot reach sum {need} with {len(free)} free coefficients")
    return layout


def stratum_size(strata: Strata, spec: SearchSpec) -> int:
    size = 1
    for free, need in check_strata(strata, spec):
        size *= _class_count(len(free), need, spec.coefficient_set)
    return size


def _assemble_member(layout, choice, strata: Strata, max_degree: int) -> list[int]:
    row = [0] * (max_degree + 1)
    for j, a in strata.fixed:
        row[j] = a
    for (free, _), vec in zip(layout, choice):
        for j, a in zip(free, vec):
            row[j] = a
    return row


def pinned_levels(p: int, modulus: int) -> int:
    """Largest s with p^s dividing the modulus: N_1..N_s are fixed by the strata."""
    s = 0
    while modulus % p ** (s + 1) == 0:
        s += 1
    return s


def stratified_family_search(
    p: int,
    t: int,
    strata: Strata,
    inner_spec: SearchSpec,
    sample: int | None = None,
    seed: int = 0,
    batch: int = 4096,
    sink: Callable[[MeasureRecord], None] | None = None,
) -> Iterator[MeasureRecord]:
    """Walk (or sample) the polynomials meeting the class sums.

    Members come in class-product order: class 0 varies slowest.  Every
    record's pinned norms are checked against the folded base polynomial.
    """
    spec = SearchSpec(**{**inner_spec.__dict__, "p": p, "t": t, "strata": strata})
    layout = check_strata(strata, spec)
    s = min(pinned_levels(p, strata.modulus), t)
    base = strata.base()
    pinned = tuple(norm(base, p, k) for k in range(1, s + 1))
    ev = _Evaluator(spec, spec.max_degree + 1)

    if sample is None:
        per_class = [_class_vectors(len(free), need, spec.coefficient_set) for free, need in layout]
        members: Iterable = itertools.product(*per_class)
    else:
        rng = random.Random(seed)
        members = (_sample_choice(layout, spec.coefficient_set, rng) for _ in range(sample))

    buf = []

    def flush():
        rows = np.array(buf, dtype=np.int64)
        buf.clear()
        for rec in ev.records(rows):
            if rec.profile.f_at_1 != base.at_one() or rec.profile.norms[:s] != pinned:
                raise ArithmeticError(f"stratum member {rec.F} misses the pinned norms")
            if sink is not None:
                sink(rec)
            yield rec

    for choice in members:
        buf.append(_assemble_member(layout, choice, strata, spec.max_degree))
        if len(buf) >= batch:
            yield from flush()
    if buf:
        yield from flush()


def _sample_choice(layout, cset, rng: random.Random):
    out = []
    for free, need in layout:
        n = len(free)
        if cset == (0, 1):
            ones = set(rng.sample(range(n), need))
            out.append(tuple(1 if j in ones else 0 for j in range(n)))
        else:
            while True:
                v = tuple(rng.choice(cset) for _ in range(n))
                if sum(v) == need:
                    out.append(v)
                    break
    return out


def quadratic_base_solutions(f1: int = 27, n1: int = 3, bound: int = 200) -> list[tuple[int, int, int]]:
    """All (c0, c1, c2) with c0 + c1 + c2 = f1 and N_1(c0 + c1 x + c2 x^2) = n1 (p = 3)."""
    out = []
    for c0 in range(-bound, bound + 1):
        for c1 in range(-bound, bound + 1):
            c2 = f1 - c0 - c1
            if c0 * c0 + c1 * c1 + c2 * c2 - c0 * c1 - c1 * c2 - c0 * c2 == n1:
                out.append((c0, c1, c2))
    return out


def folded_base_count(p: int, level: int, total: int, norm_target: int, class_sums=None, cap: int | None = None) -> int:
    """Count nonnegative g = b_0 + ... + b_{d-1} x^{d-1} (d = p^level) with b_0 b_1 > 0,

    g(1) = total, N_level(g) = norm_target, and optional sums over classes mod p.
    ``cap`` bounds each coefficient.
    """
    d = p**level
    top = total if cap is None else min(cap, total)
    count = 0

    def rec(pos, left, acc):
        nonlocal count
        if pos == d - 1:
            b = left
            if b > top:
                return
            g = acc + [b]
            if class_sums is not None:
                for r in range(p):
                    if sum(g[r::p]) != class_sums[r]:
                        return
            if norm(IntPoly(g), p, level) == norm_target:
                count += 1
            return
        lo = 1 if pos < 2 else 0
        for b in range(lo, min(top, left) + 1):
            g = acc + [b]
            if class_sums is not None and pos >= d - p:
                r = pos % p
                if sum(g[r::p]) != class_sums[r]:
                    continue
            rec(pos + 1, left - b, g)

    rec(0, total, [])
    return count


# persistence ---------------------------------------------------------------


def _open(path: str, mode: str):
    if path.endswith(".gz"):
        return gzip.open(path, mode + "t")
    return open(path, mode)


def write_records(path: str, records: Iterable[MeasureRecord], append: bool = False) -> int:
    n = 0
    with _open(path, "a" if append else "w") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
            n += 1
    return n


def read_records(path: str, verify: bool = True) -> list[MeasureRecord]:
    out = []
    with _open(path, "r") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(MeasureRecord.from_dict(json.loads(line), verify=verify))
    return out


def run_search(spec: SearchSpec, out_path: str, manifest_path: str | None = None, resume: bool = False) -> dict:
    """Enumerate into a JSON-lines file and keep a manifest with a resume cursor."""
    manifest_path = manifest_path or out_path + ".manifest.json"
    cursor = None
    count = 0
    if resume and os.path.exists(manifest_path):
        with open(manifest_path) as fh:
            man = json.load(fh)
        if man["spec_hash"] != spec.spec_hash() or list(man["shard"]) != list(spec.shard):
            raise ValueError("manifest belongs to a different search")
        if man["complete"]:
            return man
        cursor, count = man["cursor"], man["records"]
        _truncate_lines(out_path, count)
    elif os.path.exists(out_path):
        os.remove(out_path)
    man = {"spec": spec.to_dict(), "spec_hash": spec.spec_hash(), "shard": list(spec.shard)}
    fh = _open(out_path, "a")
    try:
        for rec in enumerate_measures(spec, cursor=cursor):
            fh.write(rec.to_json() + "\n")
            count += 1
        man.update(cursor=shard_range(spec)[1], complete=True, records=count)
    except BudgetExceeded as exc:
        man.update(cursor=exc.resume_token["cursor"], complete=False, records=count)
        fh.close()
        _write_manifest(manifest_path, man)
        raise
    finally:
        if not fh.closed:
            fh.close()
    _write_manifest(manifest_path, man)
    return man


def _truncate_lines(path: str, keep: int) -> None:
    if not os.path.exists(path):
        return
    with _open(path, "r") as fh:
        lines = fh.readlines()[:keep]
    with _open(path, "w") as fh:
        fh.writelines(lines)


def _write_manifest(path: str, man: dict) -> None:
    with open(path, "w") as fh:
        json.dump(man, fh, indent=1, sort_keys=True)


def run_sharded(spec: SearchSpec, shards: int, workers: int = 1) -> list[MeasureRecord]:
    """Run every shard and concatenate in shard order (scheduling-independent)."""
    specs = [spec.with_shard(i, shards) for i in range(shards)]
    if workers <= 1:
        parts = [list(enumerate_measures(s)) for s in specs]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_collect, specs))
    return [r for part in parts for r in part]


def _collect(spec: SearchSpec) -> list[MeasureRecord]:
    return list(enumerate_measures(spec))


# audits ---------------------------------------------------------------------


@dataclass
class AuditReport:
    records: int = 0
    violations: list[dict] = field(default_factory=list)
    unknown: list[dict] = field(default_factory=list)
    flagged: list[dict] = field(default_factory=list)
    by_valuation: dict[int, int] = field(default_factory=dict)
    question_candidates: list[dict] = field(default_factory=list)
    membership_checked: int = 0

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "records": self.records,
            "violations": self.violations,
            "unknown": self.unknown,
            "flagged": self.flagged,
            "by_valuation": {str(k): v for k, v in sorted(self.by_valuation.items())},
            "question_candidates": self.question_candidates,
            "membership_checked": self.membership_checked,
            "clean": self.clean,
        }


def _genuine_prime_levels(m: int, levels: list[int], p: int) -> bool:
    """Distinct primes q_i = 1 mod p^i dividing m, one per level."""
    from .ntheory import factor

    primes = sorted(factor(m))
    used = set()
    for i in sorted(levels, reverse=True):
        pick = next((q for q in primes if q not in used and q % p**i == 1), None)
        if pick is None:
            return False
        used.add(pick)
    return True


def corpus_audit(records: Iterable[MeasureRecord], budget: int = 200_000) -> AuditReport:
    """Check divisibility, valuation profiles and the qualifying-prime claims."""
    from .classify import Label, classify_mod3, classify_mod9
    from .membership import member_z25, member_z27, theorem1_check

    rep = AuditReport()
    for rec in records:
        rep.records += 1
        p, t, v = rec.p, rec.t, rec.p_valuation
        key = rec.F.format()
        if v is None:
            continue
        rep.by_valuation[v] = rep.by_valuation.get(v, 0) + 1
        if 1 <= v <= t:
            rep.violations.append({"F": key, "check": "divisibility", "v": v})
        if t + 1 <= v <= 2 * t:
            ok = valuation(rec.profile.f_at_1, p) == v - t and all(valuation(x, p) == 1 for x in rec.profile.norms)
            if not ok:
                rep.violations.append({"F": key, "check": "valuation-profile", "v": v})
        D = rec.measure
        try:
            if (p, t) == (5, 2):
                verdict = member_z25(D, budget)
            elif (p, t) == (3, 3):
                verdict = member_z27(D, budget)
            else:
                verdict = None
            if verdict is not None:
                rep.membership_checked += 1
                if not verdict.is_member:
                    rep.violations.append({"F": key, "check": "membership", "measure": str(D), "reason": verdict.reason})
                elif verdict.reason["kind"] == "qualifying-prime":
                    q = verdict.reason["q"]
                    tags = []
                    if p == 3 and q % 3 == 1:
                        if classify_mod3(q).label == Label.TYPE1:
                            tags.append("Type1 mod 3")
                        if q % 9 == 1:
                            tags.append(f"{classify_mod9(q).label.value} mod 9")
                    rep.flagged.append({"F": key, "m": str(rec.cofactor), "q": q, "tags": tags})
            if (p >= 5 and t >= 2) or (p == 3 and t >= 3):
                chk = theorem1_check(p, t, D, budget)
                if chk.status == "Excluded":
                    rep.violations.append({"F": key, "check": "exclusion", "measure": str(D)})
                elif t + 1 <= v <= 2 * t - 1:
                    levels = [int(round(math.log(mod, p))) for mod in chk.required]
                    if not _genuine_prime_levels(abs(rec.cofactor), levels, p):
                        rep.question_candidates.append({"F": key, "m": str(rec.cofactor), "levels": levels})
        except FactorizationFailed as exc:
            rep.unknown.append({"F": key, "m": str(rec.cofactor), "cofactor": str(exc.cofactor)})
    return rep


@dataclass
class ProbeReport:
    p: int
    t: int
    j: int
    visited: int
    hits: list[MeasureRecord]
    nearest: list[tuple[int, str]]

    @property
    def excluded_holds(self) -> bool:
        return not self.hits

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "j": self.j,
            "visited": self.visited,
            "hits": [r.F.format() for r in self.hits],
            "nearest": [{"m": str(m), "F": f} for m, f in self.nearest],
        }


def exclusion_probe(p: int, t: int, j: int, spec: SearchSpec, keep: int = 10) -> ProbeReport:
    """Exhaustively confirm that no F in the space has measure +-p^j.

    Also lists the smallest |m| attained as p^j m.
    """
    if not t + 1 <= j <= 2 * t - 1:
        raise NotApplicable(f"j = {j} is outside t+1..2t-1")
    spec = SearchSpec(**{**spec.__dict__, "p": p, "t": t, "vp_window": (j, j)})
    hits, best = [], {}
    for rec in enumerate_measures(spec):
        m = abs(rec.cofactor)
        if m == 1:
            hits.append(rec)
        if m not in best:
            best[m] = rec.F.format()
    visited = enumerate_measures.last_stats.get("visited", 0)
    nearest = sorted(best.items())[:keep]
    return ProbeReport(p, t, j, visited, hits, nearest)
