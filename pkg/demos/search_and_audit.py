"""Small exhaustive search in Z_27, an audit of its output and an exclusion probe."""

import time

from circdet.search import SearchSpec, corpus_audit, enumerate_measures, exclusion_probe

spec = SearchSpec(3, 3, (0, 1), 12, (3, 9), (4, 5))
t0 = time.perf_counter()
records = list(enumerate_measures(spec))
print(f"{len(records)} records with 3^4 or 3^5 exactly dividing the measure ({time.perf_counter() - t0:.1f}s)")
cofactors = sorted({abs(r.cofactor) for r in records})
print("smallest cofactors m:", cofactors[:12])

rep = corpus_audit(records)
print(f"audit: clean={rep.clean}, by valuation {rep.by_valuation}, unknown={len(rep.unknown)}")

probe = exclusion_probe(5, 2, 3, SearchSpec(5, 2, (-1, 0, 1), 10, (5, -5)))
print(f"probe Z_25 for +-125 over {probe.visited} polynomials: hits={len(probe.hits)}, nearest m={[m for m, _ in probe.nearest[:5]]}")
