"""Classify a few primes and compare the reduction with the classical tests."""

from circdet import classify_mod3, classify_mod5, classify_mod9
from circdet import oracles

for q in (11, 31, 211, 4871):
    v = classify_mod5(q)
    cert = v.reduction
    print(f"q={q:5d}  {v.label.value:8s}  unit exps (sign,I,J,K)={cert.unit_exponents}  key digit={cert.key_digit}")
    print(
        "         fibonacci:", oracles.fibonacci_artiad_test(q),
        " quintic:", oracles.quintic_residue_test(q),
        " jacobi:", oracles.jacobi_artiad_test(q)[0],
        " dickson:", oracles.dickson_artiad_test(q)[0],
    )

print()
for q in (7, 13, 61, 67):
    v = classify_mod3(q)
    print(f"q={q:3d}  {v.label.value}  4q = x^2 + 243 y^2: {oracles.binary_form_solution(q)}")

print()
for q in (19, 73, 991):
    v = classify_mod9(q)
    print(f"q={q:3d}  {v.label.value}  key levels: {[c.key_level for c in v.certificates]}")
