"""Decide membership of a few values and print verified witness polynomials."""

from circdet import member_z25, member_z27
from circdet.witness import witness_for_value

for n, D in ((25, 1375), (25, 125 * 211), (25, -125 * 11 * 3), (27, 81 * 19), (27, 81 * 73), (27, 243 * 73), (27, 243 * 7)):
    verdict = (member_z25 if n == 25 else member_z27)(D)
    line = f"Z_{n}  D={D:8d}  {verdict.decision:9s} ({verdict.reason['kind']})"
    if verdict.is_member:
        plan = witness_for_value(n, D)
        line += f"\n      F = {plan.F.format()}\n      profile {plan.profile.as_tuple()}  verified={plan.verify()}"
    print(line)
