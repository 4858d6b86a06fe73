"""Sweep the Sylow p-part rows for q = 2..5 and summarise by family."""

from collections import Counter

from nonsolv.bounds import sweep

tally = Counter()
reasons = Counter()
for r in sweep((2, 3, 4, 5)):
    status = {True: "pass", False: "FAIL", None: "skip"}[r.passes]
    tally[r.claim.family, status] += 1
    if r.passes is None:
        reasons[r.reason.split(" for ")[0]] += 1

for family in sorted({f for f, _ in tally}):
    print(f"{family:4s} pass {tally[family, 'pass']:3d}  skip {tally[family, 'skip']:3d}  fail {tally[family, 'FAIL']}")
print("skip reasons:")
for reason, n in reasons.most_common():
    print(f"  {n:3d}  {reason}")
