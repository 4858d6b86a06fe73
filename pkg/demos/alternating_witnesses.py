"""Three conjugates of an involution generating A5, S7 and PSL(2,7).

Run:  python3 demos/alternating_witnesses.py
"""

from nonsolv.perm import PermGroup, parse_cycles
from nonsolv.search import nonsolvable_certificate

CASES = [
    ("(12)(34)", 5, "(12345)", "(345)"),
    ("(16)(25)(34)", 7, "(1743526)", "(23654)"),
    ("(12)(34)(56)(78)", 8, "(143)(28567)", "(13)(265874)"),
]

for x_text, n, g1_text, g2_text in CASES:
    x, g1, g2 = (parse_cycles(t, n) for t in (x_text, g1_text, g2_text))
    H = PermGroup([x, x ** g1, x ** g2])
    cert = nonsolvable_certificate(H)
    print(f"x = {x_text} in S{n}")
    print(f"  x x^g1 = {(x * x ** g1).cycle_string()}   x x^g2 = {(x * x ** g2).cycle_string()}")
    print(f"  |<x, x^g1, x^g2>| = {H.order()}, derived series orders {cert.series_orders}, "
          f"coprime triple {cert.triple_orders}")
