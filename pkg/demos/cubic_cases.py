"""Compare the three obstruction cases on the shipped cubics.

Every cubic here has exactly two fixed critical points.  For each one the
script certifies the obstruction, looks for a Levy cycle and reports which
face of the multicurve decides the case.
"""
from thurston_kit import (
    QUADRATIC_LIKE,
    classify_obstruction_case,
    find_levy_cycles,
    get_entry,
    structural_checks,
    verify_main_theorem,
)

for name in ("newton-like", "quadratic-like", "removable-levy"):
    entry = get_entry(name)
    P, G = entry.load(), entry.multicurve()
    print(f"== {name}")
    print(f"multicurve: {[str(c) for c in G]}")
    print(verify_main_theorem(P, G))
    for cyc in find_levy_cycles(P, G).cycles:
        print(f"Levy cycle {cyc}")
    report = classify_obstruction_case(P, G, depth=3)
    print(report)
    if report.case == QUADRATIC_LIKE:
        print(structural_checks(P, G))
    print()
