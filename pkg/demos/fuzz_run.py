"""Push random cubics with two fixed critical points through the pipeline.

Each instance is saturated from the standard seed curves; every irreducible
block with certified lambda >= 1 must contain a Levy cycle.  Pass a count
and a seed on the command line to change the run.
"""
import sys

from thurston_kit import GeneratorConfig, fuzz_cubic

count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 7
summary = fuzz_cubic(GeneratorConfig(seed=seed, count=count))
print(summary)
shown = 0
for r in summary.results:
    for o in r.obstructions:
        if shown < 5:
            print(f"instance {r.index}: {[str(c) for c in o.curves]} "
                  f"lambda in [{float(o.bounds.lower):.6f}, {float(o.bounds.upper):.6f}], "
                  f"case {o.case.case if o.case else None}")
            shown += 1
sys.exit(1 if summary.flags else 0)
