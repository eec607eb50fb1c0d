"""Cross-validating the recognizer against the exact feasibility oracle.

Scheme existence is also a finite linear feasibility question: one variable
per (coalition, member) pair, an efficiency equality per coalition, and a
monotonicity inequality per cover pair. The oracle decides that system with
exact rational pivoting and never consults the double-star recognizer, so
agreement between the two is real evidence.

Run with: python demos/04_oracle_cross_validation.py
"""

import json

from pmas import (
    build_feasibility_system,
    equivalence_harness,
    parse_graph,
    pmas_feasibility,
    verify_scheme,
)

# The triangle (1, 1, 2) sits exactly on the boundary: the heavy edge
# equals the sum of the light ones. Feasible - and a thousandth less is not.
tight = parse_graph("1 2 1\n1 3 1\n2 3 2")
feasible, scheme = pmas_feasibility(tight)
print("triangle (1,1,2):", feasible, "| scheme verifies:", verify_scheme(tight, scheme).ok)

short = parse_graph("1 2 1\n1 3 1\n2 3 1999/1000")
print("triangle (1,1,1.999):", pmas_feasibility(short)[0])

# The system the oracle decides, in its literal form.
system = build_feasibility_system(tight)
print(
    f"system size at n=3: {len(system.variables)} variables, "
    f"{len(system.equalities)} equalities, {len(system.inequalities)} cover inequalities"
)

# The harness sweeps every small instance (all edge subsets, weights from
# {1, 2}) plus seeded random graphs, and reports any disagreement between
# the structural decision and the oracle, serialized for replay.
report = equivalence_harness(max_n=4, trials=200, seed=7)
print(json.dumps(report, sort_keys=True, indent=2))
