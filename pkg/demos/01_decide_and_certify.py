"""Deciding population monotonicity and reading the evidence.

A matching game on an edge-weighted graph admits a population monotonic
allocation scheme exactly when every component is a double-star whose two
centers form a dominant pair: the center edge outweighs the heaviest other
edge at each center combined. This walk-through decides a few games and
inspects the witnesses and counterexample certificates.

Run with: python demos/01_decide_and_certify.py
"""

from pmas import decide_population_monotonic, parse_graph

# A weighted path 1-2-3-4. The middle edge carries weight 3, which covers
# the two pendant edges (1 + 1), so centers {2, 3} form a dominant pair.
path = parse_graph(
    """
    1 2 1
    2 3 3
    3 4 1
    """
)
decision = decide_population_monotonic(path)
print("path with heavy middle edge:", decision.population_monotonic)
witness = decision.witnesses[0]
print("  centers:", [path.label_of(c) for c in witness.centers])
print("  sigma_u, sigma_v, margin:", witness.sigma_u, witness.sigma_v, witness.margin)

# Shrink the middle edge to exactly 1 + 1: dominance is a non-strict
# inequality, so the boundary case still admits a scheme.
boundary = parse_graph("1 2 1\n2 3 2\n3 4 1")
print("boundary path (2 = 1 + 1):",
      decide_population_monotonic(boundary).population_monotonic)

# The unit path breaks the dominance inequality and the decision hands back
# a violated weight inequality as the certificate.
flat = parse_graph("1 2 1\n2 3 1\n3 4 1")
decision = decide_population_monotonic(flat)
print("unit path:", decision.population_monotonic)
certificate = decision.certificate
print("  certificate:", certificate.lemma.value,
      [flat.label_of(v) for v in certificate.vertices],
      f"{certificate.lhs} < {certificate.rhs}")

# A four-cycle can never support a scheme, whatever the weights: the
# certificate is the forbidden induced subgraph itself.
cycle = parse_graph("a b 5\nb c 9\nc d 5\nd a 9")
decision = decide_population_monotonic(cycle)
print("four-cycle:", decision.population_monotonic)
print("  certificate:", decision.certificate.kind.value,
      sorted(cycle.label_of(v) for v in decision.certificate.vertices))
