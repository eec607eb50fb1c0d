"""Scanning for the structures that rule a scheme out.

Two scanner families provide diagnostics beyond the yes/no decision:
weight inequalities over induced triangles, paths, paws and diamonds, and
six forbidden induced subgraphs (C4, K4, P5, C5, co-banner, butterfly)
that exclude schemes regardless of weights.

Run with: python demos/03_scan_obstructions.py
"""

from pmas import parse_graph, scan_forbidden_subgraphs, scan_weight_lemmas

# A triangle with a pendant vertex: the paw. For a scheme to exist the
# triangle edge opposite the pendant must carry enough weight; here it
# does not, and the scanner pins down the exact inequality that fails.
paw = parse_graph(
    """
    p h 4
    h x 5
    h y 2
    x y 2
    """
)
for violation in scan_weight_lemmas(paw):
    vertices = [paw.label_of(v) for v in violation.vertices]
    print(f"{violation.lemma.value} violated on {vertices}: "
          f"{violation.lhs} < {violation.rhs}")

# Forbidden patterns are weight-independent. A five-cycle is one of them.
pentagon = parse_graph("1 2 9\n2 3 9\n3 4 9\n4 5 9\n5 1 9")
for hit in scan_forbidden_subgraphs(pentagon):
    print("forbidden:", hit.kind.value, sorted(pentagon.label_of(v) for v in hit.vertices))

# A clean dominant-pair double-star triggers nothing.
clean = parse_graph("u v 10\nu a 4\nv b 5\nu c 1\nc v 2")
print("clean double-star:",
      scan_weight_lemmas(clean), scan_forbidden_subgraphs(clean))

# Scanners are diagnostics, not the decision path: on large graphs the
# structural decision still answers instantly and certificates simply
# name the failing component.
