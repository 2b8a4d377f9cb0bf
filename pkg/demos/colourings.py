"""
Colourings of the dodecahedron and the 120-cell
===============================================

Search for a face labelling that makes the twelve-colour assignment proper, then
extend it to the 120-cell by giving every new facet its own basis vector.
"""
from __future__ import annotations

from geobound.colouring import (
    DODECAHEDRON_COLOURS,
    Colouring,
    cell120_colouring,
    check_orientable,
    check_proper,
    colouring_rank,
    dodecahedron_constraints,
    find_proper_labelling,
)
from geobound.grouphoms import ColouringMap, RetractionMap
from geobound.polymodel import cell120_model, dodecahedron_model, raw_dodecahedron

# the faces of the raw model are numbered by icosahedron vertex order;
# the search keeps face 5 surrounded by 1, 3, 9, 11, 6
search = find_proper_labelling(raw_dodecahedron(), DODECAHEDRON_COLOURS, dodecahedron_constraints())
print("labelling found after", search.nodes, "nodes:", search.mapping)

lam = Colouring.from_list(DODECAHEDRON_COLOURS, 3)
model = dodecahedron_model()
print(check_proper(model, lam).text())
print(check_orientable(lam).text())
print("rank", colouring_rank(lam).rank, "so the kernel has index", colouring_rank(lam).index)

# words in the kernel of lambda that the retraction onto {1, 3, 9, 11} keeps or kills
phi = ColouringMap(lam)
R = RetractionMap(frozenset({1, 3, 9, 11}))
for w in ("1 11", "1 9 1 9", "1 3 11 3", "2 4 6"):
    print(f"  lambda({w}) = {phi.evaluate(w)}   R({w}) = {R.evaluate(w)}")

big = cell120_colouring()
cell = cell120_model()
print("\n120-cell:", len(cell.facets), "facets,", len(cell.vertices), "vertices,", len(cell.edges), "edges")
print(check_proper(cell, big).text().splitlines()[0])
print("rank", colouring_rank(big).rank)
