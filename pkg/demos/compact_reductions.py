"""
Torsion-free subgroups from two finite reductions
=================================================

Walk through the compact six-dimensional example: load the outer normals, derive
the Coxeter diagram, check the kept triple and the retraction, then reduce the
orientation-reversing element delta modulo 7 and 11.
"""
from __future__ import annotations

from geobound.coxdiagram import derive_diagram, parabolic_lcm, triangle_type
from geobound.datasets import load_dataset
from geobound.grouphoms import (
    MatrixRep,
    RetractionMap,
    Word,
    no_torsion_premise,
    orientation_parity,
    reduction_order,
    retraction_check,
    subgroup_lemma_check,
)

space = load_dataset("P6-compact")
print(space.name, "over", space.form.ring, "with", len(space.roots), "outer normals")

# every root is spacelike and crystallographic, every reflection is an exact isometry
report = space.validate()
print("roots valid:", report.ok)
r6 = space.reflection(6)
print("checks on s6:", r6.check(space.form, space.root(6)))

diagram = derive_diagram(space)
kept = [6, 9, 17]
print("triangle type of", kept, "->", triangle_type(diagram, kept))
print(retraction_check(diagram, kept).text())

# the finite parabolics decide which primes are safe moduli
lcm = parabolic_lcm(diagram, max_size=space.dim)
print("lcm of finite parabolic orders:", lcm)
for p in (7, 11):
    print(f"  {p} safe:", no_torsion_premise(p, lcm, space.form.ring))

delta = Word.parse("7 13 18")
print("delta =", delta, "parity", orientation_parity(delta, MatrixRep(space)))
print("R(delta) =", RetractionMap(frozenset(kept)).evaluate(delta))

k7 = reduction_order(space, delta, 7)
k11 = reduction_order(space, delta, 11)
print("orders:", k7, "and", k11)
print(subgroup_lemma_check(k7, k11).text())
