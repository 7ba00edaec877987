"""Cutting polygonal loops at their self-crossings.

    python demos/torus_coproduct.py

A loop on the flat torus with one transverse double point, turned once
around its own parametrization, meets the diagonal twice.  The two hits cut
the loop into the same two pieces in opposite orders and with opposite
signs, and the pieces sit in different components of the loop space.
"""
import json
from pathlib import Path

import sympy

from looptopo import geometry as geo

DATA = Path(__file__).resolve().parent / "data"


def load(name):
    return geo.PolyLoop.from_record(json.loads((DATA / name).read_text()))


curl = load("torus_curl.json")
print("loop:", curl, " winding", curl.winding)
for c in geo.self_crossings(curl):
    print("crossing at", tuple(map(str, c.point)))

for r in geo.rotation_terms(curl):
    x, y = r.pair
    print(f"t = {float(sympy.N(r.t)):.4f}  s = {float(sympy.N(r.s)):.4f}  sign {r.sign:+d}  "
          f"pieces {geo.component_label(x)} x {geo.component_label(y)}")

chain = geo.rotation_coproduct(curl)
print("class of the coproduct:", geo.pair_chain_class(chain))
# the curl is contractible, so the deflated (lifted) version cancels
print("lifted class:", geo.pair_chain_class(geo.rotation_coproduct(curl, lifted=True)))

print()
octagon = load("circle.json")
print("embedded octagon:", geo.rotation_coproduct(octagon))

petal = load("triple_petal.json")
census = geo.basepoint_self_intersections(petal)
print("triple petal: returns at s =", [round(float(sympy.N(t)), 4) for t in census.times],
      " fold", census.fold)
first, second = geo.cut(petal, census.points[0])
print("  cut pieces:", first, "|", second)
assert geo.concat_optimal(first, second).vertices == petal.vertices

print()
h, v = load("torus_horizontal.json"), load("torus_vertical_near.json")
for eps in ("1/4", "1/10"):
    out = geo.cs_product_geometric(h, v, eps)
    print(f"stick product, eps = {eps}:", "outside the cutoff" if out is None
          else f"{out}  winding {out.winding}")
