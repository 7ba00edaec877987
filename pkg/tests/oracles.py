"""Independent reference values, written against plain tuples rather than the library.

Homology classes are ``("AU", k)`` / ``("U", k)``; chains are dicts from
tuples of such pairs to integers.  Only closed formulas live here.
"""
from __future__ import annotations

import math


def hdeg(n, fam, k):
    return k * (n - 1) + (n if fam == "U" else 0)


def cdeg(n, fam, m=0):
    return {"T": (m - 1) * (n - 1), "UT": m * (n - 1) + 1, "E0": 0, "EN": n}[fam]


def coproduct(fam, k):
    out = {}
    for j in range(1, k - 1):
        if fam == "AU":
            key = (("AU", j), ("AU", k - 1 - j))
            out[key] = out.get(key, 0) + 1
        else:
            for key in ((("AU", j), ("U", k - 1 - j)), (("U", j), ("AU", k - 1 - j))):
                out[key] = out.get(key, 0) + 1
    return out


def wedge_after_coproduct_U(k):
    """(2k - 4) AU(k-1) for k >= 3, as a dict."""
    return {("AU", k - 1): 2 * k - 4} if k >= 3 else {}


def t_closed_form(k):
    if k < 3:
        return {}
    c = (-1) ** k * ((k - 1) // 2)
    return {("AU", k - 2): c} if c else {}


def delta(fam, k):
    if fam == "AU" and k >= 1:
        return {("U", k - 1): (-1) ** k * k}
    return {}


def kronecker(cfam, m, hfam, k):
    dual = {"T": ("AU", m - 1), "UT": ("U", m - 1), "E0": ("AU", 0), "EN": ("U", 0)}[cfam]
    return 1 if dual == (hfam, k) else 0


def homology_level(k):
    return math.ceil(k / 2)


def frobenius_support(k):
    """Four terms of the defect for x = y = U(2k), all +1 in the degree-0 Koszul convention."""
    return {(("AU", 2 * k - 1), ("U", 2 * k)): 1, (("AU", 2 * k), ("U", 2 * k - 1)): 1,
            (("U", 2 * k - 1), ("AU", 2 * k)): 1, (("U", 2 * k), ("AU", 2 * k - 1)): 1}


def level_layout_n3():
    """Generators and degrees of the level table for n = 3, levels 0..3."""
    return {
        0: [("AU0", 0), ("U0", 3)],
        1: [("AU1", 2), ("AU2", 4), ("U1", 5), ("U2", 7)],
        2: [("AU3", 6), ("AU4", 8), ("U3", 9), ("U4", 11)],
        3: [("AU5", 10), ("AU6", 12), ("U5", 13), ("U6", 15)],
    }


def as_plain(chain):
    """Library Element/TensorChain -> dict keyed by (family, index) tuples."""
    out = {}
    for key, c in chain.terms.items():
        if isinstance(key, tuple):
            out[tuple((b.family, b.index) for b in key)] = c
        else:
            out[(key.family, key.index)] = c
    return out
