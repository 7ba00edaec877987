"""Exact string topology of odd spheres and of polygonal loops in flat surfaces.

Three layers:

* ``graded``: integer formal sums of labelled basis classes, tensor chains
  and the Koszul signs relating them;
* ``sphere``: loop products, the loop coproduct, the BV operator and the
  Kronecker pairing for the free loop space of an odd sphere;
* ``geometry``: polygonal loops in the plane and on the flat torus, the
  stick constructions behind the products, and the coproduct of a rotation
  family computed from self-crossings.
"""
from .errors import ContractError, DegenerateGeometryError, ParseError
from .geometry import (
    LoopPoint,
    PairChain,
    PolyLoop,
    basepoint_self_intersections,
    component_label,
    concat_optimal,
    cs_product_geometric,
    cut,
    length_energy,
    pair_chain_class,
    rotation_coproduct,
    stick_retraction_gh,
)
from .graded import (
    BasisLabel,
    Element,
    TensorChain,
    add,
    apply_in_slot,
    pair_tensor,
    tensor,
    twist,
)
from .serialize import format_value, parse_expression
from .sphere import Multiplicity, SphereContext

__all__ = [
    "BasisLabel", "ContractError", "DegenerateGeometryError", "Element", "LoopPoint",
    "Multiplicity", "PairChain", "ParseError", "PolyLoop", "SphereContext", "TensorChain",
    "add", "apply_in_slot", "basepoint_self_intersections", "component_label",
    "concat_optimal", "cs_product_geometric", "cut", "format_value", "length_energy",
    "pair_chain_class", "pair_tensor", "parse_expression", "rotation_coproduct",
    "stick_retraction_gh", "tensor", "twist",
]
