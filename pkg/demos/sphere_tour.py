"""A short walk through the string topology of S^3 and S^5.

    python demos/sphere_tour.py
"""
from looptopo import SphereContext, format_value

for n in (3, 5):
    c = SphereContext(n)
    print(f"== S^{n} ==")
    print("cop(AU4)        =", format_value(c.coproduct(c.AU(4))))
    print("cop(U3)         =", format_value(c.coproduct(c.U(3))))
    print("copk(AU5, 2)    =", format_value(c.iterated_coproduct(c.AU(5), 2)))

    # the Thom-signed product kills every coproduct, the algebraic one does not
    for k in (3, 4, 5):
        alg = c.product_after_coproduct(c.U(k))
        thom = c.product_after_coproduct(c.U(k), "thom")
        print(f"wedge o cop(U{k}) = {format_value(alg):8s} wedgeTh o cop(U{k}) = {format_value(thom)}")

    print("delta(AU3)      =", format_value(c.delta(c.AU(3))))
    for k in range(3, 8):
        print(f"{f't(AU{k})':15s} =", format_value(c.t_op(c.AU(k))))

    d = c.frobenius_defect(c.U(2), c.U(2))
    print("Frobenius defect at (U2, U2):", format_value(d))
    print("int(AU5) =", c.intersection_multiplicity(c.AU(5)).value,
          " level(AU5) =", c.level(c.label("AU", 5)))
    print("omega * X =", format_value(c.gh_product(c.omega, c.X)),
          "  <T5, AU4> =", c.kronecker(c.T(5), c.AU(4)))
    print()
