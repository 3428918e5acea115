"""Constructors for the standard commuting families of plane maps.

Covers coordinate-split Chebyshev/power pairs, scalar lifts of commuting
line maps, the symmetric two-sheeted descent, and elliptic multiplication
maps built from division polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .endo2 import PlaneEndo, commutes
from .errors import (NotCommuting, NotSplit, NotSymmetric, PreconditionViolated,
                     ScalarNotSolvable)
from .field import Coefficient, kth_roots
from .mpoly import MPoly, gcd_poly, rational_roots
from .rat1 import POINT_INF, Orbifold1, RatMap1, affine_point

X, Y = MPoly.var("x"), MPoly.var("y")
Z1, Z2 = MPoly.var("z1"), MPoly.var("z2")


def chebyshev(d: int, kind: str = "monic") -> MPoly:
    """Degree-d Chebyshev polynomial in x; monic variant has leading coeff 1."""
    if d < 1:
        raise PreconditionViolated("degree must be at least 1")
    if kind == "classical":
        prev, cur = MPoly.one(), X
        for _ in range(d - 1):
            prev, cur = cur, X.scale(2) * cur - prev
        return cur
    if kind == "monic":
        prev, cur = MPoly.constant(2), X
        for _ in range(d - 1):
            prev, cur = cur, X * cur - prev
        return cur
    raise ValueError(f"unknown kind {kind!r}")


def _on_z2(p: MPoly) -> MPoly:
    return p.substitute({"x": Z2})


def ex1(d1: int, d2: int, lam, signs=(1, 1)):
    """((z1^d1, +-T_d1 z2), (lam z1^d2, +-T_d2 z2)); raises unless commuting."""
    lam = Coefficient.coerce(lam)
    if lam.is_zero():
        raise PreconditionViolated("scalar must be nonzero")
    s1, s2 = signs
    f1 = PlaneEndo(Z1**d1, _on_z2(chebyshev(d1, "classical")).scale(s1))
    f2 = PlaneEndo((Z1**d2).scale(lam), _on_z2(chebyshev(d2, "classical")).scale(s2))
    if not commutes(f1, f2):
        raise NotCommuting("parameters violate the commutation constraints")
    return f1, f2


def ex2(d: int, variant: str = "straight", signs=(1, 1)) -> PlaneEndo:
    """Coordinatewise Chebyshev map, optionally swapping the coordinates."""
    s1, s2 = signs
    t_z1 = chebyshev(d, "classical").substitute({"x": Z1}).scale(s1)
    t_z2 = _on_z2(chebyshev(d, "classical")).scale(s2)
    if variant == "straight":
        return PlaneEndo(t_z1, t_z2)
    if variant == "swap":
        return PlaneEndo(chebyshev(d, "classical").substitute({"x": Z2}).scale(s1),
                         chebyshev(d, "classical").substitute({"x": Z1}).scale(s2))
    raise ValueError(f"unknown variant {variant!r}")


def _plane_forms(r: RatMap1):
    bind = {"s": Z1, "t": Z2}
    return r.formS.substitute(bind), r.formT.substitute(bind)


def ex3_lift(r1: RatMap1, r2: RatMap1, lam1=None, lam2=None):
    """Scalar lifts of a commuting pair of homogeneous line maps."""
    from .rat1 import commutes1
    if not commutes1(r1, r2):
        raise NotCommuting("line maps do not commute")
    d1, d2 = r1.degree, r2.degree
    bind21 = {"s": r2.formS, "t": r2.formT}
    bind12 = {"s": r1.formS, "t": r1.formT}
    a_s = r1.formS.substitute(bind21)
    a_t = r1.formT.substitute(bind21)
    b_s = r2.formS.substitute(bind12)
    b_t = r2.formT.substitute(bind12)
    base = b_s if not b_s.is_zero() else b_t
    top = a_s if not b_s.is_zero() else a_t
    c = top.leading_coefficient() / base.leading_coefficient()
    if a_s != b_s.scale(c) or a_t != b_t.scale(c):
        raise NotCommuting("compositions are not proportional")
    order = max(c.order, 1)
    if lam1 is not None or lam2 is not None:
        lam1 = Coefficient.coerce(1 if lam1 is None else lam1)
        lam2 = Coefficient.coerce(1 if lam2 is None else lam2)
        if lam1**(d2 - 1) != (lam2**(d1 - 1)) * c:
            raise ScalarNotSolvable("supplied scalars violate the constraint")
    else:
        lam2 = Coefficient.one()
        if d2 == 1:
            if not c.is_one():
                raise ScalarNotSolvable("no scalar works for a degree-1 second map")
            lam1 = Coefficient.one()
        else:
            roots = kth_roots(c, d2 - 1, order)
            if not roots:
                raise ScalarNotSolvable("constraint has no root in the session field")
            lam1 = sorted(roots, key=Coefficient.sort_key)[0]
    p1, q1 = _plane_forms(r1)
    p2, q2 = _plane_forms(r2)
    f1 = PlaneEndo(p1.scale(lam1), q1.scale(lam1))
    f2 = PlaneEndo(p2.scale(lam2), q2.scale(lam2))
    if not commutes(f1, f2):
        raise NotCommuting("lifted maps do not commute")
    return f1, f2


def symmetrization() -> PlaneEndo:
    """The two-sheeted quotient map (x, y) -> (x + y, x*y)."""
    return PlaneEndo(Z1 + Z2, Z1 * Z2)


def sym_reduce(s: MPoly) -> MPoly:
    """Rewrite a symmetric polynomial in x, y in the elementary basis e1, e2."""
    if set(s.vars) - {"x", "y"}:
        raise ValueError("input must be a polynomial in x, y")
    if s.substitute({"x": Y, "y": X}) != s:
        raise NotSymmetric("polynomial is not swap-invariant")
    e1, e2 = MPoly.var("e1"), MPoly.var("e2")
    e1_xy = X + Y
    e2_xy = X * Y
    out = MPoly.zero()
    rem = s
    while not rem.is_zero():
        # pick the term maximal in lex order with x > y; symmetry gives a >= b
        ix = rem.vars.index("x") if "x" in rem.vars else None
        iy = rem.vars.index("y") if "y" in rem.vars else None
        best = max(rem.terms,
                   key=lambda e: (e[ix] if ix is not None else 0,
                                  e[iy] if iy is not None else 0))
        a = best[ix] if ix is not None else 0
        b = best[iy] if iy is not None else 0
        c = rem.terms[best]
        assert a >= b
        basis = (e1**(a - b) * e2**b).scale(c)
        out = out + basis
        rem = rem - (e1_xy**(a - b) * e2_xy**b).scale(c)
    return out


def ex4_descend(h: MPoly) -> PlaneEndo:
    """The plane map induced by (h(x), h(y)) through the symmetric quotient."""
    if set(h.vars) - {"x"}:
        raise ValueError("h must be univariate in x")
    if h.is_constant():
        raise PreconditionViolated("h must be nonconstant")
    hx = h
    hy = h.substitute({"x": Y})
    comp1 = sym_reduce(hx + hy).substitute({"e1": Z1, "e2": Z2})
    comp2 = sym_reduce(hx * hy).substitute({"e1": Z1, "e2": Z2})
    f = PlaneEndo(comp1, comp2)
    # exact conjugation check through the quotient map
    pi1, pi2 = X + Y, X * Y
    bind = {"z1": pi1, "z2": pi2}
    assert f.comp1.substitute(bind) == hx + hy
    assert f.comp2.substitute(bind) == hx * hy
    return f


# ---------------------------------------------------------------------------
# Elliptic multiplication maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticCurveData:
    """Short curve y^2 = x^3 + a*x + b with nonzero discriminant."""

    a: Coefficient
    b: Coefficient

    def __post_init__(self):
        a = Coefficient.coerce(self.a)
        b = Coefficient.coerce(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        disc = (a**3) * Coefficient.rational(4) + (b**2) * Coefficient.rational(27)
        if disc.is_zero():
            raise PreconditionViolated("curve is singular (zero discriminant)")

    def cubic(self) -> MPoly:
        return X**3 + X.scale(self.a) + MPoly.constant(self.b)


def _division_polys(curve: EllipticCurveData, upto: int):
    """psi_0..psi_upto reduced modulo y^2 = x^3 + a*x + b (y-degree <= 1)."""
    B = curve.cubic()
    y = Y

    def reduce(p: MPoly) -> MPoly:
        while p.depends_on("y") and p.degree_in("y") >= 2:
            buckets = p.univariate_in("y")
            out = MPoly.zero()
            for k, coeff in enumerate(buckets):
                q, r = divmod(k, 2)
                out = out + coeff * (B**q) * (y**r)
            p = out
        return p

    a, b = curve.a, curve.b
    psi = {
        0: MPoly.zero(),
        1: MPoly.one(),
        2: y.scale(2),
        3: (X**4).scale(3) + (X**2).scale(a * 6) + X.scale(b * 12)
           - MPoly.constant(a**2),
    }
    psi[4] = y.scale(4) * (
        X**6 + (X**4).scale(a * 5) + (X**3).scale(b * 20)
        - (X**2).scale(a**2 * 5) - X.scale(a * b * 4)
        - MPoly.constant(b**2 * 8 + a**3))
    psi[-1] = -psi[1]
    psi[-2] = -psi[2]

    def get(n: int) -> MPoly:
        if n in psi:
            return psi[n]
        if n % 2 == 1:
            m = (n - 1) // 2
            val = reduce(get(m + 2) * get(m)**3 - get(m - 1) * get(m + 1)**3)
        else:
            m = n // 2
            num = reduce(get(m) * (get(m + 2) * get(m - 1)**2
                                   - get(m - 2) * get(m + 1)**2))
            # true value is 2*y*psi_n with psi_n = y*g; reduction turns the
            # product into 2*B*g, so divide out 2*B and restore the y factor
            val = y * num.exact_divide(B.scale(2))
        psi[n] = val
        return val

    for k in range(upto + 1):
        get(k)
    return psi, reduce


def elliptic_lattes(curve: EllipticCurveData, n: int) -> RatMap1:
    """x-coordinate action of multiplication by n; degree n^2."""
    if n < 1:
        raise PreconditionViolated("n must be at least 1")
    if n == 1:
        return RatMap1.identity()
    psi, reduce = _division_polys(curve, n + 1)
    num = reduce(X * psi[n]**2 - psi[n - 1] * psi[n + 1])
    den = reduce(psi[n]**2)
    assert not num.depends_on("y") and not den.depends_on("y")
    g = gcd_poly(num, den)
    if not g.is_constant():
        num = num.exact_divide(g)
        den = den.exact_divide(g)
    deg = n * n

    def homogenize(p: MPoly) -> MPoly:
        s, t = MPoly.var("s"), MPoly.var("t")
        out = MPoly.zero()
        for e, c in p.terms.items():
            k = e[0] if p.vars else 0
            out = out + (t**k * s**(deg - k)).scale(c)
        return out

    r = RatMap1(homogenize(den), homogenize(num))
    assert r.degree == deg
    return r


def two_torsion_orbifold(curve: EllipticCurveData) -> Orbifold1:
    cubic = curve.cubic()
    roots = rational_roots(cubic)
    if len(roots) != 3:
        raise NotSplit("two-torsion abscissas do not all lie in the session field")
    marked = [(affine_point(r), 2) for r in roots] + [(POINT_INF, 2)]
    return Orbifold1(tuple(marked))


@dataclass(frozen=True)
class FamilyTag:
    """Label attached to a recognized family, with its parameters."""

    which: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.which
        inner = ", ".join(str(p) for p in self.params)
        return f"{self.which}({inner})"
