"""Connections on differential bundles and their equivalent presentations.

A connection on a bundle consists of a vertical descent map K : TE -> E and a
horizontal insertion map H : E x_M TM -> TE, subject to six exact identities:
K retracts the lift and is linear both over the tangent base map and over the
bundle projection; H sections the pairing of the tangent projection with the
tangent of the bundle projection and is linear over both factors; and the
pair satisfies a compatibility identity together with a fibrewise-addition
decomposition of the identity on TE.

The module also implements the equivalence between such pairs and single maps
K for which the three-way pairing (tangent projection, tangent of the bundle
projection, K) is invertible: inverting that pairing exhibits TE as a Whitney
sum of the bundle, the tangent bundle of the base, and the bundle again, and
H is recovered as the injection of the first two summands.  All verdicts are
exact; an inversion the engine cannot perform is reported as cannot-certify
rather than refuted.

Coordinate conventions: the bundle must have its base coordinates leading, so
E = (x, w), TE = (x, w, u, v) with u the tangent of x and v the tangent of w,
and the product E x_M TM is laid out as (x, w, u).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .polycore import (
    PolyMap,
    Polynomial,
    ShapeError,
    compose,
    compose_all,
    eval_map,
    first_difference,
    invert_polymap,
    map_equal,
    pair_into,
)
from .report import Report, Status
from .dbundle import (
    DiffBundle,
    bundle_difference,
    bundles_equal,
    linear_morphism_report,
    mu_map,
    power_dim,
    power_proj,
    pullback_bundle,
    tangent_bundle,
    tangent_of_bundle,
    transport_bundle,
)
from .tangent import Space, T_map, T_obj, lift_l, proj_p, zero_0
from .whitney import (
    BiproductBundle,
    _zeta_fibre,
    partial_bundle,
    recognize_biproduct,
)


@dataclass(frozen=True)
class Connection:
    """A bundle with a vertical map K and optionally a horizontal map H.

    ``gamma``, when present, is the cubic coefficient table of a Christoffel
    presentation: ``gamma[k][i][j]`` is a polynomial in the base variables,
    and K adds ``sum_ij gamma[k][i][j](x) t_i u_j`` to the k-th last-block
    coordinate.
    """

    bundle: DiffBundle
    K: PolyMap
    H: Optional[PolyMap] = None
    gamma: Optional[tuple[tuple[tuple[Polynomial, ...], ...], ...]] = None

    def __post_init__(self) -> None:
        e, m = self.bundle.total.dim, self.bundle.base.dim
        if self.bundle.base_coords != tuple(range(m)):
            raise ShapeError("connection checks need base-first coordinates")
        if self.K.domain_dim != 2 * e or self.K.codomain_dim != e:
            raise ShapeError("K must map the tangent of the total space onto it")
        if self.H is not None and (
            self.H.domain_dim != e + m or self.H.codomain_dim != 2 * e
        ):
            raise ShapeError("H must map the horizontal product into the tangent space")


@dataclass(frozen=True)
class Decomposition:
    """TE presented as a three-summand Whitney sum through an invertible pairing."""

    theta: PolyMap
    theta_inv: PolyMap
    biproduct: BiproductBundle
    total: DiffBundle


def horizontal_space(b: DiffBundle) -> Space:
    """The product E x_M TM with layout (base, fibre, tangent-of-base)."""
    m = b.base.dim
    return Space(b.total.dim + m, b.total.layout + (("u", m),))


def horizontal_proj_total(b: DiffBundle) -> PolyMap:
    return PolyMap.selection(b.total.dim + b.base.dim, range(b.total.dim))


def horizontal_proj_tangent(b: DiffBundle) -> PolyMap:
    e, m = b.total.dim, b.base.dim
    return PolyMap.selection(e + m, list(range(m)) + list(range(e, e + m)))


def section_target(b: DiffBundle) -> PolyMap:
    """U = <p_E, T(q)> : TE -> E x_M TM."""
    e, m = b.total.dim, b.base.dim
    return PolyMap.selection(2 * e, list(range(e)) + list(range(e, e + m)))


def theta_map(b: DiffBundle, K: PolyMap) -> PolyMap:
    """The three-way pairing <p_E, T(q), K> : TE -> E x_M TM x_M E."""
    e, m = b.total.dim, b.base.dim
    comps = tuple(Polynomial.variable(2 * e, i) for i in range(e + m)) + tuple(
        K.components[i] for i in b.fibre_coords
    )
    return PolyMap(2 * e, comps)


def check_vertical(c: Connection) -> Report:
    """K retracts the lift and is linear over both relevant projections."""
    b = c.bundle
    rep = Report(subject="vertical map")
    rep.check_equal(
        "retraction", "lift then K is the identity", compose(b.lift, c.K), PolyMap.identity(b.total.dim)
    )
    rep.extend(
        linear_morphism_report(
            "over the tangent base projection",
            c.K,
            proj_p(b.base),
            tangent_of_bundle(b),
            b,
        ),
        prefix="linearity over the base projection: ",
    )
    rep.extend(
        linear_morphism_report(
            "over the bundle projection",
            c.K,
            b.q,
            tangent_bundle(b.total),
            b,
        ),
        prefix="linearity over the bundle projection: ",
    )
    return rep


def _pullback_along_q(b: DiffBundle) -> DiffBundle:
    """The tangent bundle of the base pulled back along q, on (x, w, u)."""
    pulled, _ = pullback_bundle(b.q, tangent_bundle(b.base))
    return DiffBundle(
        horizontal_space(b),
        b.total,
        pulled.base_coords,
        pulled.sigma,
        pulled.zeta,
        pulled.lift,
    )


def _pullback_along_p(b: DiffBundle) -> DiffBundle:
    """The bundle pulled back along the tangent projection, on (x, w, u)."""
    e, m, f = b.total.dim, b.base.dim, b.fibre_dim
    pulled, _ = pullback_bundle(proj_p(b.base), b)
    # The pullback lives on (x, u, w); permute onto the (x, w, u) layout.
    psi = PolyMap.selection(e + m, list(range(m)) + list(range(e, e + m)) + list(range(m, e)))
    psi_inv = PolyMap.selection(e + m, list(range(m)) + list(range(m + m, m + m + f)) + list(range(m, m + m)))
    return transport_bundle(pulled, psi, psi_inv, horizontal_space(b))


def check_horizontal(c: Connection) -> Report:
    """H sections U and is linear over the total space and the tangent base."""
    b = c.bundle
    rep = Report(subject="horizontal map")
    if c.H is None:
        rep.check("presence", "a horizontal map is supplied", False, "no H given")
        return rep
    hat = b.total.dim + b.base.dim
    rep.check_equal(
        "section", "H then <p_E, T(q)> is the identity", compose(c.H, section_target(b)), PolyMap.identity(hat)
    )
    rep.extend(
        linear_morphism_report(
            "over the total space",
            c.H,
            PolyMap.identity(b.total.dim),
            _pullback_along_q(b),
            tangent_bundle(b.total),
        ),
        prefix="linearity over the total space: ",
    )
    rep.extend(
        linear_morphism_report(
            "over the tangent base",
            c.H,
            PolyMap.identity(2 * b.base.dim),
            _pullback_along_p(b),
            tangent_of_bundle(b),
        ),
        prefix="linearity over the tangent base: ",
    )
    return rep


def check_pair(c: Connection) -> Report:
    """The joint identities for (K, H): compatibility and decomposition."""
    b = c.bundle
    rep = Report(subject="connection pair")
    if c.H is None:
        rep.check("presence", "a horizontal map is supplied", False, "no H given")
        return rep
    e = b.total.dim
    rhs = compose_all(horizontal_proj_total(b), b.q, b.zeta)
    rep.check_equal("compatibility", "H then K factors through the zero section", compose(c.H, c.K), rhs)

    p_e = PolyMap.selection(2 * e, range(e))
    paired_sq = pair_into(
        power_dim(b, 2), [power_proj(b, 2, 1), power_proj(b, 2, 2)], [c.K, p_e]
    )
    vertical_part = compose(paired_sq, mu_map(b))
    horizontal_part = compose(section_target(b), c.H)
    te = tangent_bundle(b.total)
    total = compose(
        pair_into(
            power_dim(te, 2),
            [power_proj(te, 2, 1), power_proj(te, 2, 2)],
            [vertical_part, horizontal_part],
        ),
        te.sigma,
    )
    rep.check_equal(
        "decomposition of the identity",
        "vertical part plus horizontal part is the identity on TE",
        total,
        PolyMap.identity(2 * e),
    )
    return rep


def check_effective(c: Connection) -> tuple[Report, Optional[Decomposition]]:
    """Invert the three-way pairing and transport the Whitney-sum structure."""
    b = c.bundle
    rep = Report(subject="effectiveness")
    vert = check_vertical(c)
    rep.check(
        "gate",
        "the vertical identities hold",
        vert.passed,
        "; ".join(r.name for r in vert.failing()) or None,
    )
    if not vert.passed:
        return rep, None
    theta = theta_map(b, c.K)
    theta_inv = invert_polymap(theta)
    if theta_inv is None:
        rep.cannot_certify(
            "pairing inversion",
            "the three-way pairing has a two-sided polynomial inverse",
            "no inverse found by back-substitution",
        )
        return rep, None
    rep.check("pairing inversion", "two-sided polynomial inverse found", True, None)
    summands = (b, tangent_bundle(b.base), b)
    projections = (
        PolyMap.selection(2 * b.total.dim, range(b.total.dim)),
        T_map(b.q),
        c.K,
    )
    recog = recognize_biproduct(T_obj(b.total), projections, summands, inverse=theta_inv)
    rep.extend(recog.report, prefix="Whitney sum: ")
    if recog.biproduct is None:
        return rep, None
    expected = (zero_0(b.total), T_map(b.zeta), b.lift)
    for name, got, want in zip(
        ("first", "second", "third"), recog.biproduct.injections, expected
    ):
        rep.check_equal(
            f"{name} injection",
            "injection matches the structural map",
            got,
            want,
        )
    first = partial_bundle(recog.biproduct, 0).bundle
    second = partial_bundle(recog.biproduct, 1).bundle
    d1 = bundle_difference(first, tangent_bundle(b.total))
    rep.check(
        "first partial bundle",
        "equals the tangent bundle of the total space",
        d1 is None,
        d1,
    )
    d2 = bundle_difference(second, tangent_of_bundle(b))
    rep.check(
        "second partial bundle",
        "equals the tangent of the bundle",
        d2 is None,
        d2,
    )
    if not rep.passed:
        return rep, None
    decomp = Decomposition(
        theta=theta,
        theta_inv=theta_inv,
        biproduct=recog.biproduct,
        total=recog.biproduct.sum,
    )
    return rep, decomp


def _iota12_canonical(b: DiffBundle) -> PolyMap:
    """(x, w, u) -> (x, w, u, zero fibre) into the concatenated three-sum model."""
    e, m = b.total.dim, b.base.dim
    hat = e + m
    zfib = _zeta_fibre(b)
    base = [Polynomial.variable(hat, i) for i in range(m)]
    comps = tuple(Polynomial.variable(hat, i) for i in range(hat)) + tuple(
        z.substitute(base) for z in zfib.components
    )
    return PolyMap(hat, comps)


def derive_horizontal(c: Connection) -> Connection:
    """Recover H as the injection of the first two summands of the sum."""
    rep, decomp = check_effective(c)
    if decomp is None:
        raise ShapeError(
            "horizontal derivation needs an effective vertical map: "
            + "; ".join(r.name for r in rep.failing())
        )
    H = compose(_iota12_canonical(c.bundle), decomp.theta_inv)
    b = c.bundle
    for name, proj, want in (
        ("first", PolyMap.selection(2 * b.total.dim, range(b.total.dim)), horizontal_proj_total(b)),
        ("second", T_map(b.q), horizontal_proj_tangent(b)),
        ("third", c.K, compose_all(horizontal_proj_total(b), b.q, b.zeta)),
    ):
        diff = first_difference(compose(H, proj), want)
        if diff is not None:
            raise ShapeError(f"derived H fails its {name} component equation: {diff}")
    return replace(c, H=H)


def total_bundle(d: Decomposition) -> DiffBundle:
    """The Whitney-sum structure on TE over the base, transported across theta."""
    return d.total


def christoffel_connection(
    base: Space, gamma: Sequence[Sequence[Sequence[Polynomial]]]
) -> Connection:
    """The vertical map (x,t,u,v) -> (x, v + Gamma(x)(t,u)) on the tangent bundle."""
    n = base.dim
    table = tuple(tuple(tuple(row) for row in plane) for plane in gamma)
    if len(table) != n or any(
        len(plane) != n or any(len(row) != n for row in plane) for plane in table
    ):
        raise ShapeError("Christoffel table must be cubic in the base dimension")
    for plane in table:
        for row in plane:
            for entry in row:
                if entry.arity != n:
                    raise ShapeError("Christoffel entries must be polynomials in the base variables")
    b = tangent_bundle(base)
    dom = 4 * n
    pad = [Polynomial.variable(dom, i) for i in range(n)]
    comps = list(pad)
    for k in range(n):
        acc = Polynomial.variable(dom, 3 * n + k)
        for i in range(n):
            for j in range(n):
                acc = acc + table[k][i][j].substitute(pad) * Polynomial.variable(
                    dom, n + i
                ) * Polynomial.variable(dom, 2 * n + j)
        comps.append(acc)
    return Connection(bundle=b, K=PolyMap(dom, tuple(comps)), gamma=table)


def canonical_connection(n: int) -> Connection:
    """The flat pair on the tangent bundle: K keeps (x, v), H pads with zero."""
    base = Space.euclidean(n)
    b = tangent_bundle(base)
    K = PolyMap.selection(4 * n, list(range(n)) + list(range(3 * n, 4 * n)))
    hat = 3 * n
    H = PolyMap(
        hat,
        tuple(Polynomial.variable(hat, i) for i in range(hat))
        + tuple(Polynomial.zero(hat) for _ in range(n)),
    )
    zero = Polynomial.zero(n)
    gamma = tuple(tuple(tuple(zero for _ in range(n)) for _ in range(n)) for _ in range(n))
    return Connection(bundle=b, K=K, H=H, gamma=gamma)


def decompose_point(
    d: Decomposition, xi: Sequence[Fraction]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Split a second-order point into its three tangent-vector components."""
    p1, p2, p3 = d.biproduct.projections
    xs = [Fraction(v) for v in xi]
    return eval_map(p1, xs), eval_map(p2, xs), eval_map(p3, xs)


def recompose_point(
    d: Decomposition,
    parts: tuple[Sequence[Fraction], Sequence[Fraction], Sequence[Fraction]],
) -> tuple[Fraction, ...]:
    """Reassemble a point of TE from its three components via the inverse pairing."""
    b = d.biproduct.summands[0]
    m = b.base.dim
    first, second, third = (tuple(Fraction(v) for v in p) for p in parts)
    if not (first[:m] == second[:m] == third[:m]):
        raise ShapeError("components disagree on the base point")
    packed = first + second[m:] + third[m:]
    return eval_map(d.theta_inv, list(packed))


def equivalence_suite(c: Connection) -> Report:
    """Check that the four presentations of a connection agree on this instance.

    The four legs: a compatible pair (K, H) exists; the three-way pairing is
    invertible; TE is a Whitney sum with the stated projections, injections,
    and first/second partial structures; K retracts the lift and the pairing
    exhibits a product with those partial structures.  For a genuine
    connection all legs pass; for a defective K all legs must fail together.
    """
    b = c.bundle
    rep = Report(subject="equivalence of presentations")
    vert = check_vertical(c)
    eff_rep, decomp = check_effective(c)

    # Leg 1: some H makes (K, H) a full connection pair.
    leg1_witness = None
    if decomp is not None:
        candidate = c if c.H is not None else replace(c, H=compose(_iota12_canonical(b), decomp.theta_inv))
        hor = check_horizontal(candidate)
        pair = check_pair(candidate)
        leg1_ok = vert.passed and hor.passed and pair.passed
        leg1_witness = "; ".join(
            r.name for r in (*vert.failing(), *hor.failing(), *pair.failing())
        ) or None
        rep.check("pair presentation", "a compatible horizontal map exists", leg1_ok, leg1_witness)
    elif eff_rep.verdict is Status.CANNOT_CERTIFY and vert.passed:
        rep.cannot_certify(
            "pair presentation",
            "a compatible horizontal map exists",
            "no decomposition available to construct H",
        )
    else:
        rep.check(
            "pair presentation",
            "a compatible horizontal map exists",
            False,
            "; ".join(r.name for r in vert.failing()) or "no decomposition",
        )

    # Leg 2: K is an effective vertical map.
    if eff_rep.verdict is Status.CANNOT_CERTIFY:
        rep.cannot_certify("effective presentation", "vertical and pairing invertible", "inversion unresolved")
    else:
        rep.check(
            "effective presentation",
            "vertical identities hold and the pairing inverts",
            eff_rep.passed,
            "; ".join(r.name for r in eff_rep.failing()) or None,
        )

    # Legs 3 and 4 share the structural comparisons computed in check_effective.
    structural = [
        r
        for r in eff_rep.records
        if r.name.startswith(("Whitney sum", "first", "second", "third"))
    ]
    structural_failures = [r.name for r in structural if r.status is Status.FAIL]
    attempted = bool(structural)
    if not attempted:
        if eff_rep.verdict is Status.CANNOT_CERTIFY and vert.passed:
            rep.cannot_certify("sum presentation", "TE is the stated Whitney sum", "pairing inversion unresolved")
            rep.cannot_certify("product presentation", "retraction plus the stated product", "pairing inversion unresolved")
        else:
            why = "; ".join(r.name for r in vert.failing()) or "pairing not invertible"
            rep.check("sum presentation", "TE is the stated Whitney sum", False, why)
            rep.check("product presentation", "retraction plus the stated product", False, why)
    else:
        rep.check(
            "sum presentation",
            "TE is the stated Whitney sum with structural injections and partials",
            not structural_failures and eff_rep.passed,
            "; ".join(structural_failures) or None,
        )
        retraction = map_equal(compose(b.lift, c.K), PolyMap.identity(b.total.dim))
        product_failures = [
            n
            for n in structural_failures
            if not n.endswith("injection")  # the product leg does not fix injections
        ]
        rep.check(
            "product presentation",
            "K retracts the lift and the pairing exhibits the stated product",
            retraction and not product_failures,
            ("retraction fails; " if not retraction else "") + "; ".join(product_failures) or None,
        )

    if bundles_equal(b, tangent_bundle(b.base)) and decomp is not None:
        rep.check_equal(
            "affine case",
            "the third injection is the canonical vertical lift",
            decomp.biproduct.injections[2],
            lift_l(b.base),
        )
    return rep
