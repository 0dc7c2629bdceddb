"""Differential bundles in standard position and their axiom verifier.

A bundle is kept in *standard position*: the projection q is a coordinate
selection out of the total space, recorded as ``base_coords``.  The fibre
coordinates are the complement, in order.  Fibre products over the base are
realized concretely as coordinate concatenation: the canonical k-th fibre
power of the total space is (total coordinates, then k-1 extra copies of the
fibre block).  Because every structural projection is then again a coordinate
selection, pairings into fibre products are assembled by ``pair_into`` and all
axioms reduce to exact polynomial identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .polycore import (
    PolyMap,
    Polynomial,
    ShapeError,
    compose,
    compose_all,
    first_difference,
    invert_polymap,
    map_equal,
    matrix_inverse,
    pair_into,
    selection_indices,
)
from .report import Report, Status
from .tangent import Space, T_map, T_obj, add_plus, flip_c, lift_l, proj_p, zero_0


class EngineError(RuntimeError):
    """An internal consistency failure (a bug, not a refuted input)."""


@dataclass(frozen=True)
class DiffBundle:
    """A differential bundle (E, q, sigma, zeta, lambda) in standard position.

    ``sigma`` has the canonical fibre-square of (total, base_coords) as its
    domain; ``zeta`` maps the base into the total space; ``lift`` maps the
    total space into its tangent space.
    """

    total: Space
    base: Space
    base_coords: tuple[int, ...]
    sigma: PolyMap
    zeta: PolyMap
    lift: PolyMap

    def __post_init__(self) -> None:
        e, m = self.total.dim, self.base.dim
        if len(self.base_coords) != m:
            raise ShapeError("base_coords length != base dimension")
        if len(set(self.base_coords)) != m or any(not 0 <= i < e for i in self.base_coords):
            raise ShapeError("base_coords must be an injective index list into the total space")
        f = e - m
        if self.sigma.domain_dim != e + f or self.sigma.codomain_dim != e:
            raise ShapeError("sigma must map the canonical fibre square to the total space")
        if self.zeta.domain_dim != m or self.zeta.codomain_dim != e:
            raise ShapeError("zeta must map the base to the total space")
        if self.lift.domain_dim != e or self.lift.codomain_dim != 2 * e:
            raise ShapeError("lift must map the total space to its tangent space")

    @property
    def fibre_coords(self) -> tuple[int, ...]:
        base = set(self.base_coords)
        return tuple(i for i in range(self.total.dim) if i not in base)

    @property
    def fibre_dim(self) -> int:
        return self.total.dim - self.base.dim

    @property
    def q(self) -> PolyMap:
        return PolyMap.selection(self.total.dim, self.base_coords)


@dataclass(frozen=True)
class BundleMorphism:
    """A square (top: E -> F, bottom: M -> N) between bundles."""

    top: PolyMap
    bottom: PolyMap


def power_dim(b: DiffBundle, k: int) -> int:
    return b.total.dim + (k - 1) * b.fibre_dim


def power_proj(b: DiffBundle, k: int, i: int) -> PolyMap:
    """The i-th projection (i in 1..k) of the canonical k-th fibre power."""
    if not 1 <= i <= k:
        raise ShapeError(f"projection index {i} out of range for fibre power {k}")
    e, f = b.total.dim, b.fibre_dim
    dom = power_dim(b, k)
    if i == 1:
        return PolyMap.selection(dom, range(e))
    fib = iter(range(e + (i - 2) * f, e + (i - 1) * f))
    base = set(b.base_coords)
    idx = [j if j in base else next(fib) for j in range(e)]
    return PolyMap.selection(dom, idx)


def power_pair(b: DiffBundle, maps: Sequence[PolyMap]) -> PolyMap:
    """Pair maps into the canonical fibre power; bases must agree exactly."""
    k = len(maps)
    return pair_into(power_dim(b, k), [power_proj(b, k, i + 1) for i in range(k)], maps)


def tangent_square_pair(b: DiffBundle, g1: PolyMap, g2: PolyMap) -> PolyMap:
    """Pair two maps into T(E x_M E), the tangent of the canonical square."""
    projs = [T_map(power_proj(b, 2, 1)), T_map(power_proj(b, 2, 2))]
    return pair_into(2 * power_dim(b, 2), projs, [g1, g2])


def tangent_bundle(s: Space) -> DiffBundle:
    """The tangent bundle (TM, p, +, 0, l) of a space, in standard position."""
    return DiffBundle(
        total=T_obj(s),
        base=s,
        base_coords=tuple(range(s.dim)),
        sigma=add_plus(s),
        zeta=zero_0(s),
        lift=lift_l(s),
    )


def trivial_bundle(base: Space, fibre_dim: int) -> DiffBundle:
    """The trivial bundle M x W over M with fibrewise addition."""
    m, e = base.dim, base.dim + fibre_dim
    dom = e + fibre_dim
    sigma = PolyMap(
        dom,
        tuple(Polynomial.variable(dom, i) for i in range(m))
        + tuple(
            Polynomial.variable(dom, m + i) + Polynomial.variable(dom, e + i)
            for i in range(fibre_dim)
        ),
    )
    zeta = PolyMap(
        m,
        tuple(Polynomial.variable(m, i) for i in range(m))
        + tuple(Polynomial.zero(m) for _ in range(fibre_dim)),
    )
    lift = PolyMap(
        e,
        tuple(Polynomial.variable(e, i) for i in range(m))
        + tuple(Polynomial.zero(e) for _ in range(fibre_dim))
        + tuple(Polynomial.zero(e) for _ in range(m))
        + tuple(Polynomial.variable(e, m + i) for i in range(fibre_dim)),
    )
    total = Space(e, base.layout + (("w", fibre_dim),)) if fibre_dim else base
    return DiffBundle(total, base, tuple(range(m)), sigma, zeta, lift)


def _additive_morphism_report(
    subject: str,
    src: DiffBundle,
    dst_square_projs: tuple[PolyMap, PolyMap],
    dst_square_dim: int,
    dst_sigma: PolyMap,
    dst_zeta: PolyMap,
    dst_q: PolyMap,
    g: PolyMap,
    f: PolyMap,
) -> Report:
    """Check that (g, f) is a morphism of commutative monoids over the bases."""
    rep = Report(subject=subject)
    rep.check_equal("base square", "q f = g r", compose(src.q, f), compose(g, dst_q))
    rep.check_equal("zero preservation", "zeta g = f zeta'", compose(src.zeta, g), compose(f, dst_zeta))
    g_sq = pair_into(
        dst_square_dim,
        list(dst_square_projs),
        [compose(power_proj(src, 2, 1), g), compose(power_proj(src, 2, 2), g)],
    )
    rep.check_equal(
        "addition preservation", "sigma g = (g x g) sigma'", compose(src.sigma, g), compose(g_sq, dst_sigma)
    )
    return rep


def mu_map(b: DiffBundle) -> PolyMap:
    """The comparison map mu = <pi1 lift, pi2 0> T(sigma) : E x_M E -> TE."""
    p1, p2 = power_proj(b, 2, 1), power_proj(b, 2, 2)
    paired = tangent_square_pair(
        b, compose(p1, b.lift), compose(p2, zero_0(b.total))
    )
    return compose(paired, T_map(b.sigma))


def _zero_tangent_base(b: DiffBundle) -> PolyMap:
    """Substitution TE -> TE setting the base-tangent coordinates to zero."""
    e = b.total.dim
    base = {e + i for i in b.base_coords}
    comps = [
        Polynomial.zero(2 * e) if i in base else Polynomial.variable(2 * e, i)
        for i in range(2 * e)
    ]
    return PolyMap(2 * e, tuple(comps))


def _nu_by_back_substitution(b: DiffBundle, mu: PolyMap) -> Optional[PolyMap]:
    """Solve mu for the summands by triangular back-substitution.

    Restricting mu to the components that survive on the subvariety where
    the base tangents vanish gives an endomorphism of the fibre square;
    inverting it by back-substitution handles shear-like systems with cross
    terms between the two summands that the jointly affine solver rejects.
    Returns None when no inverse of that shape is found.
    """
    e = b.total.dim
    sq_dim = power_dim(b, 2)
    te_dim = 2 * e
    base = set(b.base_coords)
    sq_fibre1 = [i for i in range(e) if i not in base]
    out_positions = list(range(e)) + [e + i for i in sq_fibre1]
    restricted = PolyMap(sq_dim, tuple(mu.components[pos] for pos in out_positions))
    solved = invert_polymap(restricted)
    if solved is None:
        return None
    sel = [Polynomial.variable(te_dim, pos) for pos in out_positions]
    return PolyMap(te_dim, tuple(c.substitute(sel) for c in solved.components))


def check_universality(b: DiffBundle) -> Report:
    """Axiom 4: mu is invertible onto the vanishing of the base-tangents.

    The subvariety {xi in TE : T(q)(xi) is a zero tangent vector} is cut out
    by setting the base-tangent coordinates to zero, so invertibility of mu
    is checked by solving for a two-sided polynomial inverse nu, which exists
    exactly when mu is affine in the fibre variables with a constant-
    determinant coefficient matrix.  Failures to solve are reported as
    cannot-certify, never as refutation.
    """
    rep = Report(subject="lift universality (axiom 4)")
    e, m, f = b.total.dim, b.base.dim, b.fibre_dim
    mu = mu_map(b)
    sq_dim = power_dim(b, 2)
    proj_to_m = compose(power_proj(b, 2, 1), b.q)
    rep.check_equal(
        "square commutes",
        "mu T(q) = proj 0",
        compose(mu, T_map(b.q)),
        compose(proj_to_m, zero_0(b.base)),
    )
    sq_fibre1 = [i for i in range(e) if i not in set(b.base_coords)]
    fibre_vars = sq_fibre1 + list(range(e, e + f))
    base_vars = list(b.base_coords)

    out_positions = sq_fibre1 + [e + i for i in sq_fibre1]
    rows: list[list[Polynomial]] = []
    consts: list[Polynomial] = []
    linear = True
    for pos in out_positions:
        comp = mu.components[pos]
        if comp.degree_in(fibre_vars) > 1:
            linear = False
            break
        row = []
        for v in fibre_vars:
            coeff: dict = {}
            for exps, c in comp.terms:
                if exps[v] == 1:
                    reduced = list(exps)
                    reduced[v] = 0
                    coeff[tuple(reduced)] = c
            row.append(Polynomial.from_terms(sq_dim, coeff))
        rows.append(row)
        consts.append(
            Polynomial.from_terms(
                sq_dim,
                {e_: c for e_, c in comp.terms if all(e_[v] == 0 for v in fibre_vars)},
            )
        )
    nu: Optional[PolyMap] = None
    if linear:
        inv = matrix_inverse(rows)
        if inv is not None:
            # Assemble nu : TE -> E x_M E.  Inputs: base from the base
            # coordinates of TE, outputs of mu from the fibre and
            # tangent-fibre coordinates.
            te_dim = 2 * e
            def lift_to_te(p: Polynomial) -> Polynomial:
                # consts/rows live in square coordinates but only use base
                # variables, which sit at the same positions inside TE.
                args = [
                    Polynomial.variable(te_dim, i) if i < e else Polynomial.zero(te_dim)
                    for i in range(sq_dim)
                ]
                return p.substitute(args)

            rhs = [
                Polynomial.variable(te_dim, pos) - lift_to_te(c)
                for pos, c in zip(out_positions, consts)
            ]
            solved = []
            for i in range(len(fibre_vars)):
                acc = Polynomial.zero(te_dim)
                for j in range(len(fibre_vars)):
                    acc = acc + lift_to_te(inv[i][j]) * rhs[j]
                solved.append(acc)
            nu_comps: list[Optional[Polynomial]] = [None] * sq_dim
            for i in base_vars:
                nu_comps[i] = Polynomial.variable(te_dim, i)
            for var, expr in zip(fibre_vars, solved):
                nu_comps[var] = expr
            nu = PolyMap(te_dim, tuple(c for c in nu_comps if c is not None))
    if nu is None:
        nu = _nu_by_back_substitution(b, mu)
    if nu is None:
        rep.cannot_certify(
            "shear inversion",
            "mu is solvable for the summands",
            "neither the jointly affine nor the substitution solver applies",
        )
        return rep

    zero_sub = _zero_tangent_base(b)
    ok1 = rep.check_equal("left inverse", "nu mu = 1", compose(mu, nu), PolyMap.identity(sq_dim))
    ok2 = rep.check_equal(
        "right inverse on subvariety",
        "mu nu = 1 where T(q) vanishes",
        compose_all(zero_sub, nu, mu),
        zero_sub,
    )
    if ok1 and ok2:
        rep.check_equal(
            "preserved by T",
            "T(nu) inverts T(mu) on the T-level subvariety",
            compose_all(T_map(zero_sub), T_map(nu), T_map(mu)),
            T_map(zero_sub),
        )
    return rep


def verify_bundle(b: DiffBundle) -> Report:
    """Run all five differential-bundle axioms as exact identities."""
    rep = Report(subject=f"bundle over R^{b.base.dim} with fibre R^{b.fibre_dim}")
    e, m = b.total.dim, b.base.dim
    q = b.q
    sq_dim = power_dim(b, 2)
    p1, p2 = power_proj(b, 2, 1), power_proj(b, 2, 2)

    rep.check_equal("projection compatibility", "sigma q = proj q", compose(b.sigma, q), compose(p1, q))
    rep.check_equal("section", "zeta q = 1", compose(b.zeta, q), PolyMap.identity(m))

    swap = power_pair(b, [p2, p1])
    rep.check_equal("commutativity", "swap sigma = sigma", compose(swap, b.sigma), b.sigma)
    unit = power_pair(b, [compose(q, b.zeta), PolyMap.identity(e)])
    rep.check_equal("unit", "<q zeta, 1> sigma = 1", compose(unit, b.sigma), PolyMap.identity(e))
    q1, q2, q3 = (power_proj(b, 3, i) for i in (1, 2, 3))
    left = compose(power_pair(b, [compose(power_pair(b, [q1, q2]), b.sigma), q3]), b.sigma)
    right = compose(power_pair(b, [q1, compose(power_pair(b, [q2, q3]), b.sigma)]), b.sigma)
    rep.check_equal("associativity", "(a+b)+c = a+(b+c)", left, right)

    # Axiom 1: fibre powers of a coordinate projection are again Cartesian
    # spaces, and T sends the projection cone to a jointly covering cone.
    try:
        recon = pair_into(2 * sq_dim, [T_map(p1), T_map(p2)], [T_map(p1), T_map(p2)])
        rep.check_equal("tangential fibre power", "T preserves the square cone", recon, PolyMap.identity(2 * sq_dim))
    except ShapeError as exc:
        rep.check("tangential fibre power", "T preserves the square cone", False, str(exc))

    # Axiom 2: (lift, 0_M) is additive into (TE, T(q), T(sigma), T(zeta)).
    ax2 = _additive_morphism_report(
        "axiom 2",
        b,
        (T_map(p1), T_map(p2)),
        2 * sq_dim,
        T_map(b.sigma),
        T_map(b.zeta),
        T_map(q),
        b.lift,
        zero_0(b.base),
    )
    rep.check(
        "axiom 2: (lift, 0) additive",
        "monoid morphism into the tangent of the bundle",
        ax2.passed,
        "; ".join(r.name for r in ax2.failing()) or None,
    )

    # Axiom 3: (lift, zeta) is additive into (TE, p_E, +_E, 0_E).
    e_space = b.total
    t2e_projs = (
        PolyMap.selection(3 * e, range(2 * e)),
        PolyMap.selection(3 * e, list(range(e)) + list(range(2 * e, 3 * e))),
    )
    ax3 = _additive_morphism_report(
        "axiom 3",
        b,
        t2e_projs,
        3 * e,
        add_plus(e_space),
        zero_0(e_space),
        proj_p(e_space),
        b.lift,
        b.zeta,
    )
    rep.check(
        "axiom 3: (lift, zeta) additive",
        "monoid morphism into the tangent bundle of the total space",
        ax3.passed,
        "; ".join(r.name for r in ax3.failing()) or None,
    )

    rep.extend(check_universality(b), prefix="axiom 4: ")

    rep.check_equal(
        "axiom 5",
        "lift l_E = lift T(lift)",
        compose(b.lift, lift_l(e_space)),
        compose(b.lift, T_map(b.lift)),
    )
    return rep


def tangent_of_bundle(b: DiffBundle) -> DiffBundle:
    """Apply T to a bundle: (TE, T(q), T(sigma), T(zeta), T(lift) c_E) over TM."""
    e = b.total.dim
    new_total = T_obj(b.total)
    new_base = T_obj(b.base)
    new_base_coords = tuple(b.base_coords) + tuple(e + i for i in b.base_coords)
    # Build the new sigma on the canonical square of (TE, new_base_coords) by
    # routing it through T(E x_M E) and applying T(sigma).
    nb = DiffBundle(
        new_total,
        new_base,
        new_base_coords,
        _placeholder_sigma(new_total.dim, len(new_base_coords)),
        T_map(b.zeta),
        compose(T_map(b.lift), flip_c(b.total)),
    )
    p1, p2 = power_proj(nb, 2, 1), power_proj(nb, 2, 2)
    kappa = pair_into(
        2 * power_dim(b, 2),
        [T_map(power_proj(b, 2, 1)), T_map(power_proj(b, 2, 2))],
        [p1, p2],
    )
    sigma = compose(kappa, T_map(b.sigma))
    return DiffBundle(new_total, new_base, new_base_coords, sigma, nb.zeta, nb.lift)


def _placeholder_sigma(total_dim: int, base_dim: int) -> PolyMap:
    fibre = total_dim - base_dim
    dom = total_dim + fibre
    return PolyMap.selection(dom, range(total_dim))


def is_linear_morphism(g: PolyMap, f: PolyMap, src: DiffBundle, dst: DiffBundle) -> bool:
    """Whether (g, f) commutes with the projections and the lifts.

    Linearity implies additivity; the checker also confirms preservation of
    sigma and zeta and raises ``EngineError`` if linearity held while
    additivity failed, which would indicate a defect in the engine itself.
    """
    if g.domain_dim != src.total.dim or g.codomain_dim != dst.total.dim:
        raise ShapeError("top morphism has the wrong shape")
    if f.domain_dim != src.base.dim or f.codomain_dim != dst.base.dim:
        raise ShapeError("bottom morphism has the wrong shape")
    square_ok = map_equal(compose(src.q, f), compose(g, dst.q))
    lift_ok = map_equal(compose(src.lift, T_map(g)), compose(g, dst.lift))
    linear = square_ok and lift_ok
    if linear:
        add = _additive_morphism_report(
            "additivity",
            src,
            (power_proj(dst, 2, 1), power_proj(dst, 2, 2)),
            power_dim(dst, 2),
            dst.sigma,
            dst.zeta,
            dst.q,
            g,
            f,
        )
        if not add.passed:
            raise EngineError(
                "linear morphism failed additivity: "
                + "; ".join(r.name for r in add.failing())
            )
    return linear


def linear_morphism_report(
    subject: str, g: PolyMap, f: PolyMap, src: DiffBundle, dst: DiffBundle
) -> Report:
    rep = Report(subject=subject)
    rep.check_equal("projection square", "q f = g r", compose(src.q, f), compose(g, dst.q))
    rep.check_equal(
        "lift square", "lift T(g) = g lift'", compose(src.lift, T_map(g)), compose(g, dst.lift)
    )
    if rep.passed:
        add = _additive_morphism_report(
            subject + " additivity",
            src,
            (power_proj(dst, 2, 1), power_proj(dst, 2, 2)),
            power_dim(dst, 2),
            dst.sigma,
            dst.zeta,
            dst.q,
            g,
            f,
        )
        if not add.passed:
            raise EngineError(
                "linear morphism failed additivity: "
                + "; ".join(r.name for r in add.failing())
            )
    return rep


def pullback_bundle(f: PolyMap, b: DiffBundle) -> tuple[DiffBundle, BundleMorphism]:
    """Pull a bundle back along f : N -> M by substituting f into the fibre ops."""
    if f.codomain_dim != b.base.dim:
        raise ShapeError("pullback map must land in the base of the bundle")
    n = f.domain_dim
    k = b.fibre_dim
    e_new = n + k
    new_base = Space.euclidean(n) if n else Space(0, ())
    new_total = Space(e_new, new_base.layout + (("w", k),)) if k else new_base

    def into_e(dom: int, base_args: list[Polynomial], fibre_vars: list[int]) -> PolyMap:
        """(substituted base, chosen fibre variables) -> E, in E's coordinate order."""
        comps: list[Optional[Polynomial]] = [None] * b.total.dim
        for i, pos in enumerate(b.base_coords):
            comps[pos] = base_args[i]
        for v, pos in zip(fibre_vars, b.fibre_coords):
            comps[pos] = Polynomial.variable(dom, v)
        return PolyMap(dom, tuple(c for c in comps if c is not None))

    def fbase(dom: int) -> list[Polynomial]:
        pad = [Polynomial.variable(dom, i) for i in range(n)]
        return [c.substitute(pad) for c in f.components]

    # sigma: (x, w1, w2) -> (x, sigma_fibre(f(x), w1, w2))
    sq = e_new + k
    j = pair_into(
        power_dim(b, 2),
        [power_proj(b, 2, 1), power_proj(b, 2, 2)],
        [
            into_e(sq, fbase(sq), list(range(n, n + k))),
            into_e(sq, fbase(sq), list(range(e_new, e_new + k))),
        ],
    )
    sig_f = compose(j, b.sigma)
    sigma = PolyMap(
        sq,
        tuple(Polynomial.variable(sq, i) for i in range(n))
        + tuple(sig_f.components[pos] for pos in b.fibre_coords),
    )
    # zeta: x -> (x, zeta_fibre(f(x)))
    zf = compose(PolyMap(n, tuple(f.components)), b.zeta)
    zeta = PolyMap(
        n,
        tuple(Polynomial.variable(n, i) for i in range(n))
        + tuple(zf.components[pos] for pos in b.fibre_coords),
    )
    # lift: (x, w) -> (x, zeta_fibre(f x), 0, lift_tangent_fibre(f x, w))
    fprime = into_e(e_new, fbase(e_new), list(range(n, e_new)))
    lf = compose(fprime, b.lift)
    e_old = b.total.dim
    lift = PolyMap(
        e_new,
        tuple(Polynomial.variable(e_new, i) for i in range(n))
        + tuple(zf.components[pos].substitute([Polynomial.variable(e_new, i) for i in range(n)]) for pos in b.fibre_coords)
        + tuple(Polynomial.zero(e_new) for _ in range(n))
        + tuple(lf.components[e_old + pos] for pos in b.fibre_coords),
    )
    pulled = DiffBundle(new_total, new_base, tuple(range(n)), sigma, zeta, lift)
    return pulled, BundleMorphism(top=fprime, bottom=f)


def bundles_equal(a: DiffBundle, b: DiffBundle) -> bool:
    """Map-by-map equality in canonical form (layout names ignored)."""
    return (
        a.total.dim == b.total.dim
        and a.base.dim == b.base.dim
        and a.base_coords == b.base_coords
        and map_equal(a.sigma, b.sigma)
        and map_equal(a.zeta, b.zeta)
        and map_equal(a.lift, b.lift)
    )


def bundle_difference(a: DiffBundle, b: DiffBundle) -> Optional[str]:
    if a.total.dim != b.total.dim or a.base.dim != b.base.dim:
        return "total or base dimensions differ"
    if a.base_coords != b.base_coords:
        return f"base coordinates differ: {a.base_coords} vs {b.base_coords}"
    for name, x, y in (("sigma", a.sigma, b.sigma), ("zeta", a.zeta, b.zeta), ("lift", a.lift, b.lift)):
        d = first_difference(x, y)
        if d:
            return f"{name}: {d}"
    return None


def transport_bundle(
    c: DiffBundle, psi: PolyMap, psi_inv: PolyMap, new_total: Space
) -> DiffBundle:
    """Transfer bundle structure along a concrete isomorphism psi: X -> C.

    The transported projection psi q_C must again be a coordinate selection
    (standard position); otherwise a ShapeError is raised.
    """
    q_new = compose(psi, c.q)
    idx = selection_indices(q_new)
    if idx is None:
        raise ShapeError("transported projection is not a coordinate selection")
    nb = DiffBundle(
        new_total,
        c.base,
        idx,
        _placeholder_sigma(new_total.dim, c.base.dim),
        compose(c.zeta, psi_inv),
        compose_all(psi, c.lift, T_map(psi_inv)),
    )
    kappa = pair_into(
        power_dim(c, 2),
        [power_proj(c, 2, 1), power_proj(c, 2, 2)],
        [compose(power_proj(nb, 2, 1), psi), compose(power_proj(nb, 2, 2), psi)],
    )
    sigma = compose_all(kappa, c.sigma, psi_inv)
    return DiffBundle(new_total, c.base, idx, sigma, nb.zeta, nb.lift)
