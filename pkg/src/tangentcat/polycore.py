"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is a finite set of monomial terms with nonzero ``Fraction``
coefficients, kept in a canonical (graded lexicographic) order so that
structural equality coincides with mathematical equality.  A ``PolyMap`` is a
tuple of polynomials sharing one arity and is the engine's notion of a smooth
morphism between Cartesian spaces; every identity checked downstream bottoms
out in ``map_equal`` here, which is why coefficients are exact rationals and
never floats.

Composition is written diagrammatically throughout: ``compose(g, f)`` means
"first g, then f".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

Exponent = tuple[int, ...]


class ShapeError(ValueError):
    """Raised when arities or map dimensions do not line up."""


def _canonical_terms(
    arity: int, terms: Mapping[Exponent, Fraction]
) -> tuple[tuple[Exponent, Fraction], ...]:
    items = []
    for exps, coeff in terms.items():
        if coeff == 0:
            continue
        if len(exps) != arity:
            raise ShapeError(f"exponent vector {exps} has length != arity {arity}")
        if any(e < 0 for e in exps):
            raise ShapeError(f"negative exponent in {exps}")
        items.append((tuple(exps), Fraction(coeff)))
    # Graded lexicographic: total degree first, then lexicographic on exponents.
    items.sort(key=lambda t: (sum(t[0]), t[0]))
    return tuple(items)


@dataclass(frozen=True)
class Polynomial:
    """An exact polynomial in ``arity`` variables, in canonical form."""

    arity: int
    terms: tuple[tuple[Exponent, Fraction], ...]

    @staticmethod
    def from_terms(arity: int, terms: Mapping[Exponent, Fraction | int]) -> "Polynomial":
        return Polynomial(arity, _canonical_terms(arity, {k: Fraction(v) for k, v in terms.items()}))

    @staticmethod
    def zero(arity: int) -> "Polynomial":
        return Polynomial(arity, ())

    @staticmethod
    def constant(arity: int, value: Fraction | int) -> "Polynomial":
        return Polynomial.from_terms(arity, {(0,) * arity: Fraction(value)})

    @staticmethod
    def variable(arity: int, index: int) -> "Polynomial":
        if not 0 <= index < arity:
            raise ShapeError(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return Polynomial.from_terms(arity, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.arity != other.arity:
            raise ShapeError(f"arity mismatch: {self.arity} vs {other.arity}")
        acc: dict[Exponent, Fraction] = dict(self.terms)
        for exps, coeff in other.terms:
            acc[exps] = acc.get(exps, Fraction(0)) + coeff
        return Polynomial(self.arity, _canonical_terms(self.arity, acc))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.arity != other.arity:
            raise ShapeError(f"arity mismatch: {self.arity} vs {other.arity}")
        acc: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                exps = tuple(x + y for x, y in zip(ea, eb))
                acc[exps] = acc.get(exps, Fraction(0)) + ca * cb
        return Polynomial(self.arity, _canonical_terms(self.arity, acc))

    def scale(self, value: Fraction | int) -> "Polynomial":
        v = Fraction(value)
        if v == 0:
            return Polynomial.zero(self.arity)
        return Polynomial(self.arity, tuple((e, c * v) for e, c in self.terms))

    def pow(self, n: int) -> "Polynomial":
        if n < 0:
            raise ShapeError("negative power")
        out = Polynomial.constant(self.arity, 1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, index: int) -> "Polynomial":
        """Exact partial derivative with respect to variable ``index``."""
        acc: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms:
            e = exps[index]
            if e == 0:
                continue
            new = list(exps)
            new[index] = e - 1
            key = tuple(new)
            acc[key] = acc.get(key, Fraction(0)) + coeff * e
        return Polynomial(self.arity, _canonical_terms(self.arity, acc))

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        if len(point) != self.arity:
            raise ShapeError(f"point length {len(point)} != arity {self.arity}")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self.terms:
            val = coeff
            for v, e in zip(pt, exps):
                val *= v**e
            total += val
        return total

    def substitute(self, args: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute ``args[i]`` for variable i; all args share one arity."""
        if len(args) != self.arity:
            raise ShapeError(f"need {self.arity} substitutions, got {len(args)}")
        new_arity = args[0].arity if args else 0
        for a in args:
            if a.arity != new_arity:
                raise ShapeError("substitution arguments have mixed arities")
        out = Polynomial.zero(new_arity)
        for exps, coeff in self.terms:
            term = Polynomial.constant(new_arity, coeff)
            for arg, e in zip(args, exps):
                if e:
                    term = term * arg.pow(e)
            out = out + term
        return out

    def used_variables(self) -> set[int]:
        used: set[int] = set()
        for exps, _ in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i)
        return used

    def degree_in(self, indices: Iterable[int]) -> int:
        """Maximum joint degree of this polynomial in the given variables."""
        idx = set(indices)
        return max((sum(e for i, e in enumerate(exps) if i in idx) for exps, _ in self.terms), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.terms:
            factors = [str(coeff)] if coeff != 1 or not any(exps) else []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    """Canonical-form sum of two polynomials of equal arity."""
    return a + b


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map between Cartesian spaces: one component per output."""

    domain_dim: int
    components: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        for c in self.components:
            if c.arity != self.domain_dim:
                raise ShapeError(
                    f"component arity {c.arity} != domain dimension {self.domain_dim}"
                )

    @property
    def codomain_dim(self) -> int:
        return len(self.components)

    @staticmethod
    def identity(n: int) -> "PolyMap":
        return PolyMap(n, tuple(Polynomial.variable(n, i) for i in range(n)))

    @staticmethod
    def selection(domain_dim: int, indices: Sequence[int]) -> "PolyMap":
        """The coordinate projection picking out the given input positions."""
        return PolyMap(domain_dim, tuple(Polynomial.variable(domain_dim, i) for i in indices))

    @staticmethod
    def constant(domain_dim: int, values: Sequence[Fraction | int]) -> "PolyMap":
        return PolyMap(domain_dim, tuple(Polynomial.constant(domain_dim, v) for v in values))

    @staticmethod
    def from_components(domain_dim: int, components: Iterable[Polynomial]) -> "PolyMap":
        return PolyMap(domain_dim, tuple(components))

    def max_degree(self) -> int:
        return max((c.total_degree() for c in self.components), default=0)


def concat(maps: Sequence[PolyMap]) -> PolyMap:
    """Stack outputs of maps sharing a common domain."""
    if not maps:
        raise ShapeError("concat of no maps")
    dom = maps[0].domain_dim
    comps: list[Polynomial] = []
    for m in maps:
        if m.domain_dim != dom:
            raise ShapeError("concat over mixed domains")
        comps.extend(m.components)
    return PolyMap(dom, tuple(comps))


def compose(g: PolyMap, f: PolyMap) -> PolyMap:
    """Diagrammatic composite: apply g first, then f."""
    if g.codomain_dim != f.domain_dim:
        raise ShapeError(
            f"cannot compose: first map lands in dim {g.codomain_dim}, "
            f"second expects dim {f.domain_dim}"
        )
    return PolyMap(g.domain_dim, tuple(c.substitute(list(g.components)) for c in f.components))


def compose_all(*maps: PolyMap) -> PolyMap:
    """Diagrammatic composite of a chain of maps, left to right."""
    out = maps[0]
    for m in maps[1:]:
        out = compose(out, m)
    return out


def jacobian(f: PolyMap) -> tuple[tuple[Polynomial, ...], ...]:
    """Matrix of exact partial derivatives: entry (i, j) = d f_i / d x_j."""
    return tuple(
        tuple(c.derivative(j) for j in range(f.domain_dim)) for c in f.components
    )


def map_equal(f: PolyMap, g: PolyMap) -> bool:
    """Exact equality of maps: identical canonical components."""
    if f.domain_dim != g.domain_dim or f.codomain_dim != g.codomain_dim:
        raise ShapeError("map_equal: shape mismatch")
    return f.components == g.components


def eval_map(f: PolyMap, point: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    if len(point) != f.domain_dim:
        raise ShapeError(f"point length {len(point)} != domain dim {f.domain_dim}")
    return tuple(c.evaluate(point) for c in f.components)


def first_difference(f: PolyMap, g: PolyMap) -> Optional[str]:
    """A witness monomial for f != g, or None when the maps agree."""
    if f.components == g.components:
        return None
    for i, (a, b) in enumerate(zip(f.components, g.components)):
        d = a - b
        if not d.is_zero():
            exps, coeff = d.terms[0]
            mono = "*".join(f"x{j}^{e}" for j, e in enumerate(exps) if e) or "1"
            return f"component {i}: coefficient of {mono} differs by {coeff}"
    return f"codomain dims differ: {f.codomain_dim} vs {g.codomain_dim}"


def selection_indices(f: PolyMap) -> Optional[tuple[int, ...]]:
    """If every component is a bare variable, return the selected indices."""
    out = []
    for c in f.components:
        if len(c.terms) != 1:
            return None
        exps, coeff = c.terms[0]
        if coeff != 1 or sum(exps) != 1:
            return None
        out.append(exps.index(1))
    return tuple(out)


def pair_into(
    target_dim: int, projections: Sequence[PolyMap], maps: Sequence[PolyMap]
) -> PolyMap:
    """Pair maps into a space presented by jointly-covering coordinate projections.

    Each ``projections[i]`` must be a coordinate selection out of the target
    space, and ``maps[i]`` a map into its codomain from a common domain.  The
    unique map h with ``compose(h, projections[i]) == maps[i]`` is assembled by
    reading each target coordinate off whichever map supplies it; overlapping
    coordinates must agree exactly and every target coordinate must be covered.
    """
    if len(projections) != len(maps):
        raise ShapeError("pair_into: projections and maps differ in number")
    if not maps:
        raise ShapeError("pair_into: nothing to pair")
    dom = maps[0].domain_dim
    slots: list[Optional[Polynomial]] = [None] * target_dim
    for proj, m in zip(projections, maps):
        if proj.domain_dim != target_dim:
            raise ShapeError("pair_into: projection domain != target dimension")
        if m.domain_dim != dom:
            raise ShapeError("pair_into: paired maps have mixed domains")
        if m.codomain_dim != proj.codomain_dim:
            raise ShapeError("pair_into: map does not match its projection")
        idx = selection_indices(proj)
        if idx is None:
            raise ShapeError("pair_into: projection is not a coordinate selection")
        for j, comp in zip(idx, m.components):
            if slots[j] is None:
                slots[j] = comp
            elif slots[j] != comp:
                raise ShapeError(
                    f"pair_into: inconsistent values for target coordinate {j}"
                )
    missing = [j for j, s in enumerate(slots) if s is None]
    if missing:
        raise ShapeError(f"pair_into: target coordinates {missing} not covered")
    return PolyMap(dom, tuple(s for s in slots if s is not None))


def matrix_det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a small square polynomial matrix, by cofactor expansion."""
    n = len(m)
    if n == 0:
        raise ShapeError("determinant of empty matrix")
    arity = m[0][0].arity
    if n == 1:
        return m[0][0]
    out = Polynomial.zero(arity)
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        term = m[0][j] * matrix_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def matrix_cofactor_inverse(
    m: Sequence[Sequence[Polynomial]],
) -> Optional[tuple[tuple[Polynomial, ...], ...]]:
    """Polynomial inverse of a matrix whose determinant is a nonzero rational.

    Returns None when the determinant is not a nonzero constant (the inverse
    would then need rational functions, which the engine does not allow).
    """
    n = len(m)
    det = matrix_det(m)
    if det.is_zero() or det.total_degree() > 0:
        return None
    inv_det = 1 / det.terms[0][1]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            cof = matrix_det(minor) if n > 1 else Polynomial.constant(m[0][0].arity, 1)
            sign = 1 if (i + j) % 2 == 0 else -1
            row.append(cof.scale(sign * inv_det))
        out.append(tuple(row))
    return tuple(out)


def matrix_inverse(
    m: Sequence[Sequence[Polynomial]],
) -> Optional[tuple[tuple[Polynomial, ...], ...]]:
    """Polynomial inverse of a square polynomial matrix, if one exists.

    Runs Gauss-Jordan elimination on the augmented matrix, only ever pivoting
    on entries that are nonzero rational constants; every row operation then
    stays inside the polynomial ring.  Succeeding this way certifies that the
    determinant is a nonzero constant.  When no constant pivot is available
    the small-size cofactor formula is tried as a fallback; otherwise None is
    returned (conservatively: the matrix may still be invertible).
    """
    n = len(m)
    if n == 0:
        return ()
    arity = m[0][0].arity
    if any(len(row) != n or any(p.arity != arity for p in row) for row in m):
        raise ShapeError("matrix_inverse needs a square matrix of uniform arity")
    aug = [list(row) + [
        Polynomial.constant(arity, 1) if i == j else Polynomial.zero(arity)
        for j in range(n)
    ] for i, row in enumerate(m)]
    pivot_of_col: dict[int, int] = {}
    free_rows = set(range(n))
    for _ in range(n):
        found = None
        for i in sorted(free_rows):
            for j in range(n):
                if j in pivot_of_col:
                    continue
                entry = aug[i][j]
                if not entry.is_zero() and entry.total_degree() == 0:
                    found = (i, j, entry.terms[0][1])
                    break
            if found:
                break
        if not found:
            return matrix_cofactor_inverse(m) if n <= 4 else None
        i, j, c = found
        inv_c = Fraction(1, 1) / c
        aug[i] = [p.scale(inv_c) for p in aug[i]]
        for r in range(n):
            if r != i and not aug[r][j].is_zero():
                factor = aug[r][j]
                aug[r] = [p - factor * q for p, q in zip(aug[r], aug[i])]
        pivot_of_col[j] = i
        free_rows.discard(i)
    inverse = tuple(tuple(aug[pivot_of_col[j]][n + k] for k in range(n)) for j in range(n))
    # The left block reduced to a permuted identity, so this is exact; verify
    # one side anyway to keep the certificate self-contained.
    for i in range(n):
        for k in range(n):
            acc = Polynomial.zero(arity)
            for j in range(n):
                acc = acc + m[i][j] * inverse[j][k]
            expected = Polynomial.constant(arity, 1) if i == k else Polynomial.zero(arity)
            if acc != expected:
                return None
    return inverse


def invert_polymap(f: PolyMap) -> Optional[PolyMap]:
    """Attempt a two-sided polynomial inverse by back-substitution.

    Handles coordinate permutations and shear-like maps where each component
    exposes one as-yet-unsolved variable with a constant coefficient (for
    example ``(x, t, u, v + g(x, t, u))``).  Returns None when no inverse of
    that shape exists; this is conservative, not a refutation.
    """
    n = f.domain_dim
    if f.codomain_dim != n:
        return None
    solved: dict[int, Polynomial] = {}
    remaining = set(range(n))
    unused = set(range(n))
    progress = True
    while remaining and progress:
        progress = False
        for k in sorted(unused):
            comp = f.components[k]
            candidates = comp.used_variables() & remaining
            if len(candidates) != 1:
                continue
            j = next(iter(candidates))
            coeff = Fraction(0)
            rest: dict[Exponent, Fraction] = {}
            bad = False
            for exps, c in comp.terms:
                if exps[j] == 0:
                    rest[exps] = c
                elif exps[j] == 1 and sum(exps) == 1:
                    coeff = c
                else:
                    bad = True
                    break
            if bad or coeff == 0:
                continue
            rest_poly = Polynomial(n, _canonical_terms(n, rest))
            if not (rest_poly.used_variables() <= set(solved)):
                continue
            args = [
                solved.get(i, Polynomial.variable(n, i)) for i in range(n)
            ]  # unsolved vars never occur in rest_poly
            expr = (Polynomial.variable(n, k) - rest_poly.substitute(args)).scale(
                Fraction(1, 1) / coeff
            )
            solved[j] = expr
            remaining.discard(j)
            unused.discard(k)
            progress = True
    if remaining:
        return None
    inv = PolyMap(n, tuple(solved[i] for i in range(n)))
    ident = PolyMap.identity(n)
    if map_equal(compose(f, inv), ident) and map_equal(compose(inv, f), ident):
        return inv
    return None
