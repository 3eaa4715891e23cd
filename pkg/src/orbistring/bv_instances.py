"""Small exactly checkable BV algebras and deliberately broken variants.

Families:

* exterior algebras on odd generators with a second-order ``D`` determined by
  its values on generators and pairs (Chevalley-Eilenberg style);
* ``Lambda(xi) (x) k[y]/(y^N)`` with ``D(xi y^a) = f(a) y^a``, which is second
  order exactly when ``f`` is affine on ``0..N-1``;
* direct sums (zero cross products) and graded tensor products;
* perturbations that keep ``D^2 = 0`` but break the second-order condition.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping, Sequence

from . import linalg
from ._sparse import acc, linear_sum
from .bv import Element, GradedBVData, GysinData

__all__ = [
    "ExteriorAlgebra",
    "exterior_bv",
    "chevalley_eilenberg",
    "random_exterior_bv",
    "odd_line_truncated",
    "direct_sum",
    "tensor_product",
    "perturb_top",
    "perturb_D",
    "generate_instances",
    "generate_gysin_instances",
    "LIE_ALGEBRAS",
    "EXAMPLES",
]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class ExteriorAlgebra:
    """``Lambda(xi_1, ..., xi_m)`` with odd generator degrees.

    Basis elements are sorted subsets of generator indices (0-based); the
    empty subset is the unit.
    """

    def __init__(self, gen_degrees: Sequence[int]):
        if any(d % 2 == 0 for d in gen_degrees):
            raise ValueError("exterior generators must have odd degree")
        self.gen_degrees = tuple(gen_degrees)
        m = len(gen_degrees)
        self.subsets = [s for k in range(m + 1) for s in combinations(range(m), k)]
        self.index = {s: n for n, s in enumerate(self.subsets)}
        self.degrees = tuple(sum(self.gen_degrees[g] for g in s) for s in self.subsets)

    @property
    def m(self) -> int:
        return len(self.gen_degrees)

    def name(self, s: tuple[int, ...]) -> str:
        return "".join(f"x{g + 1}" for g in s) or "1"

    def product_table(self) -> dict[tuple[int, int], Element]:
        table = {}
        for s in self.subsets:
            for t in self.subsets:
                if set(s) & set(t):
                    continue
                # sign of sorting s + t: count odd-odd inversions (all generators odd)
                inv = sum(1 for a in s for b in t if a > b)
                table[(self.index[s], self.index[t])] = {self.index[tuple(sorted(s + t))]: Fraction(_sign(inv))}
        return table

    def extend_second_order(self, values: Mapping[tuple[int, ...], Element]) -> dict[int, Element]:
        """Second-order ``D`` with ``D(1) = 0`` from its values on subsets of size 1, 2.

        Uses ``D(abc) = D(ab)c + (-1)^{|a|} a D(bc) + (-1)^{(|a|+1)|b|} b D(ac)
        - D(a)bc - (-1)^{|a|} a D(b)c - (-1)^{|a|+|b|} ab D(c)`` with
        ``a = xi_{s0}``, ``b = xi_{s1}`` and ``c`` the rest.
        """
        table = self.product_table()

        def mul(x, y):
            out: Element = {}
            for i, a in x.items():
                for j, b in y.items():
                    for k, c in table.get((i, j), {}).items():
                        acc(out, k, a * b * c)
            return out

        def e(s):
            return {self.index[tuple(s)]: Fraction(1)}

        @lru_cache(maxsize=None)
        def D(s: tuple[int, ...]) -> tuple:
            if len(s) == 0:
                return ()
            if len(s) <= 2:
                return tuple(sorted(values.get(s, {}).items()))
            s0, s1, rest = (s[0],), (s[1],), s[2:]
            da, db = self.gen_degrees[s[0]], self.gen_degrees[s[1]]

            def d(t):
                return dict(D(tuple(t)))

            out = linear_sum([
                (1, mul(d(s0 + s1), e(rest))),
                (_sign(da), mul(e(s0), d(s1 + rest))),
                (_sign((da + 1) * db), mul(e(s1), d(s0 + rest))),
                (-1, mul(mul(d(s0), e(s1)), e(rest))),
                (-_sign(da), mul(mul(e(s0), d(s1)), e(rest))),
                (-_sign(da + db), mul(mul(e(s0), e(s1)), d(rest))),
            ])
            return tuple(sorted(out.items()))

        return {self.index[s]: dict(D(s)) for s in self.subsets if D(s)}

    def bv(self, values: Mapping[tuple[int, ...], Element]) -> GradedBVData:
        return GradedBVData(self.degrees, self.product_table(), self.extend_second_order(values),
                            tuple(self.name(s) for s in self.subsets))


def exterior_bv(gen_degrees: Sequence[int], values: Mapping[tuple[int, ...], Mapping[tuple[int, ...], object]]
                ) -> GradedBVData:
    """Exterior algebra with ``D`` given on generators and pairs by subset keys.

    >>> A = exterior_bv([-1], {(0,): {(): 1}})
    >>> A.format(A.apply_D({1: 1}))
    '+1·1'
    """
    ext = ExteriorAlgebra(gen_degrees)
    vals = {s: {ext.index[t]: Fraction(c) for t, c in img.items() if c} for s, img in values.items()}
    return ext.bv(vals)


# Structure constants [x_i, x_j] = sum c_k x_k (i < j), 0-based.
LIE_ALGEBRAS: dict[str, tuple[int, dict[tuple[int, int], dict[int, int]]]] = {
    "abelian2": (2, {}),
    "affine2": (2, {(0, 1): {1: 1}}),
    "heisenberg": (3, {(0, 1): {2: 1}}),
    "sl2": (3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
    "so3": (3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}}),
    "r3": (3, {(0, 1): {1: 1}, (0, 2): {2: 1}}),
}


def chevalley_eilenberg(name: str, character: Sequence[int] | None = None,
                        scale: int = 1) -> GradedBVData:
    """Chevalley-Eilenberg complex of a small Lie algebra, generators in degree -1.

    ``D(x_i x_j) = scale * [x_i, x_j]`` and ``D(x_i) = character[i]``.
    """
    m, brackets = LIE_ALGEBRAS[name]
    values: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for (i, j), img in brackets.items():
        values[(i, j)] = {(k,): scale * c for k, c in img.items()}
    if character:
        for i, c in enumerate(character):
            if c:
                values[(i,)] = {(): c}
    return exterior_bv([-1] * m, values)


def _random_vector(rng: random.Random, indices: Sequence[int], density: float = 0.6) -> Element:
    out: Element = {}
    for i in indices:
        if rng.random() < density:
            c = rng.choice((-2, -1, 1, 1, 2, 3))
            out[i] = Fraction(c)
    return out


def random_exterior_bv(rng: random.Random, gen_degrees: Sequence[int]) -> GradedBVData:
    """Random second-order ``D`` on an exterior algebra (``D^2`` not enforced)."""
    ext = ExteriorAlgebra(gen_degrees)
    values: dict[tuple[int, ...], Element] = {}
    for s in ext.subsets:
        if 1 <= len(s) <= 2:
            target = ext.degrees[ext.index[s]] + 1
            idx = [n for n, d in enumerate(ext.degrees) if d == target]
            values[s] = _random_vector(rng, idx)
    return ext.bv(values)


def odd_line_truncated(N: int, f: Callable[[int], object], y_degree: int = 0) -> GradedBVData:
    """``Lambda(xi) (x) k[y]/(y^N)`` with ``D(y^a) = 0`` and ``D(xi y^a) = f(a) y^a``.

    ``|xi| = -1`` so that ``D`` raises degree by one; ``y`` must be even.
    """
    if y_degree % 2:
        raise ValueError("y must have even degree")
    xi_degree = -1
    # indices: y^a -> a, xi y^a -> N + a
    degrees = tuple(a * y_degree for a in range(N)) + tuple(xi_degree + a * y_degree for a in range(N))
    product: dict[tuple[int, int], Element] = {}
    for a in range(N):
        for b in range(N):
            if a + b < N:
                product[(a, b)] = {a + b: Fraction(1)}
                product[(N + a, b)] = {N + a + b: Fraction(1)}
                product[(a, N + b)] = {N + a + b: Fraction(1)}
    D = {N + a: {a: Fraction(f(a))} for a in range(N) if f(a)}
    names = tuple(f"y{a}" for a in range(N)) + tuple(f"xi.y{a}" for a in range(N))
    return GradedBVData(degrees, product, D, names)


def direct_sum(A: GradedBVData, B: GradedBVData) -> GradedBVData:
    """``A (+) B`` with ``A * B = 0``; a BV algebra iff both summands are."""
    n = A.dim
    product = dict(A.product)
    for (i, j), img in B.product.items():
        product[(n + i, n + j)] = {n + k: c for k, c in img.items()}
    D = dict(A.D)
    for i, img in B.D.items():
        D[n + i] = {n + k: c for k, c in img.items()}
    names = None
    if A.names and B.names:
        names = tuple(f"{x}|0" for x in A.names) + tuple(f"0|{y}" for y in B.names)
    return GradedBVData(A.degrees + B.degrees, product, D, names)


def tensor_product(A: GradedBVData, B: GradedBVData) -> GradedBVData:
    """Graded tensor product with Koszul signs and ``D = D_A (x) 1 + 1 (x) D_B``."""
    nB = B.dim

    def idx(i, j):
        return i * nB + j

    degrees = tuple(A.degrees[i] + B.degrees[j] for i in range(A.dim) for j in range(nB))
    product: dict[tuple[int, int], Element] = {}
    for (i, i2), ai in A.product.items():
        for (j, j2), bj in B.product.items():
            s = _sign(B.degrees[j] * A.degrees[i2])
            img: Element = {}
            for k, x in ai.items():
                for l, y in bj.items():
                    acc(img, idx(k, l), s * x * y)
            if img:
                product[(idx(i, j), idx(i2, j2))] = img
    D: dict[int, Element] = {}
    for i in range(A.dim):
        for j in range(nB):
            img: Element = {}
            for k, x in A.D.get(i, {}).items():
                acc(img, idx(k, j), x)
            for l, y in B.D.get(j, {}).items():
                acc(img, idx(i, l), _sign(A.degrees[i]) * y)
            if img:
                D[idx(i, j)] = img
    names = None
    if A.names and B.names:
        names = tuple(f"{x}(x){y}" for x in A.names for y in B.names)
    return GradedBVData(degrees, product, D, names)


def _cycles(A: GradedBVData, degree: int) -> list[Element]:
    src = [i for i, d in enumerate(A.degrees) if d == degree]
    tgt = [i for i, d in enumerate(A.degrees) if d == degree + 1]
    mat = [[A.D.get(s, {}).get(t, Fraction(0)) for s in src] for t in tgt]
    basis = linalg.nullspace(mat, len(src)) if tgt else [
        [Fraction(int(a == b)) for a in range(len(src))] for b in range(len(src))]
    return [{src[p]: x for p, x in enumerate(v) if x} for v in basis]


def perturb_D(A: GradedBVData, index: int, rng: random.Random) -> GradedBVData | None:
    """Add a random nonzero ``D``-cycle to ``D(e_index)``, keeping ``D^2 = 0``.

    Only safe when ``e_index`` is not itself in the image of ``D`` paths that
    matter, i.e. nothing maps onto it; returns ``None`` if no cycle of the
    right degree exists or if the result has ``D^2 != 0``.
    """
    cyc = _cycles(A, A.degrees[index] + 1)
    if not cyc:
        return None
    v = linear_sum((rng.choice((1, -1, 2)), z) for z in cyc)
    if not v:
        v = cyc[0]
    D = {i: dict(img) for i, img in A.D.items()}
    img = D.setdefault(index, {})
    for k, c in v.items():
        acc(img, k, c)
    out = GradedBVData(A.degrees, A.product, D, A.names)
    if any(out.apply_D(out.apply_D({i: Fraction(1)})) for i in range(out.dim)):
        return None
    return out


def perturb_top(A: GradedBVData, rng: random.Random) -> GradedBVData | None:
    """:func:`perturb_D` on the last basis element (top monomial of an exterior algebra)."""
    return perturb_D(A, A.dim - 1, rng)


def _has_square_zero(A: GradedBVData) -> bool:
    return not any(A.apply_D(A.apply_D({i: Fraction(1)})) for i in range(A.dim))


def generate_instances(seed: int = 0, count: int = 120) -> list[tuple[str, GradedBVData]]:
    """A deterministic mix of passing and failing instances, all with ``D^2 = 0``."""
    rng = random.Random(seed)
    out: list[tuple[str, GradedBVData]] = []

    def add(label, A):
        if A is not None and _has_square_zero(A):
            out.append((label, A))

    for name in LIE_ALGEBRAS:
        add(f"CE({name})", chevalley_eilenberg(name))
        add(f"CE({name})x2", chevalley_eilenberg(name, scale=2))
    add("CE(affine2,chi)", chevalley_eilenberg("affine2", character=(1, 0)))
    add("CE(r3,chi)", chevalley_eilenberg("r3", character=(2, 0, 0)))
    add("CE(heisenberg,chi)", chevalley_eilenberg("heisenberg", character=(1, -1, 0)))
    for name in ("heisenberg", "sl2", "so3", "r3"):
        add(f"CE({name})+perturb", perturb_top(chevalley_eilenberg(name), rng))
    degree_choices = [(-1,), (-1, -1), (-1, 1), (1, -1), (-1, -1, -1), (-1, -1, 1), (-1, 1, 1), (-3, 1, 1)]
    attempts = 0
    while len(out) < count * 2 // 3 and attempts < 4000:
        attempts += 1
        degs = rng.choice(degree_choices)
        A = random_exterior_bv(rng, degs)
        if not _has_square_zero(A):
            continue
        add(f"Lambda{degs}", A)
        if len(degs) == 3 and rng.random() < 0.5:
            add(f"Lambda{degs}+perturb", perturb_top(A, rng))
    ext = ExteriorAlgebra((-1, -1, -1))
    pairs = [ext.index[t] for t in ext.subsets if len(t) == 2]
    for k in range(12):
        # D vanishes below the top monomial, so only the top triple can fail
        v = _random_vector(rng, pairs) or {pairs[k % 3]: Fraction(1)}
        D = {len(ext.subsets) - 1: v}
        add(f"Lambda3 top-only #{k}", GradedBVData(ext.degrees, ext.product_table(), D,
                                                    tuple(ext.name(t) for t in ext.subsets)))
    for N in (2, 3, 4):
        for y_deg in (0, 2):
            c0, c1 = rng.choice((1, 2, -1)), rng.choice((0, 1, -3))
            add(f"odd-line N={N} affine", odd_line_truncated(N, lambda a: c0 + c1 * a, y_deg))
            add(f"odd-line N={N} quadratic", odd_line_truncated(N, lambda a: a * a, y_deg))
    pool = list(out)
    while len(out) < count:
        (la, A), (lb, B) = rng.sample(pool, 2)
        if rng.random() < 0.5 and A.dim + B.dim <= 16:
            add(f"{la} (+) {lb}", direct_sum(A, B))
        elif A.dim * B.dim <= 16:
            add(f"{la} (x) {lb}", tensor_product(A, B))
    return out


def generate_gysin_instances(seed: int = 0, count: int = 40) -> list[tuple[str, GysinData]]:
    """Finite Gysin data built from the passing instances of :func:`generate_instances`."""
    from .bv import check_bv_identity, gysin_from_bv

    rng = random.Random(seed)
    out = []
    for s in range(seed, seed + 20):
        for label, A in generate_instances(s):
            if not check_bv_identity(A):
                continue
            G = gysin_from_bv(A, rng)
            if G is not None:
                out.append((label, G))
                if len(out) >= count:
                    return out
    return out


def _s3_gysin() -> GysinData:
    from .bv import gysin_from_bv

    G = gysin_from_bv(exterior_bv([3], {}))
    assert G is not None
    return G


def _sl2_gysin() -> GysinData:
    from .bv import gysin_from_bv

    G = gysin_from_bv(chevalley_eilenberg("sl2"))
    assert G is not None
    return G


def _top_only() -> GradedBVData:
    ext = ExteriorAlgebra((-1, -1, -1))
    top = len(ext.subsets) - 1
    return GradedBVData(ext.degrees, ext.product_table(), {top: {ext.index[(0, 1)]: Fraction(1)}},
                        tuple(ext.name(s) for s in ext.subsets))


# Named instances for the command line and the docs.
EXAMPLES: dict[str, Callable[[], GradedBVData | GysinData]] = {
    "ce-sl2": lambda: chevalley_eilenberg("sl2"),
    "ce-heisenberg": lambda: chevalley_eilenberg("heisenberg"),
    "odd-line-affine": lambda: odd_line_truncated(3, lambda a: 1 + a),
    "odd-line-quadratic": lambda: odd_line_truncated(3, lambda a: a * a),
    "top-only": _top_only,
    "gysin-s3": _s3_gysin,
    "gysin-sl2": _sl2_gysin,
}
