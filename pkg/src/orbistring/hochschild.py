"""Normalized Hochschild chains of a small algebra, shuffles, ``b``, ``B`` and TC.

A chain is a sparse dict keyed by basis tensors ``(a_0, a_1, ..., a_p)`` of
algebra basis indices; ``p`` is the number of bar factors (the Hochschild
degree) and the grading used for ``C_k`` is ``k = -p``.  Tensors with the
unit in a bar position vanish.  Everything is truncated at ``p <= N``; an
operation whose result would need more bar factors raises
:class:`TruncationError` instead of silently dropping terms.

TC elements are tuples ``(c_0, c_1, ...)`` where ``c_m`` has ``p_0 + 2m``
bar factors, with differential ``d(c)_m = B c_m + b c_{m+1}``.  The
inclusion ``q`` puts a chain in slot 0; dropping slot 0 identifies the
cokernel with TC shifted by two; ``T = b . (slot 0)`` is the connecting map.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as cartesian
from typing import Callable, Iterable, Mapping, Sequence

from . import linalg
from ._sparse import acc, add, linear_sum
from .report import CheckReport

__all__ = [
    "TruncationError",
    "SmallAlgebra",
    "ground_field",
    "dual_numbers",
    "group_algebra_z2",
    "ALGEBRAS",
    "HochschildComplex",
    "TCElement",
    "verify_chain_identities",
]

Chain = dict[tuple[int, ...], Fraction]


class TruncationError(ValueError):
    """A result would have more bar factors than the truncation allows."""


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class SmallAlgebra:
    """Unital associative algebra given by a multiplication table on a basis."""

    names: tuple[str, ...]
    unit: int
    table: Mapping[tuple[int, int], Mapping[int, Fraction]]

    def __post_init__(self):
        n = len(self.names)
        clean = {}
        for (i, j), img in self.table.items():
            img = {int(k): Fraction(c) for k, c in img.items() if c}
            if not (0 <= i < n and 0 <= j < n and all(0 <= k < n for k in img)):
                raise ValueError(f"table entry ({i}, {j}) out of range")
            if img:
                clean[(int(i), int(j))] = img
        object.__setattr__(self, "table", clean)
        if not 0 <= self.unit < n:
            raise ValueError("unit index out of range")

    @property
    def dim(self) -> int:
        return len(self.names)

    def mul(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.table.get((i, j), {}).items():
                    acc(out, k, a * b * c)
        return out

    def basis_mul(self, i: int, j: int) -> Mapping[int, Fraction]:
        return self.table.get((i, j), {})

    def structure_reports(self) -> list[CheckReport]:
        n = self.dim
        rep_u = CheckReport("unit", True)
        for i in range(n):
            rep_u.checked += 1
            e = {i: Fraction(1)}
            if self.mul({self.unit: Fraction(1)}, e) != e or self.mul(e, {self.unit: Fraction(1)}) != e:
                rep_u.passed, rep_u.witness = False, self.names[i]
                break
        rep_a = CheckReport("associativity", True)
        for i, j, k in cartesian(range(n), repeat=3):
            rep_a.checked += 1
            x, y, z = ({t: Fraction(1)} for t in (i, j, k))
            res = add(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z)), -1)
            if res:
                rep_a.passed, rep_a.witness, rep_a.residual = False, (i, j, k), res
                break
        return [rep_u, rep_a]

    @property
    def is_commutative(self) -> bool:
        return all(self.basis_mul(i, j) == self.basis_mul(j, i)
                   for i, j in combinations(range(self.dim), 2))


def ground_field() -> SmallAlgebra:
    return SmallAlgebra(("1",), 0, {(0, 0): {0: 1}})


def dual_numbers() -> SmallAlgebra:
    """``k[x]/(x^2)``."""
    return SmallAlgebra(("1", "x"), 0, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})


def group_algebra_z2() -> SmallAlgebra:
    """``k[Z/2]`` with generator ``g``."""
    return SmallAlgebra(("1", "g"), 0, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}})


ALGEBRAS: dict[str, Callable[[], SmallAlgebra]] = {
    "ground": ground_field,
    "dual": dual_numbers,
    "z2": group_algebra_z2,
}


@dataclass(frozen=True)
class TCElement:
    """``(c_0, c_1, ...)`` with ``c_m`` a chain with ``p0 + 2m`` bar factors."""

    p0: int
    components: tuple[Chain, ...]

    @property
    def degree(self) -> int:
        return -self.p0

    def __bool__(self) -> bool:
        return any(self.components)

    def trimmed(self) -> "TCElement":
        comps = list(self.components)
        while comps and not comps[-1]:
            comps.pop()
        return TCElement(self.p0, tuple(comps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TCElement):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return (a.p0 == b.p0 or not a.components) and a.components == b.components

    def __hash__(self) -> int:
        t = self.trimmed()
        return hash((t.p0, tuple(tuple(sorted(c.items())) for c in t.components)))


class HochschildComplex:
    """Normalized Hochschild chains of ``A`` with at most ``N`` bar factors."""

    def __init__(self, A: SmallAlgebra, N: int):
        if N < 0:
            raise ValueError("truncation must be non-negative")
        self.A = A
        self.N = N
        self._bar = [i for i in range(A.dim) if i != A.unit]

    # -- chains ---------------------------------------------------------
    def basis(self, p: int) -> list[tuple[int, ...]]:
        """Normalized basis tensors with ``p`` bar factors."""
        if p < 0 or p > self.N:
            return []
        return [(a0,) + rest for a0 in range(self.A.dim) for rest in cartesian(self._bar, repeat=p)]

    def tensor(self, *names: str) -> Chain:
        idx = [self.A.names.index(n) for n in names]
        return self.normalize({tuple(idx): Fraction(1)})

    def normalize(self, x: Mapping[tuple[int, ...], Fraction]) -> Chain:
        out: Chain = {}
        for t, c in x.items():
            if len(t) - 1 > self.N:
                raise TruncationError(f"tensor of length {len(t) - 1} exceeds truncation {self.N}")
            if any(a == self.A.unit for a in t[1:]):
                continue
            acc(out, tuple(t), c)
        return out

    def _check_room(self, p: int) -> None:
        if p > self.N:
            raise TruncationError(f"result needs {p} bar factors, truncation is {self.N}")

    def format(self, x: Mapping[tuple[int, ...], Fraction]) -> str:
        if not x:
            return "0"
        names = self.A.names
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c)}·" + "⊗".join(names[a] for a in t)
                        for t, c in sorted(x.items()))

    def _expand_products(self, coeff: Fraction, slots: Sequence[Mapping[int, Fraction]],
                         out: Chain) -> None:
        """Add ``coeff * slots[0] (x) slots[1] (x) ...`` with normalization."""
        for combo in cartesian(*[list(s.items()) for s in slots]):
            t = tuple(i for i, _ in combo)
            if any(a == self.A.unit for a in t[1:]):
                continue
            c = coeff
            for _, v in combo:
                c *= v
            acc(out, t, c)

    def b(self, x: Mapping[tuple[int, ...], Fraction]) -> Chain:
        """Hochschild boundary; lowers the number of bar factors by one."""
        out: Chain = {}
        A = self.A
        for t, c in x.items():
            n = len(t) - 1
            if n == 0:
                continue
            for i in range(n):
                prod = A.basis_mul(t[i], t[i + 1])
                slots = [{a: Fraction(1)} for a in t[:i]] + [prod] + [{a: Fraction(1)} for a in t[i + 2:]]
                self._expand_products(c * _sign(i), slots, out)
            prod = A.basis_mul(t[n], t[0])
            slots = [prod] + [{a: Fraction(1)} for a in t[1:n]]
            self._expand_products(c * _sign(n), slots, out)
        return out

    def B(self, x: Mapping[tuple[int, ...], Fraction]) -> Chain:
        """Connes operator ``sum_i (-1)^{ni} 1 (x) a_i .. a_n (x) a_0 .. a_{i-1}``."""
        out: Chain = {}
        for t, c in x.items():
            n = len(t) - 1
            self._check_room(n + 1)
            for i in range(n + 1):
                rotated = (self.A.unit,) + t[i:] + t[:i]
                if any(a == self.A.unit for a in rotated[1:]):
                    continue
                acc(out, rotated, c * _sign(n * i))
        return out

    def shuffle(self, x: Mapping[tuple[int, ...], Fraction], y: Mapping[tuple[int, ...], Fraction]) -> Chain:
        """``a_0 b_0 (x)`` signed shuffles of the bar factors."""
        out: Chain = {}
        for s, c in x.items():
            for t, d in y.items():
                p, q = len(s) - 1, len(t) - 1
                self._check_room(p + q)
                head = self.A.basis_mul(s[0], t[0])
                if not head:
                    continue
                for pos in combinations(range(p + q), p):
                    bar = [0] * (p + q)
                    posset = set(pos)
                    ia, ib = iter(s[1:]), iter(t[1:])
                    inversions = 0
                    seen_b = 0
                    for k in range(p + q):
                        if k in posset:
                            bar[k] = next(ia)
                            inversions += seen_b
                        else:
                            bar[k] = next(ib)
                            seen_b += 1
                    for h, v in head.items():
                        acc(out, (h,) + tuple(bar), c * d * v * _sign(inversions))
        return out

    # -- TC -----------------------------------------------------------------
    def tc_element(self, p0: int, components: Sequence[Mapping]) -> TCElement:
        comps = []
        for m, comp in enumerate(components):
            comp = self.normalize(comp)
            if any(len(t) - 1 != p0 + 2 * m for t in comp):
                raise ValueError(f"component {m} must have {p0 + 2 * m} bar factors")
            comps.append(comp)
        return TCElement(p0, tuple(comps))

    def tc_q(self, x: Mapping[tuple[int, ...], Fraction], p: int) -> TCElement:
        """Inclusion of a chain with ``p`` bar factors into slot 0."""
        return self.tc_element(p, [x])

    def tc_d(self, z: TCElement) -> TCElement:
        comps = list(z.components)
        out = []
        for m in range(len(comps)):
            nxt = comps[m + 1] if m + 1 < len(comps) else {}
            out.append(add(self.B(comps[m]), self.b(nxt)))
        return TCElement(z.p0 + 1, tuple(out)).trimmed() if out else TCElement(z.p0 + 1, ())

    def tc_T(self, z: TCElement) -> Chain:
        """``b`` applied to slot 0."""
        return self.b(z.components[0]) if z.components else {}

    def tc_cokernel(self, z: TCElement) -> TCElement:
        """Image in the cokernel of ``q``, identified with TC shifted by two."""
        return TCElement(z.p0 + 2, tuple(z.components[1:]))

    def tc_basis(self, p0: int, top: int | None = None) -> list[tuple[int, tuple[int, ...]]]:
        """``(slot, tensor)`` pairs spanning TC at ``p0`` with slot lengths ``<= top``."""
        top = self.N if top is None else top
        out = []
        m = 0
        while p0 + 2 * m <= top:
            out.extend((m, t) for t in self.basis(p0 + 2 * m))
            m += 1
        return out

    def tc_from_basis(self, p0: int, slot: int, t: tuple[int, ...], c=1) -> TCElement:
        comps: list[Chain] = [{} for _ in range(slot + 1)]
        comps[slot] = {t: Fraction(c)}
        return TCElement(p0, tuple(comps))

    def tc_vector(self, z: TCElement, basis: list[tuple[int, tuple[int, ...]]]) -> list[Fraction]:
        comps = z.components
        return [comps[m].get(t, Fraction(0)) if m < len(comps) else Fraction(0) for m, t in basis]

    def tc_from_vector(self, p0: int, basis: list[tuple[int, tuple[int, ...]]], v: Sequence) -> TCElement:
        slots = max((m for m, _ in basis), default=-1) + 1
        comps: list[Chain] = [{} for _ in range(slots)]
        for (m, t), c in zip(basis, v):
            acc(comps[m], t, c)
        return TCElement(p0, tuple(comps))

    def build_tc(self, p0: int) -> dict:
        """Finite pieces of the TC complex around Hochschild degree ``p0``.

        Returns the basis of TC at ``p0`` with one bar factor of headroom (so
        ``d`` is defined) and the matrix of ``d`` into TC at ``p0 + 1``.
        """
        src = self.tc_basis(p0, self.N - 1)
        tgt = self.tc_basis(p0 + 1, self.N)
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        row = {bt: r for r, bt in enumerate(tgt)}
        for col, (m, t) in enumerate(src):
            dz = self.tc_d(self.tc_from_basis(p0, m, t))
            for mm, comp in enumerate(dz.components):
                for tt, c in comp.items():
                    mat[row[(mm, tt)]][col] = c
        return {"p0": p0, "source": src, "target": tgt, "d": mat}

    def connecting_map(self, z: TCElement, rng: random.Random | None = None) -> Chain:
        """Snake-lemma image of a cycle of TC (viewed in the cokernel of ``q``).

        Lifts ``z`` to TC two degrees lower by solving ``proj(w) = z``
        (optionally adding a random slot-0 part), applies ``d`` and solves
        ``q(u) = d w``.
        """
        p0 = z.p0 - 2
        if p0 < 0:
            return {}
        lift_basis = self.tc_basis(p0, self.N - 1)
        coker_basis = [(m - 1, t) for m, t in lift_basis if m >= 1]
        proj = [[Fraction(int(cb == (m - 1, t) and m >= 1)) for (m, t) in lift_basis] for cb in coker_basis]
        rhs = self.tc_vector(z, coker_basis)
        w_vec = linalg.solve(proj, len(lift_basis), rhs)
        if w_vec is None:
            raise ValueError("element does not lie in the truncated cokernel")
        if rng is not None:
            for k, (m, _) in enumerate(lift_basis):
                if m == 0:
                    w_vec[k] += rng.choice((-1, 0, 1, 2))
        w = self.tc_from_vector(p0, lift_basis, w_vec)
        dw = self.tc_d(w)
        q_basis = self.basis(p0 + 1)
        tgt_basis = self.tc_basis(p0 + 1, self.N)
        qmat = [[Fraction(int(tb == (0, t))) for t in q_basis] for tb in tgt_basis]
        u = linalg.solve(qmat, len(q_basis), self.tc_vector(dw, tgt_basis))
        if u is None:
            raise ValueError("d(lift) is not in the image of q; input was not a cycle")
        return {t: c for t, c in zip(q_basis, u) if c}


def _sweep(name: str, cases: Iterable, residual) -> CheckReport:
    rep = CheckReport(name, True)
    for case in cases:
        rep.checked += 1
        res = residual(case)
        if res:
            rep.passed, rep.witness, rep.residual = False, case, res
            break
    return rep


def _tc_residual(a: TCElement, b: TCElement) -> Chain:
    """Nonzero dict describing ``a - b`` (keyed by ``(slot, tensor)``), or empty."""
    out: dict = {}
    for sign, z in ((1, a), (-1, b)):
        for m, comp in enumerate(z.components):
            for t, c in comp.items():
                acc(out, (m, t), sign * c)
    return out


def _in_span(columns: list[list[Fraction]], dim: int, v: list[Fraction]) -> bool:
    if not any(v):
        return True
    if not columns:
        return False
    rows = [list(r) for r in zip(*columns)]
    return linalg.solve(rows, len(columns), v) is not None


def verify_chain_identities(A: SmallAlgebra, N: int, seed: int = 0) -> dict[str, CheckReport]:
    """Check every chain-level identity on all basis tensors that fit in ``N``.

    Each identity is only evaluated where all intermediate results have at
    most ``N`` bar factors.  The entries ``"b derivation"``,
    ``"seven-term (sh, b)"`` and ``"B derivation on b-homology"`` are
    reported for information; see :data:`INFORMATIONAL`.
    """
    H = HochschildComplex(A, N)
    rng = random.Random(seed)
    e = lambda t: {t: Fraction(1)}  # noqa: E731
    reps: dict[str, CheckReport] = {}

    def basis_upto(top):
        return [t for p in range(0, min(top, N) + 1) for t in H.basis(p)]

    def p_of(t):
        return len(t) - 1

    reps["b^2 = 0"] = _sweep("b^2 = 0", basis_upto(N), lambda t: H.b(H.b(e(t))))
    reps["B^2 = 0"] = _sweep("B^2 = 0", basis_upto(N - 2), lambda t: H.B(H.B(e(t))))
    reps["bB + Bb = 0"] = _sweep("bB + Bb = 0", basis_upto(N - 1),
                                 lambda t: add(H.b(H.B(e(t))), H.B(H.b(e(t)))))

    pairs = [(s, t) for s in basis_upto(N) for t in basis_upto(N) if p_of(s) + p_of(t) <= N]
    pairs_B = [(s, t) for s, t in pairs if p_of(s) + p_of(t) + 1 <= N]
    triples = [(s, t, u) for s, t in pairs for u in basis_upto(N) if p_of(s) + p_of(t) + p_of(u) <= N]

    def derivation(op):
        def res(st):
            s, t = st
            x, y = e(s), e(t)
            return linear_sum([
                (1, op(H.shuffle(x, y))),
                (-1, H.shuffle(op(x), y)),
                (-_sign(p_of(s)), H.shuffle(x, op(y))),
            ])
        return res

    reps["B derivation"] = _sweep("B derivation of shuffle", pairs_B, derivation(H.B))
    reps["shuffle commutativity"] = _sweep("shuffle commutativity", pairs, lambda st: add(
        H.shuffle(e(st[0]), e(st[1])), H.shuffle(e(st[1]), e(st[0])), -_sign(p_of(st[0]) * p_of(st[1]))))
    reps["shuffle associativity"] = _sweep("shuffle associativity", triples, lambda stu: add(
        H.shuffle(H.shuffle(e(stu[0]), e(stu[1])), e(stu[2])),
        H.shuffle(e(stu[0]), H.shuffle(e(stu[1]), e(stu[2]))), -1))
    reps["b derivation"] = _sweep("b derivation of shuffle", pairs, derivation(H.b))

    def seven(stu):
        s, t, u = stu
        a, bb, c = e(s), e(t), e(u)
        da, db = p_of(s), p_of(t)
        sh, d = H.shuffle, H.b
        return linear_sum([
            (1, d(sh(sh(a, bb), c))),
            (-1, sh(d(sh(a, bb)), c)),
            (-_sign(da), sh(a, d(sh(bb, c)))),
            (-_sign((da + 1) * db), sh(bb, d(sh(a, c)))),
            (1, sh(sh(d(a), bb), c)),
            (_sign(da), sh(sh(a, d(bb)), c)),
            (_sign(da + db), sh(sh(a, bb), d(c))),
        ])

    reps["seven-term (sh, b)"] = _sweep("seven-term identity for (sh, b)", triples, seven)

    # B as a derivation on b-homology: residual on b-cycles is a b-boundary
    def cycles(p):
        src = H.basis(p)
        tgt = H.basis(p - 1)
        if not tgt:
            return [e(t) for t in src]
        row = {t: r for r, t in enumerate(tgt)}
        mat = [[Fraction(0)] * len(src) for _ in tgt]
        for col, t in enumerate(src):
            for tt, c in H.b(e(t)).items():
                mat[row[tt]][col] = c
        return [{t: c for t, c in zip(src, v) if c} for v in linalg.nullspace(mat, len(src))]

    def boundaries(p):
        src = H.basis(p + 1)
        tgt = H.basis(p)
        cols = []
        for t in src:
            img = H.b(e(t))
            cols.append([img.get(tt, Fraction(0)) for tt in tgt])
        return tgt, cols

    hom_cases = []
    for p in range(N + 1):
        for q in range(N + 1):
            if p + q + 2 <= N:
                hom_cases.extend((p, x, q, y) for x in cycles(p) for y in cycles(q))

    def hom_res(case):
        p, x, q, y = case
        res = linear_sum([(1, H.B(H.shuffle(x, y))), (-1, H.shuffle(H.B(x), y)),
                          (-_sign(p), H.shuffle(x, H.B(y)))])
        tgt, cols = boundaries(p + q + 1)
        v = [res.get(t, Fraction(0)) for t in tgt]
        return {} if _in_span(cols, len(tgt), v) else res

    reps["B derivation on b-homology"] = _sweep("B derivation on b-homology", hom_cases, hom_res)

    # TC: q and T are chain maps, T.q = b, short exact sequence, connecting map
    reps["tc_q chain map"] = _sweep("tc_q chain map", basis_upto(N - 1), lambda t: _tc_residual(
        H.tc_d(H.tc_q(e(t), p_of(t))), H.tc_q(H.B(e(t)), p_of(t) + 1)))

    tc_cases = [(p0, m, t) for p0 in range(N) for m, t in H.tc_basis(p0, N - 1)]
    reps["tc_T chain map"] = _sweep("tc_T chain map (T d + d T = 0)", tc_cases, lambda c: add(
        H.tc_T(H.tc_d(H.tc_from_basis(*c))), H.B(H.tc_T(H.tc_from_basis(*c)))))
    reps["tc_T tc_q = b"] = _sweep("tc_T . tc_q = b", basis_upto(N), lambda t: add(
        H.tc_T(H.tc_q(e(t), p_of(t))), H.b(e(t)), -1))

    def ses(p0):
        src = H.basis(p0)
        mid = H.tc_basis(p0, N)
        end = H.tc_basis(p0 + 2, N)
        qmat = [[Fraction(int(mb == (0, t))) for t in src] for mb in mid]
        pmat = [[Fraction(int(m >= 1 and eb == (m - 1, t))) for (m, t) in mid] for eb in end]
        rq, rp = linalg.rank(qmat, len(src)), linalg.rank(pmat, len(mid))
        comp = linalg.matmul(pmat, qmat, len(mid)) if pmat and src else []
        ok = rq == len(src) and rp == len(end) and len(mid) == rq + rp and not any(any(r) for r in comp)
        return {} if ok else {"ranks": (len(src), rq, len(mid), rp, len(end))}

    reps["short exact sequence"] = _sweep("0 -> C -> TC -> TC[2] -> 0 exact", range(N + 1), ses)

    conn_cases = []
    for p0 in range(2, N):
        data = H.build_tc(p0)
        for v in linalg.nullspace(data["d"], len(data["source"])) if data["target"] else []:
            conn_cases.append(H.tc_from_vector(p0, data["source"], v))

    def conn_res(z):
        exact = add(H.connecting_map(z), H.tc_T(z), -1)
        if exact:
            return exact
        # a random lift changes the answer by a B-boundary only
        u = H.connecting_map(z, rng)
        diff = add(u, H.tc_T(z), -1)
        p = z.p0 - 1
        tgt = H.basis(p)
        cols = [[H.B(e(t)).get(tt, Fraction(0)) for tt in tgt] for t in H.basis(p - 1)]
        return {} if _in_span(cols, len(tgt), [diff.get(t, Fraction(0)) for t in tgt]) else diff

    reps["connecting map"] = _sweep("tc_T equals the connecting map", conn_cases, conn_res)
    return reps


INFORMATIONAL = frozenset({"b derivation", "seven-term (sh, b)", "B derivation on b-homology"})
