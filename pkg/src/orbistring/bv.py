"""Finite-dimensional BV algebras, derived brackets and Gysin string brackets.

Elements are sparse vectors ``{basis index: Fraction}``.  Degrees are
homological and the operator ``D`` raises degree by one.  Products need not
be unital.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Iterable, Mapping

from . import linalg
from ._sparse import acc, add, linear_sum
from .report import CheckReport

__all__ = [
    "Element",
    "GradedBVData",
    "GysinData",
    "derived_bracket",
    "check_bv_identity",
    "check_leibniz",
    "check_gerstenhaber",
    "string_bracket",
    "check_string_lie",
    "verify_T_lie_morphism",
    "gysin_from_bv",
    "load_bv",
    "dump_bv",
    "load_gysin",
    "dump_gysin",
]

Element = dict[int, Fraction]
SparseMap = dict[int, Element]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _freeze_map(m: Mapping) -> dict:
    out = {}
    for key, image in m.items():
        clean = {int(t): Fraction(c) for t, c in image.items() if c}
        if clean:
            out[key] = clean
    return out


def _apply(m: Mapping[int, Mapping[int, Fraction]], x: Mapping[int, Fraction]) -> Element:
    return linear_sum((c, m.get(i, {})) for i, c in x.items())


def _compose(outer: Mapping, inner: Mapping) -> SparseMap:
    return _freeze_map({i: _apply(outer, img) for i, img in inner.items()})


def _basis_triples(dim: int) -> Iterable[tuple[int, int, int]]:
    return cartesian(range(dim), repeat=3)


@dataclass(frozen=True)
class GradedBVData:
    """Basis degrees, product structure constants and the operator ``D``.

    ``product[(i, j)]`` is the sparse expansion of ``e_i * e_j`` and ``D[i]``
    that of ``D(e_i)``.  Degree bookkeeping is enforced on construction; the
    algebraic axioms are checked by :meth:`structure_reports` so that broken
    instances can still be built and diagnosed.
    """

    degrees: tuple[int, ...]
    product: Mapping[tuple[int, int], Mapping[int, Fraction]]
    D: Mapping[int, Mapping[int, Fraction]]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        n = len(degrees)
        prod = {(int(i), int(j)): v for (i, j), v in _freeze_map(self.product).items()}
        D = {int(i): v for i, v in _freeze_map(self.D).items()}
        object.__setattr__(self, "product", prod)
        object.__setattr__(self, "D", D)
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n:
                raise ValueError(f"{len(names)} names for {n} basis elements")
            object.__setattr__(self, "names", names)
        for (i, j), image in prod.items():
            for k in image:
                if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                    raise ValueError(f"product entry ({i}, {j}) -> {k} out of range")
                if degrees[k] != degrees[i] + degrees[j]:
                    raise ValueError(f"product e{i}*e{j} -> e{k} does not preserve degree")
        for i, image in D.items():
            for k in image:
                if not (0 <= i < n and 0 <= k < n):
                    raise ValueError(f"D entry {i} -> {k} out of range")
                if degrees[k] != degrees[i] + 1:
                    raise ValueError(f"D(e{i}) -> e{k} does not raise degree by one")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"e{i}"

    def basis(self, i: int) -> Element:
        return {i: Fraction(1)}

    def mul(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Element:
        out: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product.get((i, j), {}).items():
                    acc(out, k, a * b * c)
        return out

    def apply_D(self, x: Mapping[int, Fraction]) -> Element:
        return _apply(self.D, x)

    def degree(self, x: Mapping[int, Fraction]) -> int | None:
        """Degree of a nonzero homogeneous element (``None`` for zero)."""
        ds = {self.degrees[i] for i in x}
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else None

    def homogeneous_parts(self, x: Mapping[int, Fraction]) -> dict[int, Element]:
        parts: dict[int, Element] = {}
        for i, c in x.items():
            parts.setdefault(self.degrees[i], {})[i] = c
        return parts

    def shift(self, x: Mapping[int, Fraction]) -> Element:
        """``x -> (-1)^{|x|} x`` extended linearly."""
        return {i: _sign(self.degrees[i]) * c for i, c in x.items()}

    def format(self, x: Mapping[int, Fraction]) -> str:
        if not x:
            return "0"
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c)}·{self.name(i)}" for i, c in sorted(x.items()))

    def structure_reports(self) -> list[CheckReport]:
        n = self.dim
        e = self.basis
        comm = CheckReport("graded commutativity", True)
        for i in range(n):
            for j in range(i, n):
                comm.checked += 1
                res = add(self.mul(e(i), e(j)),
                          self.mul(e(j), e(i)), -_sign(self.degrees[i] * self.degrees[j]))
                if res:
                    comm.passed, comm.witness, comm.residual = False, (i, j), res
                    break
            if not comm.passed:
                break
        assoc = _sweep("associativity", _basis_triples(n), lambda t: add(
            self.mul(self.mul(e(t[0]), e(t[1])), e(t[2])),
            self.mul(e(t[0]), self.mul(e(t[1]), e(t[2]))), -1))
        square = _sweep("D^2 = 0", ((i,) for i in range(n)),
                        lambda t: self.apply_D(self.apply_D(e(t[0]))))
        return [comm, assoc, square]

    def validate(self) -> "GradedBVData":
        for rep in self.structure_reports():
            if not rep:
                raise ValueError(rep.line())
        return self


def _sweep(name: str, cases: Iterable, residual: Callable[[tuple], Element]) -> CheckReport:
    rep = CheckReport(name, True)
    for case in cases:
        rep.checked += 1
        res = residual(case)
        if res:
            rep.passed, rep.witness, rep.residual = False, case, res
            break
    return rep


def _bilinear(A: GradedBVData, homogeneous: Callable[[Element, int, Element, int], Element],
              a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Element:
    out: Element = {}
    for da, pa in A.homogeneous_parts(a).items():
        for db, pb in A.homogeneous_parts(b).items():
            for k, c in homogeneous(pa, da, pb, db).items():
                acc(out, k, c)
    return out


def derived_bracket(A: GradedBVData, a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Element:
    """``{a;b} = (-1)^{|a|} D(ab) - (-1)^{|a|} D(a) b - a D(b)``, bilinearly."""

    def hom(pa, da, pb, db):
        s = _sign(da)
        return linear_sum([
            (s, A.apply_D(A.mul(pa, pb))),
            (-s, A.mul(A.apply_D(pa), pb)),
            (-1, A.mul(pa, A.apply_D(pb))),
        ])

    return _bilinear(A, hom, a, b)


def _seven_term(A: GradedBVData, i: int, j: int, k: int) -> Element:
    a, b, c = A.basis(i), A.basis(j), A.basis(k)
    da, db = A.degrees[i], A.degrees[j]
    D, m = A.apply_D, A.mul
    return linear_sum([
        (1, D(m(m(a, b), c))),
        (-1, m(D(m(a, b)), c)),
        (-_sign(da), m(a, D(m(b, c)))),
        (-_sign((da + 1) * db), m(b, D(m(a, c)))),
        (1, m(m(D(a), b), c)),
        (_sign(da), m(m(a, D(b)), c)),
        (_sign(da + db), m(m(a, b), D(c))),
    ])


def check_bv_identity(A: GradedBVData) -> CheckReport:
    """Second-order condition on ``D`` over every basis triple."""
    return _sweep("seven-term identity", _basis_triples(A.dim), lambda t: _seven_term(A, *t))


def check_leibniz(A: GradedBVData) -> CheckReport:
    """``{a;bc} = {a;b}c + (-1)^{|b|(|a|+1)} b{a;c}`` over every basis triple."""

    def residual(t):
        i, j, k = t
        a, b, c = A.basis(i), A.basis(j), A.basis(k)
        sign = _sign(A.degrees[j] * (A.degrees[i] + 1))
        return linear_sum([
            (1, derived_bracket(A, a, A.mul(b, c))),
            (-1, A.mul(derived_bracket(A, a, b), c)),
            (-sign, A.mul(b, derived_bracket(A, a, c))),
        ])

    return _sweep("bracket derivation", _basis_triples(A.dim), residual)


def _lie_reports(dim: int, degrees: tuple[int, ...], bracket, shift: int,
                 label: str) -> list[CheckReport]:
    """Graded antisymmetry and Jacobi for a bracket whose parity is ``|x| + shift``."""

    def p(i):
        return degrees[i] + shift

    def e(i):
        return {i: Fraction(1)}

    anti = _sweep(f"{label} antisymmetry", cartesian(range(dim), repeat=2), lambda t: add(
        bracket(e(t[0]), e(t[1])), bracket(e(t[1]), e(t[0])), _sign(p(t[0]) * p(t[1]))))

    def jac(t):
        i, j, k = t
        return linear_sum([
            (1, bracket(e(i), bracket(e(j), e(k)))),
            (-1, bracket(bracket(e(i), e(j)), e(k))),
            (-_sign(p(i) * p(j)), bracket(e(j), bracket(e(i), e(k)))),
        ])

    return [anti, _sweep(f"{label} Jacobi", _basis_triples(dim), jac)]


def check_gerstenhaber(A: GradedBVData) -> list[CheckReport]:
    """Antisymmetry and Jacobi of the derived bracket (parity ``|x| + 1``)."""
    return _lie_reports(A.dim, A.degrees, lambda x, y: derived_bracket(A, x, y), 1, "derived bracket")


@dataclass(frozen=True)
class GysinData:
    """An exact sequence ``B_i -q-> H_i -c-> H_{i-2} -T-> B_{i-1} -q-> ...``.

    ``B`` carries the product and ``Delta`` (its ``D``).  ``q``, ``c`` and
    ``T`` are sparse maps keyed by source index: ``q`` from ``B`` to ``H``,
    ``c`` and ``T`` from ``H``.
    """

    B: GradedBVData
    h_degrees: tuple[int, ...]
    q: Mapping[int, Mapping[int, Fraction]]
    c: Mapping[int, Mapping[int, Fraction]]
    T: Mapping[int, Mapping[int, Fraction]]

    def __post_init__(self):
        hd = tuple(int(d) for d in self.h_degrees)
        object.__setattr__(self, "h_degrees", hd)
        for name in ("q", "c", "T"):
            object.__setattr__(self, name, {int(k): v for k, v in _freeze_map(getattr(self, name)).items()})
        bd = self.B.degrees
        for name, src, tgt, shift in (("q", bd, hd, 0), ("c", hd, hd, -2), ("T", hd, bd, 1)):
            for s, image in getattr(self, name).items():
                if not 0 <= s < len(src):
                    raise ValueError(f"{name}: source index {s} out of range")
                for t in image:
                    if not 0 <= t < len(tgt):
                        raise ValueError(f"{name}: target index {t} out of range")
                    if tgt[t] != src[s] + shift:
                        raise ValueError(f"{name} must have degree {shift}: {s} -> {t}")

    @property
    def h_dim(self) -> int:
        return len(self.h_degrees)

    def apply_q(self, x: Mapping[int, Fraction]) -> Element:
        return _apply(self.q, x)

    def apply_c(self, x: Mapping[int, Fraction]) -> Element:
        return _apply(self.c, x)

    def apply_T(self, x: Mapping[int, Fraction]) -> Element:
        return _apply(self.T, x)

    def _matrix(self, m: Mapping, src_deg: int, src: tuple[int, ...], tgt_deg: int,
                tgt: tuple[int, ...]) -> tuple[list[list[Fraction]], int]:
        cols = [i for i, d in enumerate(src) if d == src_deg]
        rows = [i for i, d in enumerate(tgt) if d == tgt_deg]
        mat = [[m.get(cidx, {}).get(ridx, Fraction(0)) for cidx in cols] for ridx in rows]
        return mat, len(cols)

    def exactness_report(self) -> CheckReport:
        """Rank test ``im = ker`` at every spot of the long sequence."""
        bd, hd = self.B.degrees, self.h_degrees
        support = list(bd) + list(hd)
        rep = CheckReport("Gysin exactness", True)
        if not support:
            return rep

        def rk(m, sdeg, src, tdeg, tgt):
            mat, ncols = self._matrix(m, sdeg, src, tdeg, tgt)
            return linalg.rank(mat, ncols)

        def dim(degs, d):
            return sum(1 for x in degs if x == d)

        for i in range(min(support) - 2, max(support) + 4):
            rq = rk(self.q, i, bd, i, hd)
            rc = rk(self.c, i, hd, i - 2, hd)
            rT = rk(self.T, i - 2, hd, i - 1, bd)
            rq1 = rk(self.q, i - 1, bd, i - 1, hd)
            spots = {
                f"H_{i}": rq == dim(hd, i) - rc,
                f"H_{i - 2}": rc == dim(hd, i - 2) - rT,
                f"B_{i - 1}": rT == dim(bd, i - 1) - rq1,
            }
            rep.checked += 1
            bad = [s for s, ok in spots.items() if not ok]
            if bad:
                rep.passed, rep.witness = False, bad[0]
                return rep
        compositions = {
            "c.q": _compose(self.c, self.q),
            "T.c": _compose(self.T, self.c),
            "q.T": _compose(self.q, self.T),
        }
        for name, comp in compositions.items():
            rep.checked += 1
            if comp:
                rep.passed, rep.witness, rep.residual = False, name, comp
                return rep
        return rep

    def delta_report(self) -> CheckReport:
        """``Delta = T.q`` and ``Delta^2 = 0``."""
        tq = _compose(self.T, self.q)

        def res(t):
            i = t[0]
            d = self.B.apply_D({i: Fraction(1)})
            return add(d, tq.get(i, {}), -1) or self.B.apply_D(d)

        return _sweep("Delta = T.q", ((i,) for i in range(self.B.dim)), res)

    def validate(self) -> "GysinData":
        for rep in (self.exactness_report(), self.delta_report()):
            if not rep:
                raise ValueError(rep.line())
        return self


def string_bracket(G: GysinData, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Element:
    """``{x, y} = (-1)^{|x|} q(T(x) * T(y))``, bilinearly in ``x`` and ``y``."""
    out: Element = {}
    for i, a in x.items():
        tx = G.apply_T({i: a})
        if not tx:
            continue
        s = _sign(G.h_degrees[i])
        for j, b in y.items():
            for k, v in G.apply_q(G.B.mul(tx, G.apply_T({j: b}))).items():
                acc(out, k, s * v)
    return out


def check_string_lie(G: GysinData) -> list[CheckReport]:
    """Antisymmetry and Jacobi of :func:`string_bracket` on basis triples."""
    return _lie_reports(G.h_dim, G.h_degrees, lambda x, y: string_bracket(G, x, y), 0, "string bracket")


def verify_T_lie_morphism(G: GysinData) -> CheckReport:
    """``T({x, y}) = -{T(x), T(y)}_Delta`` on every basis pair of ``H``."""

    def res(t):
        x, y = {t[0]: Fraction(1)}, {t[1]: Fraction(1)}
        lhs = G.apply_T(string_bracket(G, x, y))
        rhs = derived_bracket(G.B, G.apply_T(x), G.apply_T(y))
        return add(lhs, rhs)

    return _sweep("T is a Lie morphism", cartesian(range(G.h_dim), repeat=2), res)


@dataclass
class _Stage:
    """H in one degree: basis vectors split into cokernel and kernel parts."""

    q_cols: list[int] = field(default_factory=list)  # B indices spanning Q_i
    k_vecs: list[list[Fraction]] = field(default_factory=list)  # vectors in H_{i-2}
    h_index: list[int] = field(default_factory=list)  # global H indices


def gysin_from_bv(A: GradedBVData, rng=None) -> GysinData | None:
    """Build a finite exact Gysin sequence with ``Delta = T.q`` from ``A``.

    ``H_i`` is assembled degree by degree as ``coker(T: H_{i-1} -> B_i)``
    plus ``ker(T: H_{i-2} -> B_{i-1})``; ``T`` is ``D`` on the cokernel part
    and sends the kernel part injectively, when possible, into cycles of ``D``
    outside ``D(B_i)``.  ``rng`` (a ``random.Random``) randomizes those
    choices.  Returns ``None`` when ``H`` would be nonzero in arbitrarily
    high degrees.
    """
    bd = A.degrees
    if not bd:
        return GysinData(A, (), {}, {}, {})
    lo, hi = min(bd), max(bd)
    h_degrees: list[int] = []
    q: dict[int, Element] = {}
    c: dict[int, Element] = {}
    T: dict[int, Element] = {}
    stages: dict[int, _Stage] = {}

    def b_idx(d):
        return [i for i, x in enumerate(bd) if x == d]

    def t_image_vectors(d):
        """Images in B_{d+1} of the H_d basis, as dense vectors over b_idx(d+1)."""
        st = stages.get(d)
        cols = b_idx(d + 1)
        if st is None:
            return []
        return [[T.get(h, {}).get(b, Fraction(0)) for b in cols] for h in st.h_index]

    for i in range(lo, hi + 3):
        st = _Stage()
        cols = b_idx(i)
        im_T = linalg.span_basis(t_image_vectors(i - 1), len(cols))
        st.q_cols = [cols[p] for p in linalg.complement(im_T, len(cols))]
        prev = stages.get(i - 2)
        if prev is not None and prev.h_index:
            tmat = [list(row) for row in zip(*t_image_vectors(i - 2))] if b_idx(i - 1) else []
            st.k_vecs = linalg.nullspace(tmat, len(prev.h_index))
        for b in st.q_cols:
            st.h_index.append(len(h_degrees))
            h_degrees.append(i)
        for v in st.k_vecs:
            h = len(h_degrees)
            st.h_index.append(h)
            h_degrees.append(i)
            c[h] = {prev.h_index[p]: x for p, x in enumerate(v) if x}
        # q: coordinates along the chosen complement, after discarding im T
        basis_vecs = im_T + [[Fraction(int(k == cols.index(b))) for k in range(len(cols))] for b in st.q_cols]
        for pos, b in enumerate(cols):
            e = [Fraction(int(k == pos)) for k in range(len(cols))]
            coords = linalg.solve([list(r) for r in zip(*basis_vecs)], len(basis_vecs), e)
            img = {st.h_index[k]: coords[len(im_T) + k]
                   for k in range(len(st.q_cols)) if coords[len(im_T) + k]}
            if img:
                q[b] = img
        # T on the cokernel part is D; on the kernel part, fresh cycles
        for k, b in enumerate(st.q_cols):
            T[st.h_index[k]] = A.apply_D({b: Fraction(1)})
        nxt = b_idx(i + 1)
        if st.k_vecs and nxt:
            dmat = [[A.D.get(s, {}).get(t, Fraction(0)) for s in nxt] for t in b_idx(i + 2)]
            cycles = linalg.nullspace(dmat, len(nxt)) if dmat else [
                [Fraction(int(a == b)) for a in range(len(nxt))] for b in range(len(nxt))]
            used = [[T[st.h_index[k]].get(b, Fraction(0)) for b in nxt] for k in range(len(st.q_cols))]
            pool = list(cycles)
            if rng is not None:
                rng.shuffle(pool)
                pool = [[x * rng.choice((1, -1, 2)) for x in v] for v in pool]
            for k in range(len(st.k_vecs)):
                h = st.h_index[len(st.q_cols) + k]
                for v in pool:
                    if linalg.rank(used + [v], len(nxt)) > len(used):
                        used.append(v)
                        pool.remove(v)
                        T[h] = {nxt[p]: x for p, x in enumerate(v) if x}
                        break
        stages[i] = st
    if any(d > hi for d in h_degrees):
        return None
    return GysinData(A, tuple(h_degrees), q, c, T)


def _coef_out(c: Fraction) -> int | str:
    return c.numerator if c.denominator == 1 else str(c)


def _coef_in(c, where: str) -> Fraction:
    try:
        return Fraction(str(c))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{where}: bad coefficient {c!r}") from exc


def _map_to_rows(m: Mapping) -> list[list]:
    return [[s, t, _coef_out(v)] for s in sorted(m) for t, v in sorted(m[s].items())]


def _rows_to_map(rows, where: str) -> SparseMap:
    out: SparseMap = {}
    for n, row in enumerate(rows):
        if len(row) != 3:
            raise ValueError(f"{where}[{n}]: expected [source, target, coefficient]")
        s, t, v = row
        acc(out.setdefault(int(s), {}), int(t), _coef_in(v, f"{where}[{n}]"))
    return out


def bv_to_dict(A: GradedBVData) -> dict:
    data = {
        "schema": 1,
        "degrees": list(A.degrees),
        "product": [[i, j, k, _coef_out(v)] for (i, j) in sorted(A.product)
                    for k, v in sorted(A.product[(i, j)].items())],
        "D": _map_to_rows(A.D),
    }
    if A.names:
        data["names"] = list(A.names)
    return data


def bv_from_dict(data: Mapping) -> GradedBVData:
    if data.get("schema", 1) != 1:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    product: dict[tuple[int, int], Element] = {}
    for n, row in enumerate(data.get("product", [])):
        if len(row) != 4:
            raise ValueError(f"product[{n}]: expected [i, j, k, coefficient]")
        i, j, k, v = row
        acc(product.setdefault((int(i), int(j)), {}), int(k), _coef_in(v, f"product[{n}]"))
    return GradedBVData(tuple(data["degrees"]), product, _rows_to_map(data.get("D", []), "D"),
                        tuple(data["names"]) if "names" in data else None)


def gysin_to_dict(G: GysinData) -> dict:
    return {
        "schema": 1,
        "B": bv_to_dict(G.B),
        "H_degrees": list(G.h_degrees),
        "q": _map_to_rows(G.q),
        "c": _map_to_rows(G.c),
        "T": _map_to_rows(G.T),
    }


def gysin_from_dict(data: Mapping) -> GysinData:
    if data.get("schema", 1) != 1:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    return GysinData(bv_from_dict(data["B"]), tuple(data["H_degrees"]),
                     _rows_to_map(data.get("q", []), "q"), _rows_to_map(data.get("c", []), "c"),
                     _rows_to_map(data.get("T", []), "T"))


def load_bv(text: str) -> GradedBVData:
    return bv_from_dict(json.loads(text))


def dump_bv(A: GradedBVData) -> str:
    return json.dumps(bv_to_dict(A), indent=2)


def load_gysin(text: str) -> GysinData:
    return gysin_from_dict(json.loads(text))


def dump_gysin(G: GysinData) -> str:
    return json.dumps(gysin_to_dict(G), indent=2)
