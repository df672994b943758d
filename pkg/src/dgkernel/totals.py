"""Double complexes and totalization.

Complexes of complexes with their hom calculus (differential and
composition on doubly indexed families), the total complex with the
alternating inner sign, the weight that computes totalization as a
coend, and the graded adjunction between totalization and the
single-column embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .complexes import (
    ChainMap,
    Complex,
    GradedObject,
    HomSpace,
    Proto,
    chain_map_basis,
    compose,
    d_hom,
    identity_map,
    suspension,
    suspension_map,
    unit_complex,
    functor_L,
)
from .dgcat import (
    DGModule,
    DGModuleLeft,
    Elt,
    FiniteDGCategory,
    ell_op_window_category,
    weighted_colimit,
)
from .monoidal import TensorSpace
from .zlinalg import IntMatrix, ShapeMismatch, inverse_unimodular


class SupportExceedsWindow(ValueError):
    pass


def _tot_sign(m: int) -> int:
    # inner differential of column m enters Tot with sign (-1)^m
    return -1 if m % 2 else 1


class DoubleComplex:
    """Columns A_m (bounded complexes, finitely many nonzero) joined by
    degree-0 chain maps delta_m: A_m -> A_{m-1} with delta o delta = 0."""

    def __init__(self, columns: Mapping[int, Complex], delta: Mapping[int, ChainMap]):
        self.columns = {int(m): c for m, c in columns.items() if not c.is_zero()}
        self.delta = {}
        for m, d in delta.items():
            m = int(m)
            if d.degree != 0:
                raise ShapeMismatch(f"delta_{m} must have degree 0")
            if d.source != self.column(m) or d.target != self.column(m - 1):
                raise ShapeMismatch(f"delta_{m} does not join column {m} to {m - 1}")
            if not d_hom(d).is_zero():
                raise ShapeMismatch(f"delta_{m} is not a chain map")
            if not d.is_zero():
                self.delta[m] = d
        for m in list(self.delta):
            if m + 1 in self.delta:
                if not compose(self.delta[m], self.delta[m + 1]).is_zero():
                    raise ShapeMismatch(f"delta_{m} o delta_{m + 1} != 0")

    def column(self, m: int) -> Complex:
        return self.columns.get(m, Complex.zero())

    def delta_map(self, m: int) -> ChainMap:
        d = self.delta.get(m)
        if d is None:
            return ChainMap(self.column(m), self.column(m - 1), 0, {}, _trusted=True)
        return d

    def column_degrees(self) -> List[int]:
        return sorted(self.columns)

    def is_zero(self) -> bool:
        return not self.columns

    def entry_rank(self, m: int, n: int) -> int:
        return self.column(m).rank(n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DoubleComplex):
            return NotImplemented
        return self.columns == other.columns and self.delta == other.delta

    def __repr__(self) -> str:
        return f"DoubleComplex(columns at {self.column_degrees()})"


def embed_i(x: Complex) -> DoubleComplex:
    """The single-column embedding at 0."""
    return DoubleComplex({0: x}, {})


class TotSpace:
    """Basis bookkeeping for Tot A: slot (m, i) lists columns by
    ascending m, entries of A_{m, n-m} in order."""

    def __init__(self, a: DoubleComplex):
        self.a = a
        ranks: Dict[int, int] = {}
        self._offsets: Dict[int, List[Tuple[int, int, int]]] = {}
        cols = a.column_degrees()
        if cols:
            lo = min(a.column(m).lo + m for m in cols)
            hi = max(a.column(m).hi + m for m in cols)
            for n in range(lo, hi + 1):
                off = 0
                blocks = []
                for m in cols:
                    r = a.entry_rank(m, n - m)
                    if r:
                        blocks.append((m, r, off))
                        off += r
                if blocks:
                    self._offsets[n] = blocks
                    ranks[n] = off
        diffs: Dict[int, IntMatrix] = {}
        for n in self._offsets:
            mat = self._differential(n)
            if mat.rows and mat.cols:
                diffs[n] = mat
        self.complex = Complex(GradedObject(ranks), diffs)

    def blocks(self, n: int):
        return self._offsets.get(n, [])

    def slot(self, n: int, m: int, i: int) -> int:
        for (mm, r, off) in self._offsets.get(n, []):
            if mm == m:
                return off + i
        raise ShapeMismatch(f"no column {m} contributes to Tot degree {n}")

    def _differential(self, n: int) -> IntMatrix:
        rows = sum(r for (_, r, _) in self._offsets.get(n - 1, []))
        cols = sum(r for (_, r, _) in self._offsets.get(n, []))
        out = [[0] * cols for _ in range(rows)]
        tgt = {m: off for (m, r, off) in self._offsets.get(n - 1, [])}
        for (m, r, off) in self._offsets.get(n, []):
            inner = n - m
            delta = self.a.delta_map(m).comp(inner)     # A_{m,inner} -> A_{m-1,inner}
            d_in = self.a.column(m).diff(inner)          # A_{m,inner} -> A_{m,inner-1}
            sign = _tot_sign(m)
            for j in range(r):
                col = off + j
                if m - 1 in tgt:
                    for i in range(delta.rows):
                        v = delta[i, j]
                        if v:
                            out[tgt[m - 1] + i][col] += v
                if m in tgt:
                    for i in range(d_in.rows):
                        v = d_in[i, j]
                        if v:
                            out[tgt[m] + i][col] += sign * v
        return IntMatrix.from_rows(out, cols)


def total_complex(a: DoubleComplex) -> Complex:
    """Tot A with d(x) = delta(x) + (-1)^m d(x) for x in column m."""
    return TotSpace(a).complex


# -- the DG hom calculus ------------------------------------------------------


@dataclass
class DGHomElement:
    """Degree-n family f_{p,q}: A_q -> B_p of protos of degree n - p + q,
    finitely supported."""

    source: DoubleComplex
    target: DoubleComplex
    degree: int
    comps: Dict[Tuple[int, int], Proto]

    def __post_init__(self):
        cleaned = {}
        for (p, q), f in self.comps.items():
            if f.degree != self.degree - p + q:
                raise ShapeMismatch(
                    f"component ({p},{q}) has proto degree {f.degree}, "
                    f"expected {self.degree - p + q}")
            if f.source != self.source.column(q) or f.target != self.target.column(p):
                raise ShapeMismatch(f"component ({p},{q}) joins the wrong columns")
            if not f.is_zero():
                cleaned[(p, q)] = f
        self.comps = cleaned

    def comp(self, p: int, q: int) -> Proto:
        f = self.comps.get((p, q))
        if f is None:
            return Proto.zero(self.source.column(q), self.target.column(p),
                              self.degree - p + q)
        return f

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other: "DGHomElement") -> "DGHomElement":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ShapeMismatch("elements not parallel")
        keys = set(self.comps) | set(other.comps)
        return DGHomElement(self.source, self.target, self.degree,
                            {k: self.comp(*k) + other.comp(*k) for k in keys})

    def __rmul__(self, c: int) -> "DGHomElement":
        return DGHomElement(self.source, self.target, self.degree,
                            {k: c * f for k, f in self.comps.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DGHomElement):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.comps == other.comps)


def dg_identity(a: DoubleComplex) -> DGHomElement:
    comps = {(m, m): identity_map(a.column(m)) for m in a.column_degrees()}
    return DGHomElement(a, a, 0, comps)


def dg_hom_differential(f: DGHomElement) -> DGHomElement:
    """d(f)_{p,q} = (-1)^p d(f_{p,q}) + delta_p o f_{p+1,q}
    - (-1)^n f_{p,q-1} o delta_q."""
    a, b, n = f.source, f.target, f.degree
    sign_n = -1 if n % 2 else 1
    p_range = set()
    for (p, q) in f.comps:
        p_range.update([(p, q), (p - 1, q), (p, q + 1)])
    for p in b.column_degrees():
        for q in a.column_degrees():
            p_range.add((p, q))
    comps = {}
    for (p, q) in p_range:
        term = Proto.zero(a.column(q), b.column(p), n - 1 - p + q)
        term = term + ((-1 if p % 2 else 1) * d_hom(f.comp(p, q)))
        term = term + compose(b.delta_map(p + 1), f.comp(p + 1, q))
        term = term - sign_n * compose(f.comp(p, q - 1), a.delta_map(q))
        if not term.is_zero():
            comps[(p, q)] = term
    return DGHomElement(a, b, n - 1, comps)


def dg_compose(g: DGHomElement, f: DGHomElement) -> DGHomElement:
    """(g o f)_{p,q} = sum_r g_{p,r} o f_{r,q}."""
    if g.source != f.target:
        raise ShapeMismatch("dg_compose: middle double complexes differ")
    comps: Dict[Tuple[int, int], Proto] = {}
    for (p, r) in g.comps:
        for (r2, q) in f.comps:
            if r2 != r:
                continue
            term = compose(g.comp(p, r), f.comp(r, q))
            if (p, q) in comps:
                comps[(p, q)] = comps[(p, q)] + term
            else:
                comps[(p, q)] = term
    return DGHomElement(f.source, g.target, g.degree + f.degree, comps)


# -- the totalization weight --------------------------------------------------


def weight_J(window: int) -> Tuple[FiniteDGCategory, DGModule]:
    """The weight computing Tot: over the window category, the value at m
    is S^m L Z and the index-raising generator acts by the shifted
    differential S^m d."""
    cat = ell_op_window_category(window)
    lz = functor_L(unit_complex())
    values = {m: suspension(lz, m) for m in cat.objects}
    actions = {}
    for (u, v) in cat.homs:
        ts = TensorSpace(values[v], cat.hom(u, v))
        if u == v:
            comps = {n: IntMatrix.identity(values[v].rank(n))
                     for n in values[v].degrees() if values[v].rank(n)}
        else:
            # u = v + 1: act by S^v(d): the degree-v slot maps to the lower
            # slot of S^{v+1} L Z
            codiff = suspension_map(
                ChainMap(lz, suspension(lz, 1), 0,
                         {0: IntMatrix.identity(1)}), v)
            comps = {n: codiff.comp(n) for n in values[v].degrees()
                     if values[v].rank(n) and values[u].rank(n)}
        actions[(u, v)] = ChainMap(ts.complex, values[u], 0, comps)
    return cat, DGModule(cat, values, actions)


def double_complex_as_left_module(cat: FiniteDGCategory, a: DoubleComplex) -> DGModuleLeft:
    """A double complex as a diagram over the window category: the
    generator m -> m-1 acts by delta_m."""
    values = {m: a.column(m) for m in cat.objects}
    actions = {}
    for (u, v) in cat.homs:
        ts = TensorSpace(cat.hom(u, v), values[u])
        if u == v:
            comps = {n: IntMatrix.identity(values[u].rank(n))
                     for n in values[u].degrees() if values[u].rank(n)}
        else:
            delta = a.delta_map(u)      # u = v + 1: A_u -> A_v
            comps = {n: delta.comp(n) for n in values[u].degrees()
                     if values[u].rank(n) and values[v].rank(n)}
        actions[(u, v)] = ChainMap(ts.complex, values[v], 0, comps)
    return DGModuleLeft(cat, values, actions)


def _triangular_sign(m: int) -> int:
    return -1 if (m * (m + 1) // 2) % 2 else 1


@dataclass
class TotComparison:
    colimit: Complex
    tot: Complex
    iso: ChainMap        # colimit -> Tot
    inverse: ChainMap
    window: int


def tot_via_weighted_colimit(a: DoubleComplex,
                             window: Optional[int] = None) -> TotComparison:
    """Compute colim(J, A) as a coend and produce an explicit chain
    isomorphism to Tot A.

    The comparison sends the class of (slot p of S^m L Z) (x) x to x in
    column m (p = m) or to delta_m(x) in column m-1 (p = m-1), twisted by
    the triangular sign needed to match the alternating inner sign of Tot.
    """
    cols = a.column_degrees()
    if window is None:
        window = (max(abs(m) for m in cols) + 1) if cols else 1
    if cols and (min(cols) < -window or max(cols) > window):
        raise SupportExceedsWindow(f"columns {cols} exceed window {window}")
    cat, j_mod = weight_J(window)
    a_mod = double_complex_as_left_module(cat, a)
    wc = weighted_colimit(j_mod, a_mod)
    colim = wc.colimit
    ts = TotSpace(a)
    tot = ts.complex

    # Phi: ambient sum of S^m L Z (x) A_m -> Tot, constant on relation classes
    presented = wc.coend.presented
    ambient = presented.ambient
    phi_rows: Dict[int, List[List[int]]] = {}
    for n in ambient.degrees():
        phi_rows[n] = [[0] * ambient.rank(n) for _ in range(tot.rank(n))]
    for m in cat.objects:
        am = a_mod.value(m)
        if am.is_zero():
            continue
        t_space = wc.coend.tensor_space(m)
        inj = wc.coend.injection(m)
        for n in t_space.complex.degrees():
            for t in t_space.basis(n):
                col_local = t_space.slot_at(n, t.left_degree, t.left_index, t.right_index)
                amb_col = inj.comp(n).col(col_local)
                target_rows: List[Tuple[int, int]] = []
                if t.left_degree == m:
                    # unit slot: straight into column m
                    row = ts.slot(n, m, t.right_index)
                    target_rows.append((row, _triangular_sign(m)))
                else:
                    # lower slot: push through delta_m into column m-1
                    delta = a.delta_map(m).comp(t.right_degree)
                    for i in range(delta.rows):
                        v = delta[i, t.right_index]
                        if v:
                            row = ts.slot(n, m - 1, i)
                            target_rows.append((row, _triangular_sign(m - 1) * v))
                for amb_idx, amb_val in enumerate(amb_col):
                    if amb_val:
                        for row, val in target_rows:
                            phi_rows[n][row][amb_idx] += amb_val * val
    phi = {n: IntMatrix.from_rows(rows, ambient.rank(n))
           for n, rows in phi_rows.items() if rows}

    iso_comps = {}
    inv_comps = {}
    for n in colim.degrees():
        if colim.rank(n) == 0:
            continue
        sect = presented.section(n)
        mat = phi.get(n, IntMatrix.zeros(tot.rank(n), ambient.rank(n))) @ sect
        if mat.rows != mat.cols:
            raise AssertionError("colimit and Tot ranks differ")
        iso_comps[n] = mat
        inv_comps[n] = inverse_unimodular(mat)
    iso = ChainMap(colim, tot, 0, iso_comps)
    inverse = ChainMap(tot, colim, 0, inv_comps)
    return TotComparison(colim, tot, iso, inverse, window)


# -- the totalization adjunction ----------------------------------------------


def _dg_hom_to_tot_proto(f: DGHomElement, x: Complex, ts: TotSpace) -> Proto:
    """Identify a bottom-row DG hom element A -> iX with a proto
    Tot A -> X (plain block assembly; no signs)."""
    n = f.degree
    comps: Dict[int, IntMatrix] = {}
    for s in ts.complex.degrees():
        rows = x.rank(s + n)
        cols = ts.complex.rank(s)
        if rows == 0 or cols == 0:
            continue
        out = [[0] * cols for _ in range(rows)]
        for (m, r, off) in ts.blocks(s):
            block = f.comp(0, m).comp(s - m)
            for i in range(block.rows):
                for j in range(block.cols):
                    v = block[i, j]
                    if v:
                        out[i][off + j] = v
        comps[s] = IntMatrix.from_rows(out, cols)
    return Proto(ts.complex, x, n, comps)


def _tot_proto_to_dg_hom(h: Proto, a: DoubleComplex, x: Complex) -> DGHomElement:
    ts = TotSpace(a)
    n = h.degree
    comps: Dict[Tuple[int, int], Proto] = {}
    for m in a.column_degrees():
        am = a.column(m)
        sub: Dict[int, IntMatrix] = {}
        for t in am.degrees():
            s = m + t
            if am.rank(t) == 0 or x.rank(s + n) == 0 or ts.complex.rank(s) == 0:
                continue
            off = None
            for (mm, r, o) in ts.blocks(s):
                if mm == m:
                    off = o
                    break
            if off is None:
                continue
            sub[t] = h.comp(s).select_cols(range(off, off + am.rank(t)))
        p = Proto(am, x, n + m, sub)
        if not p.is_zero():
            comps[(0, m)] = p
    return DGHomElement(a, embed_i(x), n, comps)


def tot_adjunction_check(a: DoubleComplex, x: Complex) -> bool:
    """Degreewise, DG-hom(A, iX) and [Tot A, X] are identified by block
    reassembly, and the two differentials agree under the identification."""
    ts = TotSpace(a)
    ix = embed_i(x)
    hs = HomSpace(ts.complex, x)
    lo, hi = hs.complex.lo - 1, hs.complex.hi + 1
    for n in range(lo, hi + 1):
        # dimension agreement
        dg_dim = 0
        for m in a.column_degrees():
            am = a.column(m)
            for t in am.degrees():
                dg_dim += am.rank(t) * x.rank(t + n + m)
        if dg_dim != hs.dim(n):
            return False
        # round trips and differential correspondence on a basis
        for h in hs.basis(n):
            f = _tot_proto_to_dg_hom(h, a, x)
            back = _dg_hom_to_tot_proto(f, x, ts)
            if back != h:
                return False
            lhs = _dg_hom_to_tot_proto(dg_hom_differential(f), x, ts)
            rhs = d_hom(h)
            if lhs != rhs:
                return False
    return True


def tot_adjunction_natural_in_x(a: DoubleComplex, w: ChainMap) -> bool:
    """Postcomposition squares commute under the identification, for a
    chain map w: X -> X'."""
    ts = TotSpace(a)
    x, x2 = w.source, w.target
    hs = HomSpace(ts.complex, x)
    for n in range(hs.complex.lo, hs.complex.hi + 1):
        for h in hs.basis(n):
            f = _tot_proto_to_dg_hom(h, a, x)
            pushed = DGHomElement(a, embed_i(x2), n,
                                  {k: compose(w, p) for k, p in f.comps.items()})
            direct = _tot_proto_to_dg_hom(compose(w, h), a, x2)
            if pushed != direct:
                return False
    return True
