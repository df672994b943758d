"""The symmetric closed monoidal structure on bounded complexes.

Tensor products with the Koszul sign convention, the symmetry, unit and
associativity isomorphisms, the suspension-tensor identifications, and
the solved-for duality and decomposition witnesses for L Z and R Z.

Basis convention for (A (x) B)_n: summands A_p (x) B_q listed by
ascending p, and within a summand the pair (i, j) is laid out with the
left index major; all signs live in differentials, never in basis order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Dict, List, Optional, Tuple

from .complexes import (
    ChainMap,
    Complex,
    GradedObject,
    HomSpace,
    Proto,
    chain_map_basis,
    compose,
    direct_sum_complexes,
    functor_L,
    functor_R,
    hom_complex,
    identity_map,
    suspension,
    unit_complex,
)
from .zlinalg import IntMatrix, ShapeMismatch, kernel_basis, solve_matrix


class SearchFailed(RuntimeError):
    """A witness the source material guarantees to exist was not found;
    treat as an implementation bug."""


def _tensor_sign(p: int) -> int:
    # d(a (x) b) = da (x) b + (-1)^p a (x) db  for a of degree p.
    return -1 if p % 2 else 1


@dataclass(frozen=True)
class TensorBasisIndex:
    """Basis element of (A (x) B)_{p+q}: left degree/index, right degree/index."""

    left_degree: int
    right_degree: int
    left_index: int
    right_index: int


class TensorSpace:
    """Basis-indexed model of A (x) B."""

    def __init__(self, left: Complex, right: Complex):
        self.left = left
        self.right = right
        self._blocks: Dict[int, List[Tuple[int, int, int, int]]] = {}
        ranks: Dict[int, int] = {}
        if not (left.is_zero() or right.is_zero()):
            for n in range(left.lo + right.lo, left.hi + right.hi + 1):
                offset = 0
                blocks = []
                for p in left.degrees():
                    q = n - p
                    rl, rr = left.rank(p), right.rank(q)
                    if rl and rr:
                        blocks.append((p, q, rl * rr, offset))
                        offset += rl * rr
                if blocks:
                    self._blocks[n] = blocks
                    ranks[n] = offset
        diffs: Dict[int, IntMatrix] = {}
        for n in self._blocks:
            m = self._differential(n)
            if m.rows and m.cols:
                diffs[n] = m
        self.complex = Complex(GradedObject(ranks), diffs)

    def dim(self, n: int) -> int:
        return self.complex.rank(n)

    def blocks(self, n: int):
        return self._blocks.get(n, [])

    def slot_at(self, n: int, p: int, i: int, j: int) -> int:
        for (pp, qq, size, off) in self._blocks.get(n, []):
            if pp == p:
                rr = self.right.rank(qq)
                return off + i * rr + j
        raise ShapeMismatch(f"no summand at left degree {p} in tensor degree {n}")

    def basis(self, n: int) -> List[TensorBasisIndex]:
        out = []
        for (p, q, size, off) in self._blocks.get(n, []):
            rl, rr = self.left.rank(p), self.right.rank(q)
            for i in range(rl):
                for j in range(rr):
                    out.append(TensorBasisIndex(p, q, i, j))
        return out

    def decompose(self, n: int, flat: int) -> TensorBasisIndex:
        for (p, q, size, off) in self._blocks.get(n, []):
            if off <= flat < off + size:
                rr = self.right.rank(q)
                k = flat - off
                return TensorBasisIndex(p, q, k // rr, k % rr)
        raise IndexError(f"flat index {flat} out of range in degree {n}")

    def embed_pair(self, p: int, xa, q: int, xb) -> tuple:
        """Coordinates of (sum_i xa_i a_i) (x) (sum_j xb_j b_j) in degree p+q."""
        n = p + q
        vec = [0] * self.dim(n)
        rl, rr = self.left.rank(p), self.right.rank(q)
        if len(xa) != rl or len(xb) != rr:
            raise ShapeMismatch("element lengths do not match ranks")
        for i in range(rl):
            if xa[i]:
                for j in range(rr):
                    if xb[j]:
                        vec[self.slot_at(n, p, i, j)] += xa[i] * xb[j]
        return tuple(vec)

    def _differential(self, n: int) -> IntMatrix:
        rows = sum(size for (_, _, size, _) in self._blocks.get(n - 1, []))
        cols = sum(size for (_, _, size, _) in self._blocks.get(n, []))
        out = [[0] * cols for _ in range(rows)]
        tgt = {p: (q, off) for (p, q, size, off) in self._blocks.get(n - 1, [])}
        for (p, q, size, off) in self._blocks.get(n, []):
            rl, rr = self.left.rank(p), self.right.rank(q)
            da = self.left.diff(p)
            db = self.right.diff(q)
            sign = _tensor_sign(p)
            for i in range(rl):
                for j in range(rr):
                    col = off + i * rr + j
                    if (p - 1) in tgt:
                        _, t_off = tgt[p - 1]
                        t_rr = self.right.rank(q)
                        for i2 in range(da.rows):
                            v = da[i2, i]
                            if v:
                                out[t_off + i2 * t_rr + j][col] += v
                    if p in tgt and q - 1 == tgt[p][0]:
                        _, t_off = tgt[p]
                        t_rr = self.right.rank(q - 1)
                        for j2 in range(db.rows):
                            v = db[j2, j]
                            if v:
                                out[t_off + i * t_rr + j2][col] += sign * v
        return IntMatrix.from_rows(out, cols)


def tensor(left: Complex, right: Complex) -> Complex:
    """A (x) B with d(a (x) b) = da (x) b + (-1)^p a (x) db."""
    return TensorSpace(left, right).complex


def tensor_proto(f: Proto, g: Proto) -> Proto:
    """f (x) g acting by (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b)."""
    src = TensorSpace(f.source, g.source)
    tgt = TensorSpace(f.target, g.target)
    deg = f.degree + g.degree
    comps: Dict[int, IntMatrix] = {}
    for n in src.complex.degrees():
        cols = src.dim(n)
        rows = tgt.dim(n + deg)
        if not cols or not rows:
            continue
        out = [[0] * cols for _ in range(rows)]
        for (p, q, size, off) in src.blocks(n):
            fp = f.comp(p)
            gq = g.comp(q)
            if fp.is_zero() or gq.is_zero():
                continue
            sign = 1 if (g.degree * p) % 2 == 0 else -1
            rr_src = g.source.rank(q)
            for i2 in range(fp.rows):
                for i in range(fp.cols):
                    a = fp[i2, i]
                    if not a:
                        continue
                    for j2 in range(gq.rows):
                        for j in range(gq.cols):
                            b = gq[j2, j]
                            if b:
                                row = tgt.slot_at(n + deg, p + f.degree, i2, j2)
                                col = off + i * rr_src + j
                                out[row][col] += sign * a * b
        comps[n] = IntMatrix.from_rows(out, cols)
    result = Proto(src.complex, tgt.complex, deg, comps)
    if isinstance(f, ChainMap) and isinstance(g, ChainMap):
        return ChainMap(result.source, result.target, deg, result.comps(), _trusted=True)
    return result


def _slot_chain_map(src: Complex, tgt: Complex, mapping) -> ChainMap:
    """Chain map defined by basis-slot relabelling.

    ``mapping(n, flat) -> (flat', sign)`` must be a bijection degreewise;
    the chain-map condition is validated on construction.
    """
    comps = {}
    for n in src.degrees():
        cols = src.rank(n)
        rows = tgt.rank(n)
        if not cols or not rows:
            continue
        out = [[0] * cols for _ in range(rows)]
        for c in range(cols):
            r, sign = mapping(n, c)
            out[r][c] = sign
        comps[n] = IntMatrix.from_rows(out, cols)
    return ChainMap(src, tgt, 0, comps)


def symmetry(left: Complex, right: Complex) -> ChainMap:
    """sigma(a (x) b) = (-1)^{pq} b (x) a."""
    src = TensorSpace(left, right)
    tgt = TensorSpace(right, left)

    def mapping(n, flat):
        t = src.decompose(n, flat)
        sign = -1 if (t.left_degree * t.right_degree) % 2 else 1
        return tgt.slot_at(n, t.right_degree, t.right_index, t.left_index), sign

    return _slot_chain_map(src.complex, tgt.complex, mapping)


def left_unitor(a: Complex) -> Tuple[ChainMap, ChainMap]:
    """Z (x) A = A, both directions."""
    unit = unit_complex()
    src = TensorSpace(unit, a)

    def fwd(n, flat):
        t = src.decompose(n, flat)
        return t.right_index, 1

    def bwd(n, flat):
        return src.slot_at(n, 0, 0, flat), 1

    return (_slot_chain_map(src.complex, a, fwd), _slot_chain_map(a, src.complex, bwd))


def right_unitor(a: Complex) -> Tuple[ChainMap, ChainMap]:
    """A (x) Z = A, both directions."""
    unit = unit_complex()
    src = TensorSpace(a, unit)

    def fwd(n, flat):
        t = src.decompose(n, flat)
        return t.left_index, 1

    def bwd(n, flat):
        return src.slot_at(n, n, flat, 0), 1

    return (_slot_chain_map(src.complex, a, fwd), _slot_chain_map(a, src.complex, bwd))


def associator(a: Complex, b: Complex, c: Complex) -> Tuple[ChainMap, ChainMap]:
    """(A (x) B) (x) C = A (x) (B (x) C), both directions, no signs."""
    ab = TensorSpace(a, b)
    bc = TensorSpace(b, c)
    left = TensorSpace(ab.complex, c)
    right = TensorSpace(a, bc.complex)

    def fwd(n, flat):
        t = left.decompose(n, flat)
        inner = ab.decompose(t.left_degree, t.left_index)
        bc_flat = bc.slot_at(inner.right_degree + t.right_degree,
                             inner.right_degree, inner.right_index, t.right_index)
        return right.slot_at(n, inner.left_degree, inner.left_index, bc_flat), 1

    def bwd(n, flat):
        t = right.decompose(n, flat)
        inner = bc.decompose(t.right_degree, t.right_index)
        ab_flat = ab.slot_at(t.left_degree + inner.left_degree,
                             t.left_degree, t.left_index, inner.left_index)
        return left.slot_at(n, t.left_degree + inner.left_degree, ab_flat,
                            inner.right_index), 1

    return (_slot_chain_map(left.complex, right.complex, fwd),
            _slot_chain_map(right.complex, left.complex, bwd))


def distributivity_iso(a: Complex, b: Complex, c: Complex) -> Tuple[ChainMap, ChainMap]:
    """(A + B) (x) C = (A (x) C) + (B (x) C) by basis reordering."""
    ab, _, _ = direct_sum_complexes([a, b])
    src = TensorSpace(ab, c)
    ac = TensorSpace(a, c)
    bc = TensorSpace(b, c)
    tgt, _, _ = direct_sum_complexes([ac.complex, bc.complex])

    def fwd(n, flat):
        t = src.decompose(n, flat)
        ra = a.rank(t.left_degree)
        if t.left_index < ra:
            local = ac.slot_at(n, t.left_degree, t.left_index, t.right_index)
            return local, 1
        local = bc.slot_at(n, t.left_degree, t.left_index - ra, t.right_index)
        return ac.complex.rank(n) + local, 1

    def bwd(n, flat):
        ra_n = ac.complex.rank(n)
        if flat < ra_n:
            t = ac.decompose(n, flat)
            return src.slot_at(n, t.left_degree, t.left_index, t.right_index), 1
        t = bc.decompose(n, flat - ra_n)
        return src.slot_at(n, t.left_degree,
                           a.rank(t.left_degree) + t.left_index, t.right_index), 1

    return (_slot_chain_map(src.complex, tgt, fwd),
            _slot_chain_map(tgt, src.complex, bwd))


def sten_iso(a: Complex, b: Complex) -> Tuple[ChainMap, ChainMap]:
    """S(A (x) B) = SA (x) B as mutually inverse chain maps."""
    src = suspension(tensor(a, b), 1)
    ts_src = TensorSpace(a, b)
    ts_tgt = TensorSpace(suspension(a, 1), b)

    def fwd(n, flat):
        t = ts_src.decompose(n - 1, flat)
        return ts_tgt.slot_at(n, t.left_degree + 1, t.left_index, t.right_index), 1

    def bwd(n, flat):
        t = ts_tgt.decompose(n, flat)
        return ts_src.basis(n - 1).index(
            TensorBasisIndex(t.left_degree - 1, t.right_degree, t.left_index, t.right_index)
        ), 1

    fwd_map = _slot_chain_map(src, ts_tgt.complex, fwd)
    bwd_map = _slot_chain_map(ts_tgt.complex, src, bwd)
    return fwd_map, bwd_map


def sten_hom_isos(b: Complex, c: Complex) -> Dict[str, Tuple[ChainMap, ChainMap]]:
    """S[B,C] = [S^-1 B, C] = [B, SC] realized by chain isomorphisms.

    Convention: S[B,C] -> [B,SC] is the plain identification; the
    degree-n component of S[B,C] -> [S^-1 B, C] carries the sign (-1)^n.
    """
    hs = HomSpace(b, c)
    s_hom = suspension(hs.complex, 1)
    hs_left = HomSpace(suspension(b, -1), c)
    hs_right = HomSpace(b, suspension(c, 1))

    def left_fwd(n, flat):
        f = hs.from_vector(n - 1, _unit(hs.dim(n - 1), flat))
        g = Proto(hs_left.source, hs_left.target, n,
                  {q - 1: m for q, m in f.comps().items()})
        return _single_slot(hs_left, n, g), (-1 if n % 2 else 1)

    def left_bwd(n, flat):
        g = hs_left.from_vector(n, _unit(hs_left.dim(n), flat))
        f = Proto(b, c, n - 1, {q + 1: m for q, m in g.comps().items()})
        return hs.to_vector(f).index(1), (-1 if n % 2 else 1)

    def right_fwd(n, flat):
        f = hs.from_vector(n - 1, _unit(hs.dim(n - 1), flat))
        g = Proto(hs_right.source, hs_right.target, n, f.comps())
        return _single_slot(hs_right, n, g), 1

    def right_bwd(n, flat):
        g = hs_right.from_vector(n, _unit(hs_right.dim(n), flat))
        f = Proto(b, c, n - 1, g.comps())
        return hs.to_vector(f).index(1), 1

    return {
        "left": (_slot_chain_map(s_hom, hs_left.complex, left_fwd),
                 _slot_chain_map(hs_left.complex, s_hom, left_bwd)),
        "right": (_slot_chain_map(s_hom, hs_right.complex, right_fwd),
                  _slot_chain_map(hs_right.complex, s_hom, right_bwd)),
    }


def _unit(dim, k):
    v = [0] * dim
    v[k] = 1
    return v


def _single_slot(hs: HomSpace, n: int, p: Proto) -> int:
    vec = hs.to_vector(p)
    nz = [i for i, x in enumerate(vec) if x]
    if len(nz) != 1 or vec[nz[0]] != 1:
        raise RuntimeError("expected a unit vector")
    return nz[0]


# -- solved-for witnesses ---------------------------------------------------


def _combo(basis: List[Proto], coeffs) -> Proto:
    out = Proto.zero(basis[0].source, basis[0].target, basis[0].degree)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + c * b
    return out


def _search_iso(src: Complex, tgt: Complex, box: int = 1) -> Tuple[ChainMap, ChainMap]:
    """Find mutually inverse chain maps src <-> tgt by exact search + solve."""
    fwd_basis = chain_map_basis(src, tgt, 0)
    bwd_basis = chain_map_basis(tgt, src, 0)
    if not fwd_basis or not bwd_basis:
        if src.is_zero() and tgt.is_zero():
            return identity_map(src), identity_map(tgt)
        raise SearchFailed("no chain maps to search over")
    hs_src = HomSpace(src, src)
    hs_tgt = HomSpace(tgt, tgt)
    id_src = hs_src.to_vector(identity_map(src))
    id_tgt = hs_tgt.to_vector(identity_map(tgt))

    candidates = sorted(
        iter_product(range(-box, box + 1), repeat=len(fwd_basis)),
        key=lambda t: sum(abs(x) for x in t),
    )
    for coeffs in candidates:
        if not any(coeffs):
            continue
        f = _combo(fwd_basis, coeffs)
        cols = [hs_src.to_vector(compose(g, f)) for g in bwd_basis]
        rows = hs_src.dim(0)
        m = IntMatrix(rows, len(cols), (cols[j][i] for i in range(rows) for j in range(len(cols))))
        sol = solve_matrix(m, IntMatrix.column(id_src))
        if sol is None:
            continue
        g = _combo(bwd_basis, sol.col(0))
        if hs_tgt.to_vector(compose(f, g)) == id_tgt:
            return (ChainMap(src, tgt, 0, f.comps(), _trusted=True),
                    ChainMap(tgt, src, 0, g.comps(), _trusted=True))
    raise SearchFailed("exhausted the search box without finding an isomorphism")


def decompose_LZ_tensor() -> Tuple[ChainMap, ChainMap]:
    """Mutually inverse chain maps L Z (x) L Z = L Z + S^-1 L Z."""
    lz = functor_L(unit_complex())
    src = tensor(lz, lz)
    tgt, _, _ = direct_sum_complexes([lz, suspension(lz, -1)])
    return _search_iso(src, tgt)


@dataclass
class DualityWitness:
    unit: ChainMap
    counit: ChainMap
    triangle_left: bool
    triangle_right: bool


def verify_duality_LR() -> DualityWitness:
    """Unit and counit for the duality L Z -| R Z, solved over Z and
    checked against both triangle identities."""
    lz = functor_L(unit_complex())
    rz = functor_R(unit_complex())
    one = unit_complex()
    rl = tensor(rz, lz)
    lr = tensor(lz, rz)

    units = chain_map_basis(one, rl, 0)
    counits = chain_map_basis(lr, one, 0)
    if not units or not counits:
        raise SearchFailed("empty candidate spaces for the duality")

    for uc in iter_product(range(-1, 2), repeat=len(units)):
        if not any(uc):
            continue
        eta = _combo(units, uc)
        eta = ChainMap(one, rl, 0, eta.comps(), _trusted=True)
        for cc in iter_product(range(-1, 2), repeat=len(counits)):
            if not any(cc):
                continue
            eps = _combo(counits, cc)
            eps = ChainMap(lr, one, 0, eps.comps(), _trusted=True)
            if _triangle_left(lz, rz, eta, eps) and _triangle_right(lz, rz, eta, eps):
                return DualityWitness(eta, eps, True, True)
    raise SearchFailed("no (unit, counit) pair satisfies the triangle identities")


def _triangle_left(lz, rz, eta, eps) -> bool:
    # L -> L(x)Z -> L(x)(R(x)L) -> (L(x)R)(x)L -> Z(x)L -> L  equals  1_L
    _, ru_inv = right_unitor(lz)
    step2 = tensor_proto(identity_map(lz), eta)
    _, assoc_bwd = associator(lz, rz, lz)
    step4 = tensor_proto(eps, identity_map(lz))
    lu, _ = left_unitor(lz)
    total = compose(lu, compose(step4, compose(assoc_bwd, compose(step2, ru_inv))))
    return total == identity_map(lz)


def _triangle_right(lz, rz, eta, eps) -> bool:
    # R -> Z(x)R -> (R(x)L)(x)R -> R(x)(L(x)R) -> R(x)Z -> R  equals  1_R
    _, lu_inv = left_unitor(rz)
    step2 = tensor_proto(eta, identity_map(rz))
    assoc_fwd, _ = associator(rz, lz, rz)
    step4 = tensor_proto(identity_map(rz), eps)
    ru, _ = right_unitor(rz)
    total = compose(ru, compose(step4, compose(assoc_fwd, compose(step2, lu_inv))))
    return total == identity_map(rz)
