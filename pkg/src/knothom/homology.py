"""Homology of the cube complexes, with enough structure to push maps
through.

Two pipelines compute the same thing:

* the default one first cancels unit differential entries (a discrete
  homotopy equivalence that keeps inclusion, projection and homotopy
  maps), then runs a graded Smith normal form that assumes every entry
  is a monomial c*t^k.  On a q-homogeneous complex monomiality is
  preserved by elimination, the grading forces cancellations to be
  exact, and picking minimal-exponent pivots makes the divisibility
  chain automatic.

* the oracle one skips reduction entirely and runs a classical dense
  Smith normal form with polynomial division, no monomial assumptions.

Homology in degree r is presented as coker of the boundary matrix
written in kernel coordinates: kernel basis from the column transform of
the first SNF, relations pushed through its inverse, then a second SNF
whose diagonal gives annihilators t^k (k = 0 summands are dropped, k >= 1
are torsion, missing diagonal means free).
"""

from dataclasses import dataclass

from .rings import PolyRing
from .complexes import (ChainComplex, ChainMap, mat_mul, mat_eq, mat_add,
                        compose, add_maps, identity_map)


# -- sparse matrices with row and column indexes -------------------------

class SparseMat:
    def __init__(self, nrows, ncols, ring):
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        self.data = {}
        self.rows = {}
        self.cols = {}

    @classmethod
    def identity(cls, n, ring):
        m = cls(n, n, ring)
        for i in range(n):
            m.put(i, i, ring.one)
        return m

    @classmethod
    def from_columns(cls, nrows, ncols, cols, ring):
        m = cls(nrows, ncols, ring)
        for j, col in cols.items():
            for i, v in col.items():
                m.put(i, j, v)
        return m

    def get(self, i, j):
        return self.data.get((i, j), self.ring.zero)

    def put(self, i, j, v):
        if self.ring.is_zero(v):
            if (i, j) in self.data:
                del self.data[(i, j)]
                self.rows[i].discard(j)
                self.cols[j].discard(i)
        else:
            self.data[(i, j)] = v
            self.rows.setdefault(i, set()).add(j)
            self.cols.setdefault(j, set()).add(i)

    def row_support(self, i):
        return self.rows.get(i, set())

    def col_support(self, j):
        return self.cols.get(j, set())

    def swap_rows(self, a, b):
        if a == b:
            return
        cols = set(self.row_support(a)) | set(self.row_support(b))
        for j in cols:
            va, vb = self.get(a, j), self.get(b, j)
            self.put(a, j, vb)
            self.put(b, j, va)

    def swap_cols(self, a, b):
        if a == b:
            return
        rows = set(self.col_support(a)) | set(self.col_support(b))
        for i in rows:
            va, vb = self.get(i, a), self.get(i, b)
            self.put(i, a, vb)
            self.put(i, b, va)

    def addmul_row(self, dst, src, c):
        """row dst += c * row src"""
        R = self.ring
        for j in list(self.row_support(src)):
            v = R.add(self.get(dst, j), R.mul(c, self.get(src, j)))
            self.put(dst, j, v)

    def addmul_col(self, dst, src, c):
        R = self.ring
        for i in list(self.col_support(src)):
            v = R.add(self.get(i, dst), R.mul(c, self.get(i, src)))
            self.put(i, dst, v)

    def scale_row(self, i, c):
        R = self.ring
        for j in list(self.row_support(i)):
            self.put(i, j, R.mul(c, self.get(i, j)))

    def scale_col(self, j, c):
        R = self.ring
        for i in list(self.col_support(j)):
            self.put(i, j, R.mul(c, self.get(i, j)))

    def column(self, j):
        return {i: self.get(i, j) for i in self.col_support(j)}

    def apply(self, vec):
        """Matrix times sparse vector {j: payload}."""
        R = self.ring
        out = {}
        for j, c in vec.items():
            for i in self.col_support(j):
                w = R.add(out.get(i, R.zero), R.mul(self.get(i, j), c))
                if R.is_zero(w):
                    out.pop(i, None)
                else:
                    out[i] = w
        return out


def _mono(ring, v):
    """(scalar, exponent) of a monomial payload."""
    if isinstance(ring, PolyRing):
        parts = ring.mono_parts(v)
        assert parts is not None, "graded SNF met a non-monomial entry"
        return parts
    return v, 0


def _scalar_inv(ring, c):
    if isinstance(ring, PolyRing):
        return ring.monomial(ring.base.inv(c), 0)
    return ring.inv(c)


def _scalar_to_ring(ring, c):
    if isinstance(ring, PolyRing):
        return ring.monomial(c, 0)
    return c


@dataclass
class SNFResult:
    diag: list          # nonzero diagonal entries, divisibility chain
    U: SparseMat        # D = U M V
    Uinv: SparseMat
    V: SparseMat
    Vinv: SparseMat

    @property
    def rank(self):
        return len(self.diag)


def graded_snf(M, with_transforms=True):
    """Smith normal form for monomial matrices over F[t] or a field.

    Pivots minimize the t-exponent (ties by row, then column), which on a
    homogeneous matrix yields the divisibility chain directly; clearing
    never leaves non-monomial residue because equal-degree monomials
    either cancel or combine.
    """
    ring = M.ring
    n, m = M.nrows, M.ncols
    U = Uinv = V = Vinv = None
    if with_transforms:
        U = SparseMat.identity(n, ring)
        Uinv = SparseMat.identity(n, ring)
        V = SparseMat.identity(m, ring)
        Vinv = SparseMat.identity(m, ring)
    diag = []
    k = 0
    while True:
        best = None
        for (i, j), v in M.data.items():
            if i < k or j < k:
                continue
            _, e = _mono(ring, v)
            key = (e, i, j)
            if best is None or key < best:
                best = key
        if best is None:
            break
        _, pi, pj = best
        M.swap_rows(k, pi)
        M.swap_cols(k, pj)
        if with_transforms:
            U.swap_rows(k, pi)
            Uinv.swap_cols(k, pi)
            V.swap_cols(k, pj)
            Vinv.swap_rows(k, pj)
        c, e = _mono(ring, M.get(k, k))
        cinv = _scalar_inv(ring, c)
        M.scale_row(k, cinv)
        if with_transforms:
            U.scale_row(k, cinv)
            Uinv.scale_col(k, _scalar_to_ring(ring, c))
        for i in list(M.col_support(k)):
            if i == k:
                continue
            ci, ei = _mono(ring, M.get(i, k))
            assert ei >= e, "pivot was not minimal"
            factor = (ring.monomial(ci, ei - e)
                      if isinstance(ring, PolyRing) else ci)
            neg = ring.neg(factor)
            M.addmul_row(i, k, neg)
            if with_transforms:
                U.addmul_row(i, k, neg)
                Uinv.addmul_col(k, i, factor)
        for j in list(M.row_support(k)):
            if j == k:
                continue
            cj, ej = _mono(ring, M.get(k, j))
            assert ej >= e
            factor = (ring.monomial(cj, ej - e)
                      if isinstance(ring, PolyRing) else cj)
            neg = ring.neg(factor)
            M.addmul_col(j, k, neg)
            if with_transforms:
                V.addmul_col(j, k, neg)
                Vinv.addmul_row(k, j, factor)
        diag.append(M.get(k, k))
        k += 1
    return SNFResult(diag, U, Uinv, V, Vinv)


def dense_snf(M, with_transforms=True):
    """Classical Smith normal form over F[t] (or a field) by repeated
    polynomial division.  No monomial or homogeneity assumptions; this is
    the oracle the graded version is checked against."""
    ring = M.ring
    is_poly = isinstance(ring, PolyRing)

    def deg(v):
        return ring.poly_degree(v) if is_poly else 0

    def div(a, b):
        if is_poly:
            return ring.divmod(a, b)
        return ring.mul(a, ring.inv(b)), ring.zero

    n, m = M.nrows, M.ncols
    U = Uinv = V = Vinv = None
    if with_transforms:
        U = SparseMat.identity(n, ring)
        Uinv = SparseMat.identity(n, ring)
        V = SparseMat.identity(m, ring)
        Vinv = SparseMat.identity(m, ring)

    def row_op(dst, src, c):
        neg = ring.neg(c)
        M.addmul_row(dst, src, neg)
        if with_transforms:
            U.addmul_row(dst, src, neg)
            Uinv.addmul_col(src, dst, c)

    def col_op(dst, src, c):
        neg = ring.neg(c)
        M.addmul_col(dst, src, neg)
        if with_transforms:
            V.addmul_col(dst, src, neg)
            Vinv.addmul_row(src, dst, c)

    diag = []
    k = 0
    while True:
        best = None
        for (i, j), v in M.data.items():
            if i < k or j < k:
                continue
            key = (deg(v), i, j)
            if best is None or key < best:
                best = key
        if best is None:
            break
        _, pi, pj = best

        def move(pi, pj):
            M.swap_rows(k, pi)
            M.swap_cols(k, pj)
            if with_transforms:
                U.swap_rows(k, pi)
                Uinv.swap_cols(k, pi)
                V.swap_cols(k, pj)
                Vinv.swap_rows(k, pj)

        move(pi, pj)
        while True:
            # clear the pivot column; remainders become smaller pivots
            dirty = True
            while dirty:
                dirty = False
                for i in sorted(M.col_support(k)):
                    if i == k:
                        continue
                    q, r = div(M.get(i, k), M.get(k, k))
                    row_op(i, k, q)
                    if not ring.is_zero(r):
                        move(i, k)
                        dirty = True
                        break
                else:
                    for j in sorted(M.row_support(k)):
                        if j == k:
                            continue
                        q, r = div(M.get(k, j), M.get(k, k))
                        col_op(j, k, q)
                        if not ring.is_zero(r):
                            move(k, j)
                            dirty = True
                            break
            # divisibility of the remaining block
            piv = M.get(k, k)
            offender = None
            for (i, j), v in M.data.items():
                if i <= k or j <= k:
                    continue
                _, r = div(v, piv)
                if not ring.is_zero(r):
                    offender = i
                    break
            if offender is None:
                break
            row_op(k, offender, ring.neg(ring.one))
        piv = M.get(k, k)
        if is_poly:
            lead = piv[max(piv)]
            cinv = ring.monomial(ring.base.inv(lead), 0)
        else:
            cinv = ring.inv(piv)
        M.scale_row(k, cinv)
        if with_transforms:
            U.scale_row(k, cinv)
            if is_poly:
                Uinv.scale_col(k, ring.monomial(lead, 0))
            else:
                Uinv.scale_col(k, piv)
        diag.append(M.get(k, k))
        k += 1
    return SNFResult(diag, U, Uinv, V, Vinv)


# -- elimination of unit differential entries ----------------------------

@dataclass
class Reduction:
    original: ChainComplex
    red: ChainComplex
    incl: ChainMap
    proj: ChainMap
    homotopy: ChainMap


def _diff_as_map(cx):
    return ChainMap(cx, cx, {r: cx.d(r) for r in cx.degrees}, 1, 0, "d")


def reduce_complex(cx, pairs=None, track_maps=True):
    """Cancel unit entries of the differential.

    ``pairs`` prescribes an elimination order as (r, src_key, tgt_key)
    tuples; by default every unit entry is eliminated (smallest degree,
    then source and target index).  Returns a Reduction whose maps
    satisfy proj∘incl = id and id - incl∘proj = dH + Hd; with
    track_maps=False the maps are None and only the small complex comes
    back.
    """
    R = cx.ring
    degrees = cx.degrees
    cols = {r: {s: dict(c) for s, c in cx.d(r).items()} for r in degrees}
    rows = {r: {} for r in degrees}
    for r in degrees:
        for s, col in cols[r].items():
            for t in col:
                rows[r].setdefault(t, set()).add(s)
    alive = {r: set(range(cx.rank(r))) for r in degrees}

    if track_maps:
        incl_cols = {r: {i: {i: R.one} for i in alive[r]} for r in degrees}
        proj_cols = {r: {i: {i: R.one} for i in alive[r]} for r in degrees}
        proj_rows = {r: {i: {i} for i in alive[r]} for r in degrees}
        htp_cols = {r: {} for r in degrees}

    def entry(r, s, t):
        return cols[r].get(s, {}).get(t, R.zero)

    def set_entry(r, s, t, v):
        if R.is_zero(v):
            col = cols[r].get(s)
            if col and t in col:
                del col[t]
                if not col:
                    del cols[r][s]
                rset = rows[r].get(t)
                if rset:
                    rset.discard(s)
        else:
            cols[r].setdefault(s, {})[t] = v
            rows[r].setdefault(t, set()).add(s)

    import heapq
    queue = []
    if pairs is None:
        for r in degrees:
            for s, col in cols[r].items():
                for t, v in col.items():
                    if R.is_unit(v):
                        heapq.heappush(queue, (r, s, t))
    else:
        for r, sk, tk in pairs:
            rs, si = cx.index[sk]
            rt, ti = cx.index[tk]
            assert rs == r and rt == r + 1, "prescribed pair has wrong degrees"
            queue.append((r, si, ti))
        queue.reverse()  # pop() order below

    def next_pair():
        if pairs is None:
            while queue:
                r, s, t = heapq.heappop(queue)
                if s in alive[r] and t in alive.get(r + 1, set()):
                    v = entry(r, s, t)
                    if R.is_unit(v):
                        return r, s, t
            return None
        else:
            if queue:
                r, s, t = queue.pop()
                assert s in alive[r] and t in alive[r + 1], "pair already gone"
                assert R.is_unit(entry(r, s, t)), "prescribed pair is not a unit"
                return r, s, t
            return None

    while True:
        nxt = next_pair()
        if nxt is None:
            break
        r, x, y = nxt
        u = entry(r, x, y)
        uinv = R.inv(u)

        dx = {t: v for t, v in cols[r].get(x, {}).items() if t != y}
        into_y = {w: entry(r, w, y) for w in rows[r].get(y, set()) if w != x}

        if track_maps:
            # homotopy picks up incl(x) against the old proj coefficients at y
            ix_col = incl_cols[r][x]
            for g in list(proj_rows[r + 1].get(y, ())):
                c = proj_cols[r + 1][g].get(y)
                if c is None:
                    continue
                coef = R.mul(c, uinv)
                acc = htp_cols[r + 1].setdefault(g, {})
                for i0, v0 in ix_col.items():
                    w = R.add(acc.get(i0, R.zero), R.mul(coef, v0))
                    if R.is_zero(w):
                        acc.pop(i0, None)
                    else:
                        acc[i0] = w
                if not acc:
                    del htp_cols[r + 1][g]
            # proj: y goes to -uinv * (dx restricted to survivors), x to 0
            py = {}
            for t, v in dx.items():
                py[t] = R.neg(R.mul(uinv, v))
            for g in list(proj_rows[r + 1].get(y, ())):
                c = proj_cols[r + 1][g].pop(y, None)
                if c is None:
                    continue
                col = proj_cols[r + 1][g]
                for t, v in py.items():
                    w = R.add(col.get(t, R.zero), R.mul(c, v))
                    if R.is_zero(w):
                        col.pop(t, None)
                        proj_rows[r + 1].get(t, set()).discard(g)
                    else:
                        col[t] = w
                        proj_rows[r + 1].setdefault(t, set()).add(g)
                if not col:
                    del proj_cols[r + 1][g]
            proj_rows[r + 1].pop(y, None)
            for g in list(proj_rows[r].get(x, ())):
                col = proj_cols[r].get(g)
                if col and x in col:
                    del col[x]
                    if not col:
                        del proj_cols[r][g]
            proj_rows[r].pop(x, None)
            # incl: surviving w with d(w) hitting y absorb -uinv<dw,y> incl(x)
            for w, cw in into_y.items():
                coef = R.neg(R.mul(uinv, cw))
                col = incl_cols[r][w]
                for i0, v0 in ix_col.items():
                    v = R.add(col.get(i0, R.zero), R.mul(coef, v0))
                    if R.is_zero(v):
                        col.pop(i0, None)
                    else:
                        col[i0] = v
            del incl_cols[r][x]
            del incl_cols[r + 1][y]

        # differential update: d(w) += -uinv <dw,y> (dx - uy), then drop x, y
        for w, cw in into_y.items():
            coef = R.neg(R.mul(uinv, cw))
            for t, v in dx.items():
                nv = R.add(entry(r, w, t), R.mul(coef, v))
                set_entry(r, w, t, nv)
                if pairs is None and not R.is_zero(nv) and R.is_unit(nv):
                    heapq.heappush(queue, (r, w, t))
            set_entry(r, w, y, R.zero)
        # remove x's outgoing arrows, arrows into x, and arrows out of y
        for t in list(cols[r].get(x, {})):
            set_entry(r, x, t, R.zero)
        for w in list(rows.get(r - 1, {}).get(x, ())):
            set_entry(r - 1, w, x, R.zero)
        for t in list(cols.get(r + 1, {}).get(y, {})):
            set_entry(r + 1, y, t, R.zero)
        alive[r].discard(x)
        alive[r + 1].discard(y)

    # assemble the reduced complex, keeping original key order
    red_gens = {}
    red_qdeg = {}
    reindex = {}
    for r in degrees:
        keys = []
        qs = []
        for i in sorted(alive[r]):
            reindex[(r, i)] = len(keys)
            keys.append(cx.gens[r][i])
            qs.append(cx.qdeg[r][i])
        red_gens[r] = keys
        red_qdeg[r] = qs
    red_diffs = {}
    for r in degrees:
        blk = {}
        for s, col in cols[r].items():
            if s not in alive[r]:
                continue
            newcol = {reindex[(r + 1, t)]: v for t, v in col.items()}
            if newcol:
                blk[reindex[(r, s)]] = newcol
        red_diffs[r] = blk
    red = ChainComplex(cx.theory, red_gens, red_qdeg, diffs=red_diffs)

    if not track_maps:
        return Reduction(cx, red, None, None, None)

    incl_blocks = {}
    proj_blocks = {}
    for r in degrees:
        blk = {}
        for i in sorted(alive[r]):
            col = incl_cols[r][i]
            if col:
                blk[reindex[(r, i)]] = dict(col)
        if blk:
            incl_blocks[r] = blk
        pblk = {}
        for g, col in proj_cols[r].items():
            newcol = {reindex[(r, t)]: v for t, v in col.items()}
            if newcol:
                pblk[g] = newcol
        if pblk:
            proj_blocks[r] = pblk
    htp_blocks = {}
    for r in degrees:
        blk = {g: dict(col) for g, col in htp_cols[r].items() if col}
        if blk:
            htp_blocks[r] = blk
    incl = ChainMap(red, cx, incl_blocks, 0, 0, "incl")
    proj = ChainMap(cx, red, proj_blocks, 0, 0, "proj")
    htp = ChainMap(cx, cx, htp_blocks, -1, None, "H")
    return Reduction(cx, red, incl, proj, htp)


def reduction_identities_hold(redn):
    """proj∘incl = id, id - incl∘proj = dH + Hd, both maps chain maps."""
    cx, red = redn.original, redn.red
    R = cx.ring
    if not redn.incl.is_chain_map() or not redn.proj.is_chain_map():
        return False
    pi = compose(redn.proj, redn.incl)
    if not all(mat_eq(R, pi.block(r), identity_map(red).block(r))
               for r in red.degrees):
        return False
    ip = compose(redn.incl, redn.proj)
    d = _diff_as_map(cx)
    dh_hd = add_maps(compose(d, redn.homotopy), compose(redn.homotopy, d))
    ident = identity_map(cx)
    for r in cx.degrees:
        lhs = mat_add(R, ident.block(r),
                      {s: {t: R.neg(v) for t, v in c.items()}
                       for s, c in ip.block(r).items()})
        if not mat_eq(R, lhs, dh_hd.block(r)):
            return False
    return True


# -- homology presentations ----------------------------------------------

class DegreePresentation:
    """H_r = (free module on kernel coords) / relations, post-SNF.

    ann[b] is None for a free summand, k >= 1 for a t^k torsion summand;
    order-0 summands are dropped (they are zero in homology).
    """

    def __init__(self, gens, ann, qdeg, gen_vecs):
        self.gens = gens          # indices surviving (into internal data)
        self.ann = ann            # per surviving generator
        self.qdeg = qdeg
        self.gen_vecs = gen_vecs  # cycles in C_r coordinates


class HomologyData:
    def __init__(self, cx, method="reduced"):
        assert method in ("reduced", "dense")
        self.theory = cx.theory
        ring = cx.ring
        if not (ring.is_field or isinstance(ring, PolyRing)):
            raise ValueError(
                "homology needs field or univariate polynomial coefficients; "
                "specialize the theory first")
        if isinstance(ring, PolyRing) and not cx.theory.graded:
            raise ValueError(
                "polynomial coefficients need a graded theory for the "
                "monomial normal form")
        self.original = cx
        self.method = method
        if method == "reduced":
            self.redn = reduce_complex(cx, track_maps=True)
            self.work = self.redn.red
            self._snf = graded_snf
        else:
            cx.materialize()
            self.redn = None
            self.work = cx
            self._snf = dense_snf
        self._pres = {}
        self._solvers = {}

    def degrees(self):
        return self.work.degrees

    def _solve(self, r):
        """First SNF: kernel data of d_r on the working complex."""
        if r in self._solvers:
            return self._solvers[r]
        W = self.work
        n_tgt = W.rank(r + 1)
        n_src = W.rank(r)
        M = SparseMat.from_columns(n_tgt, n_src,
                                   {s: dict(c) for s, c in W.d(r).items()},
                                   W.ring)
        res = self._snf(M)
        kernel_pos = list(range(res.rank, n_src))
        self._solvers[r] = (res, kernel_pos)
        return self._solvers[r]

    def presentation(self, r):
        if r in self._pres:
            return self._pres[r]
        W = self.work
        ring = W.ring
        res, kernel_pos = self._solve(r)
        kappa = len(kernel_pos)
        rres = self._snf_of(r)
        gens = []
        ann = []
        qdeg = []
        gen_vecs = []
        for b in range(kappa):
            if b < rres.rank:
                d = rres.diag[b]
                if isinstance(ring, PolyRing):
                    e = ring.exponent(d)
                else:
                    e = 0
                if e == 0:
                    continue  # unit relation, generator dies
                a = e
            else:
                a = None
            yvec = rres.Uinv.column(b)
            zvec = {}
            for aidx, v in yvec.items():
                p = kernel_pos[aidx]
                for i in res.V.col_support(p):
                    w = ring.add(zvec.get(i, ring.zero),
                                 ring.mul(res.V.get(i, p), v))
                    if ring.is_zero(w):
                        zvec.pop(i, None)
                    else:
                        zvec[i] = w
            q = self._vec_qdeg(r, zvec)
            gens.append(b)
            ann.append(a)
            qdeg.append(q)
            gen_vecs.append(zvec)
        pres = DegreePresentation(gens, ann, qdeg, gen_vecs)
        self._pres[r] = pres
        return pres

    def _vec_qdeg(self, r, vec):
        if not self.theory.graded or not vec:
            return None
        ring = self.work.ring
        qs = set()
        for i, c in vec.items():
            qs.add(self.work.qdeg[r][i] - 2 * ring.exponent(c))
        assert len(qs) == 1, "homology generator is not q-homogeneous"
        return qs.pop()

    def canonical_coords(self, r, zvec):
        """Coordinates of a cycle (working coords) in the presentation,
        reduced modulo the annihilators."""
        ring = self.work.ring
        res, kernel_pos = self._solve(r)
        pos_of = {p: a for a, p in enumerate(kernel_pos)}
        y = res.Vinv.apply(zvec)
        yk = {}
        for p, v in y.items():
            assert p in pos_of, "not a cycle"
            yk[pos_of[p]] = v
        rres = self._snf_of(r)
        c = rres.U.apply(yk)
        pres = self.presentation(r)
        out = []
        for slot, b in enumerate(pres.gens):
            v = c.get(b, ring.zero)
            a = pres.ann[slot]
            if a is not None:
                # torsion only arises over F[t]; reduce mod t^a
                v = {k: co for k, co in v.items() if k < a}
            out.append(v)
        return out

    def _snf_of(self, r):
        """SNF of the relation matrix (boundaries in kernel coordinates)."""
        if not hasattr(self, "_rel_snf"):
            self._rel_snf = {}
        if r in self._rel_snf:
            return self._rel_snf[r]
        W = self.work
        ring = W.ring
        res, kernel_pos = self._solve(r)
        pos_of = {p: a for a, p in enumerate(kernel_pos)}
        rel = SparseMat(len(kernel_pos), W.rank(r - 1), ring)
        below = W.d(r - 1)
        for g in range(W.rank(r - 1)):
            col = below.get(g)
            if not col:
                continue
            y = res.Vinv.apply(col)
            for p, v in y.items():
                assert p in pos_of, "boundary is not a cycle?"
                rel.put(pos_of[p], g, v)
        rres = self._snf(rel)
        self._rel_snf[r] = rres
        return rres

    def to_work_coords(self, r, orig_vec):
        if self.redn is None:
            return orig_vec
        return self.redn.proj.apply(r, orig_vec)

    def gen_cycles_original(self, r):
        """Generator cycles pushed back to the original complex."""
        pres = self.presentation(r)
        if self.redn is None:
            return list(pres.gen_vecs)
        return [self.redn.incl.apply(r, z) for z in pres.gen_vecs]

    def summary(self):
        free = {}
        torsion = {}
        for r in self.degrees():
            pres = self.presentation(r)
            for a, q in zip(pres.ann, pres.qdeg):
                if a is None:
                    free[(r, q)] = free.get((r, q), 0) + 1
                else:
                    torsion[(r, q, a)] = torsion.get((r, q, a), 0) + 1
        def _k(t):
            return tuple((x if x is not None else -10**9) for x in t)
        return HomologySummary(
            self.theory.name,
            tuple(sorted(((r, q, m) for (r, q), m in free.items()),
                         key=lambda t: _k(t))),
            tuple(sorted(((r, q, a, m) for (r, q, a), m in torsion.items()),
                         key=lambda t: _k(t))))


@dataclass(frozen=True)
class HomologySummary:
    theory: str
    free: tuple      # (r, q, multiplicity)
    torsion: tuple   # (r, q, order, multiplicity)

    def free_rank(self):
        return sum(m for _, _, m in self.free)

    def torsion_count(self):
        return sum(m for _, _, _, m in self.torsion)

    def max_torsion_order(self):
        return max((k for _, _, k, m in self.torsion), default=0)

    def as_dict(self):
        return {
            "theory": self.theory,
            "free": [list(t) for t in self.free],
            "torsion": [list(t) for t in self.torsion],
        }

    def format_table(self):
        lines = []
        lines.append("free summands (r, q, rank):")
        if not self.free:
            lines.append("  none")
        for r, q, m in self.free:
            lines.append("  r=%+d  q=%s  rank %d" % (r, str(q), m))
        lines.append("torsion summands (r, q, order, count):")
        if not self.torsion:
            lines.append("  none")
        for r, q, k, m in self.torsion:
            lines.append("  r=%+d  q=%s  order %d  x%d" % (r, str(q), k, m))
        return "\n".join(lines)


def homology(cx, method="reduced"):
    return HomologyData(cx, method=method).summary()


# -- induced maps --------------------------------------------------------

def induced_map(f, ha, hb):
    """Matrix of f on homology: canonical coordinates of images of the
    source presentation generators, per degree."""
    assert f.r_shift == 0
    out = {}
    for r in ha.degrees():
        pres = ha.presentation(r)
        cols = []
        for z in ha.gen_cycles_original(r):
            img = f.apply(r, z)
            w = hb.to_work_coords(r, img)
            cols.append(hb.canonical_coords(r, w))
        if cols:
            out[r] = cols
    return out


def _coords_neg(ring, coords, ann):
    out = []
    for v, a in zip(coords, ann):
        nv = ring.neg(v)
        if a is not None and isinstance(ring, PolyRing):
            nv = {k: c for k, c in nv.items() if k < a}
        out.append(nv)
    return out


def maps_equal_on_homology(f, g, ha, hb, up_to_sign=False):
    """Compare two maps on homology, optionally up to one global sign."""
    mf = induced_map(f, ha, hb)
    mg = induced_map(g, ha, hb)
    ring = hb.work.ring
    def _eq(ma, mb, negate):
        for r in set(ma) | set(mb):
            ca = ma.get(r, [])
            cb = mb.get(r, [])
            if len(ca) != len(cb):
                return False
            ann = hb.presentation(r).ann
            for va, vb in zip(ca, cb):
                vb2 = _coords_neg(ring, vb, ann) if negate else vb
                if len(va) != len(vb2):
                    return False
                for x, y in zip(va, vb2):
                    if not ring.eq(x, y):
                        return False
        return True
    if _eq(mf, mg, False):
        return True
    if up_to_sign and _eq(mf, mg, True):
        return True
    return False


# -- torsion-order invariants --------------------------------------------

@dataclass
class TorsionBound:
    label: str       # "mu" or "nu_phi"
    value: int
    note: str = ""


def torsion_bound(summary, theory):
    """The torsion order invariant of a homology summary.

    For the F2[h] theory this is mu, the largest h-power annihilating
    torsion.  For specializations of the two-variable theory the doubled
    decoration 2X - s drives the bound: when it acts as a scalar c*t^k
    the t-torsion orders convert by ceil(m/k); when its square s^2 - 4p
    is a unit the reduced homology has no torsion at all and nu is 0.
    """
    R = theory.ring
    if theory.name == "bn":
        return TorsionBound("mu", summary.max_torsion_order())
    star = theory.decoration_element("star")
    if R.is_zero(star[1]):
        scal = star[0]
        if R.is_unit(scal):
            return TorsionBound("nu_phi", 0,
                                "2X - s acts by a unit, no torsion possible")
        if isinstance(R, PolyRing):
            parts = R.mono_parts(scal)
            if parts is not None and parts[1] >= 1:
                k = parts[1]
                m = summary.max_torsion_order()
                return TorsionBound("nu_phi", -(-m // k))
        if R.is_zero(scal):
            raise ValueError("2X - s acts by zero here; nu_phi carries no "
                             "information for this specialization")
        raise ValueError("unsupported scalar action for nu_phi")
    disc = R.sub(R.mul(theory.s, theory.s),
                 R.mul(R.from_int(4), theory.p))
    if R.is_unit(disc):
        return TorsionBound("nu_phi", 0,
                            "(a1 - a2)^2 maps to a unit, so the doubled "
                            "decoration is invertible on homology")
    raise ValueError(
        "nu_phi is only computed when 2X - s acts as a scalar or has "
        "invertible square; got star = (%s) + (%s) X"
        % (R.fmt(star[0]), R.fmt(star[1])))


def scaled_summary(summary, d):
    """Multiply the module by t^d: free parts shift in q, torsion orders
    drop by d, anything at or below order d dies."""
    free = tuple((r, (q - 2 * d) if q is not None else None, m)
                 for r, q, m in summary.free)
    torsion = tuple((r, (q - 2 * d) if q is not None else None, k - d, m)
                    for r, q, k, m in summary.torsion if k > d)
    return HomologySummary(summary.theory, free, torsion)


# -- independent field-coefficient dimensions ----------------------------

def graded_field_dims(cx):
    """Homology dimensions per (r, q) over a field, via the dense engine
    on q-graded slices.  Used as the second route in dimension
    cross-checks; no reduction, no monomial tricks."""
    ring = cx.ring
    assert ring.is_field
    dims = {}
    qvals = {}
    for r in cx.degrees:
        for i, q in enumerate(cx.qdeg[r]):
            qvals.setdefault((r, q), []).append(i)
    ranks = {}
    for (r, q), idxs in sorted(qvals.items()):
        tgt_idx = {i: a for a, i in enumerate(qvals.get((r + 1, q), []))}
        M = SparseMat(len(tgt_idx), len(idxs), ring)
        d = cx.d(r)
        for a, i in enumerate(idxs):
            col = d.get(i, {})
            for t, v in col.items():
                if t in tgt_idx:
                    M.put(tgt_idx[t], a, v)
        ranks[(r, q)] = dense_snf(M, with_transforms=False).rank
    for (r, q), idxs in qvals.items():
        rk_out = ranks.get((r, q), 0)
        rk_in = ranks.get((r - 1, q), 0)
        dim = len(idxs) - rk_out - rk_in
        if dim:
            dims[(r, q)] = dim
    return dims


def bn_to_f2_dims(summary):
    """Expected kh-f2 dimensions from an F2[h] summary: each free summand
    keeps its bidegree, each order-k torsion summand contributes its own
    bidegree and one extra class at (r-1, q-2k)."""
    dims = {}
    for r, q, m in summary.free:
        dims[(r, q)] = dims.get((r, q), 0) + m
    for r, q, k, m in summary.torsion:
        dims[(r, q)] = dims.get((r, q), 0) + m
        key = (r - 1, q - 2 * k)
        dims[key] = dims.get(key, 0) + m
    return dims
