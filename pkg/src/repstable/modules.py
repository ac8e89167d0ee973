"""Exact linear algebra over window representations.

A graded module is stored as a representation of the windowed quiver with
relations: one exact matrix per arrow, acting column-on-the-right, so the
matrix of a path is the product of its arrow matrices in reverse
application order.  Morphisms are vertex-indexed block families commuting
with every arrow action.  Everything is immutable after construction and
all functions are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .presentation import PathWord


class ModuleError(Exception):
    pass


class DecomposeError(Exception):
    """Raised when the summand search and its sampling fallback exhaust
    their budget; carries whatever was peeled so far."""

    def __init__(self, message, partial=None, budget=0):
        super().__init__(message)
        self.partial = partial or []
        self.budget = budget


@dataclass(frozen=True)
class RepView:
    """A plain quiver-representation view: vertex names, arrows with
    endpoints, dimensions and action matrices.  Both full window modules
    and their degree slices reduce to this."""

    vertices: tuple
    arrows: tuple  # (name, source, target)
    dims: dict
    acts: dict

    def dim(self, v: str) -> int:
        return self.dims.get(v, 0)

    def act(self, name: str, src: str, tgt: str, fieldobj):
        m = self.acts.get(name)
        if m is None:
            return linalg.zeros(fieldobj, self.dim(tgt), self.dim(src))
        return m


class GradedModule:
    """Finitely supported representation of a repetitive window."""

    def __init__(self, win, fieldobj, dims: dict, acts: dict, meta=None):
        self.win = win
        self.field = fieldobj
        self.dims = {v: d for v, d in dims.items() if d > 0}
        q = win.presentation.quiver
        self.acts = {an: m for an, m in acts.items()
                     if m is not None
                     and self.dims.get(q.arrows[an].source, 0)
                     and self.dims.get(q.arrows[an].target, 0)}
        self.meta = meta
        self._key = None

    def dim(self, v: str) -> int:
        return self.dims.get(v, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def act(self, name: str):
        arr = self.win.presentation.quiver.arrows[name]
        m = self.acts.get(name)
        if m is None:
            return linalg.zeros(self.field, self.dim(arr.target),
                                self.dim(arr.source))
        return m

    def support_degrees(self) -> list:
        return sorted({self.win.degree(v) for v in self.dims})

    def is_zero(self) -> bool:
        return not self.dims

    def sorted_support(self) -> list:
        return sorted(self.dims, key=self.win.vertex_sort_key)

    def eval_path(self, p: PathWord):
        """Matrix of a window path acting on this module."""
        q = self.win.presentation.quiver
        m = linalg.identity(self.field, self.dim(p.source))
        at = p.source
        for an in p.arrows:
            arr = q.arrows[an]
            m = linalg.mat_mul(self.field, self.act(an), m)
            at = arr.target
        return m

    def validate(self):
        q = self.win.presentation.quiver
        for v in self.dims:
            if v not in q.vertices:
                raise ModuleError("unknown window vertex %r" % v)
        for an, m in self.acts.items():
            arr = q.arrows[an]
            want = (self.dim(arr.target), self.dim(arr.source))
            if linalg.shape(m) != want:
                raise ModuleError("matrix for %s has shape %s, want %s"
                                  % (an, linalg.shape(m), want))
        for rel in self.win.presentation.relations:
            if rel.kind == "monomial":
                if not linalg.is_zero(self.eval_path(rel.path)):
                    raise ModuleError("monomial relation %s violated" % rel)
            else:
                diff = linalg.mat_sub(self.eval_path(rel.path),
                                      self.eval_path(rel.other))
                if not linalg.is_zero(diff):
                    raise ModuleError("binomial relation %s violated" % rel)
        return self

    def key(self):
        if self._key is None:
            dims = tuple(sorted(self.dims.items()))
            acts = tuple(sorted(
                (an, tuple(tuple(row) for row in m))
                for an, m in self.acts.items()
                if m and m[0]))
            self._key = (dims, acts, repr(self.field))
        return self._key

    def repview(self) -> RepView:
        q = self.win.presentation.quiver
        return RepView(tuple(self.win.sorted_vertices()),
                       tuple((a.name, a.source, a.target)
                             for a in q.sorted_arrows()),
                       dict(self.dims), dict(self.acts))

    def slice_view(self, z: int) -> RepView:
        """The degree-``z`` part as a representation of the base quiver."""
        bq = self.win.base.quiver
        dims = {}
        acts = {}
        for v in sorted(bq.vertices):
            d = self.dim(self.win.vname(v, z))
            if d:
                dims[v] = d
        for a in bq.sorted_arrows():
            an = self.win.aname(a.name, z)
            if self.dim(self.win.vname(a.source, z)) and \
                    self.dim(self.win.vname(a.target, z)):
                acts[a.name] = self.act(an)
        return RepView(tuple(sorted(bq.vertices)),
                       tuple((a.name, a.source, a.target)
                             for a in bq.sorted_arrows()),
                       dims, acts)


def zero_module(win, fieldobj) -> GradedModule:
    return GradedModule(win, fieldobj, {}, {})


def simple_module(win, fieldobj, vname: str) -> GradedModule:
    return GradedModule(win, fieldobj, {vname: 1}, {})


def reembed(m: GradedModule, new_win) -> GradedModule:
    """The same data over a larger window (vertex names are absolute)."""
    out = GradedModule(new_win, m.field, dict(m.dims), dict(m.acts),
                       meta=m.meta)
    out.validate()
    return out


class ModuleMorphism:
    def __init__(self, source: GradedModule, target: GradedModule, blocks: dict):
        self.source = source
        self.target = target
        norm = {}
        for v, b in blocks.items():
            r, c = target.dim(v), source.dim(v)
            if not r or not c:
                continue
            if linalg.shape(b) != (r, c):
                # Degenerate shapes from zero-dimensional intermediates are
                # always zero in content; restore the true shape.
                if not linalg.is_zero(b):
                    raise ModuleError("block at %s has shape %s, want %s"
                                      % (v, linalg.shape(b), (r, c)))
                b = linalg.zeros(source.field, r, c)
            norm[v] = b
        self.blocks = norm

    def block(self, v: str):
        b = self.blocks.get(v)
        if b is None:
            return linalg.zeros(self.source.field, self.target.dim(v),
                                self.source.dim(v))
        return b

    def validate(self):
        if self.source.win is not self.target.win:
            raise ModuleError("morphism endpoints live on different windows")
        f = self.source.field
        q = self.source.win.presentation.quiver
        for a in q.sorted_arrows():
            lhs = linalg.mat_mul(f, self.block(a.target), self.source.act(a.name))
            rhs = linalg.mat_mul(f, self.target.act(a.name), self.block(a.source))
            if linalg.shape(lhs) == linalg.shape(rhs):
                ok = linalg.mat_eq(lhs, rhs)
            else:
                # Shapes can disagree only through zero-dimensional spaces,
                # where both composites are zero in content.
                ok = linalg.is_zero(lhs) and linalg.is_zero(rhs)
            if not ok:
                raise ModuleError("morphism does not commute with %s" % a.name)
        return self

    def is_zero(self) -> bool:
        return all(linalg.is_zero(b) for b in self.blocks.values())

    def rank(self) -> int:
        f = self.source.field
        return sum(linalg.rank(f, self.block(v))
                   for v in self.blocks)

    def slice_blocks(self, z: int) -> dict:
        out = {}
        for v in sorted(self.source.win.base.quiver.vertices):
            vn = self.source.win.vname(v, z)
            if self.source.dim(vn) and self.target.dim(vn):
                out[v] = self.block(vn)
        return out

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        blocks = {}
        for v in set(self.blocks) | set(other.blocks):
            blocks[v] = linalg.mat_add(self.block(v), other.block(v))
        return ModuleMorphism(self.source, self.target, blocks)

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        blocks = {}
        for v in set(self.blocks) | set(other.blocks):
            blocks[v] = linalg.mat_sub(self.block(v), other.block(v))
        return ModuleMorphism(self.source, self.target, blocks)

    def __neg__(self):
        return ModuleMorphism(self.source, self.target,
                              {v: linalg.mat_neg(b) for v, b in self.blocks.items()})

    def scaled(self, c):
        return ModuleMorphism(self.source, self.target,
                              {v: linalg.mat_scale(c, b)
                               for v, b in self.blocks.items()})


def identity_morphism(m: GradedModule) -> ModuleMorphism:
    return ModuleMorphism(m, m, {v: linalg.identity(m.field, d)
                                 for v, d in m.dims.items()})


def compose(g: ModuleMorphism, f: ModuleMorphism) -> ModuleMorphism:
    """g after f."""
    if g.source is not f.target and g.source.key() != f.target.key():
        raise ModuleError("composition shape mismatch")
    blocks = {}
    fld = f.source.field
    for v in set(f.blocks) | set(g.blocks):
        blocks[v] = linalg.mat_mul(fld, g.block(v), f.block(v))
    return ModuleMorphism(f.source, g.target, blocks)


# -- linear systems over unknown block families -----------------------------

class MorphismSystem:
    """Affine linear system whose unknowns are block families of morphisms
    between representation views over a common quiver."""

    def __init__(self, fieldobj):
        self.field = fieldobj
        self.unknowns = []  # (src RepView, tgt RepView)
        self.layout = []    # per unknown: dict v -> (offset, rows, cols)
        self.nvars = 0
        self.rows = []
        self.rhs = []

    def unknown(self, src: RepView, tgt: RepView) -> int:
        lay = {}
        for v in src.vertices:
            r, c = tgt.dim(v), src.dim(v)
            if r and c:
                lay[v] = (self.nvars, r, c)
                self.nvars += r * c
        self.unknowns.append((src, tgt))
        self.layout.append(lay)
        return len(self.unknowns) - 1

    def _var(self, idx, v, i, j):
        off, r, c = self.layout[idx][v]
        return off + i * c + j

    def require_commutes(self, idx: int):
        src, tgt = self.unknowns[idx]
        z = self.field.zero()
        for name, u, w in src.arrows:
            a_src = src.act(name, u, w, self.field)
            a_tgt = tgt.act(name, u, w, self.field)
            rows_out = tgt.dim(w)
            cols_out = src.dim(u)
            for i in range(rows_out):
                for j in range(cols_out):
                    row = [z] * self.nvars
                    any_coeff = False
                    # (f_w A)_ij: coeff of f_w[i][k] is A[k][j]
                    if w in self.layout[idx]:
                        for k in range(src.dim(w)):
                            cval = a_src[k][j]
                            if cval:
                                row[self._var(idx, w, i, k)] = cval
                                any_coeff = True
                    # -(B f_u)_ij: coeff of f_u[k][j] is -B[i][k]
                    if u in self.layout[idx]:
                        for k in range(tgt.dim(u)):
                            cval = a_tgt[i][k]
                            if cval:
                                var = self._var(idx, u, k, j)
                                row[var] = row[var] - cval
                                any_coeff = True
                    if any_coeff:
                        self.rows.append(row)
                        self.rhs.append(z)

    def require_affine(self, terms, rhs_blocks, z_dims, w_dims, vertices):
        """Add rows for  sum of terms == rhs, where each term is
        ("L", L_blocks, idx) contributing L∘f or ("R", idx, R_blocks)
        contributing f∘R; shapes per vertex are z_dims[v] x w_dims[v]."""
        zero = self.field.zero()
        for v in vertices:
            zr = z_dims.get(v, 0)
            wc = w_dims.get(v, 0)
            if not zr or not wc:
                continue
            rhs_m = rhs_blocks.get(v)
            for i in range(zr):
                for j in range(wc):
                    row = [zero] * self.nvars
                    for term in terms:
                        if term[0] == "L":
                            _, lblocks, idx = term
                            lay = self.layout[idx].get(v)
                            if lay is None:
                                continue
                            lm = lblocks.get(v)
                            if lm is None:
                                continue
                            _, fr, fc = lay
                            for k in range(fr):
                                cval = lm[i][k]
                                if cval:
                                    var = self._var(idx, v, k, j)
                                    row[var] = row[var] + cval
                        else:
                            _, idx, rblocks = term
                            lay = self.layout[idx].get(v)
                            if lay is None:
                                continue
                            rm = rblocks.get(v)
                            if rm is None:
                                continue
                            _, fr, fc = lay
                            for k in range(fc):
                                cval = rm[k][j]
                                if cval:
                                    var = self._var(idx, v, i, k)
                                    row[var] = row[var] + cval
                    self.rows.append(row)
                    self.rhs.append(rhs_m[i][j] if rhs_m is not None else zero)

    def solve(self):
        """One solution as a list of block dicts, or None."""
        a = self.rows if self.rows else []
        b = [[x] for x in self.rhs]
        if not a:
            sol = [self.field.zero()] * self.nvars
        else:
            x = linalg.solve(self.field, a, b)
            if x is None:
                return None
            sol = [row[0] for row in x]
        return self._unpack(sol)

    def solution_space(self):
        """All solutions of the homogeneous system, as block dicts."""
        if any(self.rhs[i] for i in range(len(self.rhs))):
            raise ModuleError("solution_space requires a homogeneous system")
        if self.nvars == 0:
            return []
        if not self.rows:
            vecs = [[self.field.one() if i == j else self.field.zero()
                     for i in range(self.nvars)] for j in range(self.nvars)]
        else:
            vecs = linalg.nullspace(self.field, self.rows)
        return [self._unpack(v) for v in vecs]

    def _unpack(self, sol):
        out = []
        for idx, (src, tgt) in enumerate(self.unknowns):
            blocks = {}
            for v, (off, r, c) in self.layout[idx].items():
                blocks[v] = [[sol[off + i * c + j] for j in range(c)]
                             for i in range(r)]
            out.append(blocks)
        return out


def hom_basis(m: GradedModule, n: GradedModule) -> list:
    """Basis of the space of module morphisms, from the exact solution of
    the commutation constraints."""
    if m.win is not n.win:
        raise ModuleError("hom_basis: modules live on different windows")
    sys = MorphismSystem(m.field)
    idx = sys.unknown(m.repview(), n.repview())
    sys.require_commutes(idx)
    return [ModuleMorphism(m, n, sol[idx]) for sol in sys.solution_space()]


@dataclass
class SplitReport:
    is_split_mono: bool
    is_split_epi: bool
    per_degree: dict  # z -> (component split mono, component split epi)


def _slice_split(h: ModuleMorphism, z: int):
    """Splitness of the degree-z component as a map of base-algebra
    representations."""
    sv = h.source.slice_view(z)
    tv = h.target.slice_view(z)
    blocks = h.slice_blocks(z)
    fld = h.source.field

    sys = MorphismSystem(fld)
    g = sys.unknown(tv, sv)
    sys.require_commutes(g)
    ident = {v: linalg.identity(fld, sv.dim(v)) for v in sv.dims}
    sys.require_affine([("R", g, blocks)], ident, sv.dims, sv.dims,
                       sv.vertices)
    mono = sys.solve() is not None

    sys = MorphismSystem(fld)
    g = sys.unknown(tv, sv)
    sys.require_commutes(g)
    ident = {v: linalg.identity(fld, tv.dim(v)) for v in tv.dims}
    sys.require_affine([("L", blocks, g)], ident, tv.dims, tv.dims,
                       tv.vertices)
    epi = sys.solve() is not None
    return mono, epi


def is_split_mono(h: ModuleMorphism) -> bool:
    fld = h.source.field
    sv, tv = h.source.repview(), h.target.repview()
    sys = MorphismSystem(fld)
    g = sys.unknown(tv, sv)
    sys.require_commutes(g)
    ident = {v: linalg.identity(fld, sv.dim(v)) for v in sv.dims}
    sys.require_affine([("R", g, h.blocks)], ident, sv.dims, sv.dims,
                       sv.vertices)
    return sys.solve() is not None


def is_split_epi(h: ModuleMorphism) -> bool:
    fld = h.source.field
    sv, tv = h.source.repview(), h.target.repview()
    sys = MorphismSystem(fld)
    g = sys.unknown(tv, sv)
    sys.require_commutes(g)
    ident = {v: linalg.identity(fld, tv.dim(v)) for v in tv.dims}
    sys.require_affine([("L", h.blocks, g)], ident, tv.dims, tv.dims,
                       tv.vertices)
    return sys.solve() is not None


def splitness(h: ModuleMorphism) -> SplitReport:
    """Global and degreewise split mono / split epi decisions, each a
    single exact solvability question."""
    mono = is_split_mono(h)
    epi = is_split_epi(h)
    degrees = sorted(set(h.source.support_degrees())
                     | set(h.target.support_degrees()))
    per_degree = {z: _slice_split(h, z) for z in degrees}
    return SplitReport(mono, epi, per_degree)


@dataclass
class KerCoker:
    ker: GradedModule
    ker_incl: ModuleMorphism
    coker: GradedModule
    coker_proj: ModuleMorphism


def kernel_cokernel(h: ModuleMorphism) -> KerCoker:
    fld = h.source.field
    win = h.source.win
    q = win.presentation.quiver

    kbasis = {}
    for v in h.source.dims:
        d = h.source.dim(v)
        if h.target.dim(v) == 0:
            vecs = [[fld.one() if i == j else fld.zero() for i in range(d)]
                    for j in range(d)]
        else:
            vecs = linalg.nullspace(fld, h.block(v))
        if vecs:
            kbasis[v] = [[vec[i] for vec in vecs] for i in range(d)]
    kdims = {v: len(b[0]) for v, b in kbasis.items()}
    kacts = {}
    for a in q.sorted_arrows():
        sd, td = kdims.get(a.source, 0), kdims.get(a.target, 0)
        if not sd or not td:
            continue
        rhs = linalg.mat_mul(fld, h.source.act(a.name), kbasis[a.source])
        x = linalg.solve(fld, kbasis[a.target], rhs)
        if x is None:
            raise ModuleError("kernel is not closed under %s" % a.name)
        kacts[a.name] = x
    ker = GradedModule(win, fld, kdims, kacts)
    ker_incl = ModuleMorphism(ker, h.source,
                              {v: b for v, b in kbasis.items()})

    pbasis = {}
    for v in h.target.dims:
        d = h.target.dim(v)
        if h.source.dim(v) == 0:
            vecs = [[fld.one() if i == j else fld.zero() for i in range(d)]
                    for j in range(d)]
        else:
            vecs = linalg.nullspace(fld, linalg.transpose(fld, h.block(v)))
        if vecs:
            pbasis[v] = [list(vec) for vec in vecs]
    cdims = {v: len(rows) for v, rows in pbasis.items()}
    cacts = {}
    for a in q.sorted_arrows():
        sd, td = cdims.get(a.source, 0), cdims.get(a.target, 0)
        if not sd or not td:
            continue
        rhs = linalg.mat_mul(fld, pbasis[a.target], h.target.act(a.name))
        pu_t = linalg.transpose(fld, pbasis[a.source])
        x = linalg.solve(fld, pu_t, linalg.transpose(fld, rhs))
        if x is None:
            raise ModuleError("cokernel action does not descend along %s" % a.name)
        cacts[a.name] = linalg.transpose(fld, x)
    coker = GradedModule(win, fld, cdims, cacts)
    coker_proj = ModuleMorphism(h.target, coker,
                                {v: rows for v, rows in pbasis.items()})
    ker.validate()
    coker.validate()
    ker_incl.validate()
    coker_proj.validate()
    return KerCoker(ker, ker_incl, coker, coker_proj)


@dataclass
class SocRad:
    soc: GradedModule
    soc_incl: ModuleMorphism
    rad: GradedModule
    rad_incl: ModuleMorphism
    top: GradedModule
    top_proj: ModuleMorphism


def socle_radical(m: GradedModule) -> SocRad:
    """Socle (joint kernel of all arrow actions), radical (sum of all arrow
    images, loops included) and top (quotient by the radical)."""
    fld = m.field
    win = m.win
    q = win.presentation.quiver

    soc_basis = {}
    for v in m.dims:
        outs = [m.act(a.name) for a in q.arrows_out(v)
                if m.dim(a.target)]
        outs = [a for a in outs if a]
        if outs:
            stacked = linalg.vstack(outs)
            vecs = linalg.nullspace(fld, stacked)
        else:
            vecs = [[fld.one() if i == j else fld.zero()
                     for i in range(m.dim(v))] for j in range(m.dim(v))]
        if vecs:
            soc_basis[v] = [[vec[i] for vec in vecs]
                            for i in range(m.dim(v))]
    soc_dims = {v: len(b[0]) for v, b in soc_basis.items()}
    soc = GradedModule(win, fld, soc_dims, {})
    soc_incl = ModuleMorphism(soc, m, soc_basis)

    rad_basis = {}
    for v in m.dims:
        ins = [m.act(a.name) for a in q.arrows_in(v) if m.dim(a.source)]
        ins = [a for a in ins if a and a[0]]
        if ins:
            col = linalg.column_space_basis(fld, linalg.hstack(ins))
            if col and col[0]:
                rad_basis[v] = col
    rad_dims = {v: len(b[0]) for v, b in rad_basis.items()}
    rad_acts = {}
    for a in q.sorted_arrows():
        sd, td = rad_dims.get(a.source, 0), rad_dims.get(a.target, 0)
        if not sd or not td:
            continue
        rhs = linalg.mat_mul(fld, m.act(a.name), rad_basis[a.source])
        x = linalg.solve(fld, rad_basis[a.target], rhs)
        if x is None:
            raise ModuleError("radical is not closed under %s" % a.name)
        rad_acts[a.name] = x
    rad = GradedModule(win, fld, rad_dims, rad_acts)
    rad_incl = ModuleMorphism(rad, m, rad_basis)

    kc = kernel_cokernel(rad_incl)
    soc.validate()
    soc_incl.validate()
    rad.validate()
    rad_incl.validate()
    return SocRad(soc, soc_incl, rad, rad_incl, kc.coker, kc.coker_proj)


def direct_sum(mods: list):
    """(sum, inclusions, projections) with block-diagonal actions."""
    if not mods:
        raise ModuleError("direct_sum of nothing")
    win, fld = mods[0].win, mods[0].field
    q = win.presentation.quiver
    dims = {}
    offsets = []
    for m in mods:
        off = {}
        for v in set(dims) | set(m.dims):
            off[v] = dims.get(v, 0)
        offsets.append(off)
        for v, d in m.dims.items():
            dims[v] = dims.get(v, 0) + d
    acts = {}
    for a in q.sorted_arrows():
        sd, td = dims.get(a.source, 0), dims.get(a.target, 0)
        if not sd or not td:
            continue
        mat = linalg.zeros(fld, td, sd)
        for m, off in zip(mods, offsets):
            blk = m.act(a.name)
            ro = off.get(a.target, 0)
            co = off.get(a.source, 0)
            for i in range(m.dim(a.target)):
                for j in range(m.dim(a.source)):
                    mat[ro + i][co + j] = blk[i][j]
        acts[a.name] = mat
    total = GradedModule(win, fld, dims, acts)
    incls, projs = [], []
    for m, off in zip(mods, offsets):
        iblocks, pblocks = {}, {}
        for v, d in m.dims.items():
            tdim = dims[v]
            imat = linalg.zeros(fld, tdim, d)
            pmat = linalg.zeros(fld, d, tdim)
            for i in range(d):
                imat[off.get(v, 0) + i][i] = fld.one()
                pmat[i][off.get(v, 0) + i] = fld.one()
            iblocks[v] = imat
            pblocks[v] = pmat
        incls.append(ModuleMorphism(m, total, iblocks))
        projs.append(ModuleMorphism(total, m, pblocks))
    return total, incls, projs


def injective_hull(m: GradedModule):
    """Injective hull assembled from the projective-injective covers of
    the socle constituents one degree down; the embedding extends the
    socle inclusion and is certified essential via the socle criterion."""
    if m.is_zero():
        raise ModuleError("injective hull of the zero module")
    win, fld = m.win, m.field
    sr = socle_radical(m)
    if min(win.degree(v) for v in sr.soc.dims) - 1 < win.lo:
        raise ModuleError("socle support touches the window floor; "
                          "enlarge the window before taking hulls")
    summands = []
    soc_targets = []  # per socle basis column: (vertex, summand index)
    for v in sr.soc.sorted_support():
        base_v, z = win.vertex_info(v)
        for k in range(sr.soc.dim(v)):
            summands.append(win.projective(base_v, z - 1, fld))
            soc_targets.append((v, len(summands) - 1))
    hull, incls, _projs = direct_sum(summands)

    # Prescribe where each socle column lands: on the socle basis path of
    # the matching summand.
    prescribed = {}
    for col, (v, si) in enumerate(soc_targets):
        summand = summands[si]
        ssr = socle_radical(summand)
        sv = ssr.soc.sorted_support()[0]
        if sv != v or ssr.soc.total_dim() != 1:
            raise ModuleError("projective-injective summand has unexpected "
                              "socle at %s" % sv)
        scol = [row[0] for row in ssr.soc_incl.blocks[sv]]
        tvec = [row for row in incls[si].block(sv)]
        tdim = hull.dim(sv)
        if sv not in prescribed:
            prescribed[sv] = linalg.zeros(fld, tdim, 0)
        target_col = [sum((tvec[i][k] * scol[k] for k in range(len(scol))),
                          start=fld.zero()) for i in range(tdim)]
        for i in range(tdim):
            prescribed[sv][i].append(target_col[i])

    soc_cols = {v: sr.soc.dim(v) for v in sr.soc.dims}
    sys = MorphismSystem(fld)
    iota = sys.unknown(m.repview(), hull.repview())
    sys.require_commutes(iota)
    # iota ∘ socle inclusion  =  prescribed embedding of the socle.
    sys.require_affine([("R", iota, sr.soc_incl.blocks)], prescribed,
                       hull.dims, soc_cols, hull.repview().vertices)
    sol = sys.solve()
    if sol is None:
        raise ModuleError("no extension of the socle embedding; "
                          "hull construction failed")
    emb = ModuleMorphism(m, hull, sol[iota])
    emb.validate()
    if emb.rank() != m.total_dim():
        raise ModuleError("hull embedding is not injective")
    # Essentiality: the hull's socle must lie inside the image.
    hsr = socle_radical(hull)
    for v in hsr.soc.dims:
        image = emb.block(v)
        aug = linalg.hstack([image, hsr.soc_incl.block(v)])
        if linalg.rank(fld, aug) != linalg.rank(fld, image):
            raise ModuleError("hull embedding is not essential at %s" % v)
    return hull, emb


@dataclass
class ComponentwiseView:
    degrees: list
    slices: dict       # z -> RepView of the base quiver
    connectors: dict   # z -> {connector arrow name: matrix}


def componentwise_view(m: GradedModule) -> ComponentwiseView:
    degrees = m.support_degrees()
    slices = {z: m.slice_view(z) for z in degrees}
    connectors = {}
    for z in degrees:
        conns = {}
        for an, arr in m.win.presentation.quiver.arrows.items():
            kind = m.win.arrow_info(an)
            if kind[0] != "conn" or kind[2] != z:
                continue
            if m.dim(arr.source) and m.dim(arr.target):
                conns[an] = m.act(an)
        connectors[z] = conns
    return ComponentwiseView(degrees, slices, connectors)


@dataclass
class ShortExactSeq:
    f: ModuleMorphism
    g: ModuleMorphism
    meta: Optional[dict] = None


@dataclass
class SesReport:
    global_exact: bool
    degreewise: dict          # z -> exact?
    degree_splits: dict       # z -> slice sequence splits?
    agree: bool
    details: list = field(default_factory=list)


def check_ses(seq: ShortExactSeq) -> SesReport:
    """Global exactness and the equivalent degreewise exactness, plus
    whether each degree slice splits."""
    f, g = seq.f, seq.g
    fld = f.source.field
    details = []
    comp = compose(g, f)
    comp_zero = comp.is_zero()
    if not comp_zero:
        details.append("g∘f is nonzero")
    mono = f.rank() == f.source.total_dim()
    if not mono:
        details.append("f is not injective")
    epi = g.rank() == g.target.total_dim()
    if not epi:
        details.append("g is not surjective")
    dims_ok = (f.source.total_dim() + g.target.total_dim()
               == f.target.total_dim())
    if not dims_ok:
        details.append("dimension count fails")
    global_exact = comp_zero and mono and epi and dims_ok

    degrees = sorted(set(f.source.support_degrees())
                     | set(f.target.support_degrees())
                     | set(g.target.support_degrees()))
    degreewise = {}
    degree_splits = {}
    win = f.source.win
    for z in degrees:
        bq = win.base.quiver
        exact_z = True
        for v in sorted(bq.vertices):
            vn = win.vname(v, z)
            fb = f.block(vn)
            gb = g.block(vn)
            rk_f = linalg.rank(fld, fb)
            rk_g = linalg.rank(fld, gb)
            ok = (rk_f == f.source.dim(vn)
                  and rk_g == g.target.dim(vn)
                  and rk_f + rk_g == f.target.dim(vn)
                  and linalg.is_zero(linalg.mat_mul(fld, gb, fb)))
            if not ok:
                exact_z = False
        degreewise[z] = exact_z
        degree_splits[z] = _slice_split(f, z)[0]
    agree = global_exact == all(degreewise.values())
    return SesReport(global_exact, degreewise, degree_splits, agree, details)


# -- isomorphism certificates and decomposition -----------------------------

def find_isomorphism(a: GradedModule, b: GradedModule, tries: int = 30,
                     seed: int = 11):
    """An explicit isomorphism, or None.  Existence is decided on a basis
    of the Hom space: single basis elements first, then seeded random
    combinations (dense in the invertible locus when one exists)."""
    if a.total_dim() != b.total_dim():
        return None
    if sorted(a.dims.items()) != sorted(b.dims.items()):
        return None
    basis = hom_basis(a, b)
    if not basis:
        return None if a.total_dim() else identity_morphism(a)
    fld = a.field

    def invertible(h):
        return all(linalg.is_invertible(fld, h.block(v)) for v in a.dims)

    for h in basis:
        if invertible(h):
            return h
    rng = random.Random(seed)
    for _ in range(tries):
        h = basis[0].scaled(fld.of_int(rng.randrange(1, 7)))
        for extra in basis[1:]:
            h = h + extra.scaled(fld.of_int(rng.randrange(0, 7)))
        if invertible(h):
            return h
    return None


def _radical_endo_subspace(m: GradedModule, endos: list):
    """For an indecomposable module with local endomorphism algebra and
    scalar residue field, the radical is the trace-zero part."""
    fld = m.field
    d = m.total_dim()
    if fld.characteristic and d % fld.characteristic == 0:
        raise ModuleError("total dimension divisible by the characteristic; "
                          "trace criterion unavailable")
    out = []
    for h in endos:
        t = fld.zero()
        for v in m.dims:
            t = t + linalg.trace(fld, h.block(v))
        if t:
            correction = identity_morphism(m).scaled(
                t / fld.of_int(d))
            out.append(h - correction)
        else:
            out.append(h)
    # Deduplicate linearly: return a spanning set; rank handled downstream.
    return out


def radical_hom(a: GradedModule, b: GradedModule):
    """Spanning set of the radical of Hom(a, b) for indecomposable
    endpoints: everything if a and b are non-isomorphic, the trace-zero
    endomorphisms otherwise."""
    basis = hom_basis(a, b)
    if not basis:
        return []
    if sorted(a.dims.items()) != sorted(b.dims.items()):
        return basis
    iso = find_isomorphism(a, b)
    if iso is None:
        return basis
    inv_blocks = {v: linalg.inverse(a.field, iso.block(v)) for v in a.dims}
    inv = ModuleMorphism(b, a, inv_blocks)
    endos = [compose(inv, h) for h in basis]
    rad_endos = _radical_endo_subspace(a, endos)
    return [compose(iso, e) for e in rad_endos]


def summand_witness(s: GradedModule, m: GradedModule):
    """(incl, proj) with proj∘incl = id_s when the indecomposable ``s`` is
    a direct summand of ``m``; otherwise None.  Checks the pairwise
    composites of the two Hom bases for an invertible one, which suffices
    when End(s) is local."""
    if s.total_dim() > m.total_dim():
        return None
    for v, d in s.dims.items():
        if m.dim(v) < d:
            return None
    into = hom_basis(s, m)
    outof = hom_basis(m, s)
    fld = s.field
    for u in into:
        for w in outof:
            c = compose(w, u)
            if all(linalg.is_invertible(fld, c.block(v)) for v in s.dims):
                inv = ModuleMorphism(
                    s, s, {v: linalg.inverse(fld, c.block(v)) for v in s.dims})
                proj = compose(inv, w)
                return u, proj
    return None


def _split_by_idempotent(m: GradedModule, incl, proj):
    """Complement of the summand im(incl∘proj) inside m."""
    fld = m.field
    eps = compose(incl, proj)
    ident = identity_morphism(m)
    rest = ident - eps
    kbasis = {}
    for v in m.dims:
        col = linalg.column_space_basis(fld, rest.block(v))
        if col and col[0]:
            kbasis[v] = col
    kdims = {v: len(b[0]) for v, b in kbasis.items()}
    kacts = {}
    q = m.win.presentation.quiver
    for a in q.sorted_arrows():
        sd, td = kdims.get(a.source, 0), kdims.get(a.target, 0)
        if not sd or not td:
            continue
        rhs = linalg.mat_mul(fld, m.act(a.name), kbasis[a.source])
        x = linalg.solve(fld, kbasis[a.target], rhs)
        if x is None:
            raise ModuleError("complement not closed under %s" % a.name)
        kacts[a.name] = x
    comp = GradedModule(m.win, fld, kdims, kacts)
    comp_incl = ModuleMorphism(comp, m, kbasis)
    proj_blocks = {}
    for v in kbasis:
        x = linalg.solve(fld, kbasis[v], rest.block(v))
        if x is None:
            raise ModuleError("complement projection failed at %s" % v)
        proj_blocks[v] = x
    comp_proj = ModuleMorphism(m, comp, proj_blocks)
    return comp, comp_incl, comp_proj


def decompose(m: GradedModule, candidates=None, budget: int = 1000):
    """Indecomposable direct summands with inclusion/projection pairs.

    Summands are matched against ``candidates`` (by default all string
    modules of the window up to the ambient dimension plus the
    projective-injectives), peeling one certified summand at a time; a
    seeded sampling fallback splits anything the candidate list misses and
    fails loudly when its budget runs out.
    """
    if m.total_dim() == 0:
        return []
    if candidates is None:
        from . import strings as _strings
        candidates = _strings.decomposition_candidates(m.win, m.field,
                                                       m.total_dim())
    cands = sorted(candidates, key=lambda c: (-c.total_dim(), c.key()))

    result = []

    def peel(current, incl_to_m, proj_from_m, depth=0):
        if current.total_dim() == 0:
            return
        for s in cands:
            if s.total_dim() > current.total_dim():
                continue
            w = summand_witness(s, current)
            if w is None:
                continue
            u, p = w
            result.append((s, compose(incl_to_m, u), compose(p, proj_from_m)))
            if s.total_dim() == current.total_dim():
                return
            comp, ci, cp = _split_by_idempotent(current, u, p)
            peel(comp, compose(incl_to_m, ci), compose(cp, proj_from_m),
                 depth + 1)
            return
        # Sampling fallback: look for a non-invertible, non-nilpotent
        # endomorphism and take its Fitting decomposition.
        fld = current.field
        endos = hom_basis(current, current)
        rng = random.Random(97 + depth)
        n = current.total_dim()
        for _ in range(budget):
            h = endos[0].scaled(fld.of_int(rng.randrange(0, 5)))
            for extra in endos[1:]:
                h = h + extra.scaled(fld.of_int(rng.randrange(0, 5)))
            power = h
            for _ in range(n):
                power = compose(power, h)
            rk = power.rank()
            if rk == 0 or rk == n:
                continue
            imb = {}
            for v in current.dims:
                col = linalg.column_space_basis(fld, power.block(v))
                if col and col[0]:
                    imb[v] = col
            # Treat the image of the stabilized power as a summand.
            idims = {v: len(b[0]) for v, b in imb.items()}
            iacts = {}
            q = current.win.presentation.quiver
            for a in q.sorted_arrows():
                sd, td = idims.get(a.source, 0), idims.get(a.target, 0)
                if not sd or not td:
                    continue
                rhs = linalg.mat_mul(fld, current.act(a.name), imb[a.source])
                x = linalg.solve(fld, imb[a.target], rhs)
                if x is None:
                    raise ModuleError("image of an endomorphism power is "
                                      "not a submodule")
                iacts[a.name] = x
            part = GradedModule(current.win, fld, idims, iacts)
            u = ModuleMorphism(part, current, imb)
            pr = summand_witness(part, current)
            if pr is None:
                continue
            u, p = pr
            result.append((part, compose(incl_to_m, u),
                           compose(p, proj_from_m)))
            comp, ci, cp = _split_by_idempotent(current, u, p)
            peel(comp, compose(incl_to_m, ci), compose(cp, proj_from_m),
                 depth + 1)
            return
        raise DecomposeError(
            "not decomposed: sampling budget %d exhausted on a piece of "
            "dimension %d" % (budget, current.total_dim()),
            partial=result, budget=budget)

    peel(m, identity_morphism(m), identity_morphism(m))
    total = sum(s.total_dim() for s, _, _ in result)
    if total != m.total_dim():
        raise ModuleError("decomposition lost dimensions")
    return result


def is_indecomposable(m: GradedModule) -> bool:
    return len(decompose(m)) == 1


# -- serialization -----------------------------------------------------------

def module_to_text(m: GradedModule) -> str:
    fld = m.field
    lines = ["module"]
    for v in m.sorted_support():
        lines.append("dim %s %d" % (v, m.dim(v)))
    q = m.win.presentation.quiver
    for a in q.sorted_arrows():
        if m.dim(a.source) and m.dim(a.target):
            mat = m.act(a.name)
            rows = [" ".join(fld.fmt(x) for x in row) for row in mat]
            lines.append("act %s %d %d %s"
                         % (a.name, len(mat), len(mat[0]), " ; ".join(rows)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def module_from_text(win, fld, text: str) -> GradedModule:
    dims = {}
    acts = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line in ("module", "end"):
            continue
        parts = line.split()
        if parts[0] == "dim":
            dims[parts[1]] = int(parts[2])
        elif parts[0] == "act":
            name, r, c = parts[1], int(parts[2]), int(parts[3])
            rest = " ".join(parts[4:])
            rows = [s.split() for s in rest.split(" ; ")] if r else []
            acts[name] = [[fld.parse(x) for x in row] for row in rows]
        else:
            raise ModuleError("bad module line %r" % line)
    mod = GradedModule(win, fld, dims, acts)
    mod.validate()
    return mod


def morphism_to_text(h: ModuleMorphism) -> str:
    fld = h.source.field
    lines = ["morphism"]
    for v in sorted(h.blocks, key=h.source.win.vertex_sort_key):
        mat = h.blocks[v]
        rows = [" ".join(fld.fmt(x) for x in row) for row in mat]
        lines.append("block %s %d %d %s"
                     % (v, len(mat), len(mat[0]) if mat else 0,
                        " ; ".join(rows)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def morphism_from_text(source, target, text: str) -> ModuleMorphism:
    fld = source.field
    blocks = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line in ("morphism", "end"):
            continue
        parts = line.split()
        if parts[0] != "block":
            raise ModuleError("bad morphism line %r" % line)
        v, r, c = parts[1], int(parts[2]), int(parts[3])
        rest = " ".join(parts[4:])
        rows = [s.split() for s in rest.split(" ; ")] if r else []
        blocks[v] = [[fld.parse(x) for x in row] for row in rows]
    h = ModuleMorphism(source, target, blocks)
    h.validate()
    return h
