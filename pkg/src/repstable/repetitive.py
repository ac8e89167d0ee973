"""Finite-degree windows of the repetitive quiver of a gentle algebra.

The repetitive quiver has one copy of the base quiver in every degree,
plus one connector arrow per maximal path ``p`` (a basis element of the
two-sided socle), running from the target of ``p`` in degree ``z`` to the
source of ``p`` in degree ``z + 1``.  The relation families are generated
so that paths through a connector realize dual-basis functionals: a path
``x, conn_p, y`` is nonzero exactly when ``x`` is a suffix and ``y`` a
prefix of ``p`` with combined length at most ``len(p)``, and equal such
values are identified by binomial relations.  Windows of different sizes
agree on their overlap by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import (
    AlgebraPresentation,
    Arrow,
    PathWord,
    PresentationError,
    Quiver,
    RelationGen,
    validate_gentle,
)
from . import modules


class WindowError(Exception):
    pass


def maximal_paths(pres: AlgebraPresentation) -> list:
    """Basis of the two-sided socle of a gentle presentation: the nonzero
    paths admitting no nonzero extension on either side, including the
    trivial path at any isolated vertex."""
    q = pres.quiver
    result = []
    for v in sorted(q.vertices):
        if not q.arrows_out(v) and not q.arrows_in(v):
            result.append(PathWord(v, ()))

    def extend(path: PathWord) -> PathWord:
        changed = True
        while changed:
            changed = False
            for c in sorted(q.arrows_out(path.target(q)), key=lambda a: a.name):
                ext = PathWord(path.source, path.arrows + (c.name,))
                if pres.is_nonzero(ext):
                    path = ext
                    changed = True
                    break
            if len(path) >= pres.nilpotency:
                raise PresentationError(
                    "maximal path search exceeded the nilpotency bound")
        changed = True
        while changed:
            changed = False
            for c in sorted(q.arrows_in(path.source), key=lambda a: a.name):
                ext = PathWord(c.source, (c.name,) + path.arrows)
                if pres.is_nonzero(ext):
                    path = ext
                    changed = True
                    break
            if len(path) >= pres.nilpotency:
                raise PresentationError(
                    "maximal path search exceeded the nilpotency bound")
        return path

    covered = set()
    for a in sorted(q.arrows.values(), key=lambda a: a.name):
        if a.name in covered:
            continue
        p = extend(PathWord(a.source, (a.name,)))
        covered.update(p.arrows)
        result.append(p)
    result.sort(key=lambda p: (p.source, p.arrows))
    return result


class RepetitiveWindow:
    """Degrees ``lo..hi`` of the repetitive quiver with relations, plus the
    vertex-degree map.  Built by :func:`build_repetitive_window`."""

    def __init__(self, base: AlgebraPresentation, lo: int, hi: int):
        report = validate_gentle(base)
        if not report.is_gentle:
            raise WindowError("base presentation is not gentle:\n%s" % report)
        if hi - lo + 1 < 3:
            raise WindowError("window must span at least 3 degrees")
        self.base = base
        self.lo = lo
        self.hi = hi
        self.maximal = tuple(maximal_paths(base))
        self._conn_base = {}
        for p in self.maximal:
            tag = p.arrows[0] if p.arrows else p.source
            self._conn_base[(p.source, p.arrows)] = "hat_%s" % tag
        self._build()
        self._proj_cache = {}

    # -- naming ----------------------------------------------------------

    def vname(self, v: str, z: int) -> str:
        return "%s@%d" % (v, z)

    def aname(self, a: str, z: int) -> str:
        return "%s@%d" % (a, z)

    def conn_name(self, p: PathWord, z: int) -> str:
        return "%s@%d" % (self._conn_base[(p.source, p.arrows)], z)

    def vertex_info(self, vn: str):
        """(base vertex, degree) of a window vertex name."""
        v, z = vn.rsplit("@", 1)
        return v, int(z)

    def degree(self, vn: str) -> int:
        return self.vertex_info(vn)[1]

    def vertex_sort_key(self, vn: str):
        v, z = self.vertex_info(vn)
        return (z, v)

    def sorted_vertices(self) -> list:
        return sorted(self.presentation.quiver.vertices, key=self.vertex_sort_key)

    def interior_degrees(self) -> range:
        return range(self.lo + 1, self.hi)

    def is_interior(self, vn: str) -> bool:
        return self.lo < self.degree(vn) < self.hi

    def arrow_info(self, an: str):
        """("copy", base arrow, z) or ("conn", maximal path, z)."""
        return self._ainfo[an]

    # -- construction ----------------------------------------------------

    def _lift(self, p: PathWord, z: int) -> PathWord:
        return PathWord(self.vname(p.source, z),
                        tuple(self.aname(a, z) for a in p.arrows))

    def _build(self):
        base_q = self.base.quiver
        vertices = [self.vname(v, z) for z in range(self.lo, self.hi + 1)
                    for v in sorted(base_q.vertices)]
        arrows = {}
        self._ainfo = {}
        for z in range(self.lo, self.hi + 1):
            for a in base_q.sorted_arrows():
                an = self.aname(a.name, z)
                arrows[an] = Arrow(an, self.vname(a.source, z),
                                   self.vname(a.target, z))
                self._ainfo[an] = ("copy", a.name, z)
        for z in range(self.lo, self.hi):
            for p in self.maximal:
                cn = self.conn_name(p, z)
                if cn in arrows:
                    raise WindowError(
                        "connector name %s collides with an arrow copy; "
                        "rename the base arrows" % cn)
                arrows[cn] = Arrow(cn, self.vname(p.target(base_q), z),
                                   self.vname(p.source, z + 1))
                self._ainfo[cn] = ("conn", p, z)

        quiver = Quiver(tuple(vertices), arrows)
        relations = []

        def conn_word(p, z):
            return (self.conn_name(p, z),)

        def monomial(src_vertex, arrow_names):
            relations.append(RelationGen(
                "monomial", PathWord(src_vertex, tuple(arrow_names))))

        for z in range(self.lo, self.hi + 1):
            for r in self.base.relations:
                lifted = self._lift(r.path, z)
                if r.kind == "monomial":
                    relations.append(RelationGen("monomial", lifted))
                else:
                    relations.append(RelationGen(
                        "binomial", lifted, self._lift(r.other, z)))

        for z in range(self.lo, self.hi):
            for p in self.maximal:
                t = p.target(base_q)
                s = p.source
                last = p.arrows[-1] if p.arrows else None
                first = p.arrows[0] if p.arrows else None
                # Wrong entry into the connector.
                for b in sorted(base_q.arrows_in(t), key=lambda a: a.name):
                    if b.name != last:
                        monomial(self.vname(b.source, z),
                                 (self.aname(b.name, z),) + conn_word(p, z))
                # Wrong exit from the connector.
                if z + 1 <= self.hi:
                    for c in sorted(base_q.arrows_out(s), key=lambda a: a.name):
                        if c.name != first:
                            monomial(self.vname(t, z),
                                     conn_word(p, z) + (self.aname(c.name, z + 1),))
                # Overlapping suffix/prefix windows of the spiral of p.
                for a_len in range(1, len(p) + 1):
                    b_len = len(p) + 1 - a_len
                    if b_len > len(p):
                        continue
                    x = p.suffix(a_len, base_q)
                    y = p.prefix(b_len)
                    word = (self._lift(x, z).arrows + conn_word(p, z)
                            + self._lift(y, z + 1).arrows)
                    monomial(self.vname(x.source, z), word)

        # Paths crossing two connectors vanish identically.
        for z in range(self.lo, self.hi - 1):
            for p in self.maximal:
                for q in self.maximal:
                    for k in range(0, len(p) + 1):
                        y = p.prefix(k)
                        if len(y) > len(q):
                            continue
                        if k == 0:
                            if q.target(base_q) != p.source:
                                continue
                        elif q.arrows[len(q) - k:] != y.arrows:
                            continue
                        word = (conn_word(p, z) + self._lift(y, z + 1).arrows
                                + conn_word(q, z + 1))
                        monomial(self.vname(p.target(base_q), z), word)

        # Identifications between the at most two realizations of each
        # socle functional.
        self._realizations = {}
        for v in sorted(base_q.vertices):
            realizations = []
            for p in self.maximal:
                at = p.source
                for k in range(0, len(p) + 1):
                    if at == v:
                        realizations.append((p, k))
                    if k < len(p):
                        at = base_q.arrows[p.arrows[k]].target
            self._realizations[v] = realizations
            if len(realizations) > 2:
                raise WindowError(
                    "more than two socle positions at vertex %s; "
                    "not special biserial" % v)
        for z in range(self.lo, self.hi):
            for v in sorted(base_q.vertices):
                realizations = self._realizations[v]
                if len(realizations) == 2:
                    sides = []
                    for p, k in realizations:
                        x = p.suffix(len(p) - k, base_q)
                        y = p.prefix(k)
                        sides.append(PathWord(
                            self.vname(v, z),
                            self._lift(x, z).arrows + conn_word(p, z)
                            + self._lift(y, z + 1).arrows))
                    relations.append(RelationGen("binomial", sides[0], sides[1]))

        max_len = max((len(p) for p in self.base.path_basis()), default=0)
        self.presentation = AlgebraPresentation(
            quiver, relations, nilpotency=2 * max_len + 4)

    # -- derived data ----------------------------------------------------

    def biserial_base_vertices(self) -> list:
        return [v for v in sorted(self.base.quiver.vertices)
                if len(self._realizations[v]) == 2]

    def socle_realizations(self, v: str) -> list:
        return list(self._realizations[v])

    def enlarged(self, k: int = 2) -> "RepetitiveWindow":
        return RepetitiveWindow(self.base, self.lo - k, self.hi + k)

    def projective(self, v: str, z: int, field) -> "modules.GradedModule":
        """The indecomposable projective(-injective) at window vertex
        ``(v, z)``; its basis is the set of nonzero paths out of that
        vertex, so every window relation holds by construction."""
        key = (v, z, field)
        if key in self._proj_cache:
            return self._proj_cache[key]
        if not (self.lo <= z and z + 1 <= self.hi):
            raise WindowError("degree %d (and %d) must lie in the window"
                              % (z, z + 1))
        pres = self.presentation
        start = PathWord(self.vname(v, z), ())
        basis = []
        seen = set()
        frontier = [start]
        while frontier:
            nxt = []
            for p in frontier:
                if (p.source, p.arrows) in seen:
                    continue
                seen.add((p.source, p.arrows))
                basis.append(p)
                at = p.target(pres.quiver)
                for a in sorted(pres.quiver.arrows_out(at), key=lambda a: a.name):
                    nf = pres.path_normal_form(
                        PathWord(p.source, p.arrows + (a.name,)))
                    if not nf.is_zero:
                        nxt.append(nf.path)
            frontier = nxt
        basis.sort(key=lambda p: (len(p), p.arrows))
        index_at = {}
        dims = {}
        for p in basis:
            t = p.target(pres.quiver)
            index_at.setdefault(t, []).append(p)
        for t, plist in index_at.items():
            dims[t] = len(plist)
        pos = {(p.source, p.arrows): (p.target(pres.quiver),
                                      index_at[p.target(pres.quiver)].index(p))
               for p in basis}
        acts = {}
        for an, arr in pres.quiver.arrows.items():
            sd = dims.get(arr.source, 0)
            td = dims.get(arr.target, 0)
            if sd == 0 or td == 0:
                continue
            mat = [[field.zero() for _ in range(sd)] for _ in range(td)]
            for j, p in enumerate(index_at[arr.source]):
                nf = pres.path_normal_form(
                    PathWord(p.source, p.arrows + (an,)))
                if nf.is_zero:
                    continue
                tv, i = pos[(nf.path.source, nf.path.arrows)]
                mat[i][j] = field.of_int(nf.coeff)
            acts[an] = mat
        mod = modules.GradedModule(self, field, dims, acts,
                                   meta={"projective": (v, z),
                                         "basis": tuple(basis)})
        mod.validate()
        self._proj_cache[key] = mod
        return mod

    def all_projectives(self, field) -> list:
        return [self.projective(v, z, field)
                for z in range(self.lo, self.hi)
                for v in sorted(self.base.quiver.vertices)]

    # -- serialization ---------------------------------------------------

    def serialize(self):
        """(presentation DSL text, degree sidecar text)."""
        sidecar_lines = ["%s %d" % (vn, self.degree(vn))
                         for vn in self.sorted_vertices()]
        return self.presentation.pretty(), "\n".join(sidecar_lines) + "\n"


def build_repetitive_window(pres: AlgebraPresentation, lo: int,
                            hi: int) -> RepetitiveWindow:
    return RepetitiveWindow(pres, lo, hi)


def parse_window(base: AlgebraPresentation, sidecar_text: str) -> RepetitiveWindow:
    """Rebuild a window from its degree sidecar; the round-trip contract is
    checked by re-serializing."""
    degrees = []
    for line in sidecar_text.splitlines():
        line = line.strip()
        if not line:
            continue
        _, z = line.rsplit(" ", 1)
        degrees.append(int(z))
    if not degrees:
        raise WindowError("empty degree sidecar")
    return build_repetitive_window(base, min(degrees), max(degrees))


def proj_injective_module(win: RepetitiveWindow, v: str, z: int,
                          field) -> "modules.GradedModule":
    """Projective cover of the simple at window vertex ``(v, z)``; it is at
    the same time the injective hull of the simple at ``(v, z + 1)``, with
    lower part the projective over the injective indexed by ``v`` and upper
    part that injective itself."""
    return win.projective(v, z, field)


def radical_of_projective(phat: "modules.GradedModule"):
    """The radical of an indecomposable window projective together with its
    inclusion; the upper-degree blocks of the inclusion are identities."""
    if phat.meta is None or "projective" not in phat.meta:
        raise WindowError("input is not an indecomposable window projective")
    win, field = phat.win, phat.field
    basis = phat.meta["basis"]
    keep = [p for p in basis if len(p) >= 1]
    return _path_submodule(phat, keep, "radical")


def quotient_by_socle(phat: "modules.GradedModule"):
    """The quotient of a window projective by its simple socle, with the
    natural projection."""
    if phat.meta is None or "projective" not in phat.meta:
        raise WindowError("input is not an indecomposable window projective")
    sr = modules.socle_radical(phat)
    if sr.soc.total_dim() != 1:
        raise WindowError("projective socle is not simple")
    socle_vertex = [v for v in sr.soc.dims if sr.soc.dims[v]][0]
    column = [row[0] for row in sr.soc_incl.blocks[socle_vertex]]
    hot = [i for i, x in enumerate(column) if x]
    if len(hot) != 1:
        raise WindowError("socle is not spanned by a single basis path")
    full_at = _order_at(phat, phat.meta["basis"])
    dropped = full_at[socle_vertex][hot[0]]
    keep = [p for p in phat.meta["basis"] if p is not dropped]
    return _path_quotient(phat, keep, dropped)


def _order_at(phat, basis):
    pres = phat.win.presentation
    at = {}
    for p in basis:
        at.setdefault(p.target(pres.quiver), []).append(p)
    return at


def _path_submodule(phat, keep, tag):
    field = phat.field
    pres = phat.win.presentation
    full_at = _order_at(phat, phat.meta["basis"])
    keep_at = _order_at(phat, keep)
    dims = {v: len(ps) for v, ps in keep_at.items()}
    acts = {}
    for an, arr in pres.quiver.arrows.items():
        sd, td = dims.get(arr.source, 0), dims.get(arr.target, 0)
        if sd == 0 or td == 0:
            continue
        big = phat.act(an)
        rows = [full_at[arr.target].index(p) for p in keep_at[arr.target]]
        cols = [full_at[arr.source].index(p) for p in keep_at[arr.source]]
        acts[an] = [[big[i][j] for j in cols] for i in rows]
    sub = modules.GradedModule(phat.win, field, dims, acts,
                               meta={"path_sub": tag, "basis": tuple(keep)})
    sub.validate()
    blocks = {}
    for v, ps in keep_at.items():
        blk = [[field.zero() for _ in ps] for _ in range(phat.dim(v))]
        for j, p in enumerate(ps):
            blk[full_at[v].index(p)][j] = field.one()
        blocks[v] = blk
    incl = modules.ModuleMorphism(sub, phat, blocks)
    incl.validate()
    return sub, incl


def _path_quotient(phat, keep, dropped):
    field = phat.field
    pres = phat.win.presentation
    full_at = _order_at(phat, phat.meta["basis"])
    keep_at = _order_at(phat, keep)
    dims = {v: len(ps) for v, ps in keep_at.items()}
    acts = {}
    for an, arr in pres.quiver.arrows.items():
        sd, td = dims.get(arr.source, 0), dims.get(arr.target, 0)
        if sd == 0 or td == 0:
            continue
        big = phat.act(an)
        rows = [full_at[arr.target].index(p) for p in keep_at[arr.target]]
        cols = [full_at[arr.source].index(p) for p in keep_at[arr.source]]
        acts[an] = [[big[i][j] for j in cols] for i in rows]
    quot = modules.GradedModule(phat.win, field, dims, acts,
                                meta={"path_quotient": True,
                                      "basis": tuple(keep)})
    quot.validate()
    blocks = {}
    for v, ps in keep_at.items():
        blk = [[field.zero() for _ in range(phat.dim(v))] for _ in ps]
        for i, p in enumerate(ps):
            blk[i][full_at[v].index(p)] = field.one()
        blocks[v] = blk
    proj = modules.ModuleMorphism(phat, quot, blocks)
    proj.validate()
    return quot, proj


# -- element-level arithmetic of the repetitive algebra ---------------------

@dataclass(frozen=True)
class RepetitiveElement:
    """Finitely supported family of (algebra part, dual part) pairs.  The
    algebra part of degree ``z`` is a combination of basis paths; the dual
    part pairs degree ``z`` with degree ``z + 1`` and is a combination of
    dual-basis functionals, keyed by the basis path they dualize."""

    base: AlgebraPresentation
    parts: tuple  # tuple of (z, ("alg"|"dual"), path key, coefficient)

    @staticmethod
    def make(base, entries):
        """entries: iterable of (z, kind, PathWord, coeff)."""
        acc = {}
        for z, kind, p, c in entries:
            key = (z, kind, (p.source, p.arrows))
            acc[key] = acc.get(key, 0) + c
        parts = tuple(sorted((z, kind, pk, c) for (z, kind, pk), c in acc.items()
                             if c != 0))
        return RepetitiveElement(base, parts)

    def __add__(self, other):
        return RepetitiveElement.make(
            self.base,
            [(z, k, PathWord(pk[0], pk[1]), c) for z, k, pk, c in self.parts]
            + [(z, k, PathWord(pk[0], pk[1]), c) for z, k, pk, c in other.parts])

    def is_zero(self):
        return not self.parts


def identity_at(base: AlgebraPresentation, z: int) -> RepetitiveElement:
    return RepetitiveElement.make(
        base, [(z, "alg", PathWord(v, ()), 1) for v in base.quiver.vertices])


def _mul_paths(base, p: PathWord, q: PathWord):
    """Function-order product of basis paths: q happens first, then p."""
    if q.target(base.quiver) != p.source:
        return None
    nf = base.path_normal_form(PathWord(q.source, q.arrows + p.arrows))
    if nf.is_zero:
        return None
    return nf.path, nf.coeff


def _strip_prefix(base, dual_key: PathWord, q: PathWord):
    """Left action of a path on a dual functional: remove a leading copy
    of ``q`` from the dualized path."""
    if len(q) > len(dual_key):
        return None
    if dual_key.arrows[:len(q)] != q.arrows or dual_key.source != q.source:
        return None
    rest = dual_key.arrows[len(q):]
    src = q.target(base.quiver)
    return PathWord(src, rest)


def _strip_suffix(base, dual_key: PathWord, q: PathWord):
    """Right action of a path on a dual functional: remove a trailing copy
    of ``q`` from the dualized path."""
    if len(q) > len(dual_key):
        return None
    if len(q) and dual_key.arrows[len(dual_key) - len(q):] != q.arrows:
        return None
    if len(q) == 0 and dual_key.target(base.quiver) != q.source:
        return None
    rest = dual_key.arrows[:len(dual_key) - len(q)]
    return PathWord(dual_key.source, rest)


def repetitive_product(x: RepetitiveElement, y: RepetitiveElement) -> RepetitiveElement:
    """Degreewise product: algebra parts multiply within a degree; the dual
    part of degree ``z`` is acted on by the algebra part of degree ``z + 1``
    on the left and of degree ``z`` on the right.  Two dual parts multiply
    to zero."""
    base = x.base
    if base is not y.base and base.pretty() != y.base.pretty():
        raise PresentationError("elements over different base algebras")
    out = []
    for z1, k1, pk1, c1 in x.parts:
        p1 = PathWord(pk1[0], pk1[1])
        for z2, k2, pk2, c2 in y.parts:
            p2 = PathWord(pk2[0], pk2[1])
            if k1 == "alg" and k2 == "alg" and z1 == z2:
                r = _mul_paths(base, p1, p2)
                if r is not None:
                    out.append((z1, "alg", r[0], c1 * c2 * r[1]))
            elif k1 == "alg" and k2 == "dual" and z1 == z2 + 1:
                r = _strip_prefix(base, p2, p1)
                if r is not None:
                    out.append((z2, "dual", r, c1 * c2))
            elif k1 == "dual" and k2 == "alg" and z2 == z1:
                r = _strip_suffix(base, p1, p2)
                if r is not None:
                    out.append((z1, "dual", r, c1 * c2))
            # dual * dual vanishes: both product components are zero.
    return RepetitiveElement.make(base, [(z, k, p, c) for z, k, p, c in out])
