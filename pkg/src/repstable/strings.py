"""String combinatorics for the special biserial repetitive window.

Words are finite alternating walks of direct and inverse arrow letters,
written in application order.  A word is valid when consecutive letters
compose as a reduced walk and no contiguous direct run (or reversed
inverse run) contains a vanishing path or a socle-identified path.

Almost split sequences are produced by a fixed one-sided surgery
convention: at an end where the walk can grow, append one inverse letter
and the maximal direct run after it (a hook, giving a canonical
inclusion); otherwise remove the last direct letter together with the
inverse run behind it (a cohook, giving a canonical surjection).  At the
right end of a trivial word the alphabetically first admissible arrow is
hooked and the left end uses the remaining one.  Correctness is enforced
by the almost-split axiom checks, not by the convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg, modules
from .presentation import PathWord


class StringError(Exception):
    pass


class ArInjectiveError(Exception):
    """No almost split sequence starts at an injective module."""


class EnlargementError(Exception):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class StringWord:
    """A reduced walk; ``letters`` are (arrow name, +1/-1) pairs and the
    trivial walk at a vertex has no letters."""

    source: str
    letters: tuple

    def __len__(self):
        return len(self.letters)

    def positions(self, quiver) -> list:
        verts = [self.source]
        at = self.source
        for name, sign in self.letters:
            arr = quiver.arrows[name]
            at = arr.target if sign > 0 else arr.source
            verts.append(at)
        return verts

    def end(self, quiver) -> str:
        return self.positions(quiver)[-1]

    def inverse(self, quiver) -> "StringWord":
        return StringWord(self.end(quiver),
                          tuple((n, -s) for n, s in reversed(self.letters)))

    def encode(self):
        return (self.source,) + self.letters

    def __str__(self):
        if not self.letters:
            return "1_(%s)" % self.source
        return ".".join(n if s > 0 else n + "^-1" for n, s in self.letters)


def canonical(w: StringWord, quiver) -> tuple:
    """Identity of the string up to formal inversion."""
    return min(w.encode(), w.inverse(quiver).encode())


def canonical_word(w: StringWord, quiver) -> StringWord:
    enc = canonical(w, quiver)
    return StringWord(enc[0], tuple(enc[1:]))


class StringContext:
    """Validity data shared by all word operations: the quiver, the
    forbidden direct subwords (vanishing paths and both sides of every
    socle identification) and, for windows, the degree bookkeeping."""

    def __init__(self, pres, win=None):
        self.pres = pres
        self.quiver = pres.quiver
        self.win = win
        forbidden = set()
        for r in pres.relations:
            if r.kind == "monomial":
                forbidden.add(r.path.arrows)
            else:
                forbidden.add(r.path.arrows)
                forbidden.add(r.other.arrows)
        self.forbidden = forbidden
        self._maxforb = max((len(f) for f in forbidden), default=0)

    def run_ok(self, names: tuple) -> bool:
        if len(names) >= self.pres.nilpotency:
            return False
        for k in range(2, min(len(names), self._maxforb) + 1):
            for i in range(len(names) - k + 1):
                if names[i:i + k] in self.forbidden:
                    return False
        return True

    def pair_ok(self, l1, l2) -> bool:
        (a, sa), (b, sb) = l1, l2
        arra, arrb = self.quiver.arrows[a], self.quiver.arrows[b]
        enda = arra.target if sa > 0 else arra.source
        startb = arrb.source if sb > 0 else arrb.target
        if enda != startb:
            return False
        if sa > 0 and sb < 0:
            return a != b          # peak
        if sa < 0 and sb > 0:
            return a != b          # valley
        return True                # run composability checked via run_ok

    def is_valid(self, w: StringWord) -> bool:
        if w.source not in self.quiver.vertices:
            return False
        at = w.source
        for name, sign in w.letters:
            if name not in self.quiver.arrows:
                return False
            arr = self.quiver.arrows[name]
            start = arr.source if sign > 0 else arr.target
            if start != at:
                return False
            at = arr.target if sign > 0 else arr.source
        for l1, l2 in zip(w.letters, w.letters[1:]):
            if not self.pair_ok(l1, l2):
                return False
        # maximal runs
        i = 0
        n = len(w.letters)
        while i < n:
            j = i
            while j < n and w.letters[j][1] == w.letters[i][1]:
                j += 1
            names = tuple(x[0] for x in w.letters[i:j])
            if w.letters[i][1] < 0:
                names = tuple(reversed(names))
            if not self.run_ok(names):
                return False
            i = j
        return True

    def is_band(self, w: StringWord) -> bool:
        """Cyclic word whose square is again a valid walk and which mixes
        letter directions; such words parameterize one-parameter families
        and are excluded from the string enumeration."""
        if not w.letters or w.end(self.quiver) != w.source:
            return False
        signs = {s for _, s in w.letters}
        if len(signs) < 2:
            return False
        doubled = StringWord(w.source, w.letters + w.letters)
        return self.is_valid(doubled)


def window_context(win) -> StringContext:
    return StringContext(win.presentation, win)


def base_context(pres) -> StringContext:
    return StringContext(pres, None)


# -- string modules ---------------------------------------------------------

def string_module(win, w: StringWord, fieldobj) -> "modules.GradedModule":
    """The representation with one basis vector per walk position and
    arrow actions along the letters; dimension is ``len(w) + 1``."""
    ctx = window_context(win)
    if not ctx.is_valid(w):
        raise StringError("invalid string word %s" % w)
    return _rep_from_word(win, ctx, w, fieldobj)


def _rep_from_word(win, ctx, w, fieldobj):
    positions = w.positions(ctx.quiver)
    at_vertex = {}
    for i, v in enumerate(positions):
        at_vertex.setdefault(v, []).append(i)
    dims = {v: len(ix) for v, ix in at_vertex.items()}
    acts = {}
    for k, (name, sign) in enumerate(w.letters):
        arr = ctx.quiver.arrows[name]
        if sign > 0:
            src_pos, tgt_pos = k, k + 1
        else:
            src_pos, tgt_pos = k + 1, k
        m = acts.get(name)
        if m is None:
            m = linalg.zeros(fieldobj, dims[arr.target], dims[arr.source])
            acts[name] = m
        i = at_vertex[arr.target].index(tgt_pos)
        j = at_vertex[arr.source].index(src_pos)
        m[i][j] = fieldobj.one()
    mod = modules.GradedModule(win, fieldobj, dims, acts,
                               meta={"word": w, "positions": positions})
    mod.validate()
    return mod


def _position_morphism(src_mod, tgt_mod, pos_map, quiver):
    """Morphism sending basis position ``i`` of the source to position
    ``pos_map[i]`` of the target (or to zero when absent)."""
    fld = src_mod.field
    src_pos = src_mod.meta["positions"]
    tgt_pos = tgt_mod.meta["positions"]
    src_at, tgt_at = {}, {}
    for i, v in enumerate(src_pos):
        src_at.setdefault(v, []).append(i)
    for i, v in enumerate(tgt_pos):
        tgt_at.setdefault(v, []).append(i)
    blocks = {}
    for v, cols in src_at.items():
        if v not in tgt_at:
            continue
        blk = linalg.zeros(fld, len(tgt_at[v]), len(cols))
        for j, i in enumerate(cols):
            t = pos_map.get(i)
            if t is not None:
                blk[tgt_at[tgt_pos[t]].index(t)][j] = fld.one()
        blocks[v] = blk
    return modules.ModuleMorphism(src_mod, tgt_mod, blocks)


# -- enumeration ------------------------------------------------------------

def enumerate_strings(win, max_len: int, fieldobj=None, interior_only=True,
                      with_bands=False):
    """All valid words up to the length bound, one representative per
    inverse pair, sorted by (length, encoding).  Band words are skipped
    (and returned separately when ``with_bands`` is set)."""
    ctx = window_context(win)
    quiver = ctx.quiver

    def vertex_ok(vn):
        return win.is_interior(vn) if interior_only else True

    seen = set()
    words = []
    bands = []
    frontier = [StringWord(v, ()) for v in win.sorted_vertices()
                if vertex_ok(v)]
    for w in frontier:
        seen.add(canonical(w, quiver))
        words.append(w)
    current = frontier
    for _ in range(max_len):
        nxt = []
        for w in current:
            # Extend at the right end of both orientations so every class
            # of the next length is reached.
            for base in (w, w.inverse(quiver)) if w.letters else (w,):
                x = base.end(quiver)
                for arr in sorted(quiver.arrows.values(), key=lambda a: a.name):
                    for sign in (1, -1):
                        start = arr.source if sign > 0 else arr.target
                        lands = arr.target if sign > 0 else arr.source
                        if start != x or not vertex_ok(lands):
                            continue
                        w2 = StringWord(base.source,
                                        base.letters + ((arr.name, sign),))
                        if not ctx.is_valid(w2):
                            continue
                        key = canonical(w2, quiver)
                        if key in seen:
                            continue
                        seen.add(key)
                        if ctx.is_band(w2):
                            bands.append(w2)
                            continue
                        w2c = canonical_word(w2, quiver)
                        words.append(w2c)
                        nxt.append(w2c)
        current = nxt
    words.sort(key=lambda w: (len(w), w.encode()))
    if with_bands:
        return words, bands
    return words


def decomposition_candidates(win, fieldobj, maxdim: int):
    cands = [string_module(win, w, fieldobj)
             for w in enumerate_strings(win, max(maxdim - 1, 0),
                                        interior_only=False)]
    cands.extend(win.all_projectives(fieldobj))
    return [c for c in cands if c.total_dim() <= maxdim]


# -- words of the projective-injective modules --------------------------------

def _arm_chain(win, v, z, first_arrow):
    """One arm of the projective at (v, z): the normal-form basis paths
    reached from a generator arrow by the unique nonzero continuation,
    together with the arrows that were appended at each step."""
    pres = win.presentation
    first = pres.path_normal_form(PathWord(win.vname(v, z), (first_arrow,)))
    chain = [first.path]
    appended = [first_arrow]
    while True:
        at = chain[-1].target(pres.quiver)
        nxt = None
        step = None
        for a in sorted(pres.quiver.arrows_out(at), key=lambda a: a.name):
            nf = pres.path_normal_form(
                PathWord(chain[-1].source, chain[-1].arrows + (a.name,)))
            if not nf.is_zero:
                if nxt is not None:
                    raise StringError("arm continuation is not unique")
                nxt, step = nf.path, a.name
        if nxt is None:
            return chain, appended
        chain.append(nxt)
        appended.append(step)


def _generator_arrows(win, v, z):
    pres = win.presentation
    out = []
    for a in sorted(pres.quiver.arrows_out(win.vname(v, z)),
                    key=lambda a: a.name):
        nf = pres.path_normal_form(PathWord(win.vname(v, z), (a.name,)))
        if not nf.is_zero:
            out.append(a.name)
    return out


def projective_words(win):
    """(uniserial words, biserial radical words): canonical encodings
    mapped to the base vertex and degree of the projective they describe.
    Uniserial projectives are themselves string modules; the radical of a
    biserial projective is the two-arm walk through the socle."""
    uni = {}
    bis = {}
    biserial = set(win.biserial_base_vertices())
    quiver = win.presentation.quiver
    for z in range(win.lo, win.hi):
        for v in sorted(win.base.quiver.vertices):
            gens = _generator_arrows(win, v, z)
            vn = win.vname(v, z)
            if v not in biserial:
                if not gens:
                    uni[canonical(StringWord(vn, ()), quiver)] = (v, z)
                    continue
                if len(gens) != 1:
                    raise StringError("uniserial projective with two arms")
                _, appended = _arm_chain(win, v, z, gens[0])
                word = StringWord(vn, tuple((a, 1) for a in appended))
                uni[canonical(word, quiver)] = (v, z)
            else:
                if len(gens) != 2:
                    raise StringError("biserial projective without two arms")
                arm1, app1 = _arm_chain(win, v, z, gens[0])
                arm2, app2 = _arm_chain(win, v, z, gens[1])
                if arm1[-1].arrows != arm2[-1].arrows:
                    raise StringError("arms do not meet in the socle")
                down = tuple((a, 1) for a in app1[1:])
                up = tuple((a, -1) for a in reversed(app2[1:]))
                start = arm1[0].target(quiver)
                word = StringWord(start, down + up)
                bis[canonical(word, quiver)] = (v, z)
    return uni, bis


# -- surgery ----------------------------------------------------------------

@dataclass
class Surgery:
    kind: str                 # "hook" | "delete"
    word: StringWord
    pos_map: dict             # old position -> new position (inclusion),
                              # or kept old position -> new (deletion)


def _hook_candidates(ctx, w: StringWord):
    quiver = ctx.quiver
    x = w.end(quiver)
    out = []
    for b in sorted(quiver.arrows_in(x), key=lambda a: a.name):
        w2 = StringWord(w.source, w.letters + ((b.name, -1),))
        if not ctx.is_valid(w2):
            continue
        out.append(b.name)
    return out


def _extend_hook(ctx, w: StringWord, b: str) -> StringWord:
    quiver = ctx.quiver
    cur = StringWord(w.source, w.letters + ((b, -1),))
    while True:
        at = cur.end(quiver)
        nxt = None
        for d in sorted(quiver.arrows_out(at), key=lambda a: a.name):
            w2 = StringWord(cur.source, cur.letters + ((d.name, 1),))
            if ctx.is_valid(w2):
                if nxt is not None:
                    raise StringError("direct run is not unique after hook")
                nxt = w2
        if nxt is None:
            return cur
        cur = nxt


def surgery_right(ctx, w: StringWord, forbid_hooks=frozenset(),
                  prefer_hook: Optional[str] = None):
    """Hook if possible, else cohook deletion, else None."""
    cands = [b for b in _hook_candidates(ctx, w) if b not in forbid_hooks]
    if prefer_hook is not None and prefer_hook in cands:
        cands = [prefer_hook]
    if len(cands) > 1 and w.letters:
        raise StringError("ambiguous hook at a nontrivial end")
    if cands:
        new = _extend_hook(ctx, w, cands[0])
        pos_map = {i: i for i in range(len(w) + 1)}
        return Surgery("hook", new, pos_map)
    # cohook deletion: drop the last direct letter and everything after it
    last_direct = None
    for i, (_, s) in enumerate(w.letters):
        if s > 0:
            last_direct = i
    if last_direct is None:
        return None
    new = StringWord(w.source, w.letters[:last_direct])
    pos_map = {i: i for i in range(last_direct + 1)}
    return Surgery("delete", new, pos_map)


def surgery_left(ctx, w: StringWord, forbid_hooks=frozenset()):
    quiver = ctx.quiver
    n = len(w)
    rev = w.inverse(quiver)
    s = surgery_right(ctx, rev, forbid_hooks=forbid_hooks)
    if s is None:
        return None
    m = len(s.word)
    flipped = s.word.inverse(quiver)
    pos_map = {}
    for old_rev, new_rev in s.pos_map.items():
        pos_map[n - old_rev] = m - new_rev
    return Surgery(s.kind, flipped, pos_map)


def _hook_arrow_used(w: StringWord, s: Surgery, left: bool):
    if s.kind != "hook":
        return None
    if left:
        return s.word.letters[len(s.word) - len(w) - 1][0]
    return s.word.letters[len(w)][0]


# -- almost split sequences ---------------------------------------------------

def _needs_margin(ctx, w: StringWord, win) -> bool:
    degs = set()
    for v in w.positions(ctx.quiver):
        degs.add(win.degree(v))
    return min(degs) <= win.lo + 1 or max(degs) >= win.hi - 1


def ensure_margin(win, words, margin: int = 2, cap: int = 12):
    """A window on which every listed word keeps ``margin`` free degrees
    on both sides, enlarging in steps of two."""
    cur = win
    for _ in range(cap):
        degs = set()
        for w in words:
            ctx = window_context(cur)
            if not ctx.is_valid(StringWord(w.source, w.letters)):
                break
            for v in w.positions(ctx.quiver):
                degs.add(cur.degree(v))
        if degs and min(degs) - cur.lo > margin and cur.hi - max(degs) > margin:
            return cur
        cur = cur.enlarged(2)
    raise EnlargementError("window enlargement cap reached")


def ar_sequence(win, w: StringWord, fieldobj):
    """The almost split sequence starting at the string module of ``w``.

    The middle is assembled from the two end surgeries (plus the whole
    projective when the input is the radical of a biserial projective,
    whose cover cannot be reached by word surgery); the end term is the
    exact cokernel, certified isomorphic to the surgery-predicted word.
    """
    ctx = window_context(win)
    if not ctx.is_valid(w):
        raise StringError("invalid string word %s" % w)
    if _needs_margin(ctx, w, win):
        win = ensure_margin(win, [w])
        ctx = window_context(win)
    uni, bis = projective_words(win)
    canon = canonical(w, ctx.quiver)
    if canon in uni:
        raise ArInjectiveError(
            "module of %s is projective-injective; no sequence starts at it"
            % w)

    m = string_module(win, w, fieldobj)
    n = len(w)

    biserial_at = bis.get(canon)

    right = surgery_right(ctx, w)
    used = _hook_arrow_used(w, right, left=False) if right else None
    forbid = frozenset([used]) if (used and not w.letters) else frozenset()
    left = surgery_left(ctx, w, forbid_hooks=forbid)

    summands = []      # (module, map M -> summand, info dict)
    for side, s in (("left", left), ("right", right)):
        if s is None:
            continue
        smod = string_module(win, s.word, fieldobj)
        comp = _position_morphism(m, smod, s.pos_map, ctx.quiver)
        info = {"word": canonical_word(s.word, ctx.quiver),
                "kind": s.kind,
                "projective_at": uni.get(canonical(s.word, ctx.quiver))}
        summands.append((smod, comp, info))

    if biserial_at is not None:
        v, z = biserial_at
        phat = win.projective(v, z, fieldobj)
        from . import repetitive as _rep
        radm, rad_incl = _rep.radical_of_projective(phat)
        iso = modules.find_isomorphism(m, radm)
        if iso is None:
            raise StringError("word is not isomorphic to the biserial radical")
        summands.append((phat, modules.compose(rad_incl, iso),
                         {"word": None, "kind": "projective",
                          "projective_at": (v, z)}))

    if not summands:
        raise StringError("no surgery applies to %s" % w)

    mods = [sm for sm, _, _ in summands]
    middle, incls, _projs = modules.direct_sum(mods)
    f = None
    for (sm, comp, _), incl in zip(summands, incls):
        term = modules.compose(incl, comp)
        f = term if f is None else f + term
    f.validate()
    if f.rank() != m.total_dim():
        raise StringError("combined almost split map is not injective")
    kc = modules.kernel_cokernel(f)
    end_mod, g = kc.coker, kc.coker_proj

    end_word = None
    for predicted in _predict_end(ctx, w):
        pred_mod = string_module(win, predicted, fieldobj)
        if modules.find_isomorphism(pred_mod, end_mod) is not None:
            end_word = canonical_word(predicted, ctx.quiver)
            break
    if end_word is None:
        end_word = _match_word(win, ctx, end_mod, fieldobj)

    proj_at = [info["projective_at"] for _, _, info in summands
               if info["projective_at"] is not None]
    meta = {
        "start_word": canonical_word(w, ctx.quiver),
        "components": [(info, comp) for _, comp, info in summands],
        "middle_words": [info["word"] for _, _, info in summands
                         if info["word"] is not None],
        "projective": proj_at[0] if proj_at else None,
        "projective_count": len(proj_at),
        "end_word": end_word,
        "window": (win.lo, win.hi),
    }
    return modules.ShortExactSeq(f, g, meta), win


def _predict_end(ctx, w):
    """Candidate end-of-sequence words: both surgeries applied in
    sequence, in either order, re-evaluating availability after the
    first.  Candidates are certified against the exact cokernel."""
    results = []
    for order in ("rl", "lr"):
        cur = w
        for stage in order:
            if stage == "r":
                s = surgery_right(ctx, cur, prefer_hook=None)
            else:
                s = surgery_left(ctx, cur)
            if s is not None:
                cur = s.word
        enc = canonical(cur, ctx.quiver)
        if enc not in [canonical(r, ctx.quiver) for r in results]:
            results.append(StringWord(enc[0], tuple(enc[1:])))
    return results


def _match_word(win, ctx, mod, fieldobj):
    """Identify the word of a module known to be a string module, by
    matching dimension vectors and certifying with an isomorphism."""
    total = mod.total_dim()
    for w in enumerate_strings(win, max(total - 1, 0), interior_only=False):
        cand = string_module(win, w, fieldobj)
        if sorted(cand.dims.items()) != sorted(mod.dims.items()):
            continue
        if modules.find_isomorphism(cand, mod) is not None:
            return canonical_word(w, ctx.quiver)
    raise StringError("cokernel is not a string module of this window")


# -- component knitting -------------------------------------------------------

@dataclass
class MeshRecord:
    start: tuple               # canonical encoding
    middles: list              # canonical encodings of stable middle words
    projective: Optional[tuple]
    end: tuple
    edge_maps: list            # ModuleMorphism per stable middle
    seq: "modules.ShortExactSeq"
    window: tuple


@dataclass
class ARQuiverComponent:
    win: object
    nodes: dict                # canonical encoding -> StringWord
    meshes: list
    edges: list                # (src enc, dst enc, label or None)
    tau: list                  # (start enc, end enc)
    truncated: bool = False


def knit_component(win, seed: StringWord, steps: int, fieldobj,
                   classifier=None, enlarge_cap: int = 10):
    """Breadth-first mesh completion from a seed word; projective-injective
    middles are dropped from the stable component.  Edges are labeled by
    the classifier (irreducible-map classification) when one is given."""
    ctx = window_context(win)
    seed = canonical_word(seed, ctx.quiver)
    nodes = {canonical(seed, ctx.quiver): seed}
    meshes = []
    edges = []
    tau = []
    queue = [canonical(seed, ctx.quiver)]
    meshed = set()
    truncated = False
    cur_win = win
    while queue and len(meshes) < steps:
        enc = queue.pop(0)
        if enc in meshed:
            continue
        meshed.add(enc)
        word = nodes[enc]
        try:
            seq, cur_win = ar_sequence(cur_win, word, fieldobj)
        except ArInjectiveError:
            continue
        except EnlargementError:
            truncated = True
            break
        ctx = window_context(cur_win)
        stable_middles = []
        edge_maps = []
        for info, comp in seq.meta["components"]:
            if info["projective_at"] is not None:
                continue
            cenc = canonical(info["word"], ctx.quiver)
            stable_middles.append(cenc)
            edge_maps.append(comp)
            if cenc not in nodes:
                nodes[cenc] = StringWord(cenc[0], tuple(cenc[1:]))
                queue.append(cenc)
        end_enc = canonical(seq.meta["end_word"], ctx.quiver)
        if end_enc not in nodes:
            nodes[end_enc] = StringWord(end_enc[0], tuple(end_enc[1:]))
            queue.append(end_enc)
        for cenc, emap in zip(stable_middles, edge_maps):
            label = classifier(emap) if classifier is not None else None
            edges.append((enc, cenc, label))
        tau.append((enc, end_enc))
        meshes.append(MeshRecord(enc, stable_middles,
                                 seq.meta["projective"], end_enc,
                                 edge_maps, seq, (cur_win.lo, cur_win.hi)))
    return ARQuiverComponent(cur_win, nodes, meshes, edges, tau, truncated)


# -- component export ----------------------------------------------------------

def _word_of(enc) -> StringWord:
    return StringWord(enc[0], tuple(enc[1:]))


def _dim_sequence(win, w: StringWord) -> str:
    degs = {}
    for v in w.positions(win.presentation.quiver):
        z = win.degree(v)
        degs[z] = degs.get(z, 0) + 1
    return ",".join("%d:%d" % (z, d) for z, d in sorted(degs.items()))


def component_dot(comp: ARQuiverComponent) -> str:
    """Deterministic DOT rendering: stable node order, edges labeled by
    their classification, mesh ranks aligned along the tau orbits."""
    win = comp.win
    order = sorted(comp.nodes)
    ids = {enc: "n%d" % i for i, enc in enumerate(order)}
    lines = ["digraph component {", "  rankdir=LR;",
             "  node [shape=box, fontsize=10];"]
    for enc in order:
        w = comp.nodes[enc]
        lines.append('  %s [label="%s\\n[%s]"];'
                     % (ids[enc], w, _dim_sequence(win, w)))
    for src, dst, label in sorted(comp.edges,
                                  key=lambda e: (e[0], e[1], str(e[2]))):
        txt = ' [label="%s"]' % label if label else ""
        lines.append("  %s -> %s%s;" % (ids[src], ids[dst], txt))
    # tau orbits as same-rank groups
    parent = {enc: enc for enc in order}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in comp.tau:
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    groups = {}
    for enc in order:
        groups.setdefault(find(enc), []).append(enc)
    for root in sorted(groups):
        members = groups[root]
        if len(members) > 1:
            lines.append("  { rank=same; %s }"
                         % " ".join(ids[m] for m in sorted(members)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def component_table(comp: ARQuiverComponent) -> str:
    """Machine-readable component table, one mesh per record."""
    lines = ["# mesh\tstart\tmiddles\tprojective\tend\twindow"]
    for i, mesh in enumerate(comp.meshes):
        middles = "+".join(str(_word_of(m)) for m in mesh.middles)
        proj = ("%s@%d" % mesh.projective) if mesh.projective else "-"
        lines.append("%d\t%s\t%s\t%s\t%s\t%d..%d"
                     % (i, _word_of(mesh.start), middles, proj,
                        _word_of(mesh.end), mesh.window[0], mesh.window[1]))
    return "\n".join(lines) + "\n"


def base_string_view(pres, w: StringWord, fieldobj) -> "modules.RepView":
    """String module over the base presentation itself, as a plain
    representation view (used for degree-slice certification)."""
    ctx = base_context(pres)
    if not ctx.is_valid(w):
        raise StringError("invalid base string word %s" % w)
    positions = w.positions(pres.quiver)
    at_vertex = {}
    for i, v in enumerate(positions):
        at_vertex.setdefault(v, []).append(i)
    dims = {v: len(ix) for v, ix in at_vertex.items()}
    acts = {}
    for k, (name, sign) in enumerate(w.letters):
        arr = pres.quiver.arrows[name]
        src_pos, tgt_pos = (k, k + 1) if sign > 0 else (k + 1, k)
        m = acts.get(name)
        if m is None:
            m = linalg.zeros(fieldobj, dims[arr.target], dims[arr.source])
            acts[name] = m
        i = at_vertex[arr.target].index(tgt_pos)
        j = at_vertex[arr.source].index(src_pos)
        m[i][j] = fieldobj.one()
    return modules.RepView(tuple(sorted(pres.quiver.vertices)),
                           tuple((a.name, a.source, a.target)
                                 for a in pres.quiver.sorted_arrows()),
                           dims, acts)


def enumerate_base_strings(pres, max_len: int):
    """All base-algebra string words up to the length bound, one per
    inverse pair."""
    ctx = base_context(pres)
    quiver = pres.quiver
    seen = set()
    words = [StringWord(v, ()) for v in sorted(quiver.vertices)]
    for w in words:
        seen.add(canonical(w, quiver))
    current = list(words)
    for _ in range(max_len):
        nxt = []
        for w in current:
            for base in (w, w.inverse(quiver)) if w.letters else (w,):
                x = base.end(quiver)
                for arr in sorted(quiver.arrows.values(), key=lambda a: a.name):
                    for sign in (1, -1):
                        start = arr.source if sign > 0 else arr.target
                        if start != x:
                            continue
                        w2 = StringWord(base.source,
                                        base.letters + ((arr.name, sign),))
                        if not ctx.is_valid(w2):
                            continue
                        key = canonical(w2, quiver)
                        if key in seen:
                            continue
                        seen.add(key)
                        if ctx.is_band(w2):
                            continue
                        w2c = canonical_word(w2, quiver)
                        words.append(w2c)
                        nxt.append(w2c)
        current = nxt
    words.sort(key=lambda w: (len(w), w.encode()))
    return words
