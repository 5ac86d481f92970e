"""Directed maps between complexes and equivalence checking.

A dmap sends vertices to vertices, edges to edges or collapses them to
vertices, and squares to squares or collapses them to edges or vertices.
``check_dihomotopy_equivalence`` decides, at the level of dihomotopy
classes, whether a pair of dmaps (f, g) is a directed homotopy
equivalence: induced class maps must be bijections, the composites must
be directed-homotopic to identities, and four families of extension
diagrams must admit matching arrows.  ``check_strong`` verifies the
stronger pointwise conditions that imply the diagrammatic ones.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cubecore import DPath, PrecubicalSet, concat, gamma, reachable
from .errors import ModelError
from .traceclass import ExtensionArrow, class_of, elementary_arrows, extend_class, trace_classes

DEFAULT_SEARCH_DEPTH = 2


@dataclass(frozen=True)
class DMapData:
    """Cellular map between two complexes.

    ``edge_map`` entries are ("e", j) for an edge image or ("v", k) for a
    collapse; ``square_map`` entries are ("s", j), ("e", j) or ("v", k).
    """

    vertex_map: tuple
    edge_map: tuple
    square_map: tuple

    def to_json(self) -> str:
        doc = {
            "vertex_map": list(self.vertex_map),
            "edge_map": [list(e) for e in self.edge_map],
            "square_map": [list(s) for s in self.square_map],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DMapData":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid dmap file: {exc}") from exc
        for key in ("vertex_map", "edge_map", "square_map"):
            if key not in doc:
                raise ModelError(f"dmap file needs '{key}'")
        return cls(
            tuple(doc["vertex_map"]),
            tuple((tag, int(i)) for tag, i in doc["edge_map"]),
            tuple((tag, int(i)) for tag, i in doc["square_map"]),
        )


def dmap_violations(x: PrecubicalSet, y: PrecubicalSet, f: DMapData):
    """All structural violations of f as a map x -> y, as messages."""
    out = []
    vm, em, sm = f.vertex_map, f.edge_map, f.square_map
    if len(vm) != x.n_vertices:
        return [f"vertex map has {len(vm)} entries, expected {x.n_vertices}"]
    if len(em) != len(x.edges):
        return [f"edge map has {len(em)} entries, expected {len(x.edges)}"]
    if len(sm) != len(x.squares):
        return [f"square map has {len(sm)} entries, expected {len(x.squares)}"]
    for v, w in enumerate(vm):
        if not (0 <= w < y.n_vertices):
            out.append(f"vertex {v} maps to unknown vertex {w}")
    if out:
        return out
    for e, (s, t) in enumerate(x.edges):
        tag, i = em[e]
        if tag == "v":
            if not (vm[s] == vm[t] == i):
                out.append(f"edge {e} collapses to {i} but endpoints map to "
                           f"({vm[s]},{vm[t]})")
        elif tag == "e":
            if not (0 <= i < len(y.edges)):
                out.append(f"edge {e} maps to unknown edge {i}")
            elif y.edges[i] != (vm[s], vm[t]):
                out.append(f"edge {e} maps to edge {i} with endpoints "
                           f"{y.edges[i]}, expected ({vm[s]},{vm[t]})")
        else:
            out.append(f"edge {e}: bad tag {tag!r}")
    if out:
        return out
    for si, (b, r, l, t) in enumerate(x.squares):
        tag, i = sm[si]
        images = [em[b], em[r], em[l], em[t]]
        if tag == "s":
            if not (0 <= i < len(y.squares)):
                out.append(f"square {si} maps to unknown square {i}")
                continue
            want = tuple(("e", e) for e in y.squares[i])
            if tuple(images) != want:
                out.append(f"square {si} maps to square {i} but its boundary "
                           f"images are {images}")
        elif tag == "e":
            horiz = images[0] == images[3] == ("e", i) and images[1][0] == images[2][0] == "v"
            vert = images[2] == images[1] == ("e", i) and images[0][0] == images[3][0] == "v"
            if not (horiz or vert):
                out.append(f"square {si} collapses to edge {i} but its "
                           f"boundary images are {images}")
        elif tag == "v":
            if any(img != ("v", i) for img in images):
                out.append(f"square {si} collapses to vertex {i} but its "
                           f"boundary images are {images}")
        else:
            out.append(f"square {si}: bad tag {tag!r}")
    return out


def validate_dmap(x: PrecubicalSet, y: PrecubicalSet, f: DMapData) -> bool:
    return not dmap_violations(x, y, f)


def identity_dmap(x: PrecubicalSet) -> DMapData:
    return DMapData(
        tuple(range(x.n_vertices)),
        tuple(("e", i) for i in range(len(x.edges))),
        tuple(("s", i) for i in range(len(x.squares))),
    )


def dmap_from_vertex_map(x: PrecubicalSet, y: PrecubicalSet, vm) -> DMapData:
    """Lift a vertex map to a full dmap, inferring edge and square images
    (collapsing cells whose image is degenerate).  Raises ModelError when
    some cell has no valid image."""
    vm = tuple(int(v) for v in vm)
    if len(vm) != x.n_vertices:
        raise ModelError("vertex map length mismatch")
    edge_index = {e: i for i, e in enumerate(y.edges)}
    em = []
    for s, t in x.edges:
        a, b = vm[s], vm[t]
        if a == b:
            em.append(("v", a))
        elif (a, b) in edge_index:
            em.append(("e", edge_index[(a, b)]))
        else:
            raise ModelError(f"no image edge for ({s},{t}) -> ({a},{b})")
    square_index = {sq: i for i, sq in enumerate(y.squares)}
    sm = []
    for b, r, l, t in x.squares:
        ib, ir, il, it = em[b], em[r], em[l], em[t]
        tags = {ib[0], ir[0], il[0], it[0]}
        if tags == {"v"}:
            sm.append(("v", ib[1]))
        elif ib[0] == "v" and it[0] == "v":
            if il != ir:
                raise ModelError(f"square ({b},{r},{l},{t}) has no image")
            sm.append(("e", il[1]))
        elif il[0] == "v" and ir[0] == "v":
            if ib != it:
                raise ModelError(f"square ({b},{r},{l},{t}) has no image")
            sm.append(("e", ib[1]))
        else:
            key = (ib[1], ir[1], il[1], it[1])
            if "v" in tags or key not in square_index:
                raise ModelError(f"square ({b},{r},{l},{t}) has no image")
            sm.append(("s", square_index[key]))
    return DMapData(vm, tuple(em), tuple(sm))


def compose_dmaps(f: DMapData, g: DMapData) -> DMapData:
    """g after f."""
    vm = tuple(g.vertex_map[v] for v in f.vertex_map)

    def push_edge(entry):
        tag, i = entry
        if tag == "v":
            return ("v", g.vertex_map[i])
        return g.edge_map[i]

    em = tuple(push_edge(entry) for entry in f.edge_map)
    sm = []
    for tag, i in f.square_map:
        if tag == "v":
            sm.append(("v", g.vertex_map[i]))
        elif tag == "e":
            sm.append(push_edge(("e", i)))
        else:
            sm.append(g.square_map[i])
    return DMapData(vm, em, tuple(sm))


def map_path(f: DMapData, p: DPath) -> DPath:
    edges = tuple(
        f.edge_map[e][1] for e in p.edges if f.edge_map[e][0] == "e"
    )
    return DPath(f.vertex_map[p.start], edges)


def induced_class_map(x, y, f, a, b, cap=None):
    """Tuple sending each class id at (a,b) in x to a class id at
    (f(a),f(b)) in y."""
    kwargs = {} if cap is None else {"cap": cap}
    cs = trace_classes(x, a, b, **kwargs)
    return tuple(
        class_of(y, map_path(f, rep), **kwargs) for rep in cs.representatives
    )


# -- equivalence checking ----------------------------------------------------


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Accepted equivalence data: the dmaps, the inverse class bijections
    F (indexed by source pairs) and G (indexed by target pairs), and the
    matching arrow found for every checked diagram."""

    x: PrecubicalSet
    y: PrecubicalSet
    f: DMapData
    g: DMapData
    F: dict
    G: dict
    matches: dict
    depth: int


@dataclass(frozen=True)
class EquivFailure:
    """Failed check: the stage, its location, and whether the failure is
    a definite refutation or only search-depth exhaustion."""

    stage: str
    location: tuple
    detail: str
    exhausted: bool = False


def _first_path(w: PrecubicalSet, u, v):
    """Lexicographically first dipath u -> v, or None."""
    if not reachable(w, u, v):
        return None
    acc = []
    at = u
    while at != v:
        for e in w.out_edges(at):
            if reachable(w, w.edges[e][1], v):
                acc.append(e)
                at = w.edges[e][1]
                break
    return DPath(u, tuple(acc))


def _bounded_paths(w: PrecubicalSet, u, v, depth):
    """All dipaths u -> v with at most ``depth`` edges."""
    out = []

    def dfs(at, acc):
        if at == v:
            out.append(DPath(u, tuple(acc)))
        if len(acc) >= depth:
            return
        for e in w.out_edges(at):
            acc.append(e)
            dfs(w.edges[e][1], acc)
            acc.pop()

    dfs(u, [])
    return out


def _arrow_candidates(w, src, tgt, depth):
    """Arrows src -> tgt with prefix and suffix of bounded length."""
    prefixes = _bounded_paths(w, tgt[0], src[0], depth)
    suffixes = _bounded_paths(w, src[1], tgt[1], depth)
    return [
        ExtensionArrow(src, tgt, al, be) for al in prefixes for be in suffixes
    ]


def _homotopic_to_identity(w: PrecubicalSet, h: DMapData, cap=None):
    """Is h directed-homotopic to the identity of w?

    Accepts h = id on vertices outright; otherwise looks for a family of
    connecting dipaths (all pointing from x to h(x), or all from h(x) to
    x) under which extension commutes with the induced class maps.  The
    lexicographically first connecting paths are used; a refusal is
    therefore conservative only for models where class sets are not all
    singletons.
    """
    kwargs = {} if cap is None else {"cap": cap}
    vm = h.vertex_map
    if all(vm[v] == v for v in range(w.n_vertices)):
        return True
    for forward in (True, False):
        if forward:
            ok = all(reachable(w, v, vm[v]) for v in range(w.n_vertices))
        else:
            ok = all(reachable(w, vm[v], v) for v in range(w.n_vertices))
        if not ok:
            continue
        conn = {
            v: _first_path(w, v, vm[v]) if forward else _first_path(w, vm[v], v)
            for v in range(w.n_vertices)
        }
        good = True
        for a, b in gamma(w):
            cs = trace_classes(w, a, b, **kwargs)
            for rep in cs.representatives:
                hp = map_path(h, rep)
                if forward:
                    # p * w_b against w_a * h(p), both a -> h(b)
                    lhs = concat(w, rep, conn[b])
                    rhs = concat(w, conn[a], hp)
                else:
                    # w_a * p against h(p) * w_b, both h(a) -> b
                    lhs = concat(w, conn[a], rep)
                    rhs = concat(w, hp, conn[b])
                if class_of(w, lhs, **kwargs) != class_of(w, rhs, **kwargs):
                    good = False
                    break
            if not good:
                break
        if good:
            return True
    return False


def check_dihomotopy_equivalence(x, y, f, g, depth=DEFAULT_SEARCH_DEPTH, cap=None):
    """Class-level equivalence check for the pair (f: x->y, g: y->x).

    Returns (True, EquivalenceCertificate) or (False, EquivFailure).
    Stages, in order: bijectivity of the class maps of f on all pairs of
    x; same for g on y; directed homotopy of g*f and f*g to identities;
    then four diagram families demanding matching extension arrows, with
    the existential search bounded by ``depth``.
    """
    kwargs = {} if cap is None else {"cap": cap}
    for name, src, tgt, m in (("f", x, y, f), ("g", y, x, g)):
        bad = dmap_violations(src, tgt, m)
        if bad:
            raise ModelError(f"invalid dmap {name}: {bad[0]}")

    fv, gv = f.vertex_map, g.vertex_map

    # stage 1 and 2: induced class maps must be bijections
    F = {}
    for a, b in gamma(x):
        img = induced_class_map(x, y, f, a, b, **kwargs)
        n_target = trace_classes(y, fv[a], fv[b], **kwargs).count
        if len(set(img)) != len(img) or len(img) != n_target:
            return False, EquivFailure(
                "f-class-bijection", (a, b),
                f"{len(img)} classes map onto {len(set(img))} of {n_target}",
            )
        F[(a, b)] = tuple(img.index(i) for i in range(n_target))  # inverse
    G = {}
    for c, d in gamma(y):
        img = induced_class_map(y, x, g, c, d, **kwargs)
        n_target = trace_classes(x, gv[c], gv[d], **kwargs).count
        if len(set(img)) != len(img) or len(img) != n_target:
            return False, EquivFailure(
                "g-class-bijection", (c, d),
                f"{len(img)} classes map onto {len(set(img))} of {n_target}",
            )
        G[(c, d)] = tuple(img.index(i) for i in range(n_target))

    # stage 3: composites directed-homotopic to the identities
    if not _homotopic_to_identity(x, compose_dmaps(f, g), **kwargs):
        return False, EquivFailure(
            "gf-homotopy", (), "g*f admits no directed homotopy to id")
    if not _homotopic_to_identity(y, compose_dmaps(g, f), **kwargs):
        return False, EquivFailure(
            "fg-homotopy", (), "f*g admits no directed homotopy to id")

    def action(w, arrow):
        src_count = trace_classes(w, *arrow.source, **kwargs).count
        return tuple(
            extend_class(w, arrow, c, **kwargs) for c in range(src_count)
        )

    def fwd_class_map(w1, w2, m, pair):
        return induced_class_map(w1, w2, m, *pair, **kwargs)

    matches = {}

    def find_match(candidates, check):
        for cand in candidates:
            if check(cand):
                return cand
        return None

    # stage 4: the four diagram families
    for a, b in gamma(x):
        fa, fb = fv[a], fv[b]
        for ar in elementary_arrows(x, (a, b)):
            a2, b2 = ar.target
            act_x = action(x, ar)
            pf_src = fwd_class_map(x, y, f, (a, b))
            pf_tgt = fwd_class_map(x, y, f, (a2, b2))

            def commutes_a(cand, act_x=act_x, pf_src=pf_src, pf_tgt=pf_tgt,
                           a2=a2, b2=b2, ab=(a, b)):
                act_y = action(y, cand)
                n_x = len(act_x)
                n_y = len(act_y)
                if any(pf_tgt[act_x[c]] != act_y[pf_src[c]] for c in range(n_x)):
                    return False
                return all(
                    F[(a2, b2)][act_y[w]] == act_x[F[ab][w]] for w in range(n_y)
                )

            cands = _arrow_candidates(y, (fa, fb), (fv[a2], fv[b2]), depth)
            hit = find_match(cands, commutes_a)
            if hit is None:
                return False, EquivFailure(
                    "diagram-A", ((a, b), (a2, b2)),
                    "no matching target arrow commutes", exhausted=True)
            matches[("A", (a, b), (a2, b2))] = hit

    image_y = {}
    for c2, d2 in gamma(y):
        image_y.setdefault((gv[c2], gv[d2]), []).append((c2, d2))
    for c, d in gamma(y):
        gc, gd = gv[c], gv[d]
        for ar in elementary_arrows(x, (gc, gd)):
            u2, v2 = ar.target
            if (u2, v2) not in image_y:
                continue  # target outside the image, no obligation
            pre = [
                (c2, d2) for c2, d2 in image_y[(u2, v2)]
                if reachable(y, c2, c) and reachable(y, d, d2)
            ]
            act_x = action(x, ar)
            pg_src = fwd_class_map(y, x, g, (c, d))
            found = None
            for c2, d2 in pre:
                pg_tgt = fwd_class_map(y, x, g, (c2, d2))

                def commutes_b(cand, act_x=act_x, pg_src=pg_src,
                               pg_tgt=pg_tgt, cd=(c, d), c2=c2, d2=d2):
                    act_y = action(y, cand)
                    n_y = len(act_y)
                    n_x = len(act_x)
                    if any(act_x[pg_src[w]] != pg_tgt[act_y[w]] for w in range(n_y)):
                        return False
                    return all(
                        G[(c2, d2)][act_x[v]] == act_y[G[cd][v]] for v in range(n_x)
                    )

                hit = find_match(
                    _arrow_candidates(y, (c, d), (c2, d2), depth), commutes_b)
                if hit is not None:
                    found = ((c2, d2), hit)
                    break
            if found is None:
                return False, EquivFailure(
                    "diagram-B", ((c, d), (u2, v2)),
                    "no source-side preimage arrow commutes",
                    exhausted=bool(pre))
            matches[("B", (c, d), (u2, v2))] = found

    image_x = {}
    for a2, b2 in gamma(x):
        image_x.setdefault((fv[a2], fv[b2]), []).append((a2, b2))
    for a, b in gamma(x):
        fa, fb = fv[a], fv[b]
        for ar in elementary_arrows(y, (fa, fb)):
            u2, v2 = ar.target
            if (u2, v2) not in image_x:
                continue  # target outside the image, no obligation
            pre = [
                (a2, b2) for a2, b2 in image_x[(u2, v2)]
                if reachable(x, a2, a) and reachable(x, b, b2)
            ]
            act_y = action(y, ar)
            pf_src = fwd_class_map(x, y, f, (a, b))
            found = None
            for a2, b2 in pre:
                pf_tgt = fwd_class_map(x, y, f, (a2, b2))

                def commutes_c(cand, act_y=act_y, pf_src=pf_src,
                               pf_tgt=pf_tgt, ab=(a, b), a2=a2, b2=b2):
                    act_x = action(x, cand)
                    n_x = len(act_x)
                    n_y = len(act_y)
                    if any(act_y[pf_src[c]] != pf_tgt[act_x[c]] for c in range(n_x)):
                        return False
                    return all(
                        act_x[F[ab][w]] == F[(a2, b2)][act_y[w]] for w in range(n_y)
                    )

                hit = find_match(
                    _arrow_candidates(x, (a, b), (a2, b2), depth), commutes_c)
                if hit is not None:
                    found = ((a2, b2), hit)
                    break
            if found is None:
                return False, EquivFailure(
                    "diagram-C", ((a, b), (u2, v2)),
                    "no source-side preimage arrow commutes",
                    exhausted=bool(pre))
            matches[("C", (a, b), (u2, v2))] = found

    for c, d in gamma(y):
        gc, gd = gv[c], gv[d]
        for ar in elementary_arrows(y, (c, d)):
            c2, d2 = ar.target
            act_y = action(y, ar)
            pg_src = fwd_class_map(y, x, g, (c, d))
            pg_tgt = fwd_class_map(y, x, g, (c2, d2))

            def commutes_d(cand, act_y=act_y, pg_src=pg_src, pg_tgt=pg_tgt,
                           cd=(c, d), c2=c2, d2=d2):
                act_x = action(x, cand)
                n_y = len(act_y)
                n_x = len(act_x)
                if any(pg_tgt[act_y[w]] != act_x[pg_src[w]] for w in range(n_y)):
                    return False
                return all(
                    act_y[G[cd][v]] == G[(c2, d2)][act_x[v]] for v in range(n_x)
                )

            cands = _arrow_candidates(x, (gc, gd), (gv[c2], gv[d2]), depth)
            hit = find_match(cands, commutes_d)
            if hit is None:
                return False, EquivFailure(
                    "diagram-D", ((c, d), (c2, d2)),
                    "no matching target arrow commutes", exhausted=True)
            matches[("D", (c, d), (c2, d2))] = hit

    return True, EquivalenceCertificate(x, y, f, g, F, G, matches, depth)


def check_strong(x, y, f, g, F=None, G=None, cap=None) -> bool:
    """Pointwise naturality conditions on (f, g, F, G).

    F and G default to the inverses of the induced class maps; a
    non-bijective induced map makes the check fail (the data F/G it
    requires does not exist).
    """
    kwargs = {} if cap is None else {"cap": cap}
    for name, src, tgt, m in (("f", x, y, f), ("g", y, x, g)):
        bad = dmap_violations(src, tgt, m)
        if bad:
            raise ModelError(f"invalid dmap {name}: {bad[0]}")
    fv, gv = f.vertex_map, g.vertex_map

    if F is None:
        F = {}
        for a, b in gamma(x):
            img = induced_class_map(x, y, f, a, b, **kwargs)
            n = trace_classes(y, fv[a], fv[b], **kwargs).count
            if len(set(img)) != len(img) or len(img) != n:
                return False
            F[(a, b)] = tuple(img.index(i) for i in range(n))
    if G is None:
        G = {}
        for c, d in gamma(y):
            img = induced_class_map(y, x, g, c, d, **kwargs)
            n = trace_classes(x, gv[c], gv[d], **kwargs).count
            if len(set(img)) != len(img) or len(img) != n:
                return False
            G[(c, d)] = tuple(img.index(i) for i in range(n))

    if not _homotopic_to_identity(x, compose_dmaps(f, g), **kwargs):
        return False
    if not _homotopic_to_identity(y, compose_dmaps(g, f), **kwargs):
        return False

    def reps(w, pair):
        return trace_classes(w, *pair, **kwargs).representatives

    # (a): extending before or after applying F agrees
    for a, b in gamma(x):
        for ar in elementary_arrows(x, (a, b)):
            a2, b2 = ar.target
            f_ar = ExtensionArrow(
                (fv[a], fv[b]), (fv[a2], fv[b2]),
                map_path(f, ar.alpha), map_path(f, ar.beta))
            for vcl, rep in enumerate(reps(y, (fv[a], fv[b]))):
                lhs = F[(a2, b2)][extend_class(y, f_ar, vcl, **kwargs)]
                rhs = class_of(
                    x,
                    concat(x, concat(x, ar.alpha,
                                     reps(x, (a, b))[F[(a, b)][vcl]]), ar.beta),
                    **kwargs)
                if lhs != rhs:
                    return False

    # (b): symmetric condition for g and G
    for c, d in gamma(y):
        for ar in elementary_arrows(y, (c, d)):
            c2, d2 = ar.target
            g_ar = ExtensionArrow(
                (gv[c], gv[d]), (gv[c2], gv[d2]),
                map_path(g, ar.alpha), map_path(g, ar.beta))
            for vcl, rep in enumerate(reps(x, (gv[c], gv[d]))):
                lhs = G[(c2, d2)][extend_class(x, g_ar, vcl, **kwargs)]
                rhs = class_of(
                    y,
                    concat(y, concat(y, ar.alpha,
                                     reps(y, (c, d))[G[(c, d)][vcl]]), ar.beta),
                    **kwargs)
                if lhs != rhs:
                    return False

    # (c): extensions of image pairs in y lift through F for some preimage
    image_x = {}
    for a2, b2 in gamma(x):
        image_x.setdefault((fv[a2], fv[b2]), []).append((a2, b2))
    for a, b in gamma(x):
        fa, fb = fv[a], fv[b]
        for ar in elementary_arrows(y, (fa, fb)):
            u2, v2 = ar.target
            if (u2, v2) not in image_x:
                continue
            gcl = class_of(y, ar.alpha, **kwargs) if ar.alpha.edges else 0
            dcl = class_of(y, ar.beta, **kwargs) if ar.beta.edges else 0
            ok = False
            for a2, b2 in image_x[(u2, v2)]:
                if not (reachable(x, a2, a) and reachable(x, b, b2)):
                    continue
                if (a2, a) not in F or (b, b2) not in F:
                    continue
                for pcl, rep in enumerate(reps(y, (fa, fb))):
                    lhs = F[(a2, b2)][extend_class(y, ar, pcl, **kwargs)]
                    al = reps(x, (a2, a))[F[(a2, a)][gcl]]
                    be = reps(x, (b, b2))[F[(b, b2)][dcl]]
                    mid = reps(x, (a, b))[F[(a, b)][pcl]]
                    rhs = class_of(
                        x, concat(x, concat(x, al, mid), be), **kwargs)
                    if lhs != rhs:
                        break
                else:
                    ok = True
                    break
            if not ok:
                return False

    # (d): symmetric condition through G
    image_y = {}
    for c2, d2 in gamma(y):
        image_y.setdefault((gv[c2], gv[d2]), []).append((c2, d2))
    for c, d in gamma(y):
        gc, gd = gv[c], gv[d]
        for ar in elementary_arrows(x, (gc, gd)):
            u2, v2 = ar.target
            if (u2, v2) not in image_y:
                continue
            acl = class_of(x, ar.alpha, **kwargs) if ar.alpha.edges else 0
            bcl = class_of(x, ar.beta, **kwargs) if ar.beta.edges else 0
            ok = False
            for c2, d2 in image_y[(u2, v2)]:
                if not (reachable(y, c2, c) and reachable(y, d, d2)):
                    continue
                if (c2, c) not in G or (d, d2) not in G:
                    continue
                for qcl, rep in enumerate(reps(x, (gc, gd))):
                    lhs = G[(c2, d2)][extend_class(x, ar, qcl, **kwargs)]
                    ga = reps(y, (c2, c))[G[(c2, c)][acl]]
                    gb = reps(y, (d, d2))[G[(d, d2)][bcl]]
                    mid = reps(y, (c, d))[G[(c, d)][qcl]]
                    rhs = class_of(
                        y, concat(y, concat(y, ga, mid), gb), **kwargs)
                    if lhs != rhs:
                        break
                else:
                    ok = True
                    break
            if not ok:
                return False

    return True


def compose_equivalences(e1: EquivalenceCertificate, e2: EquivalenceCertificate):
    """Certificate for the composite equivalence, re-verified."""
    if e1.y is not e2.x and (
        e1.y.n_vertices != e2.x.n_vertices or e1.y.edges != e2.x.edges
    ):
        raise ModelError("certificates do not compose: middle models differ")
    f = compose_dmaps(e1.f, e2.f)
    g = compose_dmaps(e2.g, e1.g)
    ok, res = check_dihomotopy_equivalence(
        e1.x, e2.y, f, g, depth=max(e1.depth, e2.depth))
    if not ok:
        raise ModelError(f"composite fails re-verification: {res}")
    return res


def check_two_of_three_surjective(e1, e21, f2: DMapData):
    """Given certificates for f1: x->y and for the composite f2*f1: x->z,
    with both vertex-surjective, build candidate inverse data for
    f2: y->z from the composite's and re-verify."""
    x, y = e1.x, e1.y
    z = e21.y
    for name, cert in (("f1", e1), ("f2*f1", e21)):
        if set(cert.f.vertex_map) != set(range(cert.y.n_vertices)):
            raise ModelError(f"{name} is not vertex-surjective")
    if compose_dmaps(e1.f, f2).vertex_map != e21.f.vertex_map:
        raise ModelError("f2*f1 does not match the composite certificate")
    g2 = compose_dmaps(e21.g, e1.f)  # z -> x -> y
    return check_dihomotopy_equivalence(
        y, z, f2, g2, depth=max(e1.depth, e21.depth))
