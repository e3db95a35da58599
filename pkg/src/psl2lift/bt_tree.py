"""The Bruhat-Tits tree of SL2(K): vertices, action, balls and fixed-point sets.

A vertex is the class of the lattice with basis columns (u^n, 0) and (b, 1),
where b is a finite expansion sum(c_k u^k) with every k < n.  Every lattice
class has exactly one such representative, so (n, b) is a normal form.  The
parent of (n, b) is (n - 1, b mod u^(n-1)) and its q children are
(n + 1, b + c u^n); all parents lead towards the end (1 : 0).
"""

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (CapExceeded, DepthInsufficient, InputError, NotElliptic,
                     NotFiniteOrder, PrecisionExhausted, VerificationFailure)
from .local_field import INF
from .sl2 import Mat2, ProjMat, classify, is_unipotent, proj_order

DEFAULT_CAP = 10 ** 6
GREATER_THAN_DEPTH = "GreaterThanDepth"


@dataclass(frozen=True, order=True)
class TreeVertex:
    n: int
    b: tuple = ()  # ((exponent, digit), ...) increasing, nonzero digits, exponents < n

    def parent(self):
        return TreeVertex(self.n - 1, tuple(t for t in self.b if t[0] < self.n - 1))

    def child(self, c):
        return TreeVertex(self.n + 1, self.b + ((self.n, c),) if c else self.b)

    def to_json(self, field):
        return {"n": self.n, "b": field.from_expansion(self.b).to_json()}

    def label(self):
        if not self.b:
            return f"({self.n},0)"
        return f"({self.n}," + "+".join(f"{c}u^{k}" for k, c in self.b) + ")"


STANDARD = TreeVertex(0, ())


def vertex_from_json(obj, field):
    n = obj["n"]
    b = field.element_from_json(obj["b"])
    return TreeVertex(n, b.expansion(n))


def _first_difference(b1, b2):
    d1, d2 = dict(b1), dict(b2)
    diff = [k for k in set(d1) | set(d2) if d1.get(k) != d2.get(k)]
    return min(diff) if diff else INF


def distance(v, w):
    """|d1 - d2| for the elementary divisors u^d1, u^d2 of the change of basis."""
    D = w.n - v.n
    m = _first_difference(v.b, w.b)
    d1 = min(D, m - v.n, 0)
    return D - 2 * d1


def neighbors(v, q):
    out = [v.parent()]
    out.extend(v.child(c) for c in range(q))
    return out


def _residue_count(field):
    if field.is_extension:
        raise InputError("tree operations are implemented over the base field K only")
    return field.q


def ball_size(q, radius):
    if radius == 0:
        return 1
    return 1 + (q + 1) * (q ** radius - 1) // (q - 1)


def ball(center, radius, field, cap=DEFAULT_CAP):
    """All vertices at distance <= radius from center, in BFS order."""
    if radius < 0:
        raise InputError("radius must be >= 0")
    q = _residue_count(field)
    if ball_size(q, radius) > cap:
        raise CapExceeded(f"ball of radius {radius} has {ball_size(q, radius)} vertices > cap {cap}")
    seen = {center: 0}
    order = [center]
    queue = deque([center])
    while queue:
        v = queue.popleft()
        dv = seen[v]
        if dv == radius:
            continue
        for w in neighbors(v, q):
            if w not in seen:
                seen[w] = dv + 1
                order.append(w)
                queue.append(w)
    return order


def geodesic(v, w):
    """Vertices of the geodesic from v to w, inclusive."""
    left, right = [v], [w]
    a, b = v, w
    while a.n > b.n:
        a = a.parent()
        left.append(a)
    while b.n > a.n:
        b = b.parent()
        right.append(b)
    while a != b:
        a, b = a.parent(), b.parent()
        left.append(a)
        right.append(b)
    right.pop()
    return left + right[::-1]


# -- action -----------------------------------------------------------------

def _lattice_normal_form(x11, x12, x21, x22, det_val):
    """Normal form of the lattice spanned by columns (x11, x21), (x12, x22).

    ``det_val`` is the valuation of the determinant, supplied by the caller
    so that no cancellation is needed to find it.
    """
    z21, z22 = x21.is_zero_like(), x22.is_zero_like()
    if z21 and z22:
        raise PrecisionExhausted("bottom row indistinguishable from zero")
    if z22:
        swap = True
    elif z21:
        if x21.val_lower() < x22.val:
            raise PrecisionExhausted("cannot certify the pivot valuation")
        swap = False
    else:
        swap = x21.val < x22.val
    if swap:
        x11, x12, x21, x22 = x12, x11, x22, x21
    piv = x22.val
    n = det_val - 2 * piv
    bb = x12 / x22
    return TreeVertex(n, bb.expansion(n))


def _vertex_entries(v, field):
    return field.u_power(v.n), field.from_expansion(v.b)


def act(g, v, field=None):
    """Image of a vertex under g in SL2(K) (or its class in PSL2(K))."""
    m = g.rep if isinstance(g, ProjMat) else g
    field = field or m.field
    _residue_count(field)
    un, b = _vertex_entries(v, field)
    x11 = m.a * un
    x12 = m.a * b + m.b
    x21 = m.c * un
    x22 = m.c * b + m.d
    return _lattice_normal_form(x11, x12, x21, x22, v.n)


def act_gl(entries, det_val, v, field):
    """Action of an invertible matrix given by entries and determinant valuation."""
    a, bq, c, d = entries
    un, b = _vertex_entries(v, field)
    return _lattice_normal_form(a * un, a * b + bq, c * un, c * b + d, det_val + v.n)


def displacement(g, v):
    return distance(v, act(g, v))


def translation_length_bfs(g, depth, center=STANDARD, exhaustive=False, cap=DEFAULT_CAP):
    """Minimum displacement d(v, g v) found in the ball of radius ``depth``.

    The displacement is convex along geodesics and every vertex outside the
    minimal set has a neighbour with strictly smaller displacement, so a
    vertex whose neighbours are all no better is a global minimiser.  The
    result is returned only when such a certificate is found inside the
    ball; otherwise GREATER_THAN_DEPTH.

    ``exhaustive`` scans the whole ball; the default walks downhill from
    the center, visiting at most depth * (q + 1) vertices.
    """
    if depth < 1:
        raise InputError("depth must be >= 1")
    m = g.rep if isinstance(g, ProjMat) else g
    field = m.field
    q = _residue_count(field)
    if exhaustive:
        verts = ball(center, depth, field, cap)
        disp = {v: displacement(m, v) for v in verts}
        best = min(disp.values())
        for v in verts:
            if disp[v] == best and all(
                    (disp[w] if w in disp else displacement(m, w)) >= best for w in neighbors(v, q)):
                return best
        return GREATER_THAN_DEPTH
    v = center
    dv = displacement(m, v)
    for step in range(depth + 1):
        better = None
        for w in neighbors(v, q):
            dw = displacement(m, w)
            if dw < dv:
                better, dbetter = w, dw
                break
        if better is None:
            return dv
        if step == depth:
            break
        v, dv = better, dbetter
    return GREATER_THAN_DEPTH


def fixed_vertices(g, verts):
    m = g.rep if isinstance(g, ProjMat) else g
    return frozenset(v for v in verts if act(m, v) == v)


# -- fixed sets ---------------------------------------------------------------

def _normalize_point(x, y):
    """Projective point (x : y) scaled so the coordinate of least valuation is 1."""
    if x.is_zero_like() and y.is_zero_like():
        raise PrecisionExhausted("eigenvector indistinguishable from zero")
    if y.is_zero_like() or (not x.is_zero_like() and x.val <= y.val):
        return (x.field.one(), y / x)
    return (x / y, y.field.one())


def same_point(p1, p2):
    ref = min(p1[0].val_lower(), p1[1].val_lower(), p2[0].val_lower(), p2[1].val_lower(), 0)
    return p1[0].equals(p2[0], ref) and p1[1].equals(p2[1], ref)


def _kernel_vector(m, lam):
    """A nonzero vector in the kernel of m - lam*I (rank one)."""
    a, b, c, d = m.a - lam, m.b, m.c, m.d - lam
    if not b.is_zero_like() or not a.is_zero_like():
        return _normalize_point(b, -a)
    return _normalize_point(-d, c)


def _frame_from_end(e):
    """An SL2(O) matrix whose first column is the primitive vector e."""
    x, y = e
    if not x.is_zero_like() and x.equals(1):
        return Mat2(x.field, 1, 0, y, 1)
    return Mat2(x.field, x, -1, 1, 0)


@dataclass
class FixedSetDescriptor:
    kind: str                       # "band" | "horoball"
    nerve_kind: str = None          # "vertex" | "edge" | "line" for bands
    nerve: tuple = ()               # vertices, or a pair of ends for a line
    radius: Fraction = Fraction(0)
    end: tuple = None               # horoball: projective eigenvector
    apex: int = None                # horoball: -v(x) in the eigenvector frame
    depth: int = 0
    center: TreeVertex = STANDARD
    fixed: frozenset = dc_field(default=frozenset(), repr=False)
    _frame: Mat2 = dc_field(default=None, repr=False)
    _frame_det_val: int = dc_field(default=0, repr=False)

    def nerve_distance(self, v):
        """Distance from v to the nerve (to its midpoint for an edge nerve)."""
        if self.nerve_kind == "vertex":
            return Fraction(distance(v, self.nerve[0]))
        if self.nerve_kind == "edge":
            return Fraction(min(distance(v, w) for w in self.nerve)) + Fraction(1, 2)
        if self.nerve_kind == "line":
            w = _to_frame(self._frame, self._frame_det_val, v)
            return Fraction(_apartment_distance(w))
        raise InputError("no nerve for a horoball")

    def contains(self, v):
        """Membership predicate from the descriptor alone."""
        if self.kind == "band":
            return self.nerve_distance(v) <= self.radius
        return horoball_member(self, v)

    def same_nerve(self, other):
        if self.kind != other.kind:
            return False
        if self.kind == "horoball":
            return same_point(self.end, other.end) and self.apex == other.apex
        if self.nerve_kind != other.nerve_kind:
            return False
        if self.nerve_kind == "line":
            (p, q), (r, s) = self.nerve, other.nerve
            return ((same_point(p, r) and same_point(q, s)) or
                    (same_point(p, s) and same_point(q, r)))
        return set(self.nerve) == set(other.nerve)

    def to_json(self, field):
        out = {"schema": 1, "kind": self.kind, "depth": self.depth,
               "fixed_in_ball": len(self.fixed)}
        if self.kind == "band":
            out["nerve_kind"] = self.nerve_kind
            out["radius"] = str(self.radius)
            if self.nerve_kind == "line":
                out["nerve"] = [[c.to_json() for c in pt] for pt in self.nerve]
            else:
                out["nerve"] = [w.to_json(field) for w in self.nerve]
        else:
            out["end"] = [c.to_json() for c in self.end]
            out["apex"] = self.apex
        return out


def _to_frame(frame, det_val, v):
    # frame^{-1} up to scalar is the adjugate
    adj = (frame.d, -frame.b, -frame.c, frame.a)
    return act_gl(adj, det_val, v, frame.field)


def _apartment_distance(v):
    if not v.b:
        return 0
    return v.n - v.b[0][0]


def horoball_member(desc, v, ray_length=None):
    """Busemann test along the stored ray r_0, r_1, ... towards the fixed end.

    v is in the horoball iff d(v, r_k) <= d(r_0, r_k) = k for some k; the
    quantity d(v, r_k) - k is nonincreasing in k, so checking up to the
    ray length where it stabilises is exact.
    """
    w = _to_frame(desc._frame, desc._frame_det_val, v)
    top = -desc.apex  # v(x); ray r_k = (v(x) - k, 0) heads to the end (1 : 0)
    if ray_length is None:
        low = w.b[0][0] if w.b else w.n
        ray_length = max(desc.depth, top - low, top - w.n) + 2
    for k in range(ray_length + 1):
        if distance(w, TreeVertex(top - k, ())) <= k:
            return True
    return False


def fixed_set(g, depth, center=STANDARD, cap=DEFAULT_CAP):
    """Describe Fix(g) for a nontrivial finite-order elliptic g, measured on a ball."""
    m = g.rep if isinstance(g, ProjMat) else g
    field = m.field
    _residue_count(field)
    if m.is_central():
        raise InputError("the identity fixes the whole tree")
    if classify(m).kind != "elliptic":
        raise NotElliptic("hyperbolic elements fix no vertex")
    if proj_order(m) is None:
        raise NotFiniteOrder("no finite order within the search bound")
    verts = ball(center, depth, field, cap)
    fixed = fixed_vertices(m, verts)

    if is_unipotent(m):
        eps = 1 if m.trace().equals(2, min(m.min_valuation(), 0)) else -1
        e = _kernel_vector(m, field(eps))
        P = _frame_from_end(e)
        conj = P.inverse() * m * P
        x = conj.b / conj.a
        desc = FixedSetDescriptor("horoball", end=e, apex=-x.valuation(), depth=depth,
                                  center=center, fixed=fixed, _frame=P)
        return desc

    if not fixed:
        raise DepthInsufficient("no fixed vertex inside the ball")
    t = m.trace()
    disc = t * t - 4
    if field.is_square(disc):
        root = field.sqrt(disc)
        half = field(Fraction(1, 2))
        lam1, lam2 = (t + root) * half, (t - root) * half
        e1, e2 = _kernel_vector(m, lam1), _kernel_vector(m, lam2)
        P = Mat2(field, e1[0], e2[0], e1[1], e2[1])
        det_val = P.det().valuation()
        desc = FixedSetDescriptor("band", "line", (e1, e2), depth=depth, center=center,
                                  fixed=fixed, _frame=P, _frame_det_val=det_val)
        desc.radius = max(desc.nerve_distance(v) for v in fixed)
        return desc

    # eigenvectors only over a quadratic extension: Fix is a finite ball
    if any(distance(center, v) == depth for v in fixed):
        raise DepthInsufficient("fixed set reaches the ball boundary")
    fl = sorted(fixed)
    best = (0, fl[0], fl[0])
    for i, a in enumerate(fl):
        for b in fl[i:]:
            d = distance(a, b)
            if d > best[0]:
                best = (d, a, b)
    D, a, b = best
    path = geodesic(a, b)
    if D % 2 == 0:
        desc = FixedSetDescriptor("band", "vertex", (path[D // 2],), Fraction(D, 2),
                                  depth=depth, center=center, fixed=fixed)
    else:
        desc = FixedSetDescriptor("band", "edge", (path[D // 2], path[D // 2 + 1]),
                                  Fraction(D, 2), depth=depth, center=center, fixed=fixed)
    return desc


def verify_descriptor(desc, verts):
    """Pointwise agreement of the descriptor predicate with the measured fixed set."""
    bad = [v for v in verts if desc.contains(v) != (v in desc.fixed)]
    if bad:
        raise VerificationFailure(f"descriptor disagrees with the action at {bad[0].label()}")
    return True


# -- nesting --------------------------------------------------------------------

DISJOINT, G_SUBSET_H, H_SUBSET_G, SAME_NERVE, OVERLAP = (
    "Disjoint", "GSubsetH", "HSubsetG", "SameNerve", "Overlap")


def _set_relation(S, T):
    if not (S & T):
        return DISJOINT
    if S <= T:
        return G_SUBSET_H
    if T <= S:
        return H_SUBSET_G
    return OVERLAP


@dataclass
class NestingResult:
    verdict: str
    pointwise: str
    descriptor_sets: str
    g: FixedSetDescriptor
    h: FixedSetDescriptor


def nesting_check(g, h, depth, center=STANDARD, cap=DEFAULT_CAP):
    """Relation between Fix(g) and Fix(h) on the ball, from descriptors and pointwise."""
    dg = fixed_set(g, depth, center, cap)
    dh = fixed_set(h, depth, center, cap)
    verts = ball(center, depth, _field_of(g), cap)
    Sg = frozenset(v for v in verts if dg.contains(v))
    Sh = frozenset(v for v in verts if dh.contains(v))
    from_desc = _set_relation(Sg, Sh)
    pointwise = _set_relation(dg.fixed, dh.fixed)
    if from_desc != pointwise:
        raise VerificationFailure(f"descriptor relation {from_desc} != pointwise {pointwise}")
    verdict = SAME_NERVE if dg.same_nerve(dh) else pointwise
    if verdict == SAME_NERVE and pointwise not in (G_SUBSET_H, H_SUBSET_G):
        raise VerificationFailure("same nerve but fixed sets are not nested")
    return NestingResult(verdict, pointwise, from_desc, dg, dh)


def _field_of(g):
    return (g.rep if isinstance(g, ProjMat) else g).field


def ball_to_dot(verts, field, highlight=frozenset()):
    """Graphviz DOT text of a ball; highlighted vertices are filled."""
    index = {v: i for i, v in enumerate(verts)}
    lines = ["graph ball {", "  node [shape=circle, fontsize=8];"]
    for v, i in index.items():
        style = ', style=filled, fillcolor="#f4a261"' if v in highlight else ""
        lines.append(f'  v{i} [label="{v.label()}"{style}];')
    for v, i in index.items():
        p = v.parent()
        if p in index:
            lines.append(f"  v{index[p]} -- v{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
