"""Lifting finite subgroups and graphs of groups from PSL2(K) to SL2(K)."""

from dataclasses import dataclass, field as dc_field
from itertools import product

from .errors import (ClosureFailure, EdgeCompatibilityFailure, EvenOrder,
                     HasTwoTorsion, InputError, RelationNotCentral,
                     RelatorFailure, TwoTorsionInVertexGroup, Unbounded,
                     VerificationFailure)
from .sl2 import (Mat2, ProjMat, eval_word, is_unipotent, normalize,
                  proj_is_involution, proj_order)

DEFAULT_GROUP_CAP = 1000


def _proj(g):
    return g if isinstance(g, ProjMat) else ProjMat(g)


def lift_element(g, bound=None):
    """The unique preimage of g whose order equals the (odd) order of g."""
    g = _proj(g)
    n = proj_order(g, bound)
    if n is None:
        raise Unbounded("no finite order within the bound")
    if n % 2 == 0:
        raise EvenOrder(f"projective order {n} is even: 2-torsion cannot lift")
    m = normalize(g.rep)
    if (m ** n).is_identity():
        return m
    return -m


# -- finite groups --------------------------------------------------------------

@dataclass(frozen=True)
class GroupType:
    kind: str  # "Cyclic" | "BorelType" | "HasTwoTorsion" | "Unrecognized"
    order: int
    p_part: int = None
    cyclic: int = None

    def to_json(self):
        out = {"kind": self.kind, "order": self.order}
        if self.kind == "BorelType":
            out.update(p_part=self.p_part, cyclic=self.cyclic)
        return out


@dataclass
class FiniteGroupTable:
    elements: list
    generators: list
    classification: GroupType

    def index(self, g):
        g = _proj(g)
        for k, x in enumerate(self.elements):
            if x.equals(g):
                return k
        return None

    def __len__(self):
        return len(self.elements)


def enumerate_finite_group(gens, cap=DEFAULT_GROUP_CAP):
    """Closure of the generators in PSL2, with a Cyclic / Borel-type classification."""
    from .errors import CapExceeded
    if cap < 1:
        raise InputError("cap must be >= 1")
    gens = [_proj(g) for g in gens]
    if not gens:
        raise InputError("need at least one generator (use the identity for the trivial group)")
    field = gens[0].field
    elements = [ProjMat(Mat2.identity(field))]
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gens:
            y = x * g
            if not any(y.equals(z) for z in elements):
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(f"more than {cap} elements: not a finite group at this cap")
        i += 1
    return FiniteGroupTable(elements, gens, _classify_group(elements))


def _classify_group(elements):
    n = len(elements)
    nontrivial = [x for x in elements if not x.is_identity()]
    if any(proj_is_involution(x) for x in nontrivial):
        return GroupType("HasTwoTorsion", n)
    if n == 1:
        return GroupType("Cyclic", 1)
    if any(proj_order(x, n) == n for x in nontrivial):
        return GroupType("Cyclic", n)
    unipotents = [x for x in nontrivial if is_unipotent(x)]
    field = elements[0].field
    if unipotents and field.base.char != 0:
        from .bt_tree import _kernel_vector
        m = unipotents[0].rep
        eps = 1 if m.trace().equals(2, min(m.min_valuation(), 0)) else -1
        e = _kernel_vector(m, field(eps))
        if all(_fixes_end(x.rep, e) for x in elements):
            p_part = len(unipotents) + 1
            return GroupType("BorelType", n, p_part, n // p_part)
    return GroupType("Unrecognized", n)


def _fixes_end(m, e):
    x, y = e
    gx = m.a * x + m.b * y
    gy = m.c * x + m.d * y
    det = x * gy - y * gx
    ref = min(m.min_valuation(), x.val_lower(), y.val_lower(), 0)
    return det.is_zero(ref)


@dataclass
class LiftedGroup:
    table: FiniteGroupTable
    lifts: list

    def __call__(self, g):
        k = self.table.index(g)
        if k is None:
            raise InputError("element is not in the group")
        return self.lifts[k]

    def items(self):
        return list(zip(self.table.elements, self.lifts))


def lift_finite_subgroup(table):
    """Elementwise order-preserving lift, checked on the full multiplication table."""
    kind = table.classification
    if kind.kind == "HasTwoTorsion":
        raise HasTwoTorsion("the group contains an involution")
    if kind.kind == "Cyclic" and kind.order % 2 == 0:
        raise HasTwoTorsion("cyclic group of even order")
    if kind.kind not in ("Cyclic", "BorelType"):
        raise InputError(f"cannot lift a group classified as {kind.kind}")
    els = table.elements
    lifts = [lift_element(x, max(len(els), 1)) for x in els]
    for L in lifts:
        if L.is_minus_identity():
            raise ClosureFailure("-I appears in the lift")
    for i, gi in enumerate(els):
        for j, gj in enumerate(els):
            k = table.index(gi * gj)
            if k is None:
                raise ClosureFailure("table is not closed under multiplication")
            if not (lifts[i] * lifts[j]).equals(lifts[k]):
                raise ClosureFailure(f"lift(g{i}) lift(g{j}) != lift(g{i} g{j})")
    return LiftedGroup(table, lifts)


# -- graphs of groups ---------------------------------------------------------------

@dataclass
class GVertex:
    id: str
    gens: list


@dataclass
class GEdge:
    id: str
    reverse: str
    source: str
    target: str
    in_tree: bool
    edge_gens: list = dc_field(default_factory=list)
    sigma_e: list = dc_field(default_factory=list)      # [(element of G_e, image in G_source)]
    sigma_ebar: list = dc_field(default_factory=list)   # [(element of G_e, image in G_target)]
    stable_letter: Mat2 = None


@dataclass
class GraphOfGroups:
    vertices: list
    edges: list
    relators: list = dc_field(default_factory=list)

    def vertex(self, vid):
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InputError(f"unknown vertex {vid!r}")

    def edge(self, eid):
        for e in self.edges:
            if e.id == eid:
                return e
        return None


def _apply_map(pairs, g, what):
    g = _proj(g)
    for src, dst in pairs:
        if _proj(src).equals(g):
            return dst
    raise InputError(f"{what} is not defined on generator {g}")


@dataclass
class LiftReport:
    generators: dict
    relators: list  # [(word, "I" | "-I" | "error")]
    verdict: str    # "Lift" | "NoLift" | "Error"

    def to_json(self):
        return {
            "schema": 1,
            "verdict": self.verdict,
            "generators": {k: m.to_json()["entries"] for k, m in sorted(self.generators.items())},
            "relators": [{"word": w, "verdict": v} for w, v in self.relators],
        }


def lift_graph_of_groups(gog, strict=True, cap=DEFAULT_GROUP_CAP):
    """Lift vertex groups uniquely, stable letters by canonical sign, then verify."""
    lifted = {}
    for v in gog.vertices:
        if not v.gens:
            raise InputError(f"vertex {v.id!r} needs at least one generator")
        table = enumerate_finite_group(v.gens, cap)
        if table.classification.kind == "HasTwoTorsion":
            raise TwoTorsionInVertexGroup(f"vertex group {v.id!r} contains an involution")
        try:
            lifted[v.id] = lift_finite_subgroup(table)
        except HasTwoTorsion as exc:
            raise TwoTorsionInVertexGroup(f"vertex group {v.id!r}: {exc}") from exc

    field = gog.vertices[0].gens[0].field
    letters = {}
    for e in gog.edges:
        if e.in_tree:
            if e.stable_letter is not None and not _proj(e.stable_letter).is_identity():
                raise InputError(f"tree edge {e.id!r} must carry a trivial stable letter")
            letters[e.id] = Mat2.identity(field)
        elif e.reverse in letters:
            letters[e.id] = letters[e.reverse].inverse()
        else:
            if e.stable_letter is None:
                raise InputError(f"edge {e.id!r} outside the tree needs a stable letter")
            letters[e.id] = normalize(_proj(e.stable_letter).rep)

    for e in gog.edges:
        rev = gog.edge(e.reverse)
        if rev is not None and not letters[rev.id].equals(letters[e.id].inverse()):
            raise EdgeCompatibilityFailure(e.id, None, "stable letters of e and its reverse are not inverse")
        t = letters[e.id]
        src, dst = lifted[e.source], lifted[e.target]
        for k, g in enumerate(e.edge_gens):
            s_e = _apply_map(e.sigma_e, g, f"sigma_e of {e.id}")
            s_ebar = _apply_map(e.sigma_ebar, g, f"sigma_ebar of {e.id}")
            if src.table.index(s_e) is None or dst.table.index(s_ebar) is None:
                raise EdgeCompatibilityFailure(e.id, k, f"edge {e.id!r}: image not in the vertex group")
            if not (_proj(t) * _proj(s_e) * _proj(t).inverse()).equals(_proj(s_ebar)):
                raise EdgeCompatibilityFailure(
                    e.id, k, f"edge {e.id!r}: t sigma_e(g) t^-1 != sigma_ebar(g) already in PSL2")
            if not (t * src(s_e) * t.inverse()).equals(dst(s_ebar)):
                raise EdgeCompatibilityFailure(e.id, k)

    symbols = {}
    for v in gog.vertices:
        for k, g in enumerate(v.gens):
            symbols[f"{v.id}.{k}"] = lifted[v.id](g)
    for e in gog.edges:
        symbols[f"t.{e.id}"] = letters[e.id]

    verdicts = []
    for word in gog.relators:
        try:
            m = evaluate_relator(word, symbols, field)
            if m.is_identity():
                verdicts.append((word, "I"))
            elif m.is_minus_identity():
                verdicts.append((word, "-I"))
            else:
                verdicts.append((word, "error"))
        except InputError:
            verdicts.append((word, "error"))
    if all(v == "I" for _, v in verdicts):
        overall = "Lift"
    elif any(v == "error" for _, v in verdicts):
        overall = "Error"
    else:
        overall = "NoLift"
    if strict:
        for w, v in verdicts:
            if v != "I":
                raise RelatorFailure(w)
    return LiftReport(symbols, verdicts, overall)


def evaluate_relator(word, symbols, field):
    """Evaluate 'v0.0 t.e1 v0.0^-1 t.e1^-1' style words on the lifted symbols."""
    result = Mat2.identity(field)
    for tok in word.split():
        name, _, exp = tok.partition("^")
        if name not in symbols:
            raise InputError(f"unknown symbol {name!r} in relator {word!r}")
        try:
            k = int(exp) if exp else 1
        except ValueError:
            raise InputError(f"bad exponent in {tok!r}") from None
        result = result * symbols[name] ** k
    return result


# -- the non-lifting relation -----------------------------------------------------

RELATOR = "ABabCDcd"


@dataclass
class NoLiftReport:
    verdict: str  # "NoLift" | "Liftable"
    minus_identity: int
    identity: int
    total: int = 16

    def to_json(self):
        return {"schema": 1, "verdict": self.verdict, "minus_identity": self.minus_identity,
                "identity": self.identity, "total": self.total}


def verify_no_lift(quad):
    """Evaluate [A,B][C,D] on all 16 sign choices of the four matrices."""
    minus = plus = 0
    for signs in product((1, -1), repeat=4):
        q = tuple(m if s == 1 else -m for s, m in zip(signs, quad))
        r = eval_word(RELATOR, q)
        if r.is_identity():
            plus += 1
        elif r.is_minus_identity():
            minus += 1
        else:
            raise RelationNotCentral(f"signs {signs}: relator is not +-I")
    if minus == 16:
        return NoLiftReport("NoLift", minus, plus)
    if plus == 16:
        return NoLiftReport("Liftable", minus, plus)
    raise VerificationFailure("sign choices disagree although every exponent sum is even")


# -- JSON -------------------------------------------------------------------------

def gog_from_json(obj, field=None):
    from .sl2 import matrix_from_json

    def mat(m):
        return matrix_from_json(m, field)

    vertices = [GVertex(str(v["id"]), [mat(m) for m in v["gens"]]) for v in obj["vertices"]]
    edges = []
    for e in obj.get("edges", []):
        edges.append(GEdge(
            id=str(e["id"]), reverse=str(e.get("reverse", "")), source=str(e["from"]),
            target=str(e["to"]), in_tree=bool(e["in_tree"]),
            edge_gens=[mat(m) for m in e.get("edge_gens", [])],
            sigma_e=[(mat(a), mat(b)) for a, b in e.get("sigma_e", [])],
            sigma_ebar=[(mat(a), mat(b)) for a, b in e.get("sigma_ebar", [])],
            stable_letter=mat(e["stable_letter"]) if e.get("stable_letter") else None))
    return GraphOfGroups(vertices, edges, list(obj.get("relators", [])))


def gog_to_json(gog):
    def mat(m):
        return (m.rep if isinstance(m, ProjMat) else m).to_json()
    return {
        "schema": 1,
        "vertices": [{"id": v.id, "gens": [mat(g) for g in v.gens]} for v in gog.vertices],
        "edges": [{
            "id": e.id, "reverse": e.reverse, "from": e.source, "to": e.target,
            "in_tree": e.in_tree, "edge_gens": [mat(g) for g in e.edge_gens],
            "sigma_e": [[mat(a), mat(b)] for a, b in e.sigma_e],
            "sigma_ebar": [[mat(a), mat(b)] for a, b in e.sigma_ebar],
            "stable_letter": mat(e.stable_letter) if e.stable_letter is not None else None,
        } for e in gog.edges],
        "relators": list(gog.relators),
    }
