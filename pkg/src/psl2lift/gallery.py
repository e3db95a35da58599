"""Quadruples satisfying [A,B][C,D] = -I, the dense family and word trace scans."""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import (CapExceeded, ConditionViolated, ExclusionHit, InputError,
                     NotASquareForLambda, PrecisionExhausted, UnsupportedFamily,
                     VerificationFailure)
from .lifting import RELATOR
from .local_field import with_i
from .sl2 import (LETTERS, Mat2, classify, eval_word, exponent_parities,
                  matrix_from_json, parse_word, word_str)

FAMILIES = ("F1", "F2", "F3", "F4", "F5", "flat")
DEFAULT_SCAN_CAP = 10 ** 7


# -- the explicit families ----------------------------------------------------

@dataclass
class Quad:
    family: str
    A: Mat2
    B: Mat2
    C: Mat2
    D: Mat2
    hyperbolic: str = None  # letter of the element required to be hyperbolic

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D)

    def to_json(self):
        return {"schema": 1, "family": self.family,
                "matrices": {k: getattr(self, k).to_json() for k in "ABCD"}}


def _q8_pair(F, i):
    return Mat2(F, i, 0, 0, -i), Mat2(F, 0, 1, -1, 0)


def _symmetric_hyperbolic(F):
    u = F.uniformizer()
    s = (u * 2).inverse()
    u2 = u * u
    return Mat2(F, (u2 + 1) * s, (u2 - 1) * s, (u2 - 1) * s, (u2 + 1) * s)


def build_family(family, K):
    """The quadruple for ``family`` over K(i), with its stated relations checked."""
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}; expected one of {FAMILIES}")
    F, i = with_i(K)
    I = Mat2.identity(F)
    u = F.uniformizer()
    anti = Mat2(F, 0, -i, -i, 0)
    if family == "F1":
        A, B = _q8_pair(F, i)
        q = Quad(family, A, B, _symmetric_hyperbolic(F), I, "C")
    elif family == "F2":
        C, D = _q8_pair(F, i)
        q = Quad(family, I, _symmetric_hyperbolic(F), C, D, "B")
    elif family == "F3":
        q = Quad(family, Mat2.diag(F, u), I, anti, Mat2(F, 0, 1, -1, 0), "A")
    elif family == "F4":
        A, B = _q8_pair(F, i)
        q = Quad(family, A, B, Mat2.diag(F, u), I, "C")
    elif family == "F5":
        A, B = _q8_pair(F, i)
        u2 = u * u
        s = -(u * 2).inverse()
        C = Mat2(F, (u2 + 1) * s, i * (1 - u2) * s, i * (u2 - 1) * s, (u2 + 1) * s)
        q = Quad(family, A, B, C, I, "C")
    else:
        q = Quad(family, I, I, anti, Mat2(F, 0, 1, -1, 0))
    check_family(q)
    return q


def _conj(x, y):
    return x * y * x.inverse()


def family_relations(q):
    """Named relations claimed for the family, as (name, lhs, rhs) triples."""
    A, B, C, D = q.as_tuple()
    I = Mat2.identity(A.field)
    rels = [("det A", A.det(), 1), ("det B", B.det(), 1),
            ("det C", C.det(), 1), ("det D", D.det(), 1)]
    mats = []

    def q8(x, y, nx, ny):
        mats.extend([(f"{nx}^2 = -I", x * x, -I), (f"{ny}^2 = -I", y * y, -I),
                     (f"({nx}{ny})^2 = -I", (x * y) * (x * y), -I)])

    if q.family == "F1":
        q8(A, B, "A", "B")
        mats += [("ACA^-1 = C^-1", _conj(A, C), C.inverse()),
                 ("BCB^-1 = C^-1", _conj(B, C), C.inverse())]
    elif q.family == "F2":
        q8(C, D, "C", "D")
        mats += [("CBC^-1 = B^-1", _conj(C, B), B.inverse()),
                 ("DBD^-1 = B^-1", _conj(D, B), B.inverse())]
    elif q.family == "F3":
        q8(C, D, "C", "D")
        mats += [("CAC^-1 = A^-1", _conj(C, A), A.inverse()),
                 ("DAD^-1 = A^-1", _conj(D, A), A.inverse())]
    elif q.family == "F4":
        q8(A, B, "A", "B")
        mats += [("ACA^-1 = C", _conj(A, C), C),
                 ("BC^-1B^-1 = C", _conj(B, C.inverse()), C)]
    elif q.family == "F5":
        q8(A, B, "A", "B")
        mats += [("AC^-1A^-1 = C", _conj(A, C.inverse()), C),
                 ("BCB^-1 = C", _conj(B, C), C)]
    else:
        q8(C, D, "C", "D")
    mats.append(("ABA^-1B^-1CDC^-1D^-1 = -I", eval_word(RELATOR, q.as_tuple()), -I))
    return rels, mats


def check_family(q):
    rels, mats = family_relations(q)
    for name, lhs, rhs in rels:
        if not lhs.equals(rhs):
            raise VerificationFailure(f"{q.family}: {name} fails")
    for name, lhs, rhs in mats:
        if not lhs.equals(rhs):
            raise VerificationFailure(f"{q.family}: {name} fails")
    if not q.A.is_diagonal():
        raise VerificationFailure(f"{q.family}: A is not diagonal")
    if q.hyperbolic:
        m = getattr(q, q.hyperbolic)
        if classify(m).kind != "hyperbolic":
            raise VerificationFailure(f"{q.family}: {q.hyperbolic} is not hyperbolic")
    return True


# -- the dense family -----------------------------------------------------------

def default_pair(lam):
    K = lam.field
    l2 = lam * lam
    C = Mat2(K, (l2 + 3) / (1 - l2), 1, -1, 0)
    D = Mat2(K, 1, 2, 0, 1)
    return C, D


@dataclass
class DenseQuad:
    lam: object
    b: object
    A: Mat2
    B: Mat2
    C: Mat2
    D: Mat2
    alpha: object
    beta: object
    gamma: object
    delta: object
    default: bool = True

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D)

    def to_json(self):
        return {"schema": 1, "default_pair": self.default,
                "lambda": self.lam.to_json(), "b": self.b.to_json(),
                "commutator": {k: getattr(self, k).to_json()
                               for k in ("alpha", "beta", "gamma", "delta")},
                "matrices": {k: getattr(self, k).to_json() for k in "ABCD"}}


def _nonzero(x, name):
    # a value that cannot be told apart from zero counts as a violation
    try:
        if x.is_zero(0 if x.is_zero_like() else None):
            raise ConditionViolated(name)
    except PrecisionExhausted:
        raise ConditionViolated(name, f"{name}: undecidable at the working precision") from None


def build_dense(K, lam=None, b=None, C=None, D=None):
    """A = diag(lam, 1/lam) and B from the entry formulas, so that [A,B][C,D] = -I."""
    if b is None:
        raise InputError("b is required")
    b = K(b)
    user_pair = C is not None or D is not None
    if user_pair and (C is None or D is None):
        raise InputError("supply both C and D, or neither")
    if not user_pair:
        if lam is None:
            raise InputError("lambda is required with the default C, D")
        lam = K(lam)
        _check_lambda(lam)
        l2 = lam * lam
        excl = (l2 + 3) * (l2 + 3) - 8
        try:
            hit = excl.is_zero(0 if excl.is_zero_like() else None)
        except PrecisionExhausted:
            hit = True
        if hit:
            raise ExclusionHit("(lambda^2 + 3)^2 = 8 makes beta vanish")
        C, D = default_pair(lam)
    else:
        _nonzero(C.b, "beta_1 != 0")
        _nonzero(D.b, "beta_2 != 0")

    comm = C * D * C.inverse() * D.inverse()
    alpha, beta, gamma, delta = comm.entries
    s = alpha + delta + 2
    _nonzero(s, "alpha + delta != -2")
    _nonzero(b, "b != 0")
    _nonzero(beta, "beta != 0")
    _nonzero(alpha + 1, "alpha != -1")
    _nonzero(delta + 1, "delta != -1")

    target = -(delta + 1) / (alpha + 1)
    if user_pair:
        if lam is None:
            if not K.is_square(target):
                raise NotASquareForLambda("-(1+delta)/(1+alpha) is not a square in K")
            lam = K.sqrt(target)
        else:
            lam = K(lam)
        _check_lambda(lam)
    if not (lam * lam).equals(target):
        raise ConditionViolated("lambda^2 = -(1+delta)/(1+alpha)")

    a = -beta * (alpha + 1) / (b * s)
    c = -(alpha + 1) * (delta + 1) / (b * s)
    d = b * (alpha * delta - 1) / (beta * (alpha + 1))
    A = Mat2.diag(K, lam)
    B = Mat2(K, a, b, c, d)
    out = DenseQuad(lam, b, A, B, C, D, alpha, beta, gamma, delta, not user_pair)
    for name in "ABCD":
        if not getattr(out, name).det().equals(1):
            raise VerificationFailure(f"det {name} != 1")
    if not eval_word(RELATOR, out.as_tuple()).is_minus_identity():
        raise VerificationFailure("[A,B][C,D] != -I")
    return out


def _check_lambda(lam):
    for v, name in ((0, "lambda != 0"), (1, "lambda != 1"), (-1, "lambda != -1")):
        _nonzero(lam - v, name)


# -- trace scans ----------------------------------------------------------------

TRACE_CLASSES = ("zero", "plus_two", "minus_two", "other")


def trace_class(m):
    t = m.trace()
    ref = min(m.min_valuation(), 0)
    if t.is_zero(ref):
        return "zero"
    if t.equals(2, ref):
        return "plus_two"
    if t.equals(-2, ref):
        return "minus_two"
    return "other"


def count_reduced_words(L):
    """Freely reduced words of length <= L in four letters, the empty word included."""
    return 1 + sum(8 * 7 ** (k - 1) for k in range(1, L + 1))


@dataclass
class TraceScanReport:
    max_len: int
    entries: list  # (word, class) in length-lex order
    counts: dict = dc_field(default_factory=dict)
    has_trace_zero: bool = False
    has_unipotent: bool = False
    all_in_zero_pm2: bool = False
    other_traces: dict = dc_field(default_factory=dict)

    def to_json(self, include_words=False):
        out = {"schema": 1, "max_len": self.max_len, "words": len(self.entries),
               "counts": self.counts, "has_trace_zero": self.has_trace_zero,
               "has_unipotent": self.has_unipotent, "all_in_zero_pm2": self.all_in_zero_pm2}
        if include_words:
            out["entries"] = [{"word": w, "class": c} for w, c in self.entries]
            out["other_traces"] = self.other_traces
        return out


def _letter_mats(quad):
    mats = []
    for m in quad:
        mats.extend([m, m.inverse()])
    return mats  # indexed like LETTERS


def _scan_subtree(quad, first, L):
    """Depth-first scan of reduced words starting with letter index ``first``."""
    mats = _letter_mats(quad)
    out = []
    others = {}
    stack = [(LETTERS[first], first, mats[first])]
    while stack:
        w, last, m = stack.pop()
        cls = trace_class(m)
        if cls == "other":
            others[w] = m.trace().to_json()
        out.append((w, cls, cls in ("plus_two", "minus_two") and m.is_central()))
        if len(w) < L:
            inv = last ^ 1
            for k in range(7, -1, -1):
                if k != inv:
                    stack.append((w + LETTERS[k], k, m * mats[k]))
    return out, others


def _scan_worker(args):
    quad_json, first, L = args
    quad = tuple(matrix_from_json(q) for q in quad_json)
    return _scan_subtree(quad, first, L)


def _length_lex_key(w):
    return (len(w), [LETTERS.index(ch) for ch in w])


def trace_scan(quad, L, jobs=1, cap=DEFAULT_SCAN_CAP):
    """Classify tr w(quad) for every freely reduced word of length <= L."""
    if L < 0:
        raise InputError("L must be >= 0")
    total = count_reduced_words(L)
    if total > cap:
        raise CapExceeded(f"{total} words exceed the cap {cap}")
    quad = tuple(quad)
    entries = [("", "plus_two", True)]
    others = {}
    if L >= 1:
        if jobs and jobs > 1:
            payload = [([m.to_json() for m in quad], k, L) for k in range(8)]
            with ProcessPoolExecutor(max_workers=min(jobs, 8, os.cpu_count() or 1)) as ex:
                parts = list(ex.map(_scan_worker, payload))
        else:
            parts = [_scan_subtree(quad, k, L) for k in range(8)]
        for words, oth in parts:
            entries.extend(words)
            others.update(oth)
    entries.sort(key=lambda e: _length_lex_key(e[0]))
    counts = {c: 0 for c in TRACE_CLASSES}
    central = 0
    for _, c, is_central in entries:
        counts[c] += 1
        central += is_central
    counts["central"] = central
    entries = [(w, c) for w, c, _ in entries]
    return TraceScanReport(
        max_len=L, entries=entries, counts=counts,
        has_trace_zero=counts["zero"] > 0,
        has_unipotent=counts["plus_two"] + counts["minus_two"] > central,
        all_in_zero_pm2=counts["other"] == 0,
        other_traces=others)


# -- normal forms in the first family -------------------------------------------

def parity_normal_form_check(family, word, K):
    """Check the parity dichotomy for a word evaluated on F1."""
    if family != "F1":
        raise UnsupportedFamily("the normal-form presentation is only available for F1")
    if isinstance(word, str):
        word = parse_word(word)
    q = build_family("F1", K)
    a, b, c, d = exponent_parities(word)
    m = eval_word(word, q.as_tuple())
    if m.is_central():
        observed = "trivial"
    elif trace_class(m) == "zero":
        observed = "involution"
    elif classify(m).kind == "hyperbolic":
        observed = "hyperbolic"
    else:
        observed = "elliptic"
    if (a, b) in ((1, 0), (0, 1)):
        form, allowed = ("alpha gamma^k" if a else "beta gamma^k"), {"involution"}
    elif (a, b) == (0, 0):
        form, allowed = "gamma^k", {"trivial", "hyperbolic"}
    else:
        form, allowed = "alpha beta gamma^k", {"involution", "hyperbolic"}
    return {"schema": 1, "word": word_str(word), "parities": [a, b, c, d],
            "normal_form": form, "observed": observed,
            "consistent": observed in allowed}
