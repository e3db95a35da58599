"""SL2 / PSL2 matrices over K or K(i), dynamical classification and words in F4."""

from dataclasses import dataclass

from .errors import (CentralElement, DeterminantDrift, InputError,
                     PrecisionExhausted)
from .local_field import INF, ExtElement, FieldElement

LETTERS = "AaBbCcDd"


class Mat2:
    """A 2x2 matrix [[a, b], [c, d]] with entries in ``field``."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, field, a, b, c, d):
        self.field = field
        self.a, self.b, self.c, self.d = (_coerce(field, x) for x in (a, b, c, d))

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    @classmethod
    def diag(cls, field, x, y=None):
        x = _coerce(field, x)
        if y is None:
            y = x.inverse()
        return cls(field, x, 0, 0, y)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, o):
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        return Mat2(self.field, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self):
        return Mat2(self.field, -self.a, -self.b, -self.c, -self.d)

    def inverse(self):
        # adjugate; valid because det = 1
        return Mat2(self.field, self.d, -self.b, -self.c, self.a)

    def scale(self, s):
        return Mat2(self.field, self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Mat2.identity(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _scale_ref(self, other):
        vals = [e.val_lower() for e in self.entries + other.entries if not e.is_zero_like()]
        return min(vals) if vals else INF

    def equals(self, other):
        """Entrywise digit equality, judged against the smallest entry valuation."""
        ref = self._scale_ref(other)
        return all(x.equals(y, ref) for x, y in zip(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def is_identity(self):
        return self.equals(Mat2.identity(self.field))

    def is_minus_identity(self):
        return self.equals(-Mat2.identity(self.field))

    def is_central(self):
        return self.is_identity() or self.is_minus_identity()

    def is_diagonal(self):
        ref = self._scale_ref(self)
        return self.b.is_zero(ref) and self.c.is_zero(ref)

    def is_upper_triangular(self):
        return self.c.is_zero(self._scale_ref(self))

    def min_valuation(self):
        return min(e.val_lower() for e in self.entries)

    def to_json(self):
        return {"schema": 1, "field": self.field.header(), "ext": bool(self.field.is_extension),
                "entries": [e.to_json() for e in self.entries]}

    def __repr__(self):
        return f"Mat2([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"


def _coerce(field, x):
    if isinstance(x, ExtElement):
        return x
    if isinstance(x, FieldElement):
        return ExtElement.lift(x) if field.is_extension else x
    return field(x)


def mat_arith(x, y=None, op="mul"):
    """Checked product or inverse: the result must still have determinant 1."""
    if op == "mul":
        if y is None:
            raise InputError("mul needs two matrices")
        if x.field != y.field:
            raise InputError("matrices over different fields")
        out = x * y
    elif op == "inv":
        out = x.inverse()
    else:
        raise InputError(f"unknown matrix operation {op!r}")
    try:
        ok = out.det().equals(1)
    except PrecisionExhausted as exc:
        raise DeterminantDrift(str(exc)) from exc
    if not ok:
        raise DeterminantDrift("determinant drifted away from 1")
    return out


def check_sl2(m):
    try:
        ok = m.det().equals(1)
    except PrecisionExhausted as exc:
        raise DeterminantDrift(str(exc)) from exc
    if not ok:
        raise DeterminantDrift("matrix does not have determinant 1")
    return m


class ProjMat:
    """Class of a matrix modulo +-I, stored by its canonical-sign representative."""

    __slots__ = ("rep",)

    def __init__(self, m):
        self.rep = normalize(m)

    @property
    def field(self):
        return self.rep.field

    def __mul__(self, o):
        return ProjMat(self.rep * o.rep)

    def inverse(self):
        return ProjMat(self.rep.inverse())

    def __pow__(self, n):
        return ProjMat(self.rep ** n)

    def equals(self, other):
        return self.rep.equals(other.rep) or self.rep.equals(-other.rep)

    def __eq__(self, other):
        if not isinstance(other, ProjMat):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def is_identity(self):
        return self.rep.is_central()

    def __repr__(self):
        return f"ProjMat({self.rep!r})"


def normalize(m):
    """Pick the sign of m whose first nonzero entry (a, b, c, d order) has a positive leading digit."""
    for e in m.entries:
        if not e.is_zero_like():
            return m if e.is_positive() else -m
    raise PrecisionExhausted("all entries indistinguishable from zero")


@dataclass(frozen=True)
class ElementClass:
    kind: str  # "elliptic" | "hyperbolic"
    translation_length: int

    def to_json(self):
        return {"kind": self.kind, "length": self.translation_length}


def _as_mat(g):
    return g.rep if isinstance(g, ProjMat) else g


def classify(g):
    """Elliptic/hyperbolic type from the trace valuation: length max(0, -2 v(tr))."""
    g = _as_mat(g)
    if g.is_central():
        raise CentralElement("+-I acts trivially on the tree")
    t = g.trace()
    if t.is_zero_like():
        if t.val_lower() >= 0:
            return ElementClass("elliptic", 0)
        raise PrecisionExhausted("trace valuation undetermined")
    v = t.valuation()
    if v < 0:
        return ElementClass("hyperbolic", -2 * v)
    return ElementClass("elliptic", 0)


def default_order_bound(field):
    q = field.base.q
    return 2 * field.base.p * (q * q - 1)


def order(g, bound=None):
    """Least n <= bound with g^n = I, or None if there is none."""
    g = _as_mat(g)
    if bound is None:
        bound = default_order_bound(g.field)
    if bound < 1:
        raise InputError("bound must be >= 1")
    if g.is_identity():
        return 1
    if not g.is_minus_identity() and classify(g).kind == "hyperbolic":
        return None
    power = g
    for n in range(1, bound + 1):
        if power.is_identity():
            return n
        power = power * g
    return None


def proj_order(g, bound=None):
    """Order of the image in PSL2: least n with g^n = +-I, or None."""
    m = _as_mat(g)
    if bound is None:
        bound = default_order_bound(m.field)
    if m.is_central():
        return 1
    if classify(m).kind == "hyperbolic":
        return None
    power = m
    for n in range(1, bound + 1):
        if power.is_central():
            return n
        power = power * m
    return None


def proj_is_involution(g):
    m = _as_mat(g)
    if m.is_central():
        return False
    return m.trace().is_zero(m.min_valuation())


def is_unipotent(g):
    m = _as_mat(g)
    if m.is_central():
        return False
    t = m.trace()
    ref = min(m.min_valuation(), 0)
    return t.equals(2, ref) or t.equals(-2, ref)


# -- words in the free group on A, B, C, D ----------------------------------

def parse_word(s):
    """'AbC' -> ((0, 1), (1, -1), (2, 1)); lowercase is the inverse letter."""
    out = []
    for ch in s.strip():
        if ch in " .*":
            continue
        k = LETTERS.find(ch)
        if k < 0:
            raise InputError(f"bad letter {ch!r} in word {s!r}")
        out.append((k // 2, 1 if k % 2 == 0 else -1))
    return tuple(out)


def free_reduce(word):
    stack = []
    for x in word:
        if stack and stack[-1][0] == x[0] and stack[-1][1] == -x[1]:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def word_str(word):
    return "".join(LETTERS[2 * k + (0 if e == 1 else 1)] for k, e in word)


def word_inverse(word):
    return tuple((k, -e) for k, e in reversed(word))


def exponent_parities(word):
    out = [0, 0, 0, 0]
    for k, e in word:
        out[k] ^= 1
    return tuple(out)


def eval_word(word, quad):
    if isinstance(word, str):
        word = parse_word(word)
    word = free_reduce(word)
    field = quad[0].field
    mats = {}
    for k, m in enumerate(quad):
        mats[(k, 1)] = m
        mats[(k, -1)] = m.inverse()
    result = Mat2.identity(field)
    for x in word:
        result = result * mats[x]
    return result


def matrix_from_json(obj, field=None):
    from .local_field import field_from_header, with_i
    if field is None:
        K = field_from_header(obj["field"])
        field = with_i(K)[0] if obj.get("ext") else K
    return Mat2(field, *(field.element_from_json(e) for e in obj["entries"]))
