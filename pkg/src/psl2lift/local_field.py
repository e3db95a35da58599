"""Truncated arithmetic in Q_p and F_q((t)), and in the unramified K(i).

An element is u^val * unit where the unit is known to ``prec`` digits
(``prec <= N``).  Precision is tracked: a sum keeps only the digits known
in both operands, so cancellation shows up as lost digits instead of
invented ones.  Three kinds of element exist:

* nonzero: ``val`` integer, ``prec >= 1``, unit with nonzero leading digit;
* exact zero: ``val is None`` (provably zero, e.g. a constructed constant);
* zero at precision: ``prec == 0`` and ``val`` holds the absolute precision
  k, meaning "congruent to 0 mod u^k, nothing more known".
"""

import math
from functools import lru_cache
import random as _random
from fractions import Fraction

from .errors import (DivisionByZero, InputError, NotASquare, OrderMismatch,
                     PrecisionExhausted, UnsupportedExtension, ZeroInput)
from .finite_field import GF, is_prime

INF = math.inf


def _vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class LocalField:
    """Common behaviour of the two base-field families."""

    is_extension = False

    def __init__(self, p, r, N, char):
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if N < 1:
            raise InputError("precision N must be >= 1")
        self.p, self.r, self.N, self.char = p, r, N, char
        self.residue_field = GF(p, r)
        self.q = p ** r
        # digits that must agree before two values are declared equal
        self.min_digits = max(1, N // 4)

    # construction ---------------------------------------------------------

    @property
    def base(self):
        return self

    def header(self):
        return {"char": self.char, "p": self.p, "r": self.r, "N": self.N}

    def zero(self):
        return FieldElement(self, None, 0, 0)

    def zero_at(self, k):
        return FieldElement(self, k, 0, 0)

    def one(self):
        return self(1)

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field != self:
                raise InputError("element belongs to a different field")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self._from_int(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return self._from_int(x.numerator)
            return self._from_int(x.numerator) / self._from_int(x.denominator)
        raise InputError(f"cannot coerce {x!r} into {self}")

    def uniformizer(self):
        return self._make(1, self._unit_one(), self.N)

    def u_power(self, k):
        return self._make(k, self._unit_one(), self.N)

    def residue_lift(self, code, val=0):
        """The element c * u^val with c the canonical digit for a residue code."""
        if code == 0:
            return self.zero()
        return self._make(val, self._unit_from_digit(code), self.N)

    def from_expansion(self, terms):
        """Sum of digit(c) * u^k over (k, c) pairs, as one element."""
        if not terms:
            return self.zero()
        lo = min(k for k, _ in terms)
        hi = max(k for k, _ in terms)
        if hi - lo + 1 > self.N:
            raise PrecisionExhausted("expansion longer than the working precision")
        return self._from_expansion(lo, dict(terms))

    def random_element(self, rng=None, vmin=0, vmax=0):
        rng = rng or _random
        val = rng.randint(vmin, vmax)
        digits = [rng.randrange(1, self.q)] + [rng.randrange(self.q) for _ in range(self.N - 1)]
        return self._from_digit_list(val, digits)

    def random_unit(self, rng=None):
        return self.random_element(rng, 0, 0)

    # JSON -----------------------------------------------------------------

    def element_from_json(self, obj):
        val = obj["val"]
        if val == "inf":
            return self.zero()
        prec = obj.get("prec", self.N)
        digits = self._digits_from_coords(obj["digits"])
        if prec == 0:
            return self.zero_at(val)
        return self._from_digit_list(val, digits[:prec])

    def __eq__(self, other):
        return (isinstance(other, LocalField) and not isinstance(other, ExtField)
                and self.header() == other.header())

    def __hash__(self):
        return hash(tuple(sorted(self.header().items())))

    # square classes -------------------------------------------------------

    def is_square(self, a):
        a = self(a)
        if a.is_zero_like():
            raise ZeroInput("is_square needs a nonzero input")
        if a.val % 2:
            return False
        return self._unit_is_square(a.unit, a.prec)

    def sqrt(self, a):
        a = self(a)
        if a.is_exact_zero():
            return a
        if not self.is_square(a):
            raise NotASquare(f"{a} is not a square")
        x = self._sqrt_nonzero(a)
        if not x.is_positive():
            x = -x
        return x

    def _newton_sqrt(self, a):
        residue_root = self.residue_field.sqrt(a.leading_digit())
        x = self.residue_lift(residue_root, a.val // 2)
        half = self(Fraction(1, 2))
        for _ in range(self.N.bit_length() + 3):
            nxt = (x + a / x) * half
            if (nxt - x).is_zero_like():
                x = nxt
                break
            x = nxt
        return x

    def teichmuller(self, c, order_check=None):
        """The (q-1)-th root of unity with residue c."""
        F = self.residue_field
        if c % self.q == 0:
            raise InputError("Teichmuller lift of 0 is undefined")
        w = self._teichmuller(c % self.q)
        if order_check is not None:
            m = order_check
            if not (w ** m).equals(self.one()) or any(
                    (w ** d).equals(self.one()) for d in range(1, m) if m % d == 0):
                raise OrderMismatch(f"residue {c} has order {F.order(c % self.q)}, not {m}")
        return w

    def minus_one_is_square(self):
        if self.p == 2:
            return False  # -1 = 7 mod 8 in Q_2
        return self.residue_field.is_square(self.residue_field.neg(1))


class PAdicField(LocalField):
    """Q_p with relative precision N."""

    def __init__(self, p, N=32):
        super().__init__(p, 1, N, 0)

    def __repr__(self):
        return f"Q_{self.p}(N={self.N})"

    def _unit_one(self):
        return 1

    def _unit_from_digit(self, d):
        return d

    def _make(self, val, unit, prec):
        return FieldElement(self, val, unit % self.p ** prec, prec)

    def _from_int(self, n):
        if n == 0:
            return self.zero()
        v = _vp(n, self.p)
        return self._make(v, n // self.p ** v, self.N)

    def _from_expansion(self, lo, terms):
        n = sum(d * self.p ** (k - lo) for k, d in terms.items())
        v = _vp(n, self.p)
        return self._make(lo + v, n // self.p ** v, self.N)

    def _from_digit_list(self, val, digits):
        unit = sum(d * self.p ** i for i, d in enumerate(digits))
        if unit % self.p == 0:
            raise InputError("leading digit must be nonzero")
        return self._make(val, unit, len(digits))

    def _digits_from_coords(self, coords):
        return list(coords)

    def unit_digits(self, x):
        u, out = x.unit, []
        for _ in range(x.prec):
            out.append(u % self.p)
            u //= self.p
        return out

    def leading_digit(self, x):
        return x.unit % self.p

    def _add(self, x, y):
        A = min(x.absprec, y.absprec)
        terms = [e for e in (x, y) if e.prec > 0]
        if not terms:
            return self.zero_at(A)
        vmin = min(e.val for e in terms)
        if A <= vmin:
            return self.zero_at(A)
        mod = self.p ** (A - vmin)
        s = sum(e.unit * self.p ** (e.val - vmin) for e in terms) % mod
        if s == 0:
            return self.zero_at(A)
        k = _vp(s, self.p)
        val = vmin + k
        return FieldElement(self, val, s // self.p ** k, min(self.N, A - val))

    def _neg(self, x):
        return FieldElement(self, x.val, (-x.unit) % self.p ** x.prec, x.prec)

    def _mul_units(self, x, y, prec):
        return x.unit * y.unit % self.p ** prec

    def _inv_unit(self, x):
        return pow(x.unit, -1, self.p ** x.prec)

    def _unit_is_square(self, unit, prec):
        p = self.p
        if p != 2:
            return self.residue_field.is_square(unit % p)
        # residue search: w is a square iff v(w - s) >= 4 for a unit square s
        if prec < 4:
            raise PrecisionExhausted("need 4 known digits to decide squares in Q_2")
        return any((unit - s * s) % 16 == 0 for s in range(1, 16, 2))

    def _sqrt_nonzero(self, a):
        if self.p != 2:
            return self._newton_sqrt(a)
        w, prec = a.unit, a.prec
        x = 1
        for k in range(3, prec):
            if (x * x - w) % 2 ** (k + 1):
                x += 2 ** (k - 1)
        return self._make(a.val // 2, x, max(1, prec - 1))

    def _teichmuller(self, c):
        mod = self.p ** self.N
        x = c
        for _ in range(self.N + 1):
            nxt = pow(x, self.p, mod)
            if nxt == x:
                break
            x = nxt
        return self._make(0, x, self.N)


class LaurentField(LocalField):
    """F_q((t)) for odd q, with relative precision N."""

    def __init__(self, p, r=1, N=32):
        if p == 2:
            raise InputError("characteristic 2 is out of scope (PSL2 = SL2 there)")
        super().__init__(p, r, N, p)
        self._prime = r == 1
        F = self.residue_field
        if r > 1:
            self._vec_t = [tuple(F.coords(c)) for c in range(self.q)]
            # code of x^j reduced modulo the defining polynomial, x having code p
            self._xpow_codes = [F.pow(p, j) for j in range(2 * r - 1)]

    def __repr__(self):
        return f"F_{self.q}((t))(N={self.N})"

    def _unit_one(self):
        return (1,)

    def _unit_from_digit(self, d):
        return (d,)

    def _make(self, val, unit, prec):
        unit = tuple(unit[:prec]) + (0,) * (prec - len(unit))
        return FieldElement(self, val, unit, prec)

    def _from_int(self, n):
        c = n % self.p
        if c == 0:
            return self.zero()
        return self._make(0, (c,), self.N)

    def _from_expansion(self, lo, terms):
        hi = max(terms)
        coeffs = [terms.get(k, 0) for k in range(lo, hi + 1)]
        k = next(i for i, c in enumerate(coeffs) if c)
        return self._make(lo + k, coeffs[k:], self.N)

    def _from_digit_list(self, val, digits):
        if digits[0] == 0:
            raise InputError("leading digit must be nonzero")
        return self._make(val, digits, len(digits))

    def _digits_from_coords(self, coords):
        F, r = self.residue_field, self.r
        return [F.from_coords(coords[i:i + r]) for i in range(0, len(coords), r)]

    def unit_digits(self, x):
        return list(x.unit)

    def leading_digit(self, x):
        return x.unit[0]

    def _add(self, x, y):
        A = min(x.absprec, y.absprec)
        terms = [e for e in (x, y) if e.prec > 0]
        if not terms:
            return self.zero_at(A)
        vmin = min(e.val for e in terms)
        L = A - vmin
        if L <= 0:
            return self.zero_at(A)
        acc = [0] * L
        F = self.residue_field
        for e in terms:
            off = e.val - vmin
            if off >= L:
                continue
            u = e.unit
            n = min(len(u), L - off)
            if self._prime:
                p = self.p
                for i in range(n):
                    acc[off + i] = (acc[off + i] + u[i]) % p
            else:
                at = F.add_t
                for i in range(n):
                    acc[off + i] = at[acc[off + i]][u[i]]
        for k, c in enumerate(acc):
            if c:
                val = vmin + k
                return FieldElement(self, val, tuple(acc[k:]), L - k)
        return self.zero_at(A)

    def _neg(self, x):
        nt = self.residue_field.neg_t
        return FieldElement(self, x.val, tuple(nt[c] for c in x.unit), x.prec)

    def _mul_units(self, x, y, prec):
        return self._conv(x.unit, y.unit, prec)

    def _conv(self, a, b, prec):
        """First ``prec`` coefficients of a*b by Kronecker substitution."""
        a, b = a[:prec], b[:prec]
        F, p, r = self.residue_field, self.p, self.r
        if r == 1:
            slots, pa, pb = 1, a, b
        else:
            # t^k x^j lives in slot k*(2r-1) + j, so x-degrees never collide
            slots = 2 * r - 1
            pad = (0,) * (r - 1)
            vt = self._vec_t
            pa = [c for d in a for c in vt[d] + pad]
            pb = [c for d in b for c in vt[d] + pad]
        bound = min(len(a), len(b)) * r * (p - 1) ** 2
        nb = max(1, (bound.bit_length() + 7) // 8)
        A = int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in pa), "little")
        B = int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in pb), "little")
        raw = (A * B).to_bytes(nb * (len(pa) + len(pb)), "little")
        if r == 1:
            return tuple(int.from_bytes(raw[k * nb:(k + 1) * nb], "little") % p
                         for k in range(prec))
        mt, at, xc = F.mul_t, F.add_t, self._xpow_codes
        out = []
        for k in range(prec):
            base = k * slots
            s = 0
            for j in range(slots):
                c = int.from_bytes(raw[(base + j) * nb:(base + j + 1) * nb], "little") % p
                if c:
                    s = at[s][mt[c][xc[j]]]
            out.append(s)
        return tuple(out)

    def _inv_unit(self, x):
        # Newton iteration y <- y (2 - a y), doubling the known digits each step
        a, n = x.unit, x.prec
        F = self.residue_field
        nt = F.neg_t
        y = (F.inv(a[0]),)
        k = 1
        while k < n:
            k = min(2 * k, n)
            e = [nt[c] for c in self._conv(a, y, k)]
            e[0] = F.add(e[0], 2 % self.p)
            y = self._conv(y, tuple(e), k)
        return y

    def _unit_is_square(self, unit, prec):
        return self.residue_field.is_square(unit[0])

    def _sqrt_nonzero(self, a):
        return self._newton_sqrt(a)

    def _teichmuller(self, c):
        return self._make(0, (c,), self.N)


class FieldElement:
    __slots__ = ("field", "val", "unit", "prec")

    def __init__(self, field, val, unit, prec):
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec

    # predicates -----------------------------------------------------------

    def is_exact_zero(self):
        return self.val is None

    def is_zero_like(self):
        return self.prec == 0

    @property
    def absprec(self):
        if self.val is None:
            return INF
        return self.val + self.prec

    def valuation(self):
        if self.val is None:
            return INF
        if self.prec == 0:
            raise PrecisionExhausted(f"valuation unknown: zero modulo u^{self.val}")
        return self.val

    def val_lower(self):
        """Valuation if known, else the best lower bound."""
        return INF if self.val is None else self.val

    def leading_digit(self):
        if self.prec == 0:
            raise PrecisionExhausted("no significant digits")
        return self.field.leading_digit(self)

    def is_positive(self):
        return self.field.residue_field.is_positive(self.leading_digit())

    def digits(self):
        """Unit digits padded with zeros to N (residue codes)."""
        if self.prec == 0:
            return [0] * self.field.N
        d = self.field.unit_digits(self)
        return d + [0] * (self.field.N - len(d))

    def expansion(self, upto):
        """(exponent, digit) pairs for all nonzero digits below u^upto."""
        if self.val is not None and self.absprec < upto:
            raise PrecisionExhausted(f"digits up to u^{upto} not known")
        if self.prec == 0:
            return ()
        d = self.field.unit_digits(self)
        return tuple((self.val + i, c) for i, c in enumerate(d) if c and self.val + i < upto)

    def to_json(self):
        if self.val is None:
            return {"val": "inf", "digits": []}
        F = self.field.residue_field
        coords = []
        for c in self.digits():
            coords.extend(F.coords(c) if self.field.r > 1 else [c])
        out = {"val": self.val, "digits": coords}
        if self.prec != self.field.N:
            out["prec"] = self.prec
        return out

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise InputError("operands live in different fields")
            return other
        if isinstance(other, ExtElement):
            return NotImplemented
        return self.field(other)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.val is None:
            return other
        if other.val is None:
            return self
        return self.field._add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.prec == 0:
            return self
        return self.field._neg(self)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.val is None or other.val is None:
            return self.field.zero()
        if self.prec == 0 or other.prec == 0:
            return self.field.zero_at(self.val + other.val)
        prec = min(self.prec, other.prec)
        return FieldElement(self.field, self.val + other.val,
                            self.field._mul_units(self, other, prec), prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.val is None:
            raise DivisionByZero("division by exact zero")
        if self.prec == 0:
            raise PrecisionExhausted("division by a value indistinguishable from zero")
        return FieldElement(self.field, -self.val, self.field._inv_unit(self), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------

    def equals(self, other, ref=None):
        """Digit equality at the working precision.

        ``ref`` is the valuation scale the comparison is made against (for a
        matrix, its smallest entry valuation).  When the difference is zero
        only to fewer than ``min_digits`` digits below that scale the
        comparison is inconclusive and raises PrecisionExhausted.
        """
        o = self._coerce(other)
        if o is NotImplemented:
            return ExtElement.lift(self).equals(other, ref)
        d = self - o
        other = o
        return _decide_zero(d, (self, other), ref)

    def is_zero(self, ref=None):
        return _decide_zero(self, (self,), ref)

    def __eq__(self, other):
        if not isinstance(other, (FieldElement, ExtElement, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        if self.val is None:
            return "0"
        if self.prec == 0:
            return f"O(u^{self.val})"
        return f"u^{self.val}*{self.field.unit_digits(self)[:6]}..."


def _decide_zero(d, operands, ref):
    if d.is_exact_zero():
        return True
    if not d.is_zero_like():
        return False
    if ref is None:
        scales = [e.val_lower() for e in operands if not e.is_zero_like()]
        if not scales:
            return True
        ref = min(scales)
    if ref == INF:
        return True
    field = d.field.base
    if d.val_lower() - ref < field.min_digits:
        raise PrecisionExhausted("equality indistinguishable at the working precision")
    return True


# -- quadratic extension K(i) ------------------------------------------------

class ExtField:
    """K(i) for -1 a non-square in K, q odd (unramified quadratic extension)."""

    is_extension = True

    def __init__(self, base):
        if base.minus_one_is_square():
            raise InputError("-1 is already a square; use K itself")
        if base.p == 2:
            raise UnsupportedExtension("K(i) over residue characteristic 2 is ramified")
        self.base = base
        self.N = base.N
        self.p, self.q = base.p, base.q

    def header(self):
        return self.base.header()

    @property
    def min_digits(self):
        return self.base.min_digits

    def __call__(self, x, im=None):
        if isinstance(x, ExtElement):
            return x
        re = self.base(x)
        return ExtElement(re, self.base.zero() if im is None else self.base(im))

    def zero(self):
        return ExtElement(self.base.zero(), self.base.zero())

    def one(self):
        return self(1)

    @property
    def i(self):
        return ExtElement(self.base.zero(), self.base.one())

    def uniformizer(self):
        return self(self.base.uniformizer())

    def element_from_json(self, obj):
        return ExtElement(self.base.element_from_json(obj["re"]),
                          self.base.element_from_json(obj["im"]))

    def random_element(self, rng=None, vmin=0, vmax=0):
        return ExtElement(self.base.random_element(rng, vmin, vmax),
                          self.base.random_element(rng, vmin, vmax))

    def __eq__(self, other):
        return isinstance(other, ExtField) and other.base == self.base

    def __hash__(self):
        return hash(("ext", self.base))

    def __repr__(self):
        return f"{self.base!r}(i)"


class ExtElement:
    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @property
    def field(self):
        return _ext_of(self.re.field)

    @staticmethod
    def lift(x):
        return ExtElement(x, x.field.zero())

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            return other
        if isinstance(other, FieldElement):
            return ExtElement(other, other.field.zero())
        return ExtElement(self.re.field(other), self.re.field.zero())

    def __add__(self, other):
        o = self._coerce(other)
        return ExtElement(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        return ExtElement(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        return ExtElement(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n.is_exact_zero():
            raise DivisionByZero("division by exact zero")
        inv = n.inverse()
        return ExtElement(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = ExtElement(self.re.field.one(), self.re.field.zero())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_exact_zero(self):
        return self.re.is_exact_zero() and self.im.is_exact_zero()

    def is_zero_like(self):
        return self.re.is_zero_like() and self.im.is_zero_like()

    def valuation(self):
        # unramified: {1, i} is an integral basis, so v = min of the parts
        if self.is_exact_zero():
            return INF
        if self.is_zero_like():
            raise PrecisionExhausted("valuation unknown")
        return min(x.val for x in (self.re, self.im) if not x.is_zero_like())

    def val_lower(self):
        if self.is_zero_like():
            return min(self.re.val_lower(), self.im.val_lower())
        return self.valuation()

    @property
    def absprec(self):
        return min(self.re.absprec, self.im.absprec)

    def _leading_part(self):
        re, im = self.re, self.im
        if re.is_zero_like():
            return im
        if im.is_zero_like():
            return re
        return re if re.val <= im.val else im

    def leading_digit(self):
        return self._leading_part().leading_digit()

    def is_positive(self):
        return self._leading_part().is_positive()

    def equals(self, other, ref=None):
        o = self._coerce(other)
        d = self - o
        if ref is None:
            scales = [e.val_lower() for e in (self, o) if not e.is_zero_like()]
            ref = min(scales) if scales else None
        return _decide_zero(d.re, (self.re, o.re), ref) and _decide_zero(d.im, (self.im, o.im), ref)

    def is_zero(self, ref=None):
        return self.equals(0, ref)

    def __eq__(self, other):
        if not isinstance(other, (FieldElement, ExtElement, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def to_json(self):
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    def __repr__(self):
        return f"({self.re!r} + {self.im!r}*i)"


@lru_cache(maxsize=None)
def _ext_of(base):
    return ExtField(base)


# -- constructors -------------------------------------------------------------

def make_field(p, N=32, r=1, char=0):
    """Q_p (char 0) or F_{p^r}((t)) (char p)."""
    if char == 0:
        if r != 1:
            raise InputError("only Q_p itself is supported in characteristic 0")
        return PAdicField(p, N)
    if char != p:
        raise InputError(f"characteristic {char} does not match residue characteristic {p}")
    return LaurentField(p, r, N)


def field_from_header(h):
    return make_field(h["p"], h["N"], h.get("r", 1), h.get("char", 0))


def with_i(K):
    """Return (F, i): F is K when -1 is a square there, else the unramified K(i)."""
    if K.minus_one_is_square():
        return K, K.sqrt(K(-1))
    F = ExtField(K)
    return F, F.i


def element_to_json(x):
    return x.to_json()
