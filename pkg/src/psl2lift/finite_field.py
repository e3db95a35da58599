"""Small finite fields F_q, q = p^r, with table-driven arithmetic.

Elements are integer codes 0..q-1: the base-p digits of a code are the
coefficients of a polynomial in a fixed primitive root x, so codes below p
are exactly the prime-field constants.
"""

from functools import lru_cache
from itertools import product

from .errors import InputError

MAX_Q = 1024


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _polymulmod(a, b, f, p):
    # a, b, f: coefficient lists, lowest degree first; f monic of degree r
    r = len(f) - 1
    res = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for k in range(len(res) - 1, r - 1, -1):
        c = res[k]
        if c:
            for j in range(r + 1):
                res[k - r + j] = (res[k - r + j] - c * f[j]) % p
    return res[:r]


def _find_primitive_poly(p, r):
    """Lexicographically first monic degree-r polynomial over F_p whose root generates F_q^*."""
    if r == 1:
        # x - g for the least primitive root g
        for g in range(1, p):
            if _mult_order_mod(g, p) == p - 1:
                return [(-g) % p, 1]
        raise AssertionError("no primitive root")
    q = p ** r
    for tail in product(range(p), repeat=r):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        # order of x in F_p[x]/f must be q-1
        one = [1] + [0] * (r - 1)
        x = [0, 1] + [0] * (r - 2)
        cur = one
        order = 0
        for k in range(1, q):
            cur = _polymulmod(cur, x, f, p)
            if cur == one:
                order = k
                break
        if order == q - 1:
            return f
    raise AssertionError("no primitive polynomial")


def _mult_order_mod(g, p):
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


class FiniteField:
    """F_q built from a primitive polynomial; arithmetic by lookup tables."""

    def __init__(self, p, r=1):
        if not is_prime(p):
            raise InputError(f"residue characteristic {p} is not prime")
        if r < 1:
            raise InputError("residue degree must be >= 1")
        q = p ** r
        if q > MAX_Q:
            raise InputError(f"residue field of size {q} exceeds {MAX_Q}")
        self.p, self.r, self.q = p, r, q
        self.modulus = _find_primitive_poly(p, r)
        self._build_tables()

    def _vec(self, c):
        out = []
        for _ in range(self.r):
            out.append(c % self.p)
            c //= self.p
        return out

    def _code(self, vec):
        c = 0
        for a in reversed(vec):
            c = c * self.p + a
        return c

    def _build_tables(self):
        p, q = self.p, self.q
        if self.r == 1:
            self.add_t = None
            self.mul_t = None
            self.neg_t = [(-a) % p for a in range(p)]
            self.inv_t = [0] + [pow(a, -1, p) for a in range(1, p)]
            g = (-self.modulus[0]) % p
        else:
            vecs = [self._vec(c) for c in range(q)]
            self.add_t = [[self._code([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                           for b in range(q)] for a in range(q)]
            self.neg_t = [self._code([(-x) % p for x in vecs[a]]) for a in range(q)]
            # multiplication through discrete logs of the primitive root x
            log = [None] * q
            exp = [0] * (q - 1)
            cur = [1] + [0] * (self.r - 1)
            xpoly = [0, 1] + [0] * (self.r - 2)
            for k in range(q - 1):
                c = self._code(cur)
                exp[k] = c
                log[c] = k
                cur = _polymulmod(cur, xpoly, self.modulus, p)
            self.mul_t = [[0 if (a == 0 or b == 0) else exp[(log[a] + log[b]) % (q - 1)]
                           for b in range(q)] for a in range(q)]
            self.inv_t = [0] + [exp[(-log[a]) % (q - 1)] for a in range(1, q)]
            g = exp[1]
        self.generator = g

    def add(self, a, b):
        if self.add_t is None:
            return (a + b) % self.p
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add(a, self.neg_t[b])

    def neg(self, a):
        return self.neg_t[a]

    def mul(self, a, b):
        if self.mul_t is None:
            return a * b % self.p
        return self.mul_t[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.inv_t[a]

    def pow(self, a, n):
        result = 1
        base = a
        if n < 0:
            base = self.inv(a)
            n = -n
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def order(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def is_square(self, a):
        return a == 0 or self.p == 2 or self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a):
        """Least-code square root by exhaustive search (q is small)."""
        for x in range(self.q):
            if self.mul(x, x) == a:
                return x
        return None

    def is_positive(self, a):
        """Canonical half: a nonzero residue is positive iff its code is below that of -a."""
        return a < self.neg_t[a] or (self.p == 2 and a != 0)

    def coords(self, a):
        return self._vec(a)

    def from_coords(self, vec):
        return self._code([c % self.p for c in vec])

    def __repr__(self):
        return f"GF({self.p}^{self.r})"


@lru_cache(maxsize=None)
def GF(p, r=1):
    return FiniteField(p, r)
