"""Exact arithmetic in prime fields F_p and extensions F_{p^l}.

Extension fields use a polynomial-basis representation over a fixed monic
irreducible modulus of degree l.  The modulus is always the lexicographically
smallest monic irreducible (smallest when its coefficient vector is read as an
integer in base p, most significant coefficient first), so every run of the
toolkit works in the exact same field and is bit-reproducible.

Elements are immutable; an element is a length-l tuple of residues mod p.
Enumeration order of field elements is residue-vector lexicographic.
"""

import itertools

from .errors import NotPrime, CtxMismatch, DivByZero

# Exhaustive routines downstream (root searches, hitting grids) must stay fast.
MAX_FIELD_SIZE = 1 << 16


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _polymul_mod_p(a, b, p):
    """Multiply two coefficient tuples (ascending) over F_p."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _polydivmod_mod_p(a, b, p):
    """Divide coefficient lists (ascending) over F_p; b must have lc != 0."""
    a = list(a)
    db = len(b) - 1
    while len(b) > 1 and b[-1] == 0:
        b = b[:-1]
        db -= 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        c = a[i] * inv_lead % p
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _is_irreducible(coeffs, p):
    """Exhaustive check: monic poly (ascending coeffs, lc==1) over F_p."""
    deg = len(coeffs) - 1
    for k in range(1, deg // 2 + 1):
        # try all monic divisors of degree k
        for tail in itertools.product(range(p), repeat=k):
            div = list(tail) + [1]
            _, r = _polydivmod_mod_p(coeffs, div, p)
            if len(r) == 1 and r[0] == 0:
                return False
    return True


class FieldCtx:
    """A finite field F_{p^l} with a canonical irreducible modulus."""

    def __init__(self, p, ell=1):
        if not is_prime(p):
            raise NotPrime("%d is not prime" % p)
        if ell < 1:
            raise ValueError("extension degree must be >= 1")
        if p ** ell > MAX_FIELD_SIZE:
            raise ValueError("field size %d exceeds desk-scale cap %d"
                             % (p ** ell, MAX_FIELD_SIZE))
        self.p = p
        self.ell = ell
        self.q = p ** ell
        self.modulus = self._find_modulus()

    def _find_modulus(self):
        """Lex-smallest monic irreducible of degree ell (ascending coeffs)."""
        if self.ell == 1:
            return (0, 1)  # z, unused for prime fields
        p, ell = self.p, self.ell
        for code in range(p ** ell):
            # decode with the z^(ell-1) coefficient most significant
            tail = []
            c = code
            for _ in range(ell):
                tail.append(c % p)
                c //= p
            coeffs = tail + [1]
            if coeffs[0] != 0 and _is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise AssertionError("no irreducible modulus found")  # cannot happen

    # -- element construction ------------------------------------------------

    def elem(self, value):
        """Build an element from an int (prime subfield) or coefficient seq."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise CtxMismatch("element from a different field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.ell - 1)
        else:
            coeffs = tuple(int(v) % self.p for v in value)
            if len(coeffs) != self.ell:
                coeffs = tuple(list(coeffs) + [0] * (self.ell - len(coeffs)))[:self.ell]
        return FieldElem(self, coeffs)

    def zero(self):
        return self.elem(0)

    def one(self):
        return self.elem(1)

    def elements(self):
        """All field elements, residue-vector lexicographic order."""
        for tup in itertools.product(range(self.p), repeat=self.ell):
            yield FieldElem(self, tup)

    def from_index(self, i):
        """The i-th element of elements() order."""
        digits = []
        for _ in range(self.ell):
            digits.append(i % self.p)
            i //= self.p
        return FieldElem(self, tuple(reversed(digits)))

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and self.p == other.p and self.ell == other.ell)

    def __hash__(self):
        return hash((self.p, self.ell))

    def __repr__(self):
        if self.ell == 1:
            return "F_%d" % self.p
        return "F_%d^%d" % (self.p, self.ell)


class FieldElem:
    """Immutable field element: length-l residue vector."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElem):
            raise TypeError("expected a FieldElem")
        if other.ctx != self.ctx:
            raise CtxMismatch("elements from different fields")

    def __add__(self, other):
        ctx = self.ctx
        if ctx is not getattr(other, "ctx", None):
            self._check(other)
        p = ctx.p
        if ctx.ell == 1:
            return FieldElem(ctx, ((self.coeffs[0] + other.coeffs[0]) % p,))
        return FieldElem(ctx, tuple((a + b) % p
                                    for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        ctx = self.ctx
        if ctx is not getattr(other, "ctx", None):
            self._check(other)
        p = ctx.p
        if ctx.ell == 1:
            return FieldElem(ctx, ((self.coeffs[0] - other.coeffs[0]) % p,))
        return FieldElem(ctx, tuple((a - b) % p
                                    for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        ctx = self.ctx
        if ctx is not getattr(other, "ctx", None):
            self._check(other)
        if ctx.ell == 1:
            return FieldElem(ctx, ((self.coeffs[0] * other.coeffs[0]) % ctx.p,))
        prod = _polymul_mod_p(self.coeffs, other.coeffs, ctx.p)
        if len(prod) >= len(ctx.modulus):
            _, prod = _polydivmod_mod_p(prod, list(ctx.modulus), ctx.p)
        prod = list(prod) + [0] * (ctx.ell - len(prod))
        return FieldElem(ctx, tuple(prod[:ctx.ell]))

    def inverse(self):
        if self.is_zero():
            raise DivByZero("zero has no inverse")
        ctx = self.ctx
        if ctx.ell == 1:
            return FieldElem(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        return self ** (ctx.q - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pth_root(self):
        """Inverse Frobenius: the unique b with b^p = self."""
        # Frobenius has order l on F_{p^l}, so a^(p^(l-1)) is the p-th root.
        return self ** (self.ctx.p ** (self.ctx.ell - 1))

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def index(self):
        """Position in the canonical enumeration order."""
        i = 0
        for c in self.coeffs:
            i = i * self.ctx.p + c
        return i

    def serialize(self):
        """Plain int for prime fields, list of residues otherwise."""
        if self.ctx.ell == 1:
            return self.coeffs[0]
        return list(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FieldElem) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.ell, self.coeffs))

    def __repr__(self):
        if self.ctx.ell == 1:
            return str(self.coeffs[0])
        return str(list(self.coeffs))


_FIELD_CACHE = {}


def make_field(p, ell=1):
    """Construct the canonical F_{p^l} context (cached, so repeated calls
    share one object and element operations can compare contexts by identity)."""
    key = (p, ell)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldCtx(p, ell)
    return _FIELD_CACHE[key]
