"""Univariate polynomials over F_q and their deterministic factorization.

Factoring runs squarefree decomposition (with the char-p Frobenius-inverse
rewrite f(y) = u(y^p) when the derivative vanishes) followed by Berlekamp
nullspace splitting.  Splitting is fully deterministic: it walks the
nullspace basis vectors in order and, for each, tries gcd(w, v - c) for every
field element c in enumeration order — affordable because fields are capped
at desk scale, and guaranteed to separate all factors since the Berlekamp
algebra separates any two of them through some basis vector.
"""

from .errors import DivByZero
from .field import FieldElem


class UniPoly:
    """Dense univariate polynomial; coeffs ascending, trailing zeros trimmed."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        self.ctx = ctx
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.elem(v) for v in ints])

    @classmethod
    def constant(cls, ctx, c):
        if not isinstance(c, FieldElem):
            c = ctx.elem(c)
        return cls(ctx, (c,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (ctx.zero(), ctx.one()))

    def degree(self):
        return len(self.coeffs) - 1  # -1 for zero

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lc(self):
        assert self.coeffs
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ctx, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return UniPoly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ctx, out)

    def scale(self, c):
        return UniPoly(self.ctx, [v * c for v in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise DivByZero("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree()
        inv = other.lc().inverse()
        q = [self.ctx.zero()] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            if rem[i].is_zero():
                continue
            c = rem[i] * inv
            q[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = rem[i - db + j] - c * other.coeffs[j]
        return UniPoly(self.ctx, q), UniPoly(self.ctx, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g, g monic."""
        ctx = self.ctx
        r0, r1 = self, other
        s0, s1 = UniPoly.constant(ctx, 1), UniPoly(ctx)
        t0, t1 = UniPoly(ctx), UniPoly.constant(ctx, 1)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = r0.lc().inverse()
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def derivative(self):
        ctx = self.ctx
        return UniPoly(ctx, [ctx.elem(i) * self.coeffs[i]
                             for i in range(1, len(self.coeffs))])

    def evaluate(self, x):
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """self(other(y))."""
        acc = UniPoly(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.constant(self.ctx, c)
        return acc

    def shift(self, c):
        """self(y + c)."""
        return self.compose(UniPoly(self.ctx, (c, self.ctx.one())))

    def pow_mod(self, e, mod):
        result = UniPoly.constant(self.ctx, 1)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def sort_key(self):
        return (self.degree(), tuple(c.index() for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ctx == other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = "" if (c.is_one() and i > 0) else str(c.serialize())
            if i == 0:
                parts.append(cs or "1")
            elif i == 1:
                parts.append((cs + "*" if cs else "") + "y")
            else:
                parts.append((cs + "*" if cs else "") + "y^%d" % i)
        return " + ".join(parts)


class UniFactorization:
    """unit * prod(part^mult) reproduces the source polynomial."""

    __slots__ = ("unit", "parts")

    def __init__(self, unit, parts):
        self.unit = unit
        self.parts = list(parts)

    def expand(self):
        ctx = self.unit.ctx
        out = UniPoly.constant(ctx, self.unit)
        for f, m in self.parts:
            for _ in range(m):
                out = out * f
        return out

    def __repr__(self):
        return "%s * %s" % (self.unit,
                            " * ".join("(%r)^%d" % (f, m) for f, m in self.parts))


def _pth_root_poly(f):
    """For f with vanishing derivative (all exponents divisible by p),
    the unique u with u(y)^p ... realized as u(y^p) = f rewrite: returns u
    with coefficients replaced by their p-th roots so that u(y)^p == f."""
    p = f.ctx.p
    out = []
    for i in range(0, len(f.coeffs), p):
        out.append(f.coeffs[i].pth_root())
    return UniPoly(f.ctx, out)


def squarefree_decompose(f):
    """Monic-part squarefree decomposition: f = lc * prod(part^mult) with
    squarefree, pairwise-coprime monic parts.  Handles char p via the
    f(y) = u(y^p) rewrite."""
    assert f.degree() >= 1
    f = f.monic()
    p = f.ctx.p
    out = []
    fp = f.derivative()
    if fp.is_zero():
        u = _pth_root_poly(f)
        return [(g, m * p) for g, m in squarefree_decompose(u)]
    T = f.gcd(fp)
    V = f // T
    i = 1
    while V.degree() > 0:
        W = V.gcd(T)
        part = V // W
        if part.degree() > 0:
            out.append((part, i))
        V = W
        T = T // W
        i += 1
    if T.degree() > 0:
        # leftover carries only multiplicities divisible by p
        for g, m in squarefree_decompose(_pth_root_poly(T)):
            out.append((g, m * p))
    out.sort(key=lambda gm: (gm[1], gm[0].sort_key()))
    return out


def _berlekamp_split(f):
    """Factor a squarefree monic f into monic irreducibles, deterministically."""
    ctx = f.ctx
    n = f.degree()
    if n <= 1:
        return [f]
    # matrix of y^(q*i) mod f, columns i = 0..n-1
    xq = UniPoly.x(ctx).pow_mod(ctx.q, f)
    cols = [UniPoly.constant(ctx, 1)]
    for _ in range(1, n):
        cols.append((cols[-1] * xq) % f)
    # nullspace of (Q - I)^T over F_q: rows j, columns i of Q[j][i]=coeff_j(cols[i])
    M = [[cols[i][j] for i in range(n)] for j in range(n)]
    for i in range(n):
        M[i][i] = M[i][i] - ctx.one()
    basis = _nullspace(M, ctx)
    r = len(basis)  # number of irreducible factors
    factors = [f]
    if r == 1:
        return factors
    for vec in basis:
        v = UniPoly(ctx, vec)
        if v.degree() <= 0:
            continue
        for c in ctx.elements():
            if len(factors) == r:
                factors.sort(key=UniPoly.sort_key)
                return factors
            vc = v - UniPoly.constant(ctx, c)
            new = []
            for w in factors:
                if w.degree() <= 1:
                    new.append(w)
                    continue
                g = w.gcd(vc)
                if 0 < g.degree() < w.degree():
                    new.append(g)
                    new.append((w // g).monic())
                else:
                    new.append(w)
            factors = new
    factors.sort(key=UniPoly.sort_key)
    assert len(factors) == r
    return factors


def _nullspace(M, ctx):
    """Nullspace basis of an n x n matrix over the field, deterministic."""
    n = len(M)
    M = [row[:] for row in M]
    pivot_col_of_row = []
    row = 0
    pivots = {}
    for col in range(n):
        sel = None
        for i in range(row, n):
            if not M[i][col].is_zero():
                sel = i
                break
        if sel is None:
            continue
        M[row], M[sel] = M[sel], M[row]
        inv = M[row][col].inverse()
        M[row] = [v * inv for v in M[row]]
        for i in range(n):
            if i != row and not M[i][col].is_zero():
                c = M[i][col]
                M[i] = [a - c * b for a, b in zip(M[i], M[row])]
        pivots[col] = row
        pivot_col_of_row.append(col)
        row += 1
    basis = []
    for col in range(n):
        if col in pivots:
            continue
        vec = [ctx.zero()] * n
        vec[col] = ctx.one()
        for pc, pr in pivots.items():
            vec[pc] = -M[pr][col]
        basis.append(vec)
    return basis


def factor_univariate(f):
    """Complete deterministic factorization into monic irreducibles."""
    assert f.degree() >= 1
    unit = f.lc()
    parts = []
    for g, m in squarefree_decompose(f):
        for h in _berlekamp_split(g):
            parts.append((h, m))
    parts.sort(key=lambda gm: (gm[0].sort_key(), gm[1]))
    return UniFactorization(unit, parts)


def is_irreducible(f):
    """Deterministic irreducibility test via the factoring pipeline."""
    if f.degree() < 1:
        return False
    fac = factor_univariate(f)
    return len(fac.parts) == 1 and fac.parts[0][1] == 1
