"""GF(p^k) arithmetic with exp/log tables, and the evaluation transform.

Field elements are plain ints in [0, p^k): the base-p digits of the encoding
are the coordinates w.r.t. the power basis of a fixed modulus polynomial
(least significant digit = constant term).  The modulus is the monic
irreducible of the required degree with the smallest integer encoding, found
by exhaustive search, so contexts are identical across runs and platforms.

The transform maps a coefficient array f to its evaluations f(alpha1^j1, ...,
alphas^js); it is a bijection that turns the convolution product of the
ambient algebra into the coordinatewise product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapacityError, InputError
from .orbits import CodeShape, prime_power_split

# exp/log tables are materialized in full; refuse fields beyond this size.
MAX_FIELD_SIZE = 1 << 22


# --- polynomial helpers over GF(p); polys are int lists, lowest degree first


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _prem(_ptrim(res), mod, p)


def _prem(a, mod, p):
    a = list(a)
    k = len(mod) - 1
    while len(a) > k:
        c = a[-1]
        if c:
            off = len(a) - 1 - k
            for i, mi in enumerate(mod):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
    return _ptrim(a)


def _ppowmod(a, e, mod, p):
    result = [1]
    base = _prem(a, mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]  # _prem needs a monic divisor
        a, b = b, _prem(a, b, p)
    return a


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _is_irreducible(f, p):
    """Rabin test for a monic poly f of degree k >= 1 over GF(p)."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    # Frobenius ladder: frob[j] = x^(p^j) mod f
    frob = [x]
    for _ in range(k):
        frob.append(_ppowmod(frob[-1], p, f, p))
    if frob[k] != x:
        return False
    for ell in set(_prime_factors(k)):
        diff = list(frob[k // ell])
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, _ptrim(diff), p)) > 1:  # shares a nonconstant factor
            return False
    return True


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over GF(p) with smallest integer encoding."""
    for t in range(p**k):
        low = []
        m = t
        for _ in range(k):
            low.append(m % p)
            m //= p
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldContext:
    """L = GF(p^k) presented so that every needed root of unity exists.

    k = base_degree * ext_degree, where ext_degree is minimal with
    r_i | q^ext_degree - 1 for every component length r_i; alphas[i] is the
    smallest element (in integer encoding) of multiplicative order exactly r_i.
    """

    shape: CodeShape
    p: int
    base_degree: int
    ext_degree: int
    modulus: tuple[int, ...]
    alphas: tuple[int, ...]
    _exp: np.ndarray = field(repr=False)
    _log: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return self.base_degree * self.ext_degree

    @property
    def size(self) -> int:
        return self.p**self.degree

    # -- arithmetic on int encodings

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, shift = 0, 1
        while a or b:
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, shift = 0, 1
        while a:
            out += (-a % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        off = self.size - 1
        return int(self._exp[(int(self._log[a]) + int(self._log[b])) % off])

    def inv(self, a: int) -> int:
        if a == 0:
            raise InputError("0 is not invertible")
        off = self.size - 1
        return int(self._exp[(-int(self._log[a])) % off])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise InputError("0 is not invertible")
            return 0
        off = self.size - 1
        return int(self._exp[(int(self._log[a]) * e) % off])

    def order(self, a: int) -> int:
        if a == 0:
            raise InputError("0 has no multiplicative order")
        off = self.size - 1
        return off // math.gcd(off, int(self._log[a]))

    def element_coeffs(self, a: int) -> tuple[int, ...]:
        """Coordinates of a w.r.t. the power basis, constant term first."""
        out = []
        for _ in range(self.degree):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    @lru_cache(maxsize=8)
    def subfield(self, qq: int) -> tuple[int, ...]:
        """Sorted elements of the subfield of order qq (fixed points of x -> x^qq)."""
        pp, ee = prime_power_split(qq)
        if pp != self.p or self.degree % ee != 0:
            raise InputError(f"GF({qq}) is not a subfield of GF({self.p}^{self.degree})")
        return tuple(x for x in range(self.size) if self.pow(x, qq) == x)

    def in_subfield(self, a: int, qq: int) -> bool:
        return self.pow(a, qq) == a


def _mult_order(q: int, r: int) -> int:
    if r == 1:
        return 1
    o, cur = 1, q % r
    while cur != 1:
        cur = (cur * q) % r
        o += 1
    return o


def build_context(shape: CodeShape) -> FieldContext:
    p, e = prime_power_split(shape.q)
    m = 1
    for rk in shape.r:
        m = math.lcm(m, _mult_order(shape.q, rk))
    k = e * m
    size = p**k
    if size > MAX_FIELD_SIZE:
        raise CapacityError(
            f"field GF({p}^{k}) exceeds the table budget of {MAX_FIELD_SIZE} elements",
            required=size,
            budget=MAX_FIELD_SIZE,
        )
    modulus = _find_modulus(p, k)

    def raw_mul(a: int, b: int) -> int:
        da = []
        while a:
            da.append(a % p)
            a //= p
        db = []
        while b:
            db.append(b % p)
            b //= p
        prod = _pmulmod(da, db, list(modulus), p)
        out = 0
        for c in reversed(prod):
            out = out * p + c
        return out

    def raw_pow(a: int, exp: int) -> int:
        result = 1
        while exp:
            if exp & 1:
                result = raw_mul(result, a)
            a = raw_mul(a, a)
            exp >>= 1
        return result

    # generator of the multiplicative group, then the usual exp/log tables
    off = size - 1
    factors = _prime_factors(off) if off > 1 else []
    g = 1
    for cand in range(2, size):
        if all(raw_pow(cand, off // ell) != 1 for ell in factors):
            g = cand
            break
    exp = np.zeros(off, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)
    cur = 1
    for i in range(off):
        exp[i] = cur
        log[cur] = i
        cur = raw_mul(cur, g)

    ctx = FieldContext(
        shape=shape,
        p=p,
        base_degree=e,
        ext_degree=m,
        modulus=modulus,
        alphas=(),
        _exp=exp,
        _log=log,
    )
    alphas = []
    for rk in shape.r:
        a = next(x for x in range(1, size) if ctx.order(x) == rk)
        alphas.append(a)
    object.__setattr__(ctx, "alphas", tuple(alphas))
    return ctx


@dataclass(frozen=True, eq=False)
class PolyVector:
    """Coefficient array over L indexed by I, as int encodings."""

    shape: CodeShape
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.int64)
        if arr.shape != tuple(self.shape.r):
            raise InputError(f"coefficient array shape {arr.shape} != {tuple(self.shape.r)}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)


def weight(f: PolyVector) -> int:
    return int(np.count_nonzero(f.coeffs))


def _axis_eval(arr: np.ndarray, axis: int, alpha: int, ctx: FieldContext) -> np.ndarray:
    """Replace axis t of the coefficient array by evaluations at alpha^j."""
    r = arr.shape[axis]
    moved = np.moveaxis(arr, axis, 0)
    flat = moved.reshape(r, -1)
    cols = flat.shape[1]
    pows = [ctx.pow(alpha, t) for t in range(r)]
    out = np.zeros_like(flat)
    for j in range(r):
        for k in range(r):
            w = pows[(j * k) % r]
            x = flat[k]
            for c in range(cols):
                if x[c]:
                    out[j, c] = ctx.add(int(out[j, c]), ctx.mul(w, int(x[c])))
    return np.moveaxis(out.reshape(moved.shape), 0, axis)


def _check_vector(f: PolyVector, ctx: FieldContext):
    if tuple(f.shape.r) != tuple(ctx.shape.r) or f.shape.q != ctx.shape.q:
        raise InputError("vector shape does not match the field context")
    if f.coeffs.size and (f.coeffs.min() < 0 or f.coeffs.max() >= ctx.size):
        raise InputError("coefficient encodings out of range for the context field")


def dft(f: PolyVector, ctx: FieldContext) -> PolyVector:
    """Evaluations f(alpha1^j1, ..., alphas^js), axis by axis."""
    _check_vector(f, ctx)
    arr = f.coeffs
    for axis, (alpha, _) in enumerate(zip(ctx.alphas, ctx.shape.r)):
        arr = _axis_eval(arr, axis, alpha, ctx)
    return PolyVector(f.shape, arr)


def inverse_dft(v: PolyVector, ctx: FieldContext) -> PolyVector:
    """Inverse transform: same kernel at alpha^-1, scaled by (n mod p)^-1."""
    _check_vector(v, ctx)
    arr = v.coeffs
    for axis, alpha in enumerate(ctx.alphas):
        arr = _axis_eval(arr, axis, ctx.inv(alpha), ctx)
    scalar = ctx.inv(ctx.shape.n % ctx.p)
    flat = arr.reshape(-1).copy()
    for i in range(flat.size):
        if flat[i]:
            flat[i] = ctx.mul(scalar, int(flat[i]))
    return PolyVector(v.shape, flat.reshape(arr.shape))


def convolve(f: PolyVector, g: PolyVector, ctx: FieldContext) -> PolyVector:
    """Product in the ambient algebra (cyclic in every variable)."""
    _check_vector(f, ctx)
    _check_vector(g, ctx)
    r = tuple(ctx.shape.r)
    out = np.zeros(r, dtype=np.int64)
    fidx = np.argwhere(f.coeffs)
    gidx = np.argwhere(g.coeffs)
    for i in fidx:
        fi = int(f.coeffs[tuple(i)])
        for j in gidx:
            t = tuple((int(a) + int(b)) % rk for a, b, rk in zip(i, j, r))
            out[t] = ctx.add(int(out[t]), ctx.mul(fi, int(g.coeffs[tuple(j)])))
    return PolyVector(f.shape, out)
