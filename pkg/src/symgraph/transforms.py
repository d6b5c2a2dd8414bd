"""Horocyclic Radon/Abel transforms, their inverses, and the dual pair.

Radial functions are finitely supported sequences f(0..N) indexed by polygon
distance; even functions on Z are stored as g(0..M).  Every transform comes
in an exact flavour (values in the quadratic ring, identities hold with ==)
and a numeric flavour (float/complex values); a sequence carries an ``exact``
flag chosen at construction and operations preserve it.

Conventions:

* the Radon transform of f at (ray, h) sums f over the h-th horocycle;
* the Abel transform weights horocycle sums by q^(h/2); on radial input it is
  independent of the ray and even in h, which the oracle tests assert rather
  than assume;
* the dual transform is adjoint to the Abel transform under the pairing
  sum_n A*g(n) f(n) delta(n) = sum_h g(h) Af(h), which is the identity that
  fixes every coefficient below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebraic import AlgebraicValue, q_half_power
from .boundary import BoundaryRay, DepthError, sphere_horocycle_count
from .words import GraphParams, ball, distance

__all__ = [
    "RadialSeq",
    "EvenSeq",
    "radon",
    "radon_via_counts",
    "abel",
    "abel_via_radon",
    "abel_inv",
    "abel_inv_rearranged",
    "dual_abel",
    "dual_abel_via_counts",
    "dual_abel_inv",
    "dual_abel_inv_recurrence",
    "schwartz_norm",
    "even_norm",
]


def _to_exact(value, q: int):
    if isinstance(value, AlgebraicValue):
        if value.q != q:
            raise ValueError(f"value over sqrt({value.q}) in a sqrt({q}) context")
        return value
    if isinstance(value, (int, Fraction)):
        return AlgebraicValue(value, 0, q)
    raise TypeError(f"cannot treat {value!r} as an exact ring value")


def _zero(params: GraphParams, exact: bool):
    return AlgebraicValue(0, 0, params.q) if exact else 0.0


def _qpow(params: GraphParams, m: int, exact: bool):
    """q**(m/2) in the arithmetic of the current flavour."""
    if exact:
        return q_half_power(params.q, m)
    return params.q ** (m / 2.0)


def _frac(num: int, den: int, exact: bool):
    return Fraction(num, den) if exact else num / den


@dataclass(frozen=True)
class RadialSeq:
    """A radial function x -> f(|x|), stored as f(0), ..., f(N)."""

    params: GraphParams
    values: tuple
    exact: bool = True

    @classmethod
    def of(cls, params: GraphParams, values, exact: bool = True) -> "RadialSeq":
        if exact:
            values = tuple(_to_exact(v, params.q) for v in values)
        else:
            values = tuple(complex(v) if isinstance(v, complex) else float(v) for v in values)
        if not values:
            raise ValueError("a radial sequence needs at least the value at the origin")
        return cls(params, values, exact)

    @classmethod
    def delta_origin(cls, params: GraphParams, exact: bool = True) -> "RadialSeq":
        return cls.of(params, (1,), exact)

    @property
    def support_radius(self) -> int:
        return len(self.values) - 1

    def value(self, n: int):
        if 0 <= n < len(self.values):
            return self.values[n]
        return _zero(self.params, self.exact)

    def last_nonzero(self) -> int | None:
        for n in range(len(self.values) - 1, -1, -1):
            v = self.values[n]
            vanishes = v.is_zero() if isinstance(v, AlgebraicValue) else v == 0
            if not vanishes:
                return n
        return None

    def norm_sq(self):
        """Squared L2 norm under counting measure: sum |f(n)|^2 delta(n)."""
        total = _zero(self.params, self.exact)
        for n, v in enumerate(self.values):
            sq = abs(v) ** 2 if isinstance(v, complex) else v * v
            total = total + sq * self.params.delta(n)
        return total


@dataclass(frozen=True)
class EvenSeq:
    """An even function on Z, stored as g(0), ..., g(M) with g(-n) = g(n)."""

    params: GraphParams
    values: tuple
    exact: bool = True

    @classmethod
    def of(cls, params: GraphParams, values, exact: bool = True) -> "EvenSeq":
        if exact:
            values = tuple(_to_exact(v, params.q) for v in values)
        else:
            values = tuple(complex(v) if isinstance(v, complex) else float(v) for v in values)
        if not values:
            raise ValueError("an even sequence needs at least the value at 0")
        return cls(params, values, exact)

    @property
    def support_radius(self) -> int:
        return len(self.values) - 1

    def value(self, h: int):
        h = abs(h)
        if h < len(self.values):
            return self.values[h]
        return _zero(self.params, self.exact)

    def last_nonzero(self) -> int | None:
        for n in range(len(self.values) - 1, -1, -1):
            v = self.values[n]
            vanishes = v.is_zero() if isinstance(v, AlgebraicValue) else v == 0
            if not vanishes:
                return n
        return None


# -- Radon transform ----------------------------------------------------------


def radon(f: RadialSeq, ray: BoundaryRay, h: int):
    """Horocycle sum of f by explicit vertex enumeration (the oracle path).

    Walks the ball of the support radius and adds f(|x|) whenever x lies on
    the h-th horocycle of the ray; needs ray depth > support radius.
    """
    radius = f.support_radius
    if ray.depth <= radius:
        raise DepthError(f"radon over support radius {radius} needs ray depth > {radius}")
    m = ray.depth
    prefix = ray.prefix
    total = _zero(f.params, f.exact)
    for x in ball(f.params, radius):
        if m - distance(x, prefix) == h:
            total = total + f.value(len(x))
    return total


def radon_via_counts(f: RadialSeq, h: int):
    """Horocycle sum via the closed sphere-intersection counts (the fast path)."""
    total = _zero(f.params, f.exact)
    for n in range(abs(h), f.support_radius + 1):
        count = sphere_horocycle_count(f.params, n, h)
        if count:
            total = total + f.value(n) * count
    return total


# -- Abel transform and inverses ------------------------------------------------


def abel(f: RadialSeq) -> EvenSeq:
    """Abel transform: q^(h/2)-weighted horocycle sums, in closed form.

    Af(h) collects f(|h|) with weight q^(|h|/2), the odd offsets f(|h|+2j-1)
    with weight (k-2) q^(|h|/2+j-1), and the even offsets f(|h|+2j) with
    weight (r-2)/(r-1) q^(|h|/2+j).  The support radius is preserved.
    """
    params, exact = f.params, f.exact
    N = f.support_radius
    sigma = params.sigma
    out = []
    for h in range(N + 1):
        total = _qpow(params, h, exact) * f.value(h)
        j = 1
        while h + 2 * j - 1 <= N:
            total = total + _qpow(params, h + 2 * j - 2, exact) * f.value(h + 2 * j - 1) * sigma
            if h + 2 * j <= N:
                total = total + (
                    _qpow(params, h + 2 * j, exact)
                    * f.value(h + 2 * j)
                    * _frac(params.r - 2, params.r - 1, exact)
                )
            j += 1
        out.append(total)
    return EvenSeq(params, tuple(out), exact)


def abel_via_radon(f: RadialSeq, ray: BoundaryRay) -> EvenSeq:
    """Abel transform computed from enumerated horocycle sums on one ray."""
    radius = f.support_radius
    if ray.depth <= radius:
        raise DepthError(f"needs ray depth > {radius}")
    params, exact = f.params, f.exact
    sums = {}
    for x in ball(params, radius):
        h = ray.depth - distance(x, ray.prefix)
        sums[h] = sums.get(h, _zero(params, exact)) + f.value(len(x))
    out = []
    for h in range(radius + 1):
        out.append(_qpow(params, h, exact) * sums.get(h, _zero(params, exact)))
    return EvenSeq(params, tuple(out), exact)


def abel_inv(g: EvenSeq) -> RadialSeq:
    """Inverse Abel transform (telescoped alternating form).

    f(n) = (1/k) q^(-(n-1)/2) sum_{m>=1} [1 + (-1)^(m-1) (k-1)^m] q^(-m/2)
           [g(n+m-1) - g(n+m+1)]; the sum is finite on finitely supported g.
    """
    params, exact = g.params, g.exact
    k = params.k
    M = g.support_radius
    out = []
    for n in range(M + 1):
        acc = _zero(params, exact)
        for m in range(1, M - n + 3):
            coeff = 1 + (-1) ** (m - 1) * (k - 1) ** m
            if coeff == 0:
                continue
            diff = g.value(n + m - 1) - g.value(n + m + 1)
            acc = acc + _qpow(params, -m, exact) * diff * coeff
        out.append(_qpow(params, -(n - 1), exact) * acc * _frac(1, k, exact))
    return RadialSeq(params, tuple(out), exact)


def abel_inv_rearranged(g: EvenSeq) -> RadialSeq:
    """Inverse Abel transform, grouped by g(n+m) instead of by differences.

    f(n) = q^(-n/2) { g(n) - (k-2) q^(-1/2) g(n+1)
                      - sum_{m>=2} [(q-1)/k + ((r-k)/k)(-1)^m (k-1)^m] q^(-m/2) g(n+m) }.

    The m = 1 term of the bracketed sum is exactly the explicit g(n+1) term,
    so the sum starts at m = 2.  Agrees with ``abel_inv`` identically.
    """
    params, exact = g.params, g.exact
    k, r, q = params.k, params.r, params.q
    M = g.support_radius
    out = []
    for n in range(M + 1):
        acc = g.value(n) - _qpow(params, -1, exact) * g.value(n + 1) * (k - 2)
        for m in range(2, M - n + 1):
            gm = g.value(n + m)
            acc = acc - _qpow(params, -m, exact) * gm * _frac(q - 1, k, exact)
            sign = (-1) ** m * (k - 1) ** m
            acc = acc - _qpow(params, -m, exact) * gm * sign * _frac(r - k, k, exact)
        out.append(_qpow(params, -n, exact) * acc)
    return RadialSeq(params, tuple(out), exact)


# -- dual Abel transform and inverses ---------------------------------------------


def dual_abel(g: EvenSeq, n_max: int | None = None) -> RadialSeq:
    """Dual Abel transform in closed form.

    A*g(0) = g(0) and, for n >= 1,

        A*g(n) = 2 (r-1)/r q^(-n/2) g(n)
                 + (k-2) (r-1)/r q^(-(n+1)/2) sum' g(j)   (j - n odd)
                 + (r-2)/r q^(-n/2) sum' g(j)             (j - n even)

    where sum' runs over the signed integers -n < j < n of the stated parity
    (j = 0 once).  The middle exponent -(n+1)/2 is the one forced by the
    duality pairing, which the tests enforce against the counting definition.
    The result is generally not finitely supported, hence ``n_max``.
    """
    params, exact = g.params, g.exact
    r = params.r
    if n_max is None:
        n_max = g.support_radius
    out = [g.value(0)]
    for n in range(1, n_max + 1):
        same = _zero(params, exact)
        diff = _zero(params, exact)
        for j in range(-n + 1, n):
            if (n - j) % 2:
                diff = diff + g.value(j)
            else:
                same = same + g.value(j)
        acc = _qpow(params, -n, exact) * g.value(n) * 2 * _frac(r - 1, r, exact)
        acc = acc + _qpow(params, -(n + 1), exact) * diff * params.sigma * _frac(r - 1, r, exact)
        acc = acc + _qpow(params, -n, exact) * same * _frac(r - 2, r, exact)
        out.append(acc)
    return RadialSeq(params, tuple(out), exact)


def dual_abel_via_counts(g: EvenSeq, n_max: int | None = None) -> RadialSeq:
    """Dual Abel transform straight from its defining sum.

    A*g(n) = (1/delta(n)) sum_h g(h) q^(h/2) b(n, h) with b the closed
    sphere-horocycle counts; this is the adjoint of the Abel transform under
    the counting pairing and serves as the arbiter for the closed form.
    """
    params, exact = g.params, g.exact
    if n_max is None:
        n_max = g.support_radius
    out = []
    for n in range(n_max + 1):
        acc = _zero(params, exact)
        for h in range(-n, n + 1):
            count = sphere_horocycle_count(params, n, h)
            if count:
                acc = acc + _qpow(params, h, exact) * g.value(h) * count
        out.append(acc * _frac(1, params.delta(n), exact))
    return RadialSeq(params, tuple(out), exact)


def dual_abel_inv(f: RadialSeq, n_max: int | None = None) -> EvenSeq:
    """Inverse of the dual Abel transform, in closed form.

    g(0) = f(0); g(1) = -((k-2)/2) q^(-1/2) f(0) + (r(k-1)/2) q^(-1/2) f(1);
    and for n >= 2 a window combination of f(0..n) whose inner coefficients
    {q - 1 + (r-k)(1-k)^(n-j)} come from solving the two-term recurrence of
    the scaled sequence q^(n/2) g(n); see ``dual_abel_inv_recurrence``.

    The inverse image of compactly supported data is not compactly
    supported; ``n_max`` (default: the input support radius, which keeps
    windowed round trips exact) bounds the returned values.
    """
    params, exact = f.params, f.exact
    k, r, q = params.k, params.r, params.q
    deg = params.degree
    sigma = params.sigma
    N = f.support_radius if n_max is None else n_max
    out = [f.value(0)]
    g1 = _qpow(params, -1, exact) * (
        f.value(1) * _frac(deg, 2, exact) - f.value(0) * _frac(sigma, 2, exact)
    )
    out.append(g1)
    for n in range(2, N + 1):
        acc = _qpow(params, -n, exact) * f.value(0) * _frac(-(q - 1 + (r - k) * (1 - k) ** n), 2 * k, exact)
        for j in range(1, n - 1):
            window = q - 1 + (r - k) * (1 - k) ** (n - j)
            acc = acc - (
                _qpow(params, 2 * j - n - 2, exact)
                * f.value(j)
                * window
                * _frac(deg, 2 * k, exact)
            )
        acc = acc - _qpow(params, n - 4, exact) * f.value(n - 1) * _frac(deg * sigma, 2, exact)
        acc = acc + _qpow(params, n - 2, exact) * f.value(n) * _frac(deg, 2, exact)
        out.append(acc)
    return EvenSeq(params, tuple(out[: N + 1]), exact)


def dual_abel_inv_recurrence(f: RadialSeq, n_max: int | None = None) -> EvenSeq:
    """Inverse dual Abel transform by forward substitution.

    The scaled values G(n) = q^(n/2) g(n) satisfy

        G(n+2) + (k-2) G(n+1) - (k-1) G(n)
            = (r(k-1)/2) q^(n/2) { q^((n+2)/2) f(n+2) - q^(n/2) f(n) }

    with G(0) = f(0) and G(1) = (r(k-1)/2) f(1) - ((k-2)/2) f(0).  Solving
    forwards gives an evaluation path independent of the closed form.
    """
    params, exact = f.params, f.exact
    sigma, k = params.sigma, params.k
    deg = params.degree
    N = f.support_radius if n_max is None else n_max
    half = _frac(1, 2, exact)

    big_g = [f.value(0)]
    big_g.append((f.value(1) * deg - f.value(0) * sigma) * half)
    for n in range(N - 1):
        forcing = (
            _qpow(params, n, exact)
            * (_qpow(params, n + 2, exact) * f.value(n + 2) - _qpow(params, n, exact) * f.value(n))
            * _frac(deg, 2, exact)
        )
        big_g.append(forcing - big_g[n + 1] * sigma + big_g[n] * (k - 1))
    out = [_qpow(params, -n, exact) * big_g[n] for n in range(N + 1)]
    return EvenSeq(params, tuple(out), exact)


# -- Schwartz-type norms -----------------------------------------------------------


def schwartz_norm(f: RadialSeq, p, m: int) -> float:
    """max over the support of (1+n)^m q^(n/p) |f(n)| (finite-truncation norm)."""
    p = float(p)
    if not 1.0 <= p <= 2.0:
        raise ValueError(f"p must lie in [1, 2], got {p}")
    q = f.params.q
    best = 0.0
    for n, v in enumerate(f.values):
        best = max(best, (1 + n) ** m * q ** (n / p) * abs(v))
    return best


def even_norm(g: EvenSeq, m: int) -> float:
    """max over the support of (1+|n|)^m |g(n)|."""
    best = 0.0
    for n, v in enumerate(g.values):
        best = max(best, (1 + n) ** m * abs(v))
    return best
