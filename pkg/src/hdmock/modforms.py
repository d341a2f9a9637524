"""
Level one modular forms as exact q-expansions.

Eisenstein series, Delta, j, the classical dimension formulas and
echelonized bases of M_k and of the pole-bounded spaces
Delta^{-p} M_{k+12p} that model weakly holomorphic forms.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .series import QSeries


@lru_cache(maxsize=None)
def _bernoulli_table(n):
    B = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(n):
    """B_n with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    return _bernoulli_table(n)[n]


def sigma(n, r):
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**r
            e = n // d
            if e != d:
                total += e**r
        d += 1
    return total


@lru_cache(maxsize=None)
def eisenstein(k, N):
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, known to O(q^N)."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series need even weight k >= 2, got %r" % (k,))
    if N < 1:
        raise ValueError("precision must be positive")
    c = -Fraction(2 * k) / bernoulli(k)
    return QSeries(0, N, [1] + [c * sigma(n, k - 1) for n in range(1, N)])


@lru_cache(maxsize=None)
def delta(N):
    """(E4^3 - E6^2)/1728; the stored valuation stays 0 (zero constant term)."""
    if N < 2:
        raise ValueError("delta needs precision >= 2")
    E4, E6 = eisenstein(4, N), eisenstein(6, N)
    return (E4**3 - E6**2) / 1728


@lru_cache(maxsize=None)
def j_invariant(N):
    """E4^3 / Delta known to O(q^N)."""
    if N < 2:
        raise ValueError("j needs precision >= 2")
    return eisenstein(4, N + 2) ** 3 * delta(N + 2).invert()


def dim_M(k):
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def dim_S(k):
    if k < 4 or k % 2:
        return 0
    return max(dim_M(k) - 1, 0)


def default_prec(k, p=0):
    return p + dim_M(k + 12 * p) + 10


@dataclass(frozen=True)
class FormSpace:
    """
    Reduced echelon basis of Delta^{-p} M_{k+12p} to O(q^prec).

    p = 0 is M_k itself.  Basis elements are sorted by leading exponent,
    have leading coefficient 1 and vanish at every other leading exponent.
    """

    weight: int
    pole_bound: int
    prec: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def leading_exponents(self):
        return [f.order() for f in self.basis]

    def to_dict(self):
        return {
            "weight": self.weight,
            "pole_bound": self.pole_bound,
            "prec": self.prec,
            "basis": [f.to_dict() for f in self.basis],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["weight"], d["pole_bound"], d["prec"],
                   tuple(QSeries.from_dict(f) for f in d["basis"]))

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _monomial_exponents(w, c):
    """(a, b) with 4a + 6b = w - 12c, or None."""
    r = w - 12 * c
    if r < 0 or r == 2:
        return None
    if r % 4 == 0:
        return r // 4, 0
    return (r - 6) // 4, 1


def echelonize(elements):
    """Reduced echelon form of series with pairwise distinct orders."""
    elts = sorted((f.normalized() for f in elements), key=lambda f: f.order())
    elts = [f.scale(1 / f.leading()[1]) for f in elts]
    leads = [f.order() for f in elts]
    if len(set(leads)) != len(leads):
        raise ValueError("elements do not have distinct leading exponents")
    for i in reversed(range(len(elts))):
        n = leads[i]
        for j in range(i):
            c = elts[j][n]
            if c:
                elts[j] = elts[j] - elts[i].scale(c)
    return elts


@lru_cache(maxsize=None)
def basis_space(k, p=0, N=None):
    """Echelon basis of Delta^{-p} M_{k+12p} to precision N."""
    if k % 2:
        raise ValueError("weight must be even, got %r" % (k,))
    if p < 0:
        raise ValueError("pole bound must be nonnegative")
    w = k + 12 * p
    d = dim_M(w)
    if N is None:
        N = default_prec(k, p)
    if N <= p + d:
        raise ValueError(
            "insufficient precision to echelonize: need N > %d, got %d" % (p + d, N)
        )
    if d == 0:
        return FormSpace(k, p, N, ())
    W = N + p + 2
    E4, E6, D = eisenstein(4, W), eisenstein(6, W), delta(W).normalized()
    gens = []
    for c in range(d):
        a, b = _monomial_exponents(w, c)
        gens.append(E4**a * E6**b * D**c)
    if p:
        pole = D.invert() ** p
        gens = [pole * g for g in gens]
    basis = tuple(f.truncate(N) for f in echelonize(gens))
    return FormSpace(k, p, N, basis)


def reduce_in_space(f, sp):
    """
    Subtract basis multiples from f to clear every leading exponent of sp.

    Returns (coordinates, remainder); f lies in the span exactly when the
    remainder vanishes to precision.
    """
    if f.prec < sp.prec:
        raise ValueError("series precision %d below space precision %d" % (f.prec, sp.prec))
    r = f.truncate(sp.prec)
    coords = []
    for b in sp.basis:
        c = r[b.order()]
        coords.append(c)
        if c:
            r = r - b.scale(c)
    return tuple(coords), r


def cusp_basis(k, N=None):
    """Basis elements of M_k vanishing at the cusp."""
    return [f for f in basis_space(k, 0, N).basis if f.order() >= 1]


def named_form(name, N):
    """q-expansion by short name: e2, e4, ..., delta, j."""
    name = name.lower()
    if name == "delta":
        return delta(N)
    if name == "j":
        return j_invariant(N)
    if name.startswith("e") and name[1:].isdigit():
        return eisenstein(int(name[1:]), N)
    raise ValueError("unknown form %r" % (name,))
