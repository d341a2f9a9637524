"""
H^0 and H^1 of the modular group with coefficients in V^k.

V^k is the space of homogeneous degree k polynomials P(X, Y), stored by
the coefficients of X^{k-j} Y^j, j = 0..k.  SL2(Z) acts on the right by
(P|g)(X, Y) = P(aX + bY, cX + dY), and 1-cocycles satisfy

    z(gh) = z(g)|h + z(h).

For even k, -I acts trivially and we work with the projective group
<S, U | S^2 = U^3 = 1>, U = ST; a cocycle is then determined by the pair
(z(S), z(U)) subject to z(S)|(1+S) = 0 and z(U)|(1+U+U^2) = 0.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from . import linalg


@dataclass(frozen=True)
class GammaMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1: %r" % (self,))

    def __matmul__(self, other):
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GammaMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self):
        return GammaMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = IDENTITY
        for _ in range(n):
            out = out @ self
        return out

    def act(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau):
        return self.c * tau + self.d

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def parse(cls, s):
        """'S', 'T', 'U', a word such as 'STS' or 'T^-1', or 'a,b,c,d'."""
        s = s.strip()
        if "," in s:
            return cls(*(int(x) for x in s.split(",")))
        return word(s)


IDENTITY = GammaMatrix(1, 0, 0, 1)
S = GammaMatrix(0, -1, 1, 0)
T = GammaMatrix(1, 1, 0, 1)
U = S @ T
GENERATORS = {"S": S, "T": T, "U": U, "I": IDENTITY}


def word(w):
    """Product of generator letters, e.g. 'STS'; a letter may carry '^n' (n may be negative)."""
    out = IDENTITY
    i = 0
    while i < len(w):
        g = GENERATORS[w[i]]
        i += 1
        if i < len(w) and w[i] == "^":
            j = i + 1
            if j < len(w) and w[j] == "-":
                j += 1
            while j < len(w) and w[j].isdigit():
                j += 1
            g = g ** int(w[i + 1 : j])
            i = j
        out = out @ g
    return out


@dataclass(frozen=True)
class RepElement:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("degree %d needs %d coefficients" % (self.degree, self.degree + 1))

    @classmethod
    def from_terms(cls, k, terms):
        """terms: {j: coefficient of X^{k-j} Y^j}."""
        c = [0] * (k + 1)
        for j, v in terms.items():
            c[j] = v
        return cls(k, c)

    def __add__(self, other):
        return RepElement(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return RepElement(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __repr__(self):
        k = self.degree
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "*".join(
                    m for m in (_power("X", k - j), _power("Y", j)) if m
                ) or "1"
                terms.append("%s*%s" % (c, mono))
        return "RepElement(%d: %s)" % (k, " + ".join(terms) or "0")


def _power(x, e):
    if e == 0:
        return ""
    return x if e == 1 else "%s^%d" % (x, e)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _binomial_power(u, v, n):
    """Coefficients (in powers of Y) of (uX + vY)^n."""
    return [comb(n, j) * u ** (n - j) * v**j for j in range(n + 1)]


@lru_cache(maxsize=None)
def rep_matrix(k, g):
    """
    Integer matrix M with coeffs(P|g) = coeffs(P) @ M; row j is the
    expansion of (aX + bY)^{k-j} (cX + dY)^j.
    """
    a, b, c, d = g.as_tuple()
    return tuple(
        tuple(_poly_mul(_binomial_power(a, b, k - j), _binomial_power(c, d, j)))
        for j in range(k + 1)
    )


def rep_matrix_float(k, g):
    return np.array(rep_matrix(k, g), dtype=float)


def slash_rep(P, g):
    M = rep_matrix(P.degree, g)
    k = P.degree
    return RepElement(k, [sum(P.coeffs[i] * M[i][j] for i in range(k + 1)) for j in range(k + 1)])


def _operator(k, *words):
    """Sum of the matrices of the given group elements, as Fractions."""
    n = k + 1
    M = [[0] * n for _ in range(n)]
    for g in words:
        R = rep_matrix(k, g)
        for i in range(n):
            for j in range(n):
                M[i][j] += R[i][j]
    return M


def _minus_identity(k, g):
    n = k + 1
    R = rep_matrix(k, g)
    return [[R[i][j] - (i == j) for j in range(n)] for i in range(n)]


def h0_dim(k):
    """dim of the SL2(Z)-invariants in V^k (joint kernel of S - 1 and T - 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    # row vectors x with x M_S = x and x M_T = x
    A = linalg.transpose(_minus_identity(k, S)) + linalg.transpose(_minus_identity(k, T))
    return (k + 1) - linalg.rank(A)


def _left_kernel(M):
    """Row vectors x with x M = 0."""
    return linalg.nullspace(linalg.transpose(M), ncols=len(M))


@lru_cache(maxsize=None)
def cocycle_spaces(k):
    """
    Exact bases for Z^1 and B^1 in the coordinates (P_S | P_U), each a
    vector of length 2(k+1).
    """
    n = k + 1
    zero = [Fraction(0)] * n
    ker_s = _left_kernel(_operator(k, IDENTITY, S))
    ker_u = _left_kernel(_operator(k, IDENTITY, U, U @ U))
    Z = [list(v) + zero for v in ker_s] + [zero + list(v) for v in ker_u]
    ms, mu = _minus_identity(k, S), _minus_identity(k, U)
    B = [list(ms[i]) + list(mu[i]) for i in range(n)]
    return Z, B


def h1_dim(k):
    """dim Z^1 - dim B^1 for the projective presentation; 0 for odd k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return 0
    Z, B = cocycle_spaces(k)
    return len(Z) - linalg.rank(B)


@lru_cache(maxsize=None)
def h1_complement(k):
    """Cocycles (from the Z^1 basis) whose classes form a basis of H^1."""
    Z, B = cocycle_spaces(k)
    chosen = []
    r = linalg.rank(B)
    for z in Z:
        r2 = linalg.rank(B + chosen + [z])
        if r2 > r:
            chosen.append(z)
            r = r2
    return chosen


@dataclass(frozen=True)
class Cocycle:
    degree: int
    P_S: RepElement
    P_U: RepElement

    def relator_defects(self):
        return (
            slash_rep(self.P_S, IDENTITY) + slash_rep(self.P_S, S),
            self.P_U + slash_rep(self.P_U, U) + slash_rep(self.P_U, U @ U),
        )

    def is_cocycle(self):
        return all(not any(p.coeffs) for p in self.relator_defects())

    def vector(self):
        return list(self.P_S.coeffs) + list(self.P_U.coeffs)


def coboundary(P):
    return Cocycle(P.degree, slash_rep(P, S) - P, slash_rep(P, U) - P)


def h1_coordinates(k, vec):
    """
    Numerically decompose a (possibly complex) cocycle vector (P_S | P_U)
    as coboundary + sum of beta_i * complement_i.  Returns (beta, residual)
    where residual is the least-squares misfit (0 for genuine cocycles).
    """
    Z, B = cocycle_spaces(k)
    C = h1_complement(k)
    basis = np.array([[float(x) for x in row] for row in B + C]).T
    v = np.asarray(vec, dtype=complex)
    sol, *_ = np.linalg.lstsq(basis.astype(complex), v, rcond=None)
    resid = float(np.max(np.abs(basis @ sol - v))) if v.size else 0.0
    return sol[len(B):], resid


def quotient_invariants_dim(summands, drop=()):
    """
    dim of the invariants of (sum of V^l, l in summands) / (sum over drop).
    The quotient is isomorphic to the complementary partial sum.
    """
    summands, drop = Counter(summands), Counter(drop)
    if any(l <= 0 or l % 2 for l in summands):
        raise ValueError("summand degrees must be positive and even")
    if drop - summands:
        raise ValueError("drop must be a sub-multiset of summands")
    rest = summands - drop
    return sum(m * h0_dim(l) for l, m in rest.items())
