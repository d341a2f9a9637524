"""
Dimension calculus and formal elements of the depth-graded algebra

    Gr M  =  M_*  (x)  Sym( sum_{l > 0} H^1(V^l) ),

where a class in H^1(V^l) sits in weight -l, so a depth i element of
weight k is a multiset of i shadow slots (l_j, c_j) tensored with a base
form of weight k + sum l_j.  Shadow weights are cut off at l <= L; the
tables do not stabilize in L.
"""

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .modforms import basis_space, default_prec, dim_M, dim_S, reduce_in_space


@dataclass(frozen=True)
class Variant:
    """h1 = 'full' (M + conj S) or 'analytic' (conj S only); pole_bound > 0 for weak forms."""

    h1: str = "full"
    pole_bound: int = 0

    def __post_init__(self):
        if self.h1 not in ("full", "analytic"):
            raise ValueError("h1 must be 'full' or 'analytic'")
        if self.pole_bound < 0:
            raise ValueError("pole bound must be nonnegative")

    @property
    def name(self):
        if self.h1 == "analytic":
            return "analytic" if not self.pole_bound else "analytic(%d)" % self.pole_bound
        return "holomorphic" if not self.pole_bound else "weak(%d)" % self.pole_bound

    @classmethod
    def parse(cls, s, pole_bound=None):
        if isinstance(s, Variant):
            return s
        m = re.fullmatch(r"\s*(holomorphic|weak|analytic)\s*(?:[(:]\s*(\d+)\s*\)?)?\s*", s)
        if not m:
            raise ValueError("unknown variant %r" % (s,))
        kind, p = m.group(1), m.group(2)
        p = int(p) if p is not None else pole_bound
        if kind == "holomorphic":
            if p:
                raise ValueError("holomorphic variant has no pole bound")
            return cls("full", 0)
        if kind == "weak":
            if p is None or p < 1:
                raise ValueError("weak variant needs a pole bound >= 1")
            return cls("full", p)
        return cls("analytic", p or 0)

    def base_dim(self, w):
        """dim of the base space at weight w (pole order <= pole_bound)."""
        if w % 2:
            return 0
        return dim_M(w + 12 * self.pole_bound)


HOLOMORPHIC = Variant("full", 0)
ANALYTIC = Variant("analytic", 0)


def h1_mult(l, variant="full"):
    """dim H^1(V^l) (full) or dim S_{l+2} (analytic); 0 for odd l."""
    h1 = variant.h1 if isinstance(variant, Variant) else variant
    if l < 1:
        raise ValueError("l must be positive")
    if l % 2:
        return 0
    if h1 == "analytic":
        return dim_S(l + 2)
    if h1 in ("full", "holomorphic") or h1.startswith("weak"):
        return dim_M(l + 2) + dim_S(l + 2)
    raise ValueError("unknown variant %r" % (variant,))


def shadow_weights(L):
    return list(range(2, L + 1, 2))


def gr_dimension(k, i, variant="holomorphic", L=12):
    """
    dim of the weight k, depth i piece: sum over multisets {l_1..l_i} of
    shadow weights <= L of prod_l C(h(l) + m_l - 1, m_l) * base_dim(k + sum l).
    """
    variant = Variant.parse(variant)
    if i < 0:
        raise ValueError("depth must be nonnegative")
    if i == 0:
        return variant.base_dim(k)
    if L < 2:
        raise ValueError("cutoff L must be >= 2")
    total = 0
    for ls in combinations_with_replacement(shadow_weights(L), i):
        base = variant.base_dim(k + sum(ls))
        if not base:
            continue
        mult = 1
        for l, m in Counter(ls).items():
            mult *= comb(h1_mult(l, variant) + m - 1, m)
            if not mult:
                break
        total += mult * base
    return total


def filtered_dimension(k, i, variant="holomorphic", L=12):
    """dim of depth <= i at weight k, as the sum of the graded pieces."""
    return sum(gr_dimension(k, j, variant, L) for j in range(i + 1))


def gr_table(variant="holomorphic", L=12, kmin=-24, kmax=24, depth=2):
    """{(weight, depth): dim} for kmin <= weight <= kmax, 0 <= depth <= max depth."""
    return {
        (k, i): gr_dimension(k, i, variant, L)
        for k in range(kmin, kmax + 1)
        for i in range(depth + 1)
    }


def gr_table_generating(variant="holomorphic", L=12, kmin=-24, kmax=24, depth=2):
    """
    Same table read off the bigraded generating function
    (sum_w base_dim(w) x^w) * prod over H^1 basis slots of 1/(1 - t x^{-l}),
    each factor expanded as a geometric series truncated at t^depth.
    """
    variant = Variant.parse(variant)
    wmax = kmax + depth * L
    wmin = -12 * variant.pole_bound
    gf = {(0, w): variant.base_dim(w) for w in range(wmin, wmax + 1) if variant.base_dim(w)}
    for l in shadow_weights(L):
        for _ in range(h1_mult(l, variant)):
            new = defaultdict(int)
            for (i, w), c in gf.items():
                for m in range(depth - i + 1):
                    new[(i + m, w - m * l)] += c
            gf = dict(new)
    return {
        (k, i): gf.get((i, k), 0)
        for k in range(kmin, kmax + 1)
        for i in range(depth + 1)
    }


# -- formal elements -----------------------------------------------------

@dataclass(frozen=True, order=True)
class GrBasisLabel:
    """
    weight k, a sorted tuple of shadow slots (l, c) (c indexes a basis of
    H^1(V^l)) and an index into the echelon basis of the base space at
    weight k + sum l.
    """

    weight: int
    slots: tuple
    base: int

    @property
    def depth(self):
        return len(self.slots)

    @property
    def base_weight(self):
        return self.weight + sum(l for l, _ in self.slots)

    def to_dict(self):
        return {"weight": self.weight, "slots": [list(s) for s in self.slots], "base": self.base}


class GrAlgebra:
    """The graded algebra for one variant and shadow-weight cutoff L."""

    def __init__(self, variant="holomorphic", L=12):
        self.variant = Variant.parse(variant)
        if L < 2:
            raise ValueError("cutoff L must be >= 2")
        self.L = L

    def __repr__(self):
        return "GrAlgebra(%s, L=%d)" % (self.variant.name, self.L)

    def slots(self):
        return [(l, c) for l in shadow_weights(self.L) for c in range(h1_mult(l, self.variant))]

    def labels(self, k, i):
        """All basis labels of weight k and depth i, by brute-force enumeration."""
        out = []
        for ms in combinations_with_replacement(self.slots(), i):
            w = k + sum(l for l, _ in ms)
            for b in range(self.variant.base_dim(w)):
                out.append(GrBasisLabel(k, tuple(ms), b))
        return out

    def dimension(self, k, i):
        return gr_dimension(k, i, self.variant, self.L)

    def label(self, weight, slots=(), base=0):
        slots = tuple(sorted(tuple(s) for s in slots))
        for l, c in slots:
            if l > self.L or l < 1 or not 0 <= c < h1_mult(l, self.variant):
                raise ValueError("slot %r not available in %r" % ((l, c), self))
        lab = GrBasisLabel(weight, slots, base)
        if not 0 <= base < self.variant.base_dim(lab.base_weight):
            raise ValueError("no base element %d at weight %d" % (base, lab.base_weight))
        return lab

    def element(self, terms):
        """From a label, or a dict {label: coefficient}."""
        if isinstance(terms, GrBasisLabel):
            terms = {terms: 1}
        return GrElement(self, terms)

    def zero(self):
        return GrElement(self, {})

    # base forms, at a precision fixed by the target weight of a product

    def _space(self, w, N):
        return basis_space(w, self.variant.pole_bound, N)

    def base_form(self, w, b, N):
        return self._space(w, N).basis[b]

    def base_product(self, w1, b1, w2, b2):
        """Coordinates of (base w1,b1) * (base w2,b2) in the base basis at w1+w2."""
        p = self.variant.pole_bound
        w = w1 + w2
        target = self._space(w, default_prec(w, p) + p)
        N = max(target.prec, default_prec(w1, p), default_prec(w2, p)) + p
        f = self.base_form(w1, b1, N) * self.base_form(w2, b2, N)
        coords, rem = reduce_in_space(f, target)
        if not rem.is_zero():
            raise ValueError(
                "product of base forms leaves the pole-bound %d model at weight %d" % (p, w)
            )
        return coords


class GrElement:
    """Finite Q-linear combination of basis labels."""

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {lab: Fraction(c) for lab, c in terms.items() if c}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*%r" % (c, lab) for lab, c in sorted(self.terms.items()))

    def _check(self, other):
        a, b = self.algebra, other.algebra
        if a.variant != b.variant or a.L != b.L:
            raise ValueError("elements live in different algebras")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = Counter(self.terms)
        for lab, c in other.terms.items():
            out[lab] = out.get(lab, 0) + c
        return GrElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return GrElement(self.algebra, {lab: -c for lab, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return GrElement(self.algebra, {lab: c * x for lab, x in self.terms.items()})
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self
        return gr_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, GrElement):
            return NotImplemented
        return self.algebra.variant == other.algebra.variant and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def depths(self):
        return {lab.depth for lab in self.terms}

    def weights(self):
        return {lab.weight for lab in self.terms}

    def to_dict(self):
        return {
            "variant": self.algebra.variant.name,
            "cutoff": self.algebra.L,
            "terms": [
                {"label": lab.to_dict(), "coeff": "%d/%d" % (c.numerator, c.denominator)}
                for lab, c in sorted(self.terms.items())
            ],
        }


def gr_product(a, b):
    """Bilinear product: weights and depths add, slot multisets merge, bases multiply."""
    a._check(b)
    alg = a.algebra
    out = Counter()
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            w1, w2 = la.base_weight, lb.base_weight
            coords = alg.base_product(w1, la.base, w2, lb.base)
            slots = tuple(sorted(la.slots + lb.slots))
            for idx, x in enumerate(coords):
                if x:
                    lab = GrBasisLabel(la.weight + lb.weight, slots, idx)
                    out[lab] = out.get(lab, 0) + ca * cb * x
    return GrElement(alg, out)


def _remove_slot(slots, s):
    lst = list(slots)
    lst.remove(s)
    return tuple(lst)


def shadow_of(a):
    """
    Sym-differential: {slot: element of depth i-1} with each slot removed in
    every way, counted with its multiplicity.  The remaining element has
    weight k + l.  Raises on depth 0 input.
    """
    if not a.terms:
        return {}
    if any(lab.depth == 0 for lab in a.terms):
        raise ValueError("no shadow: depth 0 component")
    parts = defaultdict(Counter)
    for lab, c in a.terms.items():
        for s, m in Counter(lab.slots).items():
            rest = GrBasisLabel(lab.weight + s[0], _remove_slot(lab.slots, s), lab.base)
            parts[s][rest] = parts[s].get(rest, 0) + m * c
    out = {}
    for s, terms in sorted(parts.items()):
        e = GrElement(a.algebra, terms)
        if e:
            out[s] = e
    return out


def attach_slot(s, a):
    """Inverse direction of shadow_of: put slot s back (weight drops by l)."""
    return GrElement(a.algebra, {
        GrBasisLabel(lab.weight - s[0], tuple(sorted(lab.slots + (s,))), lab.base): c
        for lab, c in a.terms.items()
    })


def is_pure(a, k):
    """True iff every slot of every term has l == -k (so only possible for k < 0)."""
    return all(l == -k for lab in a.terms for l, _ in lab.slots)
