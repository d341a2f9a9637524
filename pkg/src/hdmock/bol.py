"""
Bol's operator D^{k+1} (D = q d/dq) and the pole-bounded model of
H^1(M_ell, V^k) as M^!_{k+2} / D^{k+1} M^!_{-k}.
"""

from dataclasses import asdict, dataclass

from . import linalg
from .modforms import basis_space, reduce_in_space


class ConsistencyError(RuntimeError):
    """An exact identity that must hold failed (indicates a precision bug)."""


def bol_operator(f, k):
    """D^{k+1} f: the q^n coefficient is multiplied by n^{k+1}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    e = k + 1
    return f.map_coefficients(lambda n, c: c * n**e)


@dataclass(frozen=True)
class BolQuotientReport:
    k: int
    p: int
    prec: int
    dim_source: int
    dim_target: int
    dim_image: int
    quotient_dim: int

    def to_dict(self):
        return asdict(self)


def bol_image(k, p, N=None):
    """Coordinates of D^{k+1}(basis of M^!_{-k}) in the basis of M^!_{k+2}, pole order <= p."""
    if N is None:
        N = 12 * p + k + 20
    source = basis_space(-k, p, N)
    target = basis_space(k + 2, p, N)
    rows = []
    for f in source.basis:
        coords, rem = reduce_in_space(bol_operator(f, k), target)
        if not rem.is_zero():
            raise ConsistencyError(
                "D^%d of a weight %d form left the weight %d space (remainder %r)"
                % (k + 1, -k, k + 2, rem)
            )
        rows.append(list(coords))
    return source, target, rows


def bol_quotient_dim(k, p, N=None):
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2, got %r" % (k,))
    if p < 1:
        raise ValueError("pole bound must be >= 1, got %r" % (p,))
    if N is None:
        N = 12 * p + k + 20
    source, target, rows = bol_image(k, p, N)
    r = linalg.rank(rows) if rows else 0
    return BolQuotientReport(
        k=k, p=p, prec=N,
        dim_source=source.dim,
        dim_target=target.dim,
        dim_image=r,
        quotient_dim=target.dim - r,
    )


def bol_equivariance_report(f, k, gamma, tau, N=None):
    """
    Residual of the weight k+2 law for D^{k+1} f, with |(D^{k+1} f)(gamma tau)|
    as the scale, the relative residual and the larger truncation estimate.
    """
    from .analytic import eval_series, as_tau

    tau = as_tau(tau)
    g = bol_operator(f, k)
    if N is not None and N < g.prec:
        g = g.truncate(N)
    if g.is_zero():
        return {"residual": 0.0, "scale": 0.0, "relative": 0.0, "error_bound": 0.0}
    lhs = eval_series(g, gamma.act(tau))
    rhs = eval_series(g, tau)
    res = abs(lhs.value - gamma.automorphy(tau) ** (k + 2) * rhs.value)
    scale = abs(lhs.value)
    bound = max(lhs.error_bound, abs(gamma.automorphy(tau)) ** (k + 2) * rhs.error_bound)
    return {
        "residual": res,
        "scale": scale,
        "relative": res / scale if scale else res,
        "error_bound": bound,
    }


def bol_equivariance_residual(f, k, gamma, tau, N=None):
    """|(D^{k+1} f)(gamma tau) - (c tau + d)^{k+2} (D^{k+1} f)(tau)| for f of weight -k."""
    return bol_equivariance_report(f, k, gamma, tau, N)["residual"]
