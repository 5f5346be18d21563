"""Strengthened Audenaert bound on Schatten norms of a bipartite state and its marginals."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import DensityMatrix, OrderLike, RenyiOrder, WeightedSpectrum, partial_trace_dense, spectrum_dense
from ..entropy import schatten_norm
from ..errors import DimensionError, UnsupportedOrderError

EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class AudenaertReport:
    alpha: RenyiOrder
    lhs: float
    norm_a: float
    norm_b: float
    norm_ab: float
    m_alpha: float
    kappa_star: float
    bound_plus: float
    bound_classic: float
    multiplicities: tuple[int, int]
    rho_a_pure: bool
    rho_b_pure: bool
    rho_ab_pure: bool
    lhs_equals_classic: bool

    @property
    def slack_plus(self) -> float:
        return self.bound_plus - self.lhs

    @property
    def slack_classic(self) -> float:
        return self.bound_classic - self.bound_plus

    def bound_at(self, kappa: float) -> float:
        """``g(kappa) = kappa + ||rho_AB|| / kappa``."""
        return kappa + self.norm_ab / kappa


def _m_alpha(spec: WeightedSpectrum, norm: float, order: RenyiOrder) -> float:
    if order.is_infinite:
        return 1.0 / spec.max_multiplicity
    return (spec.max_value / norm) ** (order.alpha - 1.0)


def audenaert_from_spectra(
    spec_a: WeightedSpectrum, spec_b: WeightedSpectrum, spec_ab: WeightedSpectrum, alpha: OrderLike
) -> AudenaertReport:
    order = RenyiOrder.of(alpha)
    if not order.above_one():
        raise UnsupportedOrderError(f"the Audenaert bound needs 1 < alpha <= inf, got {order}")
    na, nb, nab = (schatten_norm(s, order) for s in (spec_a, spec_b, spec_ab))
    m = max(_m_alpha(spec_a, na, order), _m_alpha(spec_b, nb, order))
    root = math.sqrt(nab)
    # minimum of g over kappa >= M_alpha: the unconstrained minimizer sqrt(nab) or the boundary
    bound_plus = 2.0 * root if m <= root else m + nab / m
    lhs = na + nb
    classic = 1.0 + nab
    return AudenaertReport(
        alpha=order,
        lhs=lhs,
        norm_a=na,
        norm_b=nb,
        norm_ab=nab,
        m_alpha=m,
        kappa_star=max(m, root),
        bound_plus=bound_plus,
        bound_classic=classic,
        multiplicities=(spec_a.max_multiplicity, spec_b.max_multiplicity),
        rho_a_pure=spec_a.is_pure(),
        rho_b_pure=spec_b.is_pure(),
        rho_ab_pure=spec_ab.is_pure(),
        lhs_equals_classic=abs(classic - lhs) <= EQUALITY_TOL,
    )


def audenaert_report(rho_ab: DensityMatrix, alpha: OrderLike) -> AudenaertReport:
    """Evaluate every term of the strengthened Audenaert chain for a bipartite state.

    ``m_alpha`` is the larger of ``(||rho_X||_inf / ||rho_X||_alpha)**(alpha-1)``
    over the two marginals; at ``alpha = inf`` it is ``1 / m`` with ``m`` the
    multiplicity of the top eigenvalue, read from the merged spectrum (the
    multiplicities used are kept in the report).
    """
    if rho_ab.n != 2:
        raise DimensionError(f"audenaert_report needs a bipartite state, got {rho_ab.n} parties")
    return audenaert_from_spectra(
        spectrum_dense(partial_trace_dense(rho_ab, 1)),
        spectrum_dense(partial_trace_dense(rho_ab, 2)),
        spectrum_dense(rho_ab),
        alpha,
    )
