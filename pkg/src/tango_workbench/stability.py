"""Stability of the weighted Tango bundle F.

Two sources of a verdict:

* the analytic threshold gamma > 2n*alpha + (beta - alpha);
* Hoppe's criterion, checked by the engine: F is stable when
  h^0((W^q F)_norm) = 0 for 1 <= q <= n - 2, where E_norm = E(t) with the
  unique t such that c1(E) + t * rank(E) lies in (-rank, 0].

A nonzero section of F_norm is a destabilizing O -> F_norm, so an exact
nonzero h^0 at q = 1 proves instability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .bundles import FBundle, WedgeF, c1_f, k_class, line_sum, tango_middle, QBundle
from .chase import Engine, cohomology_resolution, engine_for, wedge_f_resolution
from .combinatorics import DimValue, Exact
from .params import TangoParams

STABLE, NOT_STABLE, UNKNOWN = "Stable", "NotStable", "Unknown"


def _check_q(params: TangoParams, q: int):
    if not 1 <= q <= params.n - 2:
        raise ValueError(f"q must lie in 1..{params.n - 2}, got {q}")


def norm_twist(params: TangoParams, q: int) -> int:
    """The t with c1(W^q F) + t * rank(W^q F) in (-rank, 0]."""
    _check_q(params, q)
    k = k_class(WedgeF(q), params)
    return (-k.c1) // k.rank


class Threshold(NamedTuple):
    sufficient: bool  # gamma > 2n alpha + (beta - alpha)
    context: bool     # gamma > n alpha

    def to_json(self):
        return {"sufficient": self.sufficient, "context": self.context}


def threshold_check(params: TangoParams) -> Threshold:
    n, g, a, b = params.n, params.gamma, params.alpha, params.beta
    return Threshold(g > 2 * n * a + (b - a), g > n * a)


def max_line_sub_degree(params: TangoParams, q: int) -> int:
    """Largest e with O(e) a summand of the q-th exterior power of the middle sum."""
    n, a, b = params.n, params.alpha, params.beta
    if not 1 <= q <= 2 * n - 1:
        raise ValueError(f"q must lie in 1..{2 * n - 1}, got {q}")
    return 2 * n * q * a + (b - a) * q * (q + 1) // 2


@dataclass
class HoppeEntry:
    q: int
    twist: int
    h0: DimValue
    h0_resolution: DimValue
    h0_direct: DimValue

    @property
    def vanishes(self) -> bool:
        return self.h0 == Exact(0)

    def to_json(self):
        return {"q": self.q, "twist": self.twist, "h0": self.h0.to_json(),
                "h0_resolution": self.h0_resolution.to_json(),
                "h0_direct": self.h0_direct.to_json()}


def hoppe_verify(params: TangoParams, q_max: Optional[int] = None,
                 engine: Optional[Engine] = None) -> list:
    """h^0 of each normalized exterior power, via its resolution and directly.

    Both computations are sound, so the reported value is their intersection.
    """
    engine = engine or engine_for(params)
    q_max = params.n - 2 if q_max is None else q_max
    if q_max > params.n - 2:
        raise ValueError(f"q_max must be <= {params.n - 2}")
    out = []
    for q in range(1, q_max + 1):
        t = norm_twist(params, q)
        via_res = cohomology_resolution(wedge_f_resolution(params, q, t), engine).h(0)
        direct = engine.cohomology(WedgeF(q), t).h(0)
        out.append(HoppeEntry(q, t, via_res.meet(direct), via_res, direct))
    return out


@dataclass
class InstabilityAttempt:
    """The two sections-level facts behind a destabilizing O -> F(t)."""

    twist: int
    h0_q_sub: DimValue       # h^0(Q(-2 gamma + t))
    h0_f: DimValue           # h^0(F(t))
    h0_middle: DimValue      # h^0 of the middle sum twisted by -gamma + t

    @property
    def verified(self) -> bool:
        return (self.h0_q_sub == Exact(0) and self.h0_f.is_exact
                and self.h0_f == self.h0_middle and self.h0_f.lo > 0)

    def to_json(self):
        return {"twist": self.twist, "h0_Q_sub": self.h0_q_sub.to_json(),
                "h0_F": self.h0_f.to_json(), "h0_middle": self.h0_middle.to_json(),
                "verified": self.verified}


def instability_attempt(params: TangoParams, engine: Optional[Engine] = None):
    """Evaluate the destabilizing-section argument at the q = 1 norm twist.

    Returns None outside n*alpha < gamma <= 2n*alpha + (beta - alpha).
    """
    th = threshold_check(params)
    if th.sufficient or not th.context:
        return None
    engine = engine or engine_for(params)
    g = params.gamma
    t = norm_twist(params, 1)
    middle = line_sum([e - g + t for e in tango_middle(params)])
    return InstabilityAttempt(
        twist=t,
        h0_q_sub=engine.cohomology(QBundle(), -2 * g + t).h(0),
        h0_f=engine.cohomology(FBundle(), t).h(0),
        h0_middle=engine.cohomology(middle).h(0),
    )


def destabilize_witness(params: TangoParams, engine: Optional[Engine] = None):
    """The verified instability certificate, or None."""
    attempt = instability_attempt(params, engine)
    if attempt is None or not attempt.verified:
        return None
    return attempt


@dataclass
class StabilityVerdict:
    verdict: str
    certificates: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict,
                "certificates": [{"claim": c, "evidence": e} for c, e in self.certificates]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["verdict"], [(c["claim"], c["evidence"]) for c in obj["certificates"]])


def analyze_stability(params: TangoParams, engine: Optional[Engine] = None) -> StabilityVerdict:
    """Route to Stable / NotStable / Unknown, recording every fact used."""
    engine = engine or engine_for(params)
    n, g, a, b = params.n, params.gamma, params.alpha, params.beta
    th = threshold_check(params)
    certs = [("threshold gamma > 2n*alpha + (beta - alpha)",
              {"gamma": g, "bound": 2 * n * a + (b - a), "holds": th.sufficient}),
             ("gamma > n*alpha", {"gamma": g, "bound": n * a, "holds": th.context}),
             ("c1(F)", {"value": c1_f(params), "rank": params.rank_f})]
    hoppe = hoppe_verify(params, engine=engine)
    for entry in hoppe:
        certs.append((f"h0 of normalized exterior power q={entry.q}", entry.to_json()))
    attempt = instability_attempt(params, engine)
    if attempt is not None:
        certs.append(("destabilizing section O -> F(t)", attempt.to_json()))

    if th.sufficient:
        verdict = STABLE
    elif hoppe and all(e.vanishes for e in hoppe):
        verdict = STABLE
    elif hoppe and hoppe[0].h0.is_exact and hoppe[0].h0.lo > 0:
        verdict = NOT_STABLE
    else:
        verdict = UNKNOWN
    return StabilityVerdict(verdict, certs)
