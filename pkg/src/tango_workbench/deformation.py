"""Deformation-theoretic dimensions of the weighted Tango bundle.

Notation: T is the middle sum of the sequence 0 -> Q(-g) -> T -> F(g) -> 0.
Three exact sequences tie the relevant bundles together:

    0 -> F*(-2g) (x) Q -> Q(-g) (x) T*  -> End Q         -> 0
    0 -> F*(-2g) (x) Q -> F*(-g) (x) T  -> End F         -> 0
    0 -> F*(-g) (x) T  -> End T         -> Q*(g) (x) T   -> 0

The Quot-scheme component Y has dimension
h1(End Q) + h0(Q*(g) (x) T) - h0(End Q), the stabilizer Sigma of the defining
map has dimension h0(F*(-g) (x) T), and the fibre Z over F has dimension
h0(End T) - dim Sigma - h0(End Q). The Kuranishi space of F is smooth of
dimension h1(End F) exactly when dim Y - dim Z reaches h1(End F).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bundles import Dual, FBundle, QBundle, Tensor, Twist, line_sum, tango_middle
from .chase import Engine, chase_system, engine_for
from .combinatorics import DimValue, Exact
from .params import TangoParams

PASS, FAIL, INDETERMINATE = "pass", "fail", "indeterminate"


def deformation_objects(params: TangoParams) -> dict:
    g = params.gamma
    T = line_sum(tango_middle(params))
    Q, F = QBundle(), FBundle()
    return {
        "End Q": Tensor(Q, Dual(Q)),
        "End F": Tensor(F, Dual(F)),
        "End T": Tensor(T, Dual(T)),
        "F*(-g) x Q(-g)": Tensor(Twist(Dual(F), -2 * g), Q),
        "F*(-g) x T": Tensor(Twist(Dual(F), -g), T),
        "Q(-g) x T*": Tensor(Twist(Q, -g), Dual(T)),
        "Q*(g) x T": Tensor(Twist(Dual(Q), g), T),
    }


SEQUENCES = (
    ("F*(-g) x Q(-g)", "Q(-g) x T*", "End Q"),
    ("F*(-g) x Q(-g)", "F*(-g) x T", "End F"),
    ("F*(-g) x T", "End T", "Q*(g) x T"),
)


# -- signed interval helpers ---------------------------------------------------------

def _combine(*terms) -> tuple:
    """sum of sign * DimValue as a (lo, hi) pair of integers."""
    lo = hi = 0
    for sign, d in terms:
        if sign > 0:
            lo, hi = lo + d.lo, hi + d.hi
        else:
            lo, hi = lo - d.hi, hi - d.lo
    return lo, hi


def _as_dim(pair) -> DimValue:
    lo, hi = pair
    # a dimension is nonnegative, so negative lower ends carry no information
    return DimValue(max(lo, 0), max(hi, 0))


def _pair(d) -> tuple:
    return (d.lo, d.hi) if isinstance(d, DimValue) else tuple(d)


def equal_status(a, b) -> str:
    (alo, ahi), (blo, bhi) = _pair(a), _pair(b)
    if alo == ahi == blo == bhi:
        return PASS
    if ahi < blo or bhi < alo:
        return FAIL
    return INDETERMINATE


def le_status(a, b) -> str:
    (alo, ahi), (blo, bhi) = _pair(a), _pair(b)
    if ahi <= blo:
        return PASS
    if alo > bhi:
        return FAIL
    return INDETERMINATE


def zero_status(d: DimValue) -> str:
    return equal_status(d, Exact(0))


# -- computations -------------------------------------------------------------------------

def deformation_tables(params: TangoParams, engine: Optional[Engine] = None) -> dict:
    """Direct engine tables and the jointly chased tables of all seven objects.

    ``route_sequence`` holds, for End Q and End F, the table obtained from the
    sequences alone (their own direct value withheld).
    """
    engine = engine or engine_for(params)
    objs = deformation_objects(params)
    direct = {name: engine.cohomology(e) for name, e in objs.items()}
    system = {name: (t, t.euler) for name, t in direct.items()}
    joint = chase_system(system, SEQUENCES, params.n)
    route_sequence = {}
    for name in ("End Q", "End F"):
        withheld = dict(system)
        withheld[name] = (None, direct[name].euler)
        route_sequence[name] = chase_system(withheld, SEQUENCES, params.n)[name]
    return {"direct": direct, "joint": joint, "route_sequence": route_sequence}


def ext1_vanishing(params: TangoParams, engine: Optional[Engine] = None) -> bool:
    """h1(Q(-g - e_k)) = 0 for every k, i.e. Ext^1(T, Q(-g)) = 0."""
    engine = engine or engine_for(params)
    g = params.gamma
    return all(engine.cohomology(QBundle(), -g - e).h(1) == Exact(0)
               for e in tango_middle(params))


def quot_dimension(params: TangoParams, engine: Optional[Engine] = None) -> DimValue:
    t = deformation_tables(params, engine)["joint"]
    return _as_dim(_combine((1, t["End Q"].h(1)), (1, t["Q*(g) x T"].h(0)),
                            (-1, t["End Q"].h(0))))


def sigma_dimension(params: TangoParams, engine: Optional[Engine] = None) -> DimValue:
    return deformation_tables(params, engine)["joint"]["F*(-g) x T"].h(0)


def kuranishi_dimension(params: TangoParams, engine: Optional[Engine] = None) -> DimValue:
    """h1(End F), intersecting the direct route with the sequence chase."""
    return deformation_tables(params, engine)["joint"]["End F"].h(1)


@dataclass
class DeformationReport:
    params: TangoParams
    h1_end_Q: DimValue
    h0_end_Q: DimValue
    h1_end_F: DimValue
    h0_QdualTensor: DimValue
    dim_Y: DimValue
    dim_Sigma: DimValue
    h1_FdualTensor: DimValue
    kuranishi_dim: DimValue
    h0_end_T: DimValue
    h2_FdualQ: DimValue
    dim_Z: DimValue
    flank_h1: DimValue
    flank_h2: DimValue
    end_Q_direct: str
    end_Q_sequence: str
    identities: list = field(default_factory=list)

    QUANTITIES = ("h1_end_Q", "h0_end_Q", "h1_end_F", "h0_QdualTensor", "dim_Y", "dim_Sigma",
                  "h1_FdualTensor", "kuranishi_dim", "h0_end_T", "h2_FdualQ", "dim_Z",
                  "flank_h1", "flank_h2")

    @property
    def all_exact(self) -> bool:
        return all(getattr(self, k).is_exact for k in self.QUANTITIES)

    @property
    def status(self) -> dict:
        return {name: st for name, st in self.identities}

    def to_json(self) -> dict:
        out = {"params": self.params.to_json()}
        for k in self.QUANTITIES:
            out[k] = getattr(self, k).to_json()
        out["end_Q_routes"] = {"direct": self.end_Q_direct, "sequence": self.end_Q_sequence}
        out["identities"] = [{"name": n, "status": s} for n, s in self.identities]
        return out

    @classmethod
    def from_json(cls, obj) -> "DeformationReport":
        kw = {k: DimValue.from_json(obj[k]) for k in cls.QUANTITIES}
        return cls(params=TangoParams.from_json(obj["params"]),
                   end_Q_direct=obj["end_Q_routes"]["direct"],
                   end_Q_sequence=obj["end_Q_routes"]["sequence"],
                   identities=[(d["name"], d["status"]) for d in obj["identities"]], **kw)


def smoothness_report(params: TangoParams, engine: Optional[Engine] = None) -> DeformationReport:
    engine = engine or engine_for(params)
    tabs = deformation_tables(params, engine)
    j, direct, seq = tabs["joint"], tabs["direct"], tabs["route_sequence"]
    end_q, end_f, end_t = j["End Q"], j["End F"], j["End T"]
    fq, ft, qt, qst = j["F*(-g) x Q(-g)"], j["F*(-g) x T"], j["Q(-g) x T*"], j["Q*(g) x T"]

    dim_y = _combine((1, end_q.h(1)), (1, qst.h(0)), (-1, end_q.h(0)))
    dim_sigma = ft.h(0)
    dim_z = _combine((1, end_t.h(0)), (-1, dim_sigma), (-1, end_q.h(0)))
    y_minus_z = _combine((1, end_q.h(1)), (1, qst.h(0)), (-1, end_t.h(0)), (1, dim_sigma))
    upper = _combine((1, end_q.h(1)), (1, ft.h(1)))

    # both routes for End Q must be compatible in every degree
    routes = [equal_status(a, b) for a, b in zip(direct["End Q"].dims, seq["End Q"].dims)]
    if FAIL in routes:
        route_status = FAIL
    elif all(r == PASS for r in routes):
        route_status = PASS
    else:
        route_status = INDETERMINATE

    ext1 = PASS if ext1_vanishing(params, engine) else (
        FAIL if any(engine.cohomology(QBundle(), -params.gamma - e).h(1).lo > 0
                    for e in tango_middle(params)) else INDETERMINATE)
    squeeze = equal_status(y_minus_z, end_f.h(1))
    identities = [
        ("Ext1(T, Q(-g)) = 0: h1(Q(-g) x T*) = 0", ext1),
        ("flank: h2(Q(-g) x T*) = 0", zero_status(qt.h(2))),
        ("h1(End Q) = h2(F*(-2g) x Q)", equal_status(end_q.h(1), fq.h(2))),
        ("h1(End F) <= h1(End Q) + h1(F*(-g) x T)", le_status(end_f.h(1), upper)),
        ("dim Kur = h1(End F)", squeeze),
        ("dim Kur = dim_Y - dim_Z", squeeze),
        ("End Q routes agree", route_status),
    ]
    return DeformationReport(
        params=params,
        h1_end_Q=end_q.h(1), h0_end_Q=end_q.h(0), h1_end_F=end_f.h(1),
        h0_QdualTensor=qst.h(0), dim_Y=_as_dim(dim_y), dim_Sigma=dim_sigma,
        h1_FdualTensor=ft.h(1), kuranishi_dim=end_f.h(1), h0_end_T=end_t.h(0),
        h2_FdualQ=fq.h(2), dim_Z=_as_dim(dim_z), flank_h1=qt.h(1), flank_h2=qt.h(2),
        end_Q_direct=str(direct["End Q"]), end_Q_sequence=str(seq["End Q"]),
        identities=identities,
    )
