"""Weight-graded exterior square of S^n U and the admissible subspaces W.

Basis of S^n U: v_p = x^(n-p) y^p, 0 <= p <= n. Basis of its exterior square:
z_{p,q} = v_p ^ v_q with p < q, graded by k = p + q (1 <= k <= 2n-1). A
C*-invariant W satisfying the Tango condition is a direct sum of hyperplanes
W_k = ker(phi_k) of the graded pieces E_k, 3 <= k <= 2n-3, such that no phi_k
vanishes on a basis vector of E_k.

All coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .combinatorics import binom


def weight_of_monomial(params, p: int) -> int:
    """C*-weight of v_p under diag(t^alpha, t^beta)."""
    if not 0 <= p <= params.n:
        raise ValueError(f"monomial index {p} outside 0..{params.n}")
    return params.n * params.alpha + p * (params.beta - params.alpha)


def wedge_weight(params, p: int, q: int) -> int:
    return weight_of_monomial(params, p) + weight_of_monomial(params, q)


def grade_basis(n: int, k: int) -> list:
    """Basis indices (p, k - p) of E_k, ordered by increasing p."""
    if not 1 <= k <= 2 * n - 1:
        raise ValueError(f"grade {k} outside 1..{2 * n - 1}")
    return [(p, k - p) for p in range(max(k - n, 0), (k - 1) // 2 + 1)]


def grade_dim(n: int, k: int) -> int:
    if not 1 <= k <= 2 * n - 1:
        raise ValueError(f"grade {k} outside 1..{2 * n - 1}")
    return (k - 1) // 2 - max(k - n, 0) + 1


def wedge_basis(n: int) -> list:
    return [(p, q) for p in range(n + 1) for q in range(p + 1, n + 1)]


def admissible_grades(n: int) -> range:
    return range(3, 2 * n - 2)


class GradedWedgeVector:
    """Sparse exact vector in the exterior square of S^n U."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        clean = {}
        for (p, q), c in (coeffs or {}).items():
            if not 0 <= p < q <= n:
                raise ValueError(f"invalid wedge index ({p}, {q}) for n={n}")
            c = Fraction(c)
            if c:
                clean[(p, q)] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, n: int, p: int, q: int) -> "GradedWedgeVector":
        return cls(n, {(p, q): 1})

    def grades(self) -> set:
        return {p + q for p, q in self.coeffs}

    def is_zero(self) -> bool:
        return not self.coeffs

    def grade(self) -> int:
        gs = self.grades()
        if len(gs) != 1:
            raise ValueError(f"vector is not homogeneous (grades {sorted(gs)})")
        return gs.pop()

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return GradedWedgeVector(self.n, out)

    def __mul__(self, scalar):
        return GradedWedgeVector(self.n, {k: c * scalar for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1

    def __eq__(self, other):
        return isinstance(other, GradedWedgeVector) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __repr__(self):
        terms = " + ".join(f"{c}*z{p}{q}" for (p, q), c in sorted(self.coeffs.items()))
        return f"GradedWedgeVector(n={self.n}, {terms or '0'})"


def wedge_square_mixed(v: GradedWedgeVector) -> dict:
    """v ^ v in the exterior fourth power, keyed by sorted 4-tuples (a, b, c, d).

    Coefficient of e_a^e_b^e_c^e_d is 2 (c_ab c_cd - c_ac c_bd + c_ad c_bc).
    """
    c = v.coeffs
    support = sorted({i for pq in c for i in pq})
    out = {}
    for a, b, cc, d in combinations(support, 4):
        val = (c.get((a, b), 0) * c.get((cc, d), 0)
               - c.get((a, cc), 0) * c.get((b, d), 0)
               + c.get((a, d), 0) * c.get((b, cc), 0))
        if val:
            out[(a, b, cc, d)] = 2 * val
    return out


def wedge_square(v: GradedWedgeVector) -> dict:
    """u ^ u for u homogeneous of grade k, on the basis z_{p,k-p} ^ z_{q,k-q} (p < q).

    Keys are pairs (p, q) of first indices; the coefficient is 2 a_p a_q.
    """
    if v.is_zero():
        return {}
    v.grade()  # rejects mixed-grade input
    a = {p: c for (p, _), c in v.coeffs.items()}
    ps = sorted(a)
    out = {}
    for i, p in enumerate(ps):
        for q in ps[i + 1:]:
            out[(p, q)] = 2 * a[p] * a[q]
    return out


def is_decomposable_homogeneous(v: GradedWedgeVector) -> bool:
    """A homogeneous vector is decomposable iff it is a multiple of one z_{p,k-p}.

    The zero vector counts as decomposable.
    """
    if not v.is_zero():
        v.grade()
    return len(v.coeffs) <= 1


# -- exact linear algebra -------------------------------------------------------

def matrix_rank(rows) -> int:
    """Rank of a list of rows of Fractions by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / pr[col]
                m[r] = [x - f * y for x, y in zip(m[r], pr)]
        rank += 1
    return rank


def hyperplane_basis(phi) -> list:
    """Basis of ker(phi) in coordinates, for a nonzero functional phi."""
    phi = [Fraction(x) for x in phi]
    j0 = next(j for j, x in enumerate(phi) if x != 0)
    out = []
    for j, x in enumerate(phi):
        if j == j0:
            continue
        vec = [Fraction(0)] * len(phi)
        vec[j] = Fraction(1)
        vec[j0] = -x / phi[j0]
        out.append(vec)
    return out


# -- admissible subspaces -------------------------------------------------------

@dataclass(frozen=True)
class WSpace:
    """W = sum of W_k = ker(phi_k) inside E_k, one functional per grade 3..2n-3.

    ``functionals[k]`` lists phi_k(z_{p,k-p}) in the order of :func:`grade_basis`.
    """

    n: int
    functionals: dict = field(default_factory=dict)

    def __post_init__(self):
        fixed = {}
        for k, phi in self.functionals.items():
            k = int(k)
            if k not in admissible_grades(self.n):
                raise ValueError(
                    f"grade {k} carries no admissible hyperplane for n={self.n}: "
                    f"only grades 3..{2 * self.n - 3} do (E_k is one-dimensional otherwise)")
            phi = tuple(Fraction(x) for x in phi)
            if len(phi) != grade_dim(self.n, k):
                raise ValueError(f"functional for grade {k} has length {len(phi)}, "
                                 f"expected {grade_dim(self.n, k)}")
            if not any(phi):
                raise ValueError(f"functional for grade {k} is zero")
            fixed[k] = phi
        object.__setattr__(self, "functionals", dict(sorted(fixed.items())))

    def graded_basis(self, k: int) -> list:
        """Basis of W_k as GradedWedgeVectors (W_k = 0 outside 3..2n-3)."""
        idx = grade_basis(self.n, k)
        if k not in self.functionals:
            if k in admissible_grades(self.n):
                return [GradedWedgeVector.basis(self.n, *pq) for pq in idx]
            return []
        return [GradedWedgeVector(self.n, dict(zip(idx, vec)))
                for vec in hyperplane_basis(self.functionals[k])]

    def basis(self) -> list:
        return [b for k in range(1, 2 * self.n) for b in self.graded_basis(k)]

    def to_json(self) -> dict:
        return {"n": self.n,
                "functionals": {str(k): [str(x) for x in phi] for k, phi in self.functionals.items()}}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "WSpace":
        if not isinstance(obj, dict) or "n" not in obj or "functionals" not in obj:
            raise ValueError("WSpace JSON needs keys 'n' and 'functionals'")
        return cls(int(obj["n"]), {int(k): [Fraction(x) for x in v]
                                   for k, v in obj["functionals"].items()})


@dataclass
class WSpaceReport:
    n: int
    dim: int
    expected_dim: int
    decomposable_witnesses: list
    missing_grades: list

    @property
    def dim_ok(self) -> bool:
        return self.dim == self.expected_dim

    @property
    def grades_ok(self) -> bool:
        return not self.decomposable_witnesses and not self.missing_grades

    @property
    def valid(self) -> bool:
        return self.dim_ok and self.grades_ok

    def to_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "expected_dim": self.expected_dim,
                "dim_ok": self.dim_ok, "grades_ok": self.grades_ok, "valid": self.valid,
                "decomposable_witnesses": [{"grade": k, "z": list(pq)}
                                           for k, pq in self.decomposable_witnesses],
                "missing_grades": self.missing_grades}


def expected_w_dim(n: int) -> int:
    return binom(n + 1, 2) - (2 * n - 1)


def w_dimension(w: WSpace) -> int:
    """dim W by exact rank of its spanning vectors in the full exterior square."""
    index = {pq: j for j, pq in enumerate(wedge_basis(w.n))}
    rows = []
    for b in w.basis():
        row = [Fraction(0)] * len(index)
        for pq, c in b.coeffs.items():
            row[index[pq]] = c
        rows.append(row)
    return matrix_rank(rows) if rows else 0


def wspace_validate(w: WSpace) -> WSpaceReport:
    witnesses = []
    for k, phi in w.functionals.items():
        for pq, val in zip(grade_basis(w.n, k), phi):
            if val == 0:
                witnesses.append((k, pq))
    missing = [k for k in admissible_grades(w.n) if k not in w.functionals]
    return WSpaceReport(w.n, w_dimension(w), expected_w_dim(w.n), witnesses, missing)


def _random_fraction(rng: random.Random, nonzero=True) -> Fraction:
    while True:
        num = rng.randint(-5, 5)
        if num or not nonzero:
            return Fraction(num, rng.randint(1, 5))


def sample_wspace(n: int, seed: int) -> WSpace:
    """A random valid W: every coordinate of every phi_k drawn nonzero."""
    rng = random.Random(seed)
    return WSpace(n, {k: [_random_fraction(rng) for _ in range(grade_dim(n, k))]
                      for k in admissible_grades(n)})


@dataclass
class DecomposabilityEvidence:
    structural_ok: bool
    failing_grades: list
    trials: int
    seed: int
    random_ok: bool
    zero_square_samples: int

    @property
    def ok(self) -> bool:
        return self.structural_ok and self.random_ok

    def to_json(self) -> dict:
        return {"structural_ok": self.structural_ok, "failing_grades": self.failing_grades,
                "trials": self.trials, "seed": self.seed, "random_ok": self.random_ok,
                "zero_square_samples": self.zero_square_samples, "ok": self.ok}


def wspace_no_decomposable_check(w: WSpace, trials: int = 100, seed: int = 0) -> DecomposabilityEvidence:
    """Check that W holds no nonzero decomposable 2-vector.

    Structural part: a homogeneous decomposable vector of E_k is a multiple of a
    single z_{p,k-p}, so W_k is decomposable-free iff phi_k is nonzero on every
    basis vector; grades outside 3..2n-3 must be zero in W. Random part: sample
    nonzero mixed-grade w in W and require w ^ w != 0.
    """
    failing = []
    for k in range(1, 2 * w.n):
        basis = w.graded_basis(k)
        if not basis:
            continue
        phi = w.functionals.get(k)
        if phi is None or any(x == 0 for x in phi):
            failing.append(k)
    rng = random.Random(seed)
    basis = w.basis()
    zero_squares = 0
    done = 0
    while done < trials and basis:
        vec = GradedWedgeVector(w.n)
        for b in basis:
            vec = vec + b * _random_fraction(rng, nonzero=False)
        if vec.is_zero():
            continue
        done += 1
        if not wedge_square_mixed(vec):
            zero_squares += 1
    return DecomposabilityEvidence(not failing, failing, done, seed, zero_squares == 0, zero_squares)


@dataclass(frozen=True)
class DWBasis:
    n: int
    picks: dict

    def vectors(self) -> list:
        return [GradedWedgeVector.basis(self.n, *pq) for _, pq in sorted(self.picks.items())]


def build_dw(w: WSpace) -> DWBasis:
    """Complement D_W: per grade, the basis vector z_{p,k-p} with smallest p outside W_k."""
    picks = {}
    for k in range(1, 2 * w.n):
        phi = w.functionals.get(k)
        for j, pq in enumerate(grade_basis(w.n, k)):
            if phi is None or phi[j] != 0:
                picks[k] = pq
                break
        else:
            raise ValueError(f"functional of grade {k} vanishes on all of E_{k}")
    return DWBasis(w.n, picks)


def clebsch_gordan_wedge2(n: int) -> list:
    """Highest weights of the SL2-irreducible summands of the exterior square of S^n U."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [2 * (n - j) for j in range(1, n + 1, 2)]


def zk_nonempty_search(n: int, k: int, entries=(-2, -1, 0, 1, 2)) -> bool:
    """Exhaustive search over small functionals: is there a hyperplane of E_k of
    positive dimension containing no basis vector z_{p,k-p}?

    Containment is decided by rank, not by reading off phi.
    """
    from itertools import product

    dim = grade_dim(n, k)
    if dim < 2:
        return False
    units = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for phi in product(entries, repeat=dim):
        if not any(phi):
            continue
        h = hyperplane_basis(phi)
        r = matrix_rank(h)
        if all(matrix_rank(h + [u]) > r for u in units):
            return True
    return False
