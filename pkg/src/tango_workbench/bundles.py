"""Symbolic bundle expressions on P^n and their numerical invariants.

An expression is a small tree (line bundles, sums, twists, duals, tensors,
symmetric / exterior powers of line sums, and the weighted quotient and Tango
bundles Q and F). Two views are computed from it:

* the class in K(P^n) = Z[L, 1/L], as a Laurent polynomial in L = [O(1)];
  rank, Chern polynomial and Euler characteristic are read off that class;
* a canonical normal form, a multiset of monomials ``atoms (x) O(m)``, used as
  the memoization key of the cohomology engine.

The middle terms of the defining sequences are

    0 -> O(-g)  -> (+)_i O(n a + i (b - a))        -> Q      -> 0
    0 -> Q(-g)  -> (+)_k O(2n a + k (b - a))       -> F(g)   -> 0

with i = 0..n and k = 1..2n-1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .combinatorics import binom, chi_line


# -- twist lists -----------------------------------------------------------------

def quotient_middle(params) -> list:
    n, a, b = params.n, params.alpha, params.beta
    return [n * a + i * (b - a) for i in range(n + 1)]


def tango_middle(params) -> list:
    n, a, b = params.n, params.alpha, params.beta
    return [2 * n * a + k * (b - a) for k in range(1, 2 * n)]


def c1_tango_formula(params) -> Fraction:
    """n (alpha + beta) (2n - 1 - (n + 1)/2), kept as a Fraction."""
    n = params.n
    return n * (params.alpha + params.beta) * (2 * n - 1 - Fraction(n + 1, 2))


# -- K-theory classes --------------------------------------------------------------

class KClass:
    """Integer Laurent polynomial in L = [O(1)]; a virtual sum of line bundles."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {d: k for d, k in dict(coeffs or {}).items() if k}

    @classmethod
    def line(cls, d: int) -> "KClass":
        return cls({d: 1})

    @classmethod
    def line_sum(cls, degrees) -> "KClass":
        return cls(Counter(degrees))

    def __add__(self, other):
        out = Counter(self.c)
        out.update(other.c)
        return KClass(out)

    def __neg__(self):
        return KClass({d: -k for d, k in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KClass({d: k * other for d, k in self.c.items()})
        out = Counter()
        for d1, k1 in self.c.items():
            for d2, k2 in other.c.items():
                out[d1 + d2] += k1 * k2
        return KClass(out)

    __rmul__ = __mul__

    def shift(self, m: int) -> "KClass":
        return KClass({d + m: k for d, k in self.c.items()})

    def dual(self) -> "KClass":
        return KClass({-d: k for d, k in self.c.items()})

    def __eq__(self, other):
        return isinstance(other, KClass) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        return "KClass(" + " + ".join(f"{k}L^{d}" for d, k in sorted(self.c.items())) + ")"

    @property
    def rank(self) -> int:
        return sum(self.c.values())

    @property
    def c1(self) -> int:
        return sum(k * d for d, k in self.c.items())

    def reduced(self, n: int) -> tuple:
        """Coordinates in K(P^n) = Z[u]/(u^(n+1)) with u = L - 1.

        Distinct Laurent polynomials can be the same class on P^n (for example
        the top exterior power of Q and O(c1 Q)); compare classes through this.
        """
        out = [0] * (n + 1)
        for d, k in self.c.items():
            for j in range(n + 1):
                coef = binom(d, j) if d >= 0 else (-1) ** j * binom(-d + j - 1, j)
                out[j] += k * coef
        return tuple(out)

    def same_class(self, other: "KClass", n: int) -> bool:
        return self.reduced(n) == other.reduced(n)

    def euler(self, n: int) -> int:
        return sum(k * chi_line(n, d) for d, k in self.c.items())

    def chern(self, n: int) -> tuple:
        """Total Chern class prod (1 + d h)^k truncated modulo h^(n+1)."""
        poly = [1] + [0] * n
        for d, k in self.c.items():
            if k > 0:
                factor = [binom(k, j) * d ** j for j in range(n + 1)]
            else:
                m = -k
                factor = [(-d) ** j * binom(m + j - 1, j) for j in range(n + 1)]
            poly = _mul_trunc(poly, factor, n)
        return tuple(poly)

    def _series(self, q: int, sym: bool) -> list:
        # coefficients of t^0..t^q in lambda_t (sym=False) or sigma_t (sym=True)
        series = [KClass({0: 1})] + [KClass() for _ in range(q)]
        for d, k in self.c.items():
            fac = []
            for j in range(q + 1):
                if not sym:
                    coef = binom(k, j) if k >= 0 else (-1) ** j * binom(-k + j - 1, j)
                else:
                    coef = binom(k + j - 1, j) if k >= 0 else (-1) ** j * binom(-k, j)
                fac.append(KClass({j * d: coef}))
            new = []
            for i in range(q + 1):
                acc = KClass()
                for j in range(i + 1):
                    if series[i - j].c and fac[j].c:
                        acc = acc + series[i - j] * fac[j]
                new.append(acc)
            series = new
        return series

    def wedge(self, q: int) -> "KClass":
        return self._series(q, sym=False)[q] if q >= 0 else KClass()

    def sym(self, q: int) -> "KClass":
        return self._series(q, sym=True)[q] if q >= 0 else KClass()


def _mul_trunc(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] += x * b[j]
    return out


# -- expression tree ----------------------------------------------------------------

class BundleExpr:
    """Base class; subclasses are frozen dataclasses (hashable, comparable)."""

    def __str__(self):
        return render(self)


@dataclass(frozen=True, eq=True)
class Line(BundleExpr):
    d: int


@dataclass(frozen=True, eq=True)
class DirectSum(BundleExpr):
    terms: tuple


@dataclass(frozen=True, eq=True)
class Twist(BundleExpr):
    e: BundleExpr
    m: int


@dataclass(frozen=True, eq=True)
class Dual(BundleExpr):
    e: BundleExpr


@dataclass(frozen=True, eq=True)
class Tensor(BundleExpr):
    a: BundleExpr
    b: BundleExpr


@dataclass(frozen=True, eq=True)
class SymPowLineSum(BundleExpr):
    q: int
    degrees: tuple


@dataclass(frozen=True, eq=True)
class WedgePowLineSum(BundleExpr):
    q: int
    degrees: tuple


@dataclass(frozen=True, eq=True)
class QBundle(BundleExpr):
    pass


@dataclass(frozen=True, eq=True)
class FBundle(BundleExpr):
    pass


@dataclass(frozen=True, eq=True)
class SymQ(BundleExpr):
    q: int


@dataclass(frozen=True, eq=True)
class WedgeQ(BundleExpr):
    q: int


@dataclass(frozen=True, eq=True)
class WedgeF(BundleExpr):
    q: int


def line_sum(degrees) -> BundleExpr:
    return DirectSum(tuple(Line(d) for d in degrees))


def tensor(*factors) -> BundleExpr:
    out = factors[0]
    for f in factors[1:]:
        out = Tensor(out, f)
    return out


_ATOMS = (QBundle, FBundle, SymQ, WedgeQ, WedgeF)


def _needs_params(e) -> bool:
    if isinstance(e, _ATOMS):
        return True
    if isinstance(e, (Line, SymPowLineSum, WedgePowLineSum)):
        return False
    if isinstance(e, DirectSum):
        return any(_needs_params(t) for t in e.terms)
    if isinstance(e, (Twist, Dual)):
        return _needs_params(e.e)
    if isinstance(e, Tensor):
        return _needs_params(e.a) or _needs_params(e.b)
    raise TypeError(f"not a bundle expression: {e!r}")


def _validate_power(q):
    if q < 0:
        raise ValueError(f"power must be >= 0, got {q}")


# -- K-class of an expression ----------------------------------------------------------

def k_class_q(params) -> KClass:
    return KClass.line_sum(quotient_middle(params)) - KClass.line(-params.gamma)


def k_class_f(params) -> KClass:
    g = params.gamma
    f_g = KClass.line_sum(tango_middle(params)) - k_class_q(params).shift(-g)
    return f_g.shift(-g)


def k_class(e: BundleExpr, params=None) -> KClass:
    """Class in K(P^n), computed structurally from the defining sequences."""
    if isinstance(e, Line):
        return KClass.line(e.d)
    if isinstance(e, DirectSum):
        out = KClass()
        for t in e.terms:
            out = out + k_class(t, params)
        return out
    if isinstance(e, Twist):
        return k_class(e.e, params).shift(e.m)
    if isinstance(e, Dual):
        return k_class(e.e, params).dual()
    if isinstance(e, Tensor):
        return k_class(e.a, params) * k_class(e.b, params)
    if isinstance(e, SymPowLineSum):
        _validate_power(e.q)
        return KClass.line_sum(e.degrees).sym(e.q)
    if isinstance(e, WedgePowLineSum):
        _validate_power(e.q)
        return KClass.line_sum(e.degrees).wedge(e.q)
    if params is None:
        raise ValueError(f"{render(e)} needs TangoParams")
    if isinstance(e, QBundle):
        return k_class_q(params)
    if isinstance(e, FBundle):
        return k_class_f(params)
    if isinstance(e, SymQ):
        _validate_power(e.q)
        return k_class_q(params).sym(e.q)
    if isinstance(e, WedgeQ):
        _validate_power(e.q)
        return k_class_q(params).wedge(e.q)
    if isinstance(e, WedgeF):
        _validate_power(e.q)
        return k_class_f(params).wedge(e.q)
    raise TypeError(f"not a bundle expression: {e!r}")


@dataclass(frozen=True)
class ChernData:
    rank: int
    chern_poly: tuple

    @property
    def c1(self) -> int:
        return self.chern_poly[1] if len(self.chern_poly) > 1 else 0


def rank_of(e: BundleExpr, params=None) -> int:
    return k_class(e, params).rank


def chern_of(e: BundleExpr, params) -> ChernData:
    k = k_class(e, params)
    return ChernData(k.rank, k.chern(params.n))


def slope_of(e: BundleExpr, params) -> Fraction:
    k = k_class(e, params)
    if k.rank == 0:
        raise ZeroDivisionError(f"slope of rank-0 expression {render(e)}")
    return Fraction(k.c1, k.rank)


def c1_q(params) -> int:
    return k_class_q(params).c1


def c1_f(params) -> int:
    return k_class_f(params).c1


def twist_chern(poly: tuple, rank: int, m: int, n: int) -> tuple:
    """Chern polynomial of E(m) from that of E: sum_i c_i (1 + m h)^(rank - i) h^i."""
    out = [0] * (n + 1)
    for i, ci in enumerate(poly):
        if not ci:
            continue
        r = rank - i
        for j in range(n + 1 - i):
            coef = binom(r, j) if r >= 0 else (-1) ** j * binom(-r + j - 1, j)
            out[i + j] += ci * coef * m ** j
    return tuple(out)


# -- normal form ---------------------------------------------------------------------

_KIND_ORDER = {"Q": 0, "SymQ": 1, "WedgeQ": 2, "F": 3, "WedgeF": 4}


@dataclass(frozen=True, order=False)
class Atom:
    kind: str
    power: int = 1
    dual: bool = False

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.power, self.dual)

    def __str__(self):
        base = {"Q": "Q", "F": "F"}.get(self.kind) or f"{self.kind}[{self.power}]"
        return base + ("*" if self.dual else "")


Q_ATOM = Atom("Q")
F_ATOM = Atom("F")


@dataclass(frozen=True)
class Monomial:
    """Tensor product of atoms twisted by O(twist)."""

    atoms: tuple
    twist: int

    def key(self) -> str:
        if not self.atoms:
            return f"O({self.twist})"
        body = "⊗".join(str(a) for a in self.atoms)
        return f"{body}({self.twist})"

    def sort_key(self):
        return (len(self.atoms), tuple(a.sort_key() for a in self.atoms), self.twist)

    def shifted(self, m: int) -> "Monomial":
        return Monomial(self.atoms, self.twist + m)

    def times(self, other: "Monomial") -> "Monomial":
        atoms = tuple(sorted(self.atoms + other.atoms, key=Atom.sort_key))
        return Monomial(atoms, self.twist + other.twist)

    def __str__(self):
        return self.key()


def _sorted_terms(terms) -> tuple:
    return tuple(sorted(terms, key=Monomial.sort_key))


def _atom_terms(kind: str, q: int, params) -> list:
    """Canonical monomials for an un-dualized atom of the given kind and power."""
    n = params.n
    _validate_power(q)
    if q == 0:
        return [Monomial((), 0)]
    if kind == "SymQ":
        return [Monomial((Q_ATOM if q == 1 else Atom("SymQ", q),), 0)]
    if kind == "WedgeQ":
        if q > n:
            return []
        if q == n:
            return [Monomial((), c1_q(params))]
        return [Monomial((Q_ATOM if q == 1 else Atom("WedgeQ", q),), 0)]
    if kind == "WedgeF":
        r = n - 1
        if q > r:
            return []
        if q == r:
            return [Monomial((), c1_f(params))]
        return [Monomial((F_ATOM if q == 1 else Atom("WedgeF", q),), 0)]
    raise ValueError(kind)


def dual_atom_terms(atom: Atom, params) -> list:
    """Canonical form of the dual of one atom (a single monomial)."""
    if atom.dual:
        return [Monomial((Atom(atom.kind, atom.power, False),), 0)]
    n = params.n
    if atom.kind == "F" and n == 3:
        # rank 2: F* = F(-c1 F)
        return [Monomial((F_ATOM,), -c1_f(params))]
    if atom.kind in ("Q", "F", "SymQ"):
        return [Monomial((Atom(atom.kind, atom.power, True),), 0)]
    if atom.kind == "WedgeQ":
        # exterior powers of a rank-n bundle: (W^j Q)* = W^(n-j) Q (-c1 Q)
        return [m.shifted(-c1_q(params)) for m in _atom_terms("WedgeQ", n - atom.power, params)]
    if atom.kind == "WedgeF":
        return [m.shifted(-c1_f(params)) for m in _atom_terms("WedgeF", n - 1 - atom.power, params)]
    raise ValueError(atom)


def _dual_monomial(mono: Monomial, params) -> list:
    out = [Monomial((), -mono.twist)]
    for a in mono.atoms:
        out = [x.times(y) for x in out for y in dual_atom_terms(a, params)]
    return out


def normal_terms(e: BundleExpr, params=None) -> tuple:
    """Sorted tuple of canonical monomials (with repetition) equal to ``e``."""
    if isinstance(e, Line):
        return (Monomial((), e.d),)
    if isinstance(e, DirectSum):
        return _sorted_terms(t for s in e.terms for t in normal_terms(s, params))
    if isinstance(e, Twist):
        return tuple(t.shifted(e.m) for t in normal_terms(e.e, params))
    if isinstance(e, Dual):
        if params is None and _needs_params(e):
            raise ValueError(f"{render(e)} needs TangoParams")
        return _sorted_terms(d for t in normal_terms(e.e, params) for d in _dual_monomial(t, params))
    if isinstance(e, Tensor):
        left, right = normal_terms(e.a, params), normal_terms(e.b, params)
        return _sorted_terms(x.times(y) for x in left for y in right)
    if isinstance(e, SymPowLineSum):
        _validate_power(e.q)
        return _sorted_terms(Monomial((), sum(c)) for c in
                             combinations_with_replacement(e.degrees, e.q))
    if isinstance(e, WedgePowLineSum):
        _validate_power(e.q)
        return _sorted_terms(Monomial((), sum(c)) for c in combinations(e.degrees, e.q))
    if params is None:
        raise ValueError(f"{render(e)} needs TangoParams")
    if isinstance(e, QBundle):
        return (Monomial((Q_ATOM,), 0),)
    if isinstance(e, FBundle):
        return (Monomial((F_ATOM,), 0),)
    if isinstance(e, SymQ):
        return tuple(_atom_terms("SymQ", e.q, params))
    if isinstance(e, WedgeQ):
        return tuple(_atom_terms("WedgeQ", e.q, params))
    if isinstance(e, WedgeF):
        return tuple(_atom_terms("WedgeF", e.q, params))
    raise TypeError(f"not a bundle expression: {e!r}")


def atom_expr(a: Atom) -> BundleExpr:
    base = {"Q": QBundle(), "F": FBundle()}.get(a.kind)
    if base is None:
        base = {"SymQ": SymQ, "WedgeQ": WedgeQ, "WedgeF": WedgeF}[a.kind](a.power)
    return Dual(base) if a.dual else base


def monomial_expr(m: Monomial) -> BundleExpr:
    if not m.atoms:
        return Line(m.twist)
    body = tensor(*[atom_expr(a) for a in m.atoms])
    return Twist(body, m.twist) if m.twist else body


def terms_expr(terms) -> BundleExpr:
    terms = list(terms)
    if len(terms) == 1:
        return monomial_expr(terms[0])
    return DirectSum(tuple(monomial_expr(t) for t in terms))


def normalize(e: BundleExpr, params=None) -> BundleExpr:
    """Canonical form: duals pushed to atoms, tensors distributed over sums,
    twists collected, powers of line sums expanded, summands sorted."""
    return terms_expr(normal_terms(e, params))


def canonical_key(e: BundleExpr, params=None) -> str:
    terms = normal_terms(e, params)
    return " ⊕ ".join(t.key() for t in terms) if terms else "0"


# -- surface syntax rendering ------------------------------------------------------------

def _degrees(ds) -> str:
    return "{" + ",".join(str(d) for d in ds) + "}"


def render(e: BundleExpr) -> str:
    if isinstance(e, Line):
        return f"O({e.d})"
    if isinstance(e, QBundle):
        return "Q"
    if isinstance(e, FBundle):
        return "F"
    if isinstance(e, SymQ):
        return f"SymQ[{e.q}]"
    if isinstance(e, WedgeQ):
        return f"WedgeQ[{e.q}]"
    if isinstance(e, WedgeF):
        return f"WedgeF[{e.q}]"
    if isinstance(e, SymPowLineSum):
        return f"Sym[{e.q}]{_degrees(e.degrees)}"
    if isinstance(e, WedgePowLineSum):
        return f"Wedge[{e.q}]{_degrees(e.degrees)}"
    if isinstance(e, Twist):
        return f"{_postfix_operand(e.e)}({e.m})"
    if isinstance(e, Dual):
        return f"{_postfix_operand(e.e)}*"
    if isinstance(e, Tensor):
        right = render(e.b)
        if isinstance(e.b, (Tensor, DirectSum)):
            right = f"({right})"
        return f"{_tensor_operand(e.a)} ⊗ {right}"
    if isinstance(e, DirectSum):
        if not e.terms:
            return "0"
        if len(e.terms) == 1:
            return f"({render(e.terms[0])})"
        return " ⊕ ".join(f"({render(t)})" if isinstance(t, DirectSum) else render(t)
                          for t in e.terms)
    raise TypeError(f"not a bundle expression: {e!r}")


def _postfix_operand(e) -> str:
    s = render(e)
    return f"({s})" if isinstance(e, (Tensor, DirectSum)) else s


def _tensor_operand(e) -> str:
    s = render(e)
    return f"({s})" if isinstance(e, DirectSum) else s
