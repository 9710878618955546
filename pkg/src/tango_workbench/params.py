from __future__ import annotations

from dataclasses import dataclass


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class TangoParams:
    """Weights (n, gamma, alpha, beta) of a weighted quotient / Tango bundle on P^n.

    Constraints: n > 2, gamma > 0, alpha >= beta, alpha + beta >= 0 and
    gamma + n*alpha + i*(beta - alpha) > 0 for 0 <= i <= n. The last one says the
    forms g_0..g_n defining the quotient bundle have positive degree.
    """

    n: int
    gamma: int
    alpha: int
    beta: int

    def __post_init__(self):
        problems = violations(self.n, self.gamma, self.alpha, self.beta)
        if problems:
            raise InvalidParams(
                f"invalid parameters (n={self.n}, gamma={self.gamma}, alpha={self.alpha}, "
                f"beta={self.beta}): " + "; ".join(problems))

    @property
    def rank_f(self) -> int:
        return self.n - 1

    @property
    def is_classical(self) -> bool:
        return self.gamma == 1 and self.alpha == 0 and self.beta == 0

    @property
    def is_cascini(self) -> bool:
        return self.beta == -self.alpha

    def form_degrees(self) -> list:
        """Degrees gamma + n*alpha + i*(beta - alpha) of the forms g_i."""
        return [self.gamma + self.n * self.alpha + i * (self.beta - self.alpha)
                for i in range(self.n + 1)]

    def to_json(self) -> dict:
        return {"n": self.n, "gamma": self.gamma, "alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_json(cls, obj: dict) -> "TangoParams":
        return cls(int(obj["n"]), int(obj["gamma"]), int(obj["alpha"]), int(obj["beta"]))

    def __str__(self):
        return f"(n={self.n}, gamma={self.gamma}, alpha={self.alpha}, beta={self.beta})"


def violations(n: int, gamma: int, alpha: int, beta: int) -> list:
    out = []
    if n <= 2:
        out.append("n must be > 2")
    if gamma <= 0:
        out.append("gamma must be > 0")
    if alpha < beta:
        out.append("alpha must be >= beta")
    if alpha + beta < 0:
        out.append("alpha + beta must be >= 0")
    bad = [i for i in range(max(n, 0) + 1) if gamma + n * alpha + i * (beta - alpha) <= 0]
    if bad:
        out.append(f"gamma + n*alpha + i*(beta - alpha) <= 0 for i in {bad}")
    return out


def is_valid(n: int, gamma: int, alpha: int, beta: int) -> bool:
    return not violations(n, gamma, alpha, beta)
