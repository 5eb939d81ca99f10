"""Space parameters and the admissibility matrix for each theorem."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class InadmissibleParams(ValueError):
    """Raised when a computation is requested outside its theorem's hypotheses."""

    def __init__(self, context: str, violated: list[str]):
        self.context = context
        self.violated = list(violated)
        super().__init__(f"{context}: violated {', '.join(self.violated)}")


@dataclass(frozen=True)
class SpaceParams:
    """Exponents of the space Q_p^beta plus the fractional-derivative data.

    ``b`` is the base of the nu-derivative and ``nu`` its order.  The derived
    exponents are exposed as properties so they never drift from ``p, beta``.
    """

    p: float
    beta: float
    b: float = 2.0
    nu: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"p must lie in (0, 1]: got {self.p}")
        if not 0.5 < self.beta <= 1.0:
            raise ValueError(f"beta must lie in (1/2, 1]: got {self.beta}")
        if not self.b > 1.0:
            raise ValueError(f"b must exceed 1: got {self.b}")
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive: got {self.nu}")

    @property
    def box_weight_exp(self) -> float:
        return self.p - 2.0 + 2.0 * self.beta

    @property
    def box_scale_exp(self) -> float:
        return self.p + 2.0 - 2.0 * self.beta

    @property
    def circle_kernel_exp(self) -> float:
        return 4.0 - self.p - 2.0 * self.beta

    @property
    def circle_scale_exp(self) -> float:
        return 2.0 * self.beta - 2.0 - self.p

    @property
    def morrey_lambda(self) -> float:
        return self.p - 2.0 * self.beta + 2.0

    @property
    def nu_star(self) -> float:
        return (3.0 - self.p - 2.0 * self.beta) / 2.0

    @property
    def nu_threshold(self) -> float:
        """Lower bound that a derivative order must beat in the Carleson characterization."""
        return max(self.nu_star, 2.0 - 2.0 * self.beta)

    def as_dict(self) -> dict:
        return {"p": self.p, "beta": self.beta, "b": self.b, "nu": self.nu}

    @classmethod
    def from_dict(cls, d: dict) -> SpaceParams:
        return cls(
            p=float(d["p"]),
            beta=float(d["beta"]),
            b=float(d.get("b", 2.0)),
            nu=float(d.get("nu", 1.0)),
        )


@dataclass(frozen=True)
class Verdict:
    context: str
    violated: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violated

    def __bool__(self) -> bool:
        return self.ok

    def require(self) -> None:
        if self.violated:
            raise InadmissibleParams(self.context, list(self.violated))


CONTEXTS = (
    "base",
    "circleTheorems",
    "morreyTheorem",
    "fracCharacterization",
    "tsigmaLemma",
    "TgTheorem",
)


def validate(
    params: SpaceParams,
    context: str = "base",
    *,
    nu: float | None = None,
    sigma: float | None = None,
) -> Verdict:
    """Check ``params`` against the hypotheses attached to ``context``.

    ``nu`` overrides ``params.nu`` for ``fracCharacterization``; ``sigma`` is
    the order of the T_sigma operator for ``tsigmaLemma``.  The verdict lists
    every violated inequality by name.
    """
    p, beta = params.p, params.beta
    bad: list[str] = []
    if context == "base":
        pass
    elif context == "circleTheorems":
        if not p + 2 * beta > 2:
            bad.append("p+2β>2")
        if not p < 1:
            bad.append("p<1")
        if not beta < 1:
            bad.append("β<1")
    elif context == "morreyTheorem":
        if not 2 * beta - p >= 1 - 1e-12:
            bad.append("2β−p≥1")
        lam = params.morrey_lambda
        if not 0 < lam <= 1 + 1e-12:
            bad.append("0<λ≤1")
    elif context == "fracCharacterization":
        order = params.nu if nu is None else nu
        if not p > 2 - 2 * beta:
            bad.append("p>2−2β")
        if not order > params.nu_threshold:
            bad.append("ν>max{(3−p−2β)/2, 2−2β}")
    elif context == "tsigmaLemma":
        if sigma is None:
            raise ValueError("tsigmaLemma needs sigma")
        if not sigma > params.nu_threshold:
            bad.append("σ>max{(3−p−2β)/2, 2−2β}")
        if not p + 2 * beta > 2:
            bad.append("p+2β>2")
    elif context == "TgTheorem":
        if not beta < 1:
            bad.append("β<1")
    else:
        raise ValueError(f"unknown context {context!r}; expected one of {CONTEXTS}")
    return Verdict(context, tuple(bad))


def frac_order_m(nu: float) -> int:
    """Smallest integer >= nu - 1, clipped at 0 (orders in (0, 1] give 0)."""
    m = math.ceil(nu - 1.0 - 1e-12)
    return max(m, 0)
