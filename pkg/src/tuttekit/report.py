"""Verdict record shared by the property checkers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import GaussianRational, coeff_to_json

HOLDS = "holds-on-samples"
FALSIFIED = "falsified"
PROVEN = "proven-exact"
INCONCLUSIVE = "inconclusive"


@dataclass
class PropertyReport:
    name: str
    verdict: str
    samples: int = 0
    seed: int | None = None
    witness: object = None
    details: dict = field(default_factory=dict)

    @property
    def falsified(self) -> bool:
        return self.verdict == FALSIFIED

    @property
    def ok(self) -> bool:
        return self.verdict in (HOLDS, PROVEN)

    def to_json(self) -> dict:
        return {"property": self.name, "verdict": self.verdict, "samples": self.samples,
                "seed": self.seed, "witness": _jsonable(self.witness),
                "details": _jsonable(self.details)}


def _jsonable(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, GaussianRational) or hasattr(x, "denominator"):
        return coeff_to_json(x)
    if hasattr(x, "real") and hasattr(x, "imag"):
        return {"re": float(x.real), "im": float(x.imag)}
    return str(x)
