"""Tagged Rényi order: 0, 1, infinity, or a finite positive alpha != 1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from ..errors import RenyiConeError

_KINDS = ("zero", "one", "inf", "finite")


@dataclass(frozen=True)
class RenyiOrder:
    kind: str
    alpha: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RenyiConeError(f"unknown order kind {self.kind!r}")
        if self.kind == "finite":
            a = self.alpha
            if not (math.isfinite(a) and a > 0 and a != 1):
                raise RenyiConeError(f"finite Rényi order must be positive and != 1, got {a}")

    @classmethod
    def finite(cls, alpha: float) -> "RenyiOrder":
        return cls("finite", float(alpha))

    @classmethod
    def of(cls, value: "OrderLike") -> "RenyiOrder":
        """Coerce a float or string; 0, 1 and inf map to the tagged variants."""
        if isinstance(value, RenyiOrder):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        a = float(value)
        if a == 0:
            return ZERO
        if a == 1:
            return ONE
        if math.isinf(a) and a > 0:
            return INF
        return cls.finite(a)

    @classmethod
    def parse(cls, text: str) -> "RenyiOrder":
        t = text.strip().lower()
        if t in ("inf", "infinity", "+inf"):
            return INF
        try:
            a = float(t)
        except ValueError:
            raise RenyiConeError(f"cannot parse Rényi order {text!r}") from None
        if math.isnan(a) or a < 0:
            raise RenyiConeError(f"Rényi order must be non-negative, got {text!r}")
        return cls.of(a)

    @property
    def value(self) -> float:
        return {"zero": 0.0, "one": 1.0, "inf": math.inf}.get(self.kind, self.alpha)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    def above_one(self) -> bool:
        return self.kind == "inf" or (self.kind == "finite" and self.alpha > 1)

    def below_one(self) -> bool:
        return self.kind == "finite" and self.alpha < 1

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "one":
            return "1"
        if self.kind == "inf":
            return "inf"
        return repr(self.alpha)


ZERO = RenyiOrder("zero", 0.0)
ONE = RenyiOrder("one", 1.0)
INF = RenyiOrder("inf", math.inf)

OrderLike = Union[RenyiOrder, float, int, str]
