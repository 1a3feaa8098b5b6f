"""The value object every bound operation returns."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class BoundReport:
    """A bound value together with its ingredients.

    ``terms`` are combined by addition or multiplication (``combine``) and
    must reproduce ``value``. ``in_validity_domain = False`` never prevents
    evaluation; it only flags that the guarantee behind the formula does not
    cover the given parameters.
    """

    name: str
    value: float
    in_validity_domain: bool
    terms: list[tuple[str, float]]
    combine: str = "sum"
    params: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def recombine(self) -> float:
        vals = [v for _, v in self.terms]
        if self.combine == "sum":
            return math.fsum(vals)
        return math.prod(vals)

    def term(self, name: str) -> float:
        for k, v in self.terms:
            if k == name:
                return v
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "in_validity_domain": self.in_validity_domain,
            "combine": self.combine,
            "terms": {k: v for k, v in self.terms},
            "params": dict(self.params),
            "extras": dict(self.extras),
        }

    def format(self) -> str:
        lines = [
            f"{self.name}: {self.value!r}",
            f"  in_validity_domain: {str(self.in_validity_domain).lower()}",
        ]
        op = " + " if self.combine == "sum" else " * "
        lines.append("  terms (" + op.strip() + "):")
        lines += [f"    {k} = {v!r}" for k, v in self.terms]
        if self.params:
            lines.append("  params: " + ", ".join(f"{k}={v!r}" for k, v in self.params.items()))
        for k, v in self.extras.items():
            lines.append(f"  {k}: {v!r}")
        return "\n".join(lines)


def summed(name, terms, in_domain, **params) -> BoundReport:
    return BoundReport(name, math.fsum(v for _, v in terms), in_domain, list(terms), "sum", params)


def multiplied(name, terms, in_domain, **params) -> BoundReport:
    return BoundReport(name, math.prod(v for _, v in terms), in_domain, list(terms), "product", params)
