"""Search configuration and endpoint predicates.

Plain data shared by the search engine and the transcript verifier.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import format_fraction, parse_fraction
from .core import all_up_strings, decode_up


@dataclass(frozen=True)
class EndpointPredicate:
    """Which up-strings may sit at a blue-path endpoint.

    ``kind`` is ``"has-blue"`` (at least one B), ``"not-rrr-rrb"`` or
    ``"set"`` with an explicit ``allowed`` tuple.
    """

    kind: str
    allowed: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("has-blue", "not-rrr-rrb", "set"):
            raise ValueError(f"unknown predicate kind {self.kind!r}")
        if self.kind == "set":
            if not self.allowed or any(set(s) - set("RB") for s in self.allowed):
                raise ValueError(f"bad allowed set {self.allowed!r}")
            object.__setattr__(self, "allowed", tuple(sorted(set(self.allowed))))

    def __call__(self, up: str) -> bool:
        if self.kind == "has-blue":
            return "B" in up
        if self.kind == "not-rrr-rrb":
            return up not in ("RRR", "RRB")
        return up in self.allowed

    def codes(self, power: int = 3) -> list[int]:
        """Canonically ordered packed codes satisfying the predicate."""
        return [c for c, s in enumerate(all_up_strings(power)) if self(s)]

    def holds_code(self, code: int, power: int = 3) -> bool:
        return self(decode_up(code, power))

    def spec(self) -> str:
        if self.kind == "set":
            return "set:" + ",".join(self.allowed)
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "EndpointPredicate":
        t = text.strip()
        low = t.lower()
        if low in ("has-blue", "not-rrr"):
            return cls("has-blue")
        if low in ("not-rrr-rrb", "not-in-rrr-rrb"):
            return cls("not-rrr-rrb")
        if low.startswith("set:"):
            return cls("set", tuple(s.strip().upper() for s in t[4:].split(",") if s.strip()))
        raise ValueError(f"unknown endpoint predicate {text!r}")


HAS_BLUE = EndpointPredicate("has-blue")
NOT_RRR_RRB = EndpointPredicate("not-rrr-rrb")


@dataclass(frozen=True)
class SearchConfig:
    cycle_cap: int
    target: Fraction
    start_pred: EndpointPredicate = HAS_BLUE
    end_pred: EndpointPredicate = HAS_BLUE
    max_depth: int = 9
    power: int = 3

    def __post_init__(self):
        object.__setattr__(self, "target", Fraction(self.target))
        if self.cycle_cap < 3:
            raise ValueError("cycle cap must be at least 3")
        if not (0 < self.target <= 1):
            raise ValueError(f"target density {self.target} outside (0, 1]")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.power < 1:
            raise ValueError("power must be positive")
        for pred in (self.start_pred, self.end_pred):
            if pred.kind == "set" and any(len(s) != self.power for s in pred.allowed):
                raise ValueError("predicate up-strings must have length `power`")

    @property
    def n_vertices(self) -> int:
        """Vertices needed so that every up-string up to ``max_depth`` is full."""
        return self.max_depth + self.power + 1

    def to_json(self) -> dict:
        return {
            "L": self.cycle_cap,
            "target": format_fraction(self.target),
            "start_pred": self.start_pred.spec(),
            "end_pred": self.end_pred.spec(),
            "max_depth": self.max_depth,
            "power": self.power,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchConfig":
        keys = {"L", "target", "start_pred", "end_pred", "max_depth", "power"}
        if not isinstance(obj, dict) or set(obj) != keys:
            raise ValueError(f"config must have exactly the keys {sorted(keys)}")
        for k in ("L", "max_depth", "power"):
            if type(obj[k]) is not int:
                raise ValueError(f"config field {k} must be an integer")
        return cls(
            cycle_cap=obj["L"],
            target=parse_fraction(obj["target"]),
            start_pred=EndpointPredicate.parse(obj["start_pred"]),
            end_pred=EndpointPredicate.parse(obj["end_pred"]),
            max_depth=obj["max_depth"],
            power=obj["power"],
        )
