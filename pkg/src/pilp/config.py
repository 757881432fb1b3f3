"""Run configuration: flatness table, enumeration bounds, caps.

Flatness constants are configuration, not hardcoded truth: the pipeline only
needs valid upper bounds, and the property suite validates whatever table is
configured.  All values are exact rationals or integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from pilp.numkernel import Rat, rat, rat_str


def _default_flatness() -> dict[int, Rat]:
    return {1: rat(1), 2: rat(3), 3: rat(16)}


@dataclass(frozen=True)
class Config:
    flatness: dict[int, Rat] = field(default_factory=_default_flatness)
    enum_bound: int = 64  # coordinate bound for integer-hull vertex supersets
    gap_cap: Rat = rat(64)  # doubling-search ceiling for the max-gap bracket
    max_struct_dim: int = 3  # documented scale ceiling of the partitioning
    deterministic: bool = False

    def flatness_constant(self, n: int) -> Rat:
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if n not in self.flatness:
            raise ValueError(f"flatness constant not configured for dimension {n}")
        return self.flatness[n]

    def with_deterministic(self, flag: bool) -> "Config":
        return replace(self, deterministic=flag)

    def to_json_dict(self) -> dict:
        return {
            "flatness": {str(k): rat_str(v) for k, v in sorted(self.flatness.items())},
            "enum_bound": self.enum_bound,
            "gap_cap": rat_str(self.gap_cap),
            "max_struct_dim": self.max_struct_dim,
            "deterministic": self.deterministic,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Config":
        base = cls()
        flat = dict(base.flatness)
        for key, val in obj.get("flatness", {}).items():
            flat[int(key)] = rat(val)
        return cls(
            flatness=flat,
            enum_bound=int(obj.get("enum_bound", base.enum_bound)),
            gap_cap=rat(obj.get("gap_cap", base.gap_cap)),
            max_struct_dim=int(obj.get("max_struct_dim", base.max_struct_dim)),
            deterministic=bool(obj.get("deterministic", False)),
        )


DEFAULT_CONFIG = Config()
