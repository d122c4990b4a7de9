from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Enumeration caps; exceeding any of them raises ResourceLimit."""

    tuple_cap: int = 2_000_000
    elem_cap: int = 100_000
    node_budget: int = 10_000_000
    table_cap: int = 50_000_000


DEFAULT_LIMITS = Limits()
