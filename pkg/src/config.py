import os
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, Optional

from .errors import GridError

logger = logging.getLogger(__name__)

CAPS_ENV_VAR = "GRIDRAM_CAPS"


class CapExceededError(GridError):
    """Raised when an input is larger than the configured size cap."""

    def __init__(self, cap: str, limit: int, actual: int, advice: str = ""):
        self.cap = cap
        self.limit = limit
        self.actual = actual
        message = f"{cap} cap exceeded: {actual} > {limit}"
        if advice:
            message += f" ({advice})"
        super().__init__(message)


@dataclass(frozen=True)
class Caps:
    """
    Size limits for the exhaustive searches.

    The defaults are also the minimums: GRIDRAM_CAPS may raise a cap but never
    lower it below these values.
    """
    canonical_lines: int = 8
    canonical_candidates: int = 200000
    coclique_line: int = 20
    diverse_product: int = 12
    constructible_lines: int = 9
    brute_force_n: int = 3
    backtrack_n: int = 5
    embed_3_vertices: int = 10
    bipartition_vertices: int = 12
    color_rows: int = 6
    color_exact_columns: int = 20
    exhaustive_cnf_vars: int = 22
    search_nodes: int = 2000000

    @classmethod
    def minimums(cls) -> Dict[str, int]:
        return {f.name: f.default for f in fields(cls)}

    @classmethod
    def parse(cls, text: str) -> "Caps":
        """
        Parse a comma-separated list of name=value overrides.

        Args:
            text: e.g. "canonical_lines=9,backtrack_n=6"

        Returns:
            Caps with the overrides applied

        Raises:
            ValueError: unknown cap name, non-integer value or value below the minimum
        """
        minimums = cls.minimums()
        overrides = {}
        for item in text.split(','):
            item = item.strip()
            if not item:
                continue
            if '=' not in item:
                raise ValueError(f"Malformed cap override '{item}', expected name=value")
            name, value = (part.strip() for part in item.split('=', 1))
            if name not in minimums:
                raise ValueError(f"Unknown cap '{name}'")
            try:
                number = int(value)
            except ValueError:
                raise ValueError(f"Cap '{name}' must be an integer, got '{value}'")
            if number < minimums[name]:
                raise ValueError(f"Cap '{name}' cannot be lowered below {minimums[name]} (got {number})")
            overrides[name] = number
        return replace(cls(), **overrides)

    @classmethod
    def from_env(cls) -> "Caps":
        text = os.environ.get(CAPS_ENV_VAR, "")
        if not text:
            return cls()
        caps = cls.parse(text)
        logger.debug(f"Caps raised from {CAPS_ENV_VAR}: {text}")
        return caps

    def check(self, name: str, actual: int, advice: str = "") -> None:
        """Raise CapExceededError if actual is above the named cap."""
        limit = getattr(self, name)
        if actual > limit:
            raise CapExceededError(name, limit, actual, advice)


def resolve_caps(caps: Optional[Caps]) -> Caps:
    return caps if caps is not None else Caps.from_env()


@dataclass
class RunConfig:
    """
    Settings shared by every CLI run.

    Args:
        seed: Seed for the randomized suites
        worker_count: Number of worker processes (1 = in-process)
        caps: Size limits per module
        output_dir: Directory for artifacts
        deterministic: Keep wall-clock values out of artifacts
    """
    seed: int = 0
    worker_count: int = 1
    caps: Caps = field(default_factory=Caps.from_env)
    output_dir: Path = Path('data')
    deterministic: bool = True

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError(f"worker_count must be at least 1, got {self.worker_count}")
        self.output_dir = Path(self.output_dir)

    def ensure_output_dir(self) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir
