import os
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# Constants
DEFAULT_CAP = int(os.environ.get('LIPNORM_CAP', 8))
LOG_LEVEL = os.environ.get('LIPNORM_LOG_LEVEL', 'INFO')
DEFAULT_SEED = int(os.environ.get('LIPNORM_SEED', 0))
PORT = int(os.environ.get('PORT', 8080))


def resolve_cap(cap=None):
    """Dimension cap from an explicit value, else LIPNORM_CAP"""
    value = DEFAULT_CAP if cap is None else int(cap)
    if value < 1:
        raise ValueError(f"Dimension cap must be at least 1, got {value}")
    return value


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: Tuple[str, ...] = ()
    kind: str = 'bl'
    dimension_cap: int = DEFAULT_CAP
    output: Optional[str] = None
    seed: int = DEFAULT_SEED
    instances: Optional[int] = None
    decimal: Optional[int] = None
    variant: Optional[str] = None
    csv_path: Optional[str] = None
    corrupt: bool = False

    def __post_init__(self):
        if self.dimension_cap < 1:
            raise ValueError(f"dimension_cap must be at least 1, got {self.dimension_cap}")
