"""Block-parallel Boolean automata networks: counting, enumeration and dynamics."""

from ._blockpar import *  # noqa: F401,F403
from ._blockpar import (  # noqa: F401
    DomainError,
    InvariantViolation,
    ParseError,
    ResourceLimitError,
)

__version__ = "0.1.0"
