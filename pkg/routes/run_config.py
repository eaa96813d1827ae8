"""
Command options shared by every handler
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from config import Config
from services.arith import bipartition_for, enumerate_bipartitions, factorize
from services.errors import InvalidDimensionError, ZakspaceError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2


@dataclass
class RunConfig:
    command: str
    m: int
    m_a: Optional[int] = None
    fmt: str = Config.DEFAULT_FORMAT
    tol: float = Config.MATRIX_TOL
    heatmap: Optional[str] = None
    output: Optional[str] = None
    max_m: int = Config.MAX_M
    c: Fraction = Fraction(1)

    @classmethod
    def from_args(cls, args):
        """Validate parsed arguments; tolerance falls back to ZAKSPACE_TOL"""
        tol = Config.get_tolerance() if args.tol is None else args.tol
        if tol <= 0:
            raise ZakspaceError(f"--tol must be positive, got {tol}")
        try:
            c = Fraction(args.c)
        except (ValueError, ZeroDivisionError):
            raise ZakspaceError(f"--c must be a positive rational, got {args.c!r}")
        if c <= 0:
            raise ZakspaceError(f"--c must be a positive rational, got {args.c!r}")
        if args.max_m > Config.MAX_M:
            logger.warning("⚠️ --max-m %d lifts the dense-matrix guardrail of %d", args.max_m, Config.MAX_M)
        return cls(
            command=args.command,
            m=args.m,
            m_a=args.ma,
            fmt=args.format,
            tol=tol,
            heatmap=args.heatmap,
            output=args.output,
            max_m=args.max_m,
            c=c,
        )

    def selected_pairs(self):
        """All canonical pairs, or the single pair named by --ma"""
        if self.m_a is None:
            return enumerate_bipartitions(factorize(self.m))
        return [bipartition_for(self.m, self.m_a)]

    def check_matrix_size(self):
        """Refuse M above the dense-matrix cap"""
        if self.m > self.max_m:
            raise InvalidDimensionError(
                f"M={self.m} exceeds --max-m {self.max_m}; dense {self.m}x{self.m} matrices would be built"
            )


def document(run, success=True, pairs=(), reports=(), **extra):
    """Top-level output object: command, success, m, extras, pairs, reports"""
    doc = {
        'command': run.command,
        'success': success,
        'm': run.m,
    }
    doc.update(extra)
    doc['pairs'] = [b.to_dict() for b in pairs]
    doc['reports'] = list(reports)
    return doc


def error_document(run, error):
    """Failure document carrying the error message"""
    logger.error("❌ %s %s: %s", run.command, run.m, error)
    return document(run, success=False, error=str(error))
