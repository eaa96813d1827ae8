"""
Conjugacy check route
Doubles as a conformance gate: exit 2 when any pair is not mutually unbiased
"""

import logging

from routes.run_config import EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, document, error_document
from services.errors import ZakspaceError
from services.kq import PhaseSpaceConfig
from services.transform import mub_check

logger = logging.getLogger(__name__)


def cmd_mub_check(run):
    """
    Overlap report per selected bipartition

    Response: modulus range, flatness, unitarity and oracle agreement
    """
    try:
        run.check_matrix_size()
        pairs = run.selected_pairs()
        cfg = PhaseSpaceConfig(run.m, run.c)
        reports = []
        for b in pairs:
            logger.info("🔄 Checking conjugacy of %s", b.label)
            reports.append(mub_check(cfg, b, run.tol))
    except ZakspaceError as e:
        return error_document(run, e), EXIT_INVALID
    except Exception as e:
        return error_document(run, f'Error checking overlaps: {e}'), EXIT_INVALID

    success = all(r.passed() for r in reports)
    code = EXIT_OK if success else EXIT_VIOLATION
    return document(run, success=success, pairs=pairs, reports=[r.to_dict() for r in reports]), code
