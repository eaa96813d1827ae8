"""
Full report route
Operator algebra, conjugacy and localization for every selected pair
"""

import logging

from routes.factor import factor_summary
from routes.localize import localize_pair, skipped
from routes.run_config import EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, document, error_document
from services.arith import factorize
from services.errors import ZakspaceError
from services.kq import PhaseSpaceConfig, operator_algebra_report
from services.transform import mub_check

logger = logging.getLogger(__name__)


def pair_report(run, cfg, b, several):
    """Nested report for one pair and whether every check passed"""
    a, atilde = cfg.lengths(b)
    algebra = operator_algebra_report(cfg, b)
    algebra_ok = max(algebra[:5]) <= run.tol and algebra.orbit_size == cfg.m
    overlap = mub_check(cfg, b, run.tol)
    if b.m_a < b.m_atilde:
        localization = localize_pair(run, cfg, b, several)
        localization_ok = localization['law_holds'] and localization['round_trip_error'] <= run.tol
    else:
        localization = skipped(b)
        localization_ok = True
    row = {
        'm_a': b.m_a,
        'm_atilde': b.m_atilde,
        'label': b.label,
        'kind': b.kind,
        'a': str(a),
        'atilde': str(atilde),
        'operator_algebra': dict(algebra._asdict(), ok=algebra_ok),
        'overlap': overlap.to_dict(),
        'localization': localization,
    }
    return row, algebra_ok and overlap.passed() and localization_ok


def cmd_report(run):
    """
    Everything known about M in one document

    Response: factorization summary plus one nested report per pair
    """
    try:
        run.check_matrix_size()
        f = factorize(run.m)
        pairs = run.selected_pairs()
        cfg = PhaseSpaceConfig(run.m, run.c)
        rows, success = [], True
        for b in pairs:
            logger.info("🔄 Reporting on %s", b.label)
            row, ok = pair_report(run, cfg, b, len(pairs) > 1)
            rows.append(row)
            success = success and ok
    except ZakspaceError as e:
        return error_document(run, e), EXIT_INVALID
    except Exception as e:
        return error_document(run, f'Error building report: {e}'), EXIT_INVALID

    code = EXIT_OK if success else EXIT_VIOLATION
    return document(run, success=success, pairs=pairs, reports=rows, summary=factor_summary(f)), code
