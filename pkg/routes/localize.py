"""
Localization route
Runs the delocalized-to-localized demonstration per pair and writes heatmaps
"""

import logging
from pathlib import Path

from config import Config
from routes.run_config import EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, document, error_document
from services.errors import ZakspaceError
from services.exporter import write_pgm
from services.kq import PhaseSpaceConfig
from services.transform import conjugate_grid, delocalized_state, double_transform_error, localize

logger = logging.getLogger(__name__)


def heatmap_path(base, b, several):
    """One file per pair when more than one pair is selected"""
    if not several:
        return Path(base)
    base = Path(base)
    return base.with_name(f'{base.stem}_ma{b.m_a}{base.suffix or ".pgm"}')


def skipped(b):
    """Report row for a pair the localization law does not cover"""
    notice = f'M_a={b.m_a} is not smaller than M_atilde={b.m_atilde}; localization law not derived'
    logger.warning("⚠️ Skipping %s: %s", b.label, notice)
    return {
        'm_a': b.m_a,
        'm_atilde': b.m_atilde,
        'label': b.label,
        'status': 'skipped',
        'notice': notice,
    }


def localize_pair(run, cfg, b, several):
    """Localization report row for one pair, writing its heatmap when asked"""
    psi = delocalized_state(cfg, b)
    state, report = localize(cfg, b, psi, Config.SUPPORT_TOL)
    row = {'status': 'ok'}
    row.update(report.to_dict(run.tol))
    row['round_trip_error'] = double_transform_error(cfg, b, psi)
    if run.heatmap:
        row['heatmap'] = str(write_pgm(heatmap_path(run.heatmap, b, several), conjugate_grid(b, state)))
    return row


def cmd_localize(run):
    """
    Uniform side-A state expressed in the conjugate basis

    Response: support size and amplitude against M_a^2 and 1/M_a
    """
    try:
        run.check_matrix_size()
        pairs = run.selected_pairs()
        cfg = PhaseSpaceConfig(run.m, run.c)
        rows = []
        for b in pairs:
            if b.m_a >= b.m_atilde:
                rows.append(skipped(b))
                continue
            rows.append(localize_pair(run, cfg, b, len(pairs) > 1))
    except ZakspaceError as e:
        return error_document(run, e), EXIT_INVALID
    except Exception as e:
        return error_document(run, f'Error localizing: {e}'), EXIT_INVALID

    success = all(
        row['law_holds'] and row['round_trip_error'] <= run.tol
        for row in rows if row['status'] == 'ok'
    )
    code = EXIT_OK if success else EXIT_VIOLATION
    return document(run, success=success, pairs=pairs, reports=rows), code
