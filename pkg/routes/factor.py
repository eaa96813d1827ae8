"""
Factorization routes
Handles the factor and pairs commands
"""

from routes.run_config import EXIT_INVALID, EXIT_OK, document, error_document
from services.arith import enumerate_bipartitions, factorize, radical_rescale
from services.errors import ZakspaceError


def factor_summary(f):
    """Factors, N, pair count and the square-free rescaling of M"""
    rescale = radical_rescale(f)
    return {
        'factorization': str(f),
        'factors': [list(pe) for pe in f.factors],
        'n_distinct': f.n,
        'pair_count': f.pair_count(),
        'm_bar': rescale.m_bar,
        'c_multiplier': rescale.c_multiplier,
    }


def cmd_factor(run):
    """
    Factorize M and count its conjugate pairs

    Response: factors, N, 2^(N-1) and the square-free rescaling
    """
    try:
        f = factorize(run.m)
        pairs = enumerate_bipartitions(f)
        return document(run, pairs=pairs, reports=[factor_summary(f)]), EXIT_OK
    except ZakspaceError as e:
        return error_document(run, e), EXIT_INVALID
    except Exception as e:
        return error_document(run, f'Error factorizing: {e}'), EXIT_INVALID


def cmd_pairs(run):
    """
    List the canonical coprime bipartitions of M

    Response: pairs sorted by m_a
    """
    try:
        pairs = run.selected_pairs()
        return document(run, pairs=pairs), EXIT_OK
    except ZakspaceError as e:
        return error_document(run, e), EXIT_INVALID
    except Exception as e:
        return error_document(run, f'Error listing pairs: {e}'), EXIT_INVALID
