import os

from services.errors import ZakspaceError


class Config:
    """Application configuration"""

    # Tolerances
    MATRIX_TOL = 1e-10
    SCALAR_TOL = 1e-12
    SUPPORT_TOL = 1e-10

    # Guardrails
    MAX_M = 4096  # dense M x M matrices
    M_LIMIT = 2 ** 31

    # Output
    FLOAT_DIGITS = 12
    DEFAULT_FORMAT = 'json'
    OUTPUT_FORMATS = ('json', 'csv', 'text')

    # Logging
    LOG_LEVEL = os.environ.get('ZAKSPACE_LOG_LEVEL') or 'WARNING'
    LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'

    @staticmethod
    def get_tolerance():
        """Tolerance default, overridable with ZAKSPACE_TOL"""
        raw = os.environ.get('ZAKSPACE_TOL')
        if not raw:
            return Config.MATRIX_TOL
        try:
            tol = float(raw)
        except ValueError:
            raise ZakspaceError(f"ZAKSPACE_TOL must be a real number, got {raw!r}")
        if tol <= 0:
            raise ZakspaceError(f"ZAKSPACE_TOL must be positive, got {tol}")
        return tol

    @staticmethod
    def init_app(*paths):
        """Create parent folders for output files"""
        for path in paths:
            if path:
                parent = os.path.dirname(os.path.abspath(path))
                os.makedirs(parent, exist_ok=True)
