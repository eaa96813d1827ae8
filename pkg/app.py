"""
Main application
zakspace: factorization of M and its conjugate Zak transform pairs
"""

import argparse
import logging
import sys

from config import Config
from routes import COMMANDS
from routes.run_config import EXIT_INVALID, RunConfig
from services.errors import ZakspaceError
from services.exporter import render, write_document

logger = logging.getLogger('zakspace')


class _Parser(argparse.ArgumentParser):
    """Usage errors are validation errors (exit 1), not argparse's exit 2"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f'{self.prog}: error: {message}\n')


def create_parser():
    """Create the command-line parser"""
    parser = _Parser(
        prog='zakspace',
        description='Conjugate Zak transform pairs of an M-dimensional phase space and the factors of M',
    )
    parser.add_argument('command', choices=sorted(COMMANDS), help='what to compute')
    parser.add_argument('m', type=int, metavar='M', help='dimension of the space')
    parser.add_argument('--ma', type=int, default=None, help='select the single pair with this M_a')
    parser.add_argument('--format', choices=Config.OUTPUT_FORMATS, default=Config.DEFAULT_FORMAT)
    parser.add_argument('--heatmap', default=None, help='PGM path for localization heatmaps')
    parser.add_argument('--tol', type=float, default=None,
                        help='conformance tolerance (default: $ZAKSPACE_TOL or %g)' % Config.MATRIX_TOL)
    parser.add_argument('--max-m', type=int, default=Config.MAX_M, help='largest M for dense matrix commands')
    parser.add_argument('--c', default='1', help='scaling constant c, a positive rational (metadata only)')
    parser.add_argument('--output', default=None, help='write the document here instead of stdout')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    return parser


def configure_logging(verbose=0):
    """Log to stderr; -v for INFO, -vv for DEBUG"""
    level = Config.LOG_LEVEL
    if verbose == 1:
        level = 'INFO'
    elif verbose >= 2:
        level = 'DEBUG'
    logging.basicConfig(level=level, format=Config.LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv=None):
    """Run one command; returns the process exit code"""
    args = create_parser().parse_args(argv)
    configure_logging(args.verbose)

    try:
        run = RunConfig.from_args(args)
    except ZakspaceError as e:
        print(f'❌ {e}', file=sys.stderr)
        return EXIT_INVALID

    result, code = COMMANDS[run.command](run)
    text = render(result, run.fmt)
    if run.output:
        write_document(text, run.output)
        logger.info("✅ Wrote %s", run.output)
    else:
        sys.stdout.write(text)
    if 'error' in result:
        print(f"❌ {result['error']}", file=sys.stderr)
    return code


if __name__ == '__main__':
    sys.exit(main())
