"""Routes package initialization"""
from routes.factor import cmd_factor, cmd_pairs
from routes.localize import cmd_localize
from routes.mub import cmd_mub_check
from routes.report import cmd_report

COMMANDS = {
    'factor': cmd_factor,
    'pairs': cmd_pairs,
    'mub-check': cmd_mub_check,
    'localize': cmd_localize,
    'report': cmd_report,
}

__all__ = ['COMMANDS', 'cmd_factor', 'cmd_pairs', 'cmd_mub_check', 'cmd_localize', 'cmd_report']
