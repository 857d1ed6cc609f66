"""
命令行模块
eval / verify / spectrum 三个子命令与输出格式
"""

from .commands import VERSION, build_parser, cmd_eval, cmd_spectrum, cmd_verify, main
from .config import RunConfig, merge_config_file
from .output import make_table, render_table, write_table

__all__ = [
    'VERSION',
    'build_parser',
    'cmd_eval',
    'cmd_spectrum',
    'cmd_verify',
    'main',
    'RunConfig',
    'merge_config_file',
    'make_table',
    'render_table',
    'write_table',
]
