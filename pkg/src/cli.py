#!/usr/bin/env python3
"""
Command-line entry point.

    glsm_lab.py theta --q 0.1 --x 0.5
    glsm_lab.py central-charge --model quintic --plus 1 --output z.csv
    glsm_lab.py check contour --model hypersurface_n3_r2
    glsm_lab.py check qde --model hypersurface_n3_r2 --phase -

Exit codes: 0 success, 1 a check failed, 2 invalid input or a numerical error.
"""

import argparse
import os
from pathlib import Path
from typing import List, Optional

from checks.acceptance import EXIT_ERROR, EXIT_OK, exit_code
from core.config import (RunConfig, build_context, debug_from_env, load_run_config,
                         shipped_model_paths, shipped_models)
from core.errors import ConfigError, LabError
from core.laboratory import CHECKS, METHODS, QuasimapLab, build_environment, theta_report
from glsm.model import parse_phase
from qseries.monomial import parse_fraction
from reporting.report_generator import model_summary, series_rows
from utils.format_detector import detect_format
from utils.logger import Logger
from utils.output_manager import write_csv, write_json, write_text
from utils.parallel import THREADS_ENV

DEFAULT_CHECK_MODEL = 'hypersurface_n3_r2'


def parse_complex_arg(text: str) -> complex:
    """'0.5', '0.5,0.2' or '0.5+0.2j'"""
    text = str(text).strip().replace(' ', '')
    try:
        if ',' in text:
            re_part, im_part = text.split(',')
            return complex(float(re_part), float(im_part))
        return complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _context_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group('numerical context')
    group.add_argument('--q', type=parse_complex_arg, help='nome, 0 < |q| < 1 (default 0.1)')
    group.add_argument('--product-terms', type=int, dest='product_terms',
                       help='factors kept in phi')
    group.add_argument('--tol-abs', type=float, dest='tol_abs', help='absolute tolerance')
    group.add_argument('--tol-rel', type=float, dest='tol_rel', help='relative tolerance')
    return parent


def _model_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--model', help='model JSON file or shipped model name')
    parent.add_argument('--phase', help="phase '+' or '-' (overrides the model)")
    parent.add_argument('--max-beta', dest='max_beta', help='largest degree, e.g. 8 or 17/2')
    parent.add_argument('--max-n', dest='max_n', type=int, help='closed-form truncation order')
    parent.add_argument('--z', dest='z', type=parse_complex_arg, action='append',
                        help='sample point (repeatable)')
    return parent


def _output_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--output', '-o', type=Path, help='output file (default stdout)')
    parent.add_argument('--format', dest='fmt', choices=('json', 'csv', 'text'),
                        help='output format (default from the output suffix)')
    return parent


def _add_brane_selectors(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('brane')
    group.add_argument('--plus', type=int, metavar='K', help='geometric basis brane k')
    group.add_argument('--lg', metavar='M,L', help='LG basis brane with torsion label (m, l)')
    group.add_argument('--zero', action='store_true', help='the zero brane')
    group.add_argument('--brane-file', dest='brane_file', help='brane JSON document')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='glsm_lab',
        description='Numerical lab for K-theoretic central charges of abelian GLSMs',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument('--config', help='run configuration JSON')
    parser.add_argument('--debug', action='store_true', help='enable debug logging')
    parser.add_argument('--debug-file', dest='debug_file', help='also write debug lines here')
    parser.add_argument('--threads', type=int, help=f'worker threads (sets {THREADS_ENV})')

    context, model, output = _context_parent(), _model_parent(), _output_parent()
    sub = parser.add_subparsers(dest='command', required=True)

    theta = sub.add_parser('theta', parents=[context, output],
                           help='tabulate phi, theta and the q-Pochhammer symbol')
    theta.add_argument('--x', type=parse_complex_arg, action='append', required=True,
                       help='evaluation point (repeatable)')
    theta.add_argument('--n', type=int, default=3, help='Pochhammer length')

    charge = sub.add_parser('central-charge', parents=[context, model, output],
                            help='central-charge series of a brane')
    _add_brane_selectors(charge)
    charge.add_argument('--method', choices=METHODS, default='assembly',
                        help='assembly, Euler pairing, numeric residues or closed form')

    contour = sub.add_parser('contour', parents=[context, model, output],
                             help='quadrature table and residue list of the contour integral')
    _add_brane_selectors(contour)
    contour.add_argument('--delta', type=float, help='contour radius |s|')
    contour.add_argument('--nodes', type=int, help='initial trapezoid nodes')

    check = sub.add_parser('check', parents=[context, model, output],
                           help='acceptance checks with pass/fail report')
    check.add_argument('name', choices=CHECKS)

    sub.add_parser('models', parents=[output], help='list the shipped models')
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _run_config(args) -> RunConfig:
    config = load_run_config(args.config) if args.config else RunConfig()
    context = {key: getattr(args, key, None)
               for key in ('q', 'product_terms', 'tol_abs', 'tol_rel')}
    max_beta = getattr(args, 'max_beta', None)
    return config.merged(
        model_path=getattr(args, 'model', None),
        context={k: v for k, v in context.items() if v is not None},
        phase=parse_phase(args.phase) if getattr(args, 'phase', None) else None,
        max_beta=parse_fraction(max_beta) if max_beta is not None else None,
        max_n=getattr(args, 'max_n', None),
        z_samples=getattr(args, 'z', None),
        delta=getattr(args, 'delta', None),
        nodes=getattr(args, 'nodes', None),
    )


def cmd_theta(args, config: RunConfig) -> int:
    ctx = build_context(config.context)
    report = theta_report(args.x, ctx, args.n)
    fmt = detect_format(args.output, args.fmt, default='text')
    if fmt == 'text':
        write_text(build_environment().get_template('theta_table.txt.j2').render(**report), args.output)
    elif fmt == 'csv':
        columns = ['x'] + report['columns']
        write_csv(report['rows'], args.output, {'q': ctx.q, 'version': report['version']}, columns)
    else:
        write_json(report, args.output)
    return EXIT_OK


def cmd_central_charge(args, config: RunConfig) -> int:
    lab = QuasimapLab.from_config(config)
    B = lab.select_brane(args.plus, args.lg, args.zero, args.brane_file)
    series = lab.central_charge(B, args.method)
    fmt = detect_format(args.output, args.fmt, default='json')
    if fmt == 'csv':
        write_csv(series_rows(series), args.output, series.meta)
    elif fmt == 'text':
        write_text(lab.render('series_table.txt.j2', lab.series_report(series)), args.output)
    else:
        write_json(lab.series_report(series), args.output)
    return EXIT_OK


def cmd_contour(args, config: RunConfig) -> int:
    lab = QuasimapLab.from_config(config)
    B = lab.select_brane(args.plus, args.lg, args.zero, args.brane_file)
    z = config.z_samples[0] if config.z_samples else complex(0.05)
    max_beta = config.max_beta if config.max_beta is not None else 4
    fmt = detect_format(args.output, args.fmt, default='json')
    if fmt != 'json':
        raise ConfigError("contour diagnostics are written as JSON only")
    write_json(lab.contour_dump(B, z, max_beta), args.output)
    return EXIT_OK


def cmd_check(args, config: RunConfig) -> int:
    if not config.model_path:
        config = config.merged(model_path=DEFAULT_CHECK_MODEL)
    fmt = detect_format(args.output, args.fmt, default='text')
    if fmt == 'csv':
        raise ConfigError("check reports are written as JSON or text")
    lab = QuasimapLab.from_config(config)
    report = lab.run_check(args.name)
    if fmt == 'text':
        write_text(lab.render('check_report.txt.j2', report), args.output)
    else:
        write_json(report, args.output)
    return exit_code(report)


def cmd_models(args, config: RunConfig) -> int:
    models = shipped_models()
    Logger.debug(f"{len(models)} of {len(shipped_model_paths())} shipped models loaded")
    fmt = detect_format(args.output, args.fmt, default='text')
    if fmt == 'json':
        write_json({name: model_summary(m) for name, m in models.items()}, args.output)
    else:
        write_text(''.join(f"{name}\t{m.describe()}\n" for name, m in models.items()), args.output)
    return EXIT_OK


COMMANDS = {
    'theta': cmd_theta,
    'central-charge': cmd_central_charge,
    'contour': cmd_contour,
    'check': cmd_check,
    'models': cmd_models,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.debug or debug_from_env():
        Logger.set_debug(True, args.debug_file)
        Logger.debug(f"Debug mode enabled for {args.command}")
    if args.threads is not None:
        os.environ[THREADS_ENV] = str(args.threads)
    try:
        config = _run_config(args)
        return COMMANDS[args.command](args, config)
    except LabError as e:
        Logger.error(str(e))
        return EXIT_ERROR
