import argparse
import sys

from .colorize import printer
from .commands import NORM_KINDS, cmd_check, cmd_classify, cmd_norm, cmd_transport
from .components import MODES
from .core.settings import checks_settings
from .exc import LogspaceError, PreconditionError, ScenarioError
from .scenario import catalog, load
from .settings import SETTINGS_FILE_ENV_VAR, init_settings, override_settings
from .suite import cmd_suite


# Exit statuses
PASSED = 0
FAILED = 1
USAGE = 2


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog='logspace', description='Log-integrable function spaces: norms, checks, maps')
    parser.add_argument(
        '--settings-file', default=None,
        help='Local settings file (default: ${0})'.format(SETTINGS_FILE_ENV_VAR))
    parser.add_argument('--settings-section', default=None)
    subparsers = parser.add_subparsers()

    def add_command(name, command, help_text, scenario=True):
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(command=command)
        if scenario:
            sub.add_argument(
                '--scenario', required=True,
                help='Catalog name ({0}) or path'.format(', '.join(catalog())))
        sub.add_argument('--seed', type=int, default=None)
        sub.add_argument('--json', default=None, help='Write the report here')
        sub.add_argument('--emit-csv', default=None, help='Write x,value samples here')
        return sub

    norm_parser = add_command('norm', norm, 'Compute an F-norm')
    norm_parser.add_argument('--function', default='one', help='Function id')
    norm_parser.add_argument('--kind', choices=NORM_KINDS, default='log')
    norm_parser.add_argument('--p', type=float, default=None)

    for name, command, help_text in (
            ('check', check, 'Evaluate the isometry criteria'),
            ('classify', classify, 'Classify a pair of measures')):
        add_command(name, command, help_text).add_argument(
            '--mode', choices=MODES, default=None,
            help='Decomposed scenarios: all components or some (default: scenario)')

    transport_parser = add_command('transport', transport, 'Build a measure-preserving map')
    transport_parser.add_argument('--count', type=int, default=11, help='Samples of t')

    suite_parser = add_command('suite', suite, 'Run the property suite', scenario=False)
    suite_parser.add_argument(
        '--count', type=int, default=None, help='Draws per family (default: CHECKS.suite_count)')
    suite_parser.add_argument(
        '--inject-fault', type=float, nargs='?', const=1e-3, default=0.0,
        help=argparse.SUPPRESS)

    args = parser.parse_args(argv)
    if not hasattr(args, 'command'):
        parser.print_help()
        parser.exit(USAGE)

    init_settings(args.settings_file, section=args.settings_section)
    try:
        report = args.command(args)
    except (ScenarioError, PreconditionError) as exc:
        printer.error(str(exc), file=sys.stderr)
        parser.exit(USAGE)
    except LogspaceError as exc:
        printer.error('{0}: {1}'.format(type(exc).__name__, exc), file=sys.stderr)
        parser.exit(FAILED)

    if args.emit_csv:
        report.write_csv(args.emit_csv)
    if args.json:
        report.write_json(args.json)
        printer.verdict(report.passed, '{0.scenario} {0.command}'.format(report), file=sys.stderr)
    else:
        print(report.to_json())
    parser.exit(report.exit_code)


def _scenario(args):
    scenario = load(args.scenario)
    if args.seed is not None:
        scenario.seed = args.seed
    return scenario


def norm(args):
    return cmd_norm(_scenario(args), args.function, args.kind, args.p)


def check(args):
    return cmd_check(_scenario(args), args.mode)


def classify(args):
    return cmd_classify(_scenario(args), args.mode)


def transport(args):
    return cmd_transport(_scenario(args), count=args.count)


def suite(args):
    if args.count is None:
        args.count = checks_settings.get('suite_count')
    if args.count < 0:
        raise PreconditionError('--count must be >= 0')
    with override_settings(QUADRATURE={'fault': args.inject_fault}):
        return cmd_suite(seed=args.seed or 0, count=args.count)


if __name__ == '__main__':
    main()
