"""
Command-Line Front-End

Subcommands:
    params     coarse-graining parameters m0, m1, m_p and the piece bounds
    synth      write a circuit (JSON or OpenQASM 2.0)
    verify     synthesize, simulate and compare against e^{-i V}
    counts     analytic and as-built gate counts side by side
    sweep      CNOT/Rz/depth rows over (delta, n, method) as CSV
    estimate   Hamiltonian-simulation resource estimate
    schedule   pairing schedule for N particles
    crossover  crossover functions and delta-set membership
    apk        register widths and Toffoli tallies of the arithmetic method

Exit status: 0 on success, 1 on usage or input errors, 2 when verification
finds a phase error above delta.
"""

import argparse
import json
import logging
import sys

from . import __version__
from .circuit import export_circuit
from .compare import apk_resources, crossover_analysis, delta_sets, sweep_counts
from .config import get_setting
from .errors import DiagPhaseError, InvalidParameterError
from .hamsim import VARIANTS, SystemConfig, estimate_all_variants, format_estimate_table, hamsim_estimate
from .model import MODEL_METHODS, DiagonalPhaseModel
from .pairing import pairing_schedule, verify_pairing
from .parameters import coarse_params
from .potential import coulomb, damped_osc, from_csv, from_expression, polynomial

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidParameterError(f"{self.prog}: {message}")


def _floats(text, count=None, label='values'):
    try:
        values = [float(v) for v in text.split(',')]
    except ValueError:
        raise InvalidParameterError(f"{label}: expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(values) != count:
        raise InvalidParameterError(f"{label}: expected {count} numbers, got {len(values)}")
    return values


def load_potential(args):
    """Build the potential from exactly one source flag."""
    sources = [name for name in ('coulomb', 'damped', 'poly', 'expr', 'csv')
               if getattr(args, name, None) is not None]
    if len(sources) != 1:
        raise InvalidParameterError("give exactly one of --coulomb, --damped, --poly, --expr, --csv")
    if args.coulomb is not None:
        return coulomb(*_floats(args.coulomb, 3, '--coulomb'))
    if args.damped is not None:
        return damped_osc(*_floats(args.damped, 4, '--damped'))
    if args.csv is not None:
        return from_csv(args.csv)
    if args.L is None:
        raise InvalidParameterError("--poly and --expr need --L")
    if args.poly is not None:
        return polynomial(_floats(args.poly, label='--poly'), args.L)
    return from_expression(args.expr, args.L)


def _add_potential(parser):
    group = parser.add_argument_group('potential')
    group.add_argument('--coulomb', metavar='A,a2,L', help="modified Coulomb A/sqrt(a2+(x-L/2)^2)")
    group.add_argument('--damped', metavar='A,a,omega,L', help="damped oscillator A exp(-a x^2) cos(omega x)")
    group.add_argument('--poly', metavar='c0,c1,...', help="polynomial coefficients (needs --L)")
    group.add_argument('--expr', metavar='TEXT', help="expression in x (needs --L)")
    group.add_argument('--csv', metavar='PATH', help="two-column (x, V) samples")
    group.add_argument('--L', type=float, help="domain length for --poly/--expr")


def _add_compile(parser):
    parser.add_argument('--n', type=int, required=True, help="grid parameter (system qubits)")
    parser.add_argument('--delta', type=float, required=True, help="precision target")
    parser.add_argument('--method', choices=MODEL_METHODS, default='ppp')
    parser.add_argument('--degree', type=int, default=1, choices=(1, 2, 3))
    parser.add_argument('--uniform', action='store_true', help="skip merging lattice cells")
    parser.add_argument('--mode', choices=('analytic', 'minimal'), default='analytic')


def build_parser():
    parser = _Parser(prog='diagphase', description="Diagonal unitary circuit compiler and resource estimator")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0)
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    p = sub.add_parser('params', help="coarse-graining parameters")
    _add_potential(p)
    p.add_argument('--delta', type=float, required=True)
    p.add_argument('--degree', type=int, action='append', choices=(1, 2, 3))
    p.add_argument('--format', choices=('table', 'json'), default='table')

    p = sub.add_parser('synth', help="write a circuit")
    _add_potential(p)
    _add_compile(p)
    p.add_argument('--format', choices=('json', 'qasm'), default='json')
    p.add_argument('--out', metavar='PATH', help="output file (default stdout)")

    p = sub.add_parser('verify', help="simulate and check the phases")
    _add_potential(p)
    _add_compile(p)
    p.add_argument('--format', choices=('table', 'json'), default='table')

    p = sub.add_parser('counts', help="analytic versus as-built counts")
    _add_potential(p)
    _add_compile(p)
    p.add_argument('--format', choices=('table', 'json'), default='table')

    p = sub.add_parser('sweep', help="count sweep as CSV")
    _add_potential(p)
    p.add_argument('--delta', type=float, action='append', help="repeatable; default grid when omitted")
    p.add_argument('--n', type=int, action='append', help="repeatable; default m1..m0+2 (clamped)")
    p.add_argument('--methods', help="comma-separated method names")
    p.add_argument('--out', metavar='PATH', help="CSV file (default stdout)")

    p = sub.add_parser('estimate', help="Hamiltonian-simulation resources")
    p.add_argument('--config', metavar='PATH', help="JSON or TOML system description")
    p.add_argument('--Ne', type=int)
    p.add_argument('--Nnuc', type=int, default=1)
    p.add_argument('--d', type=int, default=3)
    p.add_argument('--n', type=int)
    p.add_argument('--L', type=float, default=1.0)
    p.add_argument('--t', type=float, default=1.0)
    p.add_argument('--eps', type=float)
    p.add_argument('--p', type=int, default=2, choices=(1, 2, 3))
    p.add_argument('--a2', type=float, default=0.0)
    p.add_argument('--variant', choices=VARIANTS + ('all',), default='all')
    p.add_argument('--format', choices=('table', 'json'), default='table')

    p = sub.add_parser('schedule', help="pairing schedule")
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--format', choices=('table', 'json'), default='table')
    p.add_argument('--optimize', action='store_true', help="also solve the round-minimization model")

    p = sub.add_parser('crossover', help="crossover analysis")
    _add_potential(p)
    p.add_argument('--delta', type=float)
    p.add_argument('--sets', metavar='LO,HI', help="delta-set intervals on [LO, HI]")
    p.add_argument('--lower-bound', action='store_true', help="use M_hat instead of Algorithm 1 counts")

    p = sub.add_parser('apk', help="arithmetic-method resources")
    _add_potential(p)
    p.add_argument('--delta', type=float, required=True)
    p.add_argument('--degree', type=int, default=1, choices=(1, 2, 3))
    p.add_argument('--n', type=int)
    p.add_argument('--c-p', type=float, help="truncation constant (default 1)")
    return parser


def _model(args):
    data = {
        'potential': load_potential(args),
        'n': args.n,
        'delta': args.delta,
        'method': args.method,
        'degree': args.degree,
        'merge': not args.uniform,
        'mode': args.mode,
    }
    return DiagonalPhaseModel(data)


def _cmd_params(args):
    V = load_potential(args)
    degrees = tuple(sorted(set(args.degree))) if args.degree else (1, 2, 3)
    params = coarse_params(V, args.delta, degrees=degrees)
    if args.format == 'json':
        print(json.dumps(params.to_dict(), indent=1))
        return EXIT_OK
    print(f"potential = {V.name}")
    print(f"delta = {args.delta:g}")
    print(f"m0 = {params.m0}")
    print(f"m1 = {params.m1}")
    for p in degrees:
        print(f"m_{p} = {params.m_p[p]}")
        print(f"Mhat_{p} = {params.Mhat_p[p]}")
    return EXIT_OK


def _cmd_synth(args):
    model = _model(args)
    circuit = model.synthesize()
    payload = export_circuit(circuit, 'qasm2' if args.format == 'qasm' else 'json')
    if args.out:
        with open(args.out, 'wb') as fh:
            fh.write(payload)
        logger.info("wrote %s", args.out)
    else:
        sys.stdout.write(payload.decode('utf-8'))
    return EXIT_OK


def _cmd_verify(args):
    model = _model(args)
    model.synthesize()
    result = model.verify(max_width=get_setting('max_simulation_width'))
    if args.format == 'json':
        print(json.dumps(result, indent=1))
    else:
        status = "PASS" if result['passed'] else "FAIL"
        print(f"{status} max_error = {result['max_error']:.6e} (delta = {args.delta:g})")
        print(f"diagonal = {result['diagonal']} ancilla_clean = {result['ancilla_clean']}")
    return EXIT_OK if result['passed'] else EXIT_VERIFY


def _cmd_counts(args):
    counts = _model(args).counts()
    if args.format == 'json':
        print(json.dumps(counts, indent=1))
        return EXIT_OK
    print(f"{'':10}{'H':>10}{'Rz':>10}{'CNOT':>10}{'depth':>10}")
    for label, record in counts.items():
        print(f"{label:10}{record['h']:>10d}{record['rz']:>10d}{record['cnot']:>10d}{record['depth']:>10d}")
    return EXIT_OK


def _cmd_sweep(args):
    V = load_potential(args)
    methods = args.methods.split(',') if args.methods else None
    frame = sweep_counts(V, deltas=args.delta, methods=methods, n_values=args.n)
    if args.out:
        frame.to_csv(args.out, index=False)
        logger.info("wrote %d rows to %s", len(frame), args.out)
    else:
        sys.stdout.write(frame.to_csv(index=False))
    return EXIT_OK


def _cmd_estimate(args):
    if args.config:
        cfg = SystemConfig.from_file(args.config)
    else:
        if args.Ne is None or args.n is None or args.eps is None:
            raise InvalidParameterError("estimate needs --config or --Ne, --n and --eps")
        cfg = SystemConfig(Ne=args.Ne, Nnuc=args.Nnuc, d=args.d, n=args.n, L=args.L, t=args.t,
                           eps=args.eps, p=args.p, a2=args.a2,
                           variant=args.variant if args.variant != 'all' else VARIANTS[0])
    if args.variant == 'all':
        estimates = estimate_all_variants(cfg)
    else:
        estimates = [hamsim_estimate(cfg)]
    if args.format == 'json':
        print(json.dumps([e.to_dict() for e in estimates], indent=1, default=str))
    else:
        print(f"K = {estimates[0].K}, delta = {estimates[0].delta_interaction:.4e}, "
              f"n_dis = {estimates[0].n_dis}")
        print(format_estimate_table(estimates))
    return EXIT_OK


def _cmd_schedule(args):
    schedule = pairing_schedule(args.N)
    check = verify_pairing(schedule)
    if args.format == 'json':
        print(schedule.to_json())
    else:
        for k, round_pairs in enumerate(schedule.sets, start=1):
            print(f"[{k}] " + " ".join(f"({i},{j})" for i, j in round_pairs))
        print(f"cover={check.cover_ok} disjoint={check.disjoint_ok} no_reuse={check.no_reuse_ok}")
    if args.optimize:
        from .pairing_model import PairingScheduleModel

        model = PairingScheduleModel({'N': args.N})
        model.solve()
        model.print_solution_summary()
    return EXIT_OK


def _cmd_crossover(args):
    V = load_potential(args)
    if args.sets:
        lo, hi = _floats(args.sets, 2, '--sets')
        print(json.dumps(delta_sets(V, lo, hi, use_lower_bound=args.lower_bound), indent=1))
        return EXIT_OK
    if args.delta is None:
        raise InvalidParameterError("crossover needs --delta or --sets")
    report = crossover_analysis(V, args.delta, use_lower_bound=args.lower_bound)
    print(json.dumps(report.to_dict(), indent=1))
    return EXIT_OK


def _cmd_apk(args):
    V = load_potential(args)
    print(json.dumps(apk_resources(V, args.degree, args.delta, n=args.n, c_p=args.c_p), indent=1))
    return EXIT_OK


COMMANDS = {
    'params': _cmd_params,
    'synth': _cmd_synth,
    'verify': _cmd_verify,
    'counts': _cmd_counts,
    'sweep': _cmd_sweep,
    'estimate': _cmd_estimate,
    'schedule': _cmd_schedule,
    'crossover': _cmd_crossover,
    'apk': _cmd_apk,
}


def main(argv=None):
    """Run the command line; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except DiagPhaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if not args.command:
        parser.print_help()
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except DiagPhaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
