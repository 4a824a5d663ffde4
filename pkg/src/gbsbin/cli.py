"""
gbsbin.cli
~~~~~~~~~~
Command-line interface: binned distributions, cutoffs, Haar averages, sample
validation, oracle cross-checks and synthetic samples.
"""
import argparse
import json
import logging
import sys
import warnings
from . import constants
from ._version import __version__
from .gbs_core import GbsInstance, SqueezedInput, BinPartition
from .classical_models import match_squashed_to_squeezed, match_thermal_to_squeezed
from .binned_dist import CutoffPolicy, instance_distribution, select_cutoff, binned_distribution
from .haar import HAAR_LAWS, monte_carlo_haar_average
from .fock_oracle import oracle_binned_distribution
from .sample_data import SampleSet, generate_samples
from .validation import tv_distance, validate_samples
from .utils import read_instance, read_partition
from .writers import write_distribution, write_haar_table
from .exceptions import DomainError, GBSBinException

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_WARNINGS = 2
EXIT_ERROR = 3
EXIT_IO_ERROR = 4


def _policy(args):
    return CutoffPolicy(epsilon=args.epsilon, alpha=args.alpha, n_override=args.cutoff)


def _load_instance(path, args):
    return _apply_matching(read_instance(path), args)


def _apply_matching(inst, args):
    if getattr(args, 'match_squashed', False) or getattr(args, 'match_thermal', False):
        if not isinstance(inst, GbsInstance) or not isinstance(inst.inputs, SqueezedInput):
            raise DomainError("mean-photon matching needs a squeezed instance")
        if args.match_squashed:
            inst = match_squashed_to_squeezed(inst)
        else:
            inst = match_thermal_to_squeezed(inst)
        logger.info("replaced input by mean-photon matched %s light", inst.input_model)
    return inst


def _print_table(dist):
    writer_rows = ['%s,%.17g' % (','.join(str(k) for k in pattern), dist.probs[pattern])
                   for pattern in dist.patterns()]
    header = ','.join('k_%d' % (i + 1) for i in range(dist.bin_count)) + ',probability'
    print('\n'.join([header] + writer_rows))


def _emit(dist, output):
    if output:
        write_distribution(dist, output)
        logger.info("wrote %s and its sidecar", output)
    else:
        _print_table(dist)


def run_dist(args):
    inst = _load_instance(args.instance, args)
    partition = read_partition(args.partition, inst.mode_count)
    dist = instance_distribution(inst, partition, _policy(args), workers=args.workers)
    logger.info("n = %d, tail bound %.3g, imaginary residue %.3g", dist.n, dist.tail_bound, dist.imag_residue)
    _emit(dist, args.output)
    return EXIT_OK


def run_cutoff(args):
    inst = _load_instance(args.instance, args)
    selection = select_cutoff(inst, _policy(args))
    print(json.dumps(selection._asdict()))
    return EXIT_OK


def run_haar(args):
    bin_sizes = [int(s) for s in args.bins.split(',')]
    if sum(bin_sizes) != args.modes:
        raise DomainError("bin sizes %s do not add up to %d modes" % (bin_sizes, args.modes))

    template = GbsInstance(SqueezedInput([args.squeezing] * args.modes))
    partition = BinPartition.contiguous(bin_sizes)

    def progress(trial, dist):
        logger.info("Haar trial %d done, retained mass %.6f", trial, dist.total())

    average = monte_carlo_haar_average(
        template,
        partition,
        args.trials,
        args.seed,
        n=args.cutoff,
        policy=_policy(args),
        workers=args.workers,
        callback=progress
    )

    if args.output:
        write_haar_table(average, args.output, args.modes, args.squeezing, args.law)
    else:
        for row in average.to_rows(args.modes, args.squeezing, args.law):
            print(','.join(str(v) for v in row))
    return EXIT_OK


def _hypothesis_instances(args):
    inst_a = read_instance(args.hypothesis_a)
    matching = args.match_squashed or args.match_thermal

    if matching and args.hypothesis_b:
        raise DomainError("give either --hypothesis-b or a matching flag, not both")
    if matching:
        return inst_a, _apply_matching(inst_a, args)
    if not args.hypothesis_b:
        raise DomainError("validation needs --hypothesis-b or a matching flag")
    return inst_a, read_instance(args.hypothesis_b)


def run_validate(args):
    samples = SampleSet(args.samples, fmt=args.format)
    partition = read_partition(args.partition, samples.mode_count)
    policy = _policy(args)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        hypotheses = []
        for label, inst in zip(('a', 'b'), _hypothesis_instances(args)):
            hypotheses.append(('%s:%s' % (label, inst.input_model), instance_distribution(inst, partition, policy)))
        report = validate_samples(samples, hypotheses, partition)

    for warning in caught:
        logger.warning("%s: %s", warning.category.__name__, warning.message)

    text = json.dumps(report.to_dict(), indent=2)
    if args.output:
        with open(args.output, 'w') as fh:
            fh.write(text)
    else:
        print(text)

    return EXIT_WARNINGS if caught else EXIT_OK


def run_oracle(args):
    inst = read_instance(args.instance)
    partition = read_partition(args.partition, inst.mode_count)

    oracle = oracle_binned_distribution(inst, partition, args.cutoff)
    analytic = binned_distribution(inst.characteristic_function(partition), args.cutoff, partition=partition)
    logger.info("oracle tail %.3g", oracle.tail_bound)
    print(json.dumps({'n': args.cutoff, 'tail_bound': oracle.tail_bound, 'tv_to_analytic': tv_distance(oracle, analytic)}))

    if args.output:
        write_distribution(oracle, args.output)
    return EXIT_OK


def run_sample(args):
    inst = _load_instance(args.instance, args)
    partition = read_partition(args.partition, inst.mode_count)
    dist = instance_distribution(inst, partition, _policy(args), workers=args.workers)

    samples = generate_samples(dist, args.count, args.seed, mode_count=inst.mode_count)
    samples.write_samples(args.output, fmt=args.format)
    logger.info("wrote %d samples to %s", samples.record_count, args.output)
    return EXIT_OK


def _add_policy_arguments(parser):
    parser.add_argument('--epsilon', type=float, default=constants.DEFAULT_EPSILON,
                        help="Target tail probability (default: %(default)g).")
    parser.add_argument('--alpha', type=float, default=1.0, help="Starting cutoff multiplier (default: 1).")
    parser.add_argument('--cutoff', type=int, default=None, help="Explicit per-bin cutoff n.")


def build_argparser():
    parser = argparse.ArgumentParser(
        prog='gbsbin',
        description="Binned photon-number distributions for Gaussian boson sampling."
    )
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--verbose', action='store_true', help="Log progress messages.")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('dist', help="Compute a binned distribution.")
    p.add_argument('--instance', required=True, help="Instance JSON file.")
    p.add_argument('--partition', required=True, help="Partition JSON file or inline form '0,1;2'.")
    p.add_argument('--output', help="CSV output; a JSON sidecar is written next to it.")
    p.add_argument('--workers', type=int, default=None, help="Threads for grid evaluation.")
    p.add_argument('--match-squashed', action='store_true', help="Use mean-photon matched squashed input.")
    p.add_argument('--match-thermal', action='store_true', help="Use mean-photon matched thermal input.")
    _add_policy_arguments(p)
    p.set_defaults(handler=run_dist)

    p = sub.add_parser('cutoff', help="Select the per-bin cutoff.")
    p.add_argument('--instance', required=True, help="Instance JSON file.")
    p.add_argument('--match-squashed', action='store_true', help="Use mean-photon matched squashed input.")
    p.add_argument('--match-thermal', action='store_true', help="Use mean-photon matched thermal input.")
    _add_policy_arguments(p)
    p.set_defaults(handler=run_cutoff)

    p = sub.add_parser('haar', help="Monte Carlo Haar average against the asymptotic law.")
    p.add_argument('--modes', type=int, required=True, help="Number of modes m.")
    p.add_argument('--squeezing', type=float, required=True, help="Squeezing r of every mode.")
    p.add_argument('--bins', required=True, help="Comma-separated bin sizes, e.g. 10,10.")
    p.add_argument('--trials', type=int, default=100, help="Number of Haar draws (default: 100).")
    p.add_argument('--seed', type=int, required=True, help="Base seed of the draws.")
    p.add_argument('--law', choices=HAAR_LAWS, default='exact', help="Asymptotic column law.")
    p.add_argument('--workers', type=int, default=None, help="Threads running draws.")
    p.add_argument('--output', help="CSV output.")
    _add_policy_arguments(p)
    p.set_defaults(handler=run_haar)

    p = sub.add_parser('validate', help="Score samples against two hypotheses.")
    p.add_argument('--samples', required=True, help="Sample file.")
    p.add_argument('--format', choices=constants.SAMPLE_FORMATS, default='jsonl', help="Sample file format.")
    p.add_argument('--hypothesis-a', required=True, help="Instance JSON of the first hypothesis.")
    p.add_argument('--hypothesis-b', help="Instance JSON of the second hypothesis.")
    p.add_argument('--match-squashed', action='store_true',
                   help="Second hypothesis: squashed light matched to the first one's mean photon number.")
    p.add_argument('--match-thermal', action='store_true',
                   help="Second hypothesis: thermal light matched to the first one's mean photon number.")
    p.add_argument('--partition', required=True, help="Partition JSON file or inline form.")
    p.add_argument('--output', help="Report JSON output.")
    _add_policy_arguments(p)
    p.set_defaults(handler=run_validate)

    p = sub.add_parser('oracle', help="Cross-check a small instance with the Fock oracle.")
    p.add_argument('--instance', required=True, help="Instance JSON file.")
    p.add_argument('--partition', required=True, help="Partition JSON file or inline form.")
    p.add_argument('--cutoff', type=int, default=10, help="Photon truncation (default: 10).")
    p.add_argument('--output', help="CSV output of the oracle table.")
    p.set_defaults(handler=run_oracle)

    p = sub.add_parser('sample', help="Draw synthetic samples from an instance.")
    p.add_argument('--instance', required=True, help="Instance JSON file.")
    p.add_argument('--partition', required=True, help="Partition JSON file or inline form.")
    p.add_argument('--count', type=int, required=True, help="Number of records.")
    p.add_argument('--seed', type=int, required=True, help="Sampling seed.")
    p.add_argument('--output', required=True, help="Sample file output.")
    p.add_argument('--format', choices=constants.SAMPLE_FORMATS, default='jsonl', help="Sample file format.")
    p.add_argument('--workers', type=int, default=None, help="Threads for grid evaluation.")
    p.add_argument('--match-squashed', action='store_true', help="Use mean-photon matched squashed input.")
    p.add_argument('--match-thermal', action='store_true', help="Use mean-photon matched thermal input.")
    _add_policy_arguments(p)
    p.set_defaults(handler=run_sample)

    return parser


def main(argv=None):
    args = build_argparser().parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s'
    )
    logging.captureWarnings(True)

    try:
        return args.handler(args)
    except GBSBinException as ex:
        logger.error("%s: %s", ex.__class__.__name__, ex)
        return EXIT_ERROR
    except OSError as ex:
        logger.error("I/O error: %s", ex)
        return EXIT_IO_ERROR


if __name__ == '__main__':
    sys.exit(main())
