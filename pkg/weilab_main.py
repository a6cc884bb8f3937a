import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional

import click

from algebra.exceptions import WeilabError
from algebra.polynomials import parse_poly
from algebra.weil import WeilAlgebra, build
from analyzers.automorphisms import endo_from_map_text
from analyzers.classifier import TrivialityClassifier
from analyzers.constraints import ConstraintGenerator, export_constraints
from analyzers.derivations import DerivationAnalyzer
from reporting import ReportFormatter, render_json
from reporting import serializers
from runners import ScanRunner
from utils import FileManager, setup_logger


logger = setup_logger("Main")

json_option = click.option('--json', 'as_json', is_flag=True, help='Print the structured JSON report')
spec_argument = click.argument('spec_file', type=click.Path(dir_okay=False))


def load_algebra(spec_file: str) -> WeilAlgebra:
    spec = FileManager().read_algebra_spec(spec_file)
    return build(spec)


def emit(report: Dict[str, Any], as_json: bool, render: Callable[[Dict[str, Any]], str]) -> None:
    click.echo(render_json(report) if as_json else render(report))


def domain_errors(command: Callable) -> Callable:
    """Report WeilabError as a one-line diagnostic with exit code 1"""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WeilabError as e:
            logger.debug(f"{type(e).__name__}: {e}")
            click.echo(f"error: {e}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def main():
    """Exact computations on Weil algebras D^r_k / I over the rationals"""


@main.command()
@spec_argument
@json_option
@domain_errors
def info(spec_file: str, as_json: bool):
    """Dimension, order, width and socle dimension"""
    algebra = load_algebra(spec_file)
    emit(serializers.info_report(algebra), as_json, ReportFormatter().format_info)


@main.command()
@spec_argument
@json_option
@domain_errors
def basis(spec_file: str, as_json: bool):
    """Standard monomial basis"""
    algebra = load_algebra(spec_file)
    emit(serializers.basis_report(algebra), as_json, ReportFormatter().format_basis)


@main.command()
@spec_argument
@json_option
@domain_errors
def multable(spec_file: str, as_json: bool):
    """Nonzero products of nilradical basis elements"""
    algebra = load_algebra(spec_file)
    emit(serializers.multable_report(algebra), as_json, ReportFormatter().format_multable)


@main.command()
@spec_argument
@click.argument('poly')
@json_option
@domain_errors
def nf(spec_file: str, poly: str, as_json: bool):
    """Normal form of POLY in the algebra"""
    algebra = load_algebra(spec_file)
    element = algebra.normal_form(parse_poly(poly, algebra.context))
    emit(serializers.element_report(algebra, poly, element), as_json, ReportFormatter().format_normal_form)


@main.command()
@spec_argument
@json_option
@domain_errors
def socle(spec_file: str, as_json: bool):
    """Socle and the subalgebra MA = R + socle"""
    algebra = load_algebra(spec_file)
    emit(serializers.socle_report(algebra), as_json, ReportFormatter().format_socle)


@main.command()
@spec_argument
@click.option('--weight-bound', type=click.IntRange(min=1), help='Largest weight tried in the grading search')
@click.option('--no-order-theorem', '--no-prop4', 'no_order_theorem', is_flag=True,
              help='Do not grant the order/width certificate')
@json_option
@domain_errors
def classify(spec_file: str, weight_bound: Optional[int], no_order_theorem: bool, as_json: bool):
    """Run every triviality certificate"""
    algebra = load_algebra(spec_file)
    classifier = TrivialityClassifier(weight_bound=weight_bound,
                                      trust_order_theorem=False if no_order_theorem else None)
    report = classifier.triviality_report(algebra)
    emit(serializers.classify_report(report), as_json, ReportFormatter().format_classify)


@main.command()
@spec_argument
@click.option('--weight-bound', type=click.IntRange(min=1), help='Largest weight tried')
@json_option
@domain_errors
def weights(spec_file: str, weight_bound: Optional[int], as_json: bool):
    """Search positive weights making the ideal quasi-homogeneous"""
    algebra = load_algebra(spec_file)
    classifier = TrivialityClassifier(weight_bound=weight_bound)
    bound = classifier.bound_for(algebra)
    found = classifier.find_grading_weights(algebra, bound)
    report = serializers.weights_report(algebra, bound, found, classifier.weight_lattice(algebra))
    emit(report, as_json, ReportFormatter().format_weights)


@main.command()
@spec_argument
@json_option
@domain_errors
def derivations(spec_file: str, as_json: bool):
    """Basis of the derivation Lie algebra Der(A)"""
    algebra = load_algebra(spec_file)
    emit(serializers.derivations_report(algebra, DerivationAnalyzer().derivation_space(algebra)), as_json,
         ReportFormatter().format_derivations)


@main.command()
@spec_argument
@json_option
@domain_errors
def fixed(spec_file: str, as_json: bool):
    """Certified upper bound K' on the fixed-point subalgebra"""
    algebra = load_algebra(spec_file)
    estimate = DerivationAnalyzer().fixed_subalgebra_estimate(algebra)
    emit(serializers.fixed_report(estimate), as_json, ReportFormatter().format_fixed)


@main.command()
@spec_argument
@json_option
@domain_errors
def conjecture(spec_file: str, as_json: bool):
    """Check whether K' lies in MA"""
    algebra = load_algebra(spec_file)
    analyzer = DerivationAnalyzer()
    estimate = analyzer.fixed_subalgebra_estimate(algebra)
    report = serializers.conjecture_report(algebra, estimate, analyzer.conjecture_status(algebra, estimate))
    emit(report, as_json, ReportFormatter().format_conjecture)


@main.command('aut-verify')
@spec_argument
@click.option('--map', 'map_text', required=True, help='Variable images, e.g. "x -> -x; y -> y"')
@json_option
@domain_errors
def aut_verify(spec_file: str, map_text: str, as_json: bool):
    """Check a variable map for well-definedness and invertibility"""
    algebra = load_algebra(spec_file)
    e = endo_from_map_text(algebra, map_text)
    emit(serializers.endo_report(algebra, e), as_json, ReportFormatter().format_endo)


@main.command('aut-constraints')
@spec_argument
@click.option('--export', 'export_path', type=click.Path(dir_okay=False),
              help='Write one "0 = <polynomial>" line per equation')
@json_option
@domain_errors
def aut_constraints(spec_file: str, export_path: Optional[str], as_json: bool):
    """Polynomial equations on a general endomorphism ansatz"""
    algebra = load_algebra(spec_file)
    cs = ConstraintGenerator().generate_constraints(algebra)
    if export_path and not FileManager().save_text(export_constraints(cs), export_path):
        raise click.ClickException(f"Could not write {export_path}")
    emit(serializers.constraints_report(cs), as_json, ReportFormatter().format_constraints)


@main.command()
@click.option('--seed', type=int, help='Seed of the instance generator')
@click.option('--k', 'k', type=int, help='Number of variables')
@click.option('--r', 'r', type=int, help='Truncation order')
@click.option('--count', type=int, help='Number of instances')
@click.option('--family', type=click.Choice(['random', 'monomial', 'homogeneous']), help='Generator shape')
@click.option('--workers', type=int, help='Thread pool size')
@click.option('--weight-bound', type=int, help='Largest weight tried in the grading search')
@click.option('--timings', is_flag=True, help='Add per-instance wall-clock time')
@click.option('--json', 'json_path', type=click.Path(dir_okay=False), help='Also write the JSON report to FILE')
@domain_errors
def scan(seed: Optional[int], k: Optional[int], r: Optional[int], count: Optional[int], family: Optional[str],
         workers: Optional[int], weight_bound: Optional[int], timings: bool, json_path: Optional[str]):
    """Seeded batch classification of random presentations"""
    try:
        runner = ScanRunner.from_overrides(
            seed=seed,
            k_range=(k, k) if k is not None else None,
            r_range=(r, r) if r is not None else None,
            count=count,
            family=family,
            workers=workers,
            weight_bound=weight_bound
        )
    except ValueError as e:
        raise click.UsageError(str(e))

    report = serializers.scan_report(runner.scan_run(), include_timing=timings)
    if json_path and not FileManager().save_json(render_json(report), json_path):
        raise click.ClickException(f"Could not write {json_path}")
    click.echo(ReportFormatter().format_scan(report, include_timing=timings))


if __name__ == "__main__":
    main()
