import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from algebra.exceptions import DimensionCapExceeded, WeilabError
from algebra.polynomials import Monomial, RingContext, TruncPoly, monomials_of_degree
from algebra.weil import build
from analyzers.classifier import TrivialityClassifier
from analyzers.derivations import DerivationAnalyzer
from models import AlgebraSpec, ScanConfig, ScanFamily, ScanRecord, ScanReport, Verdict
from models.estimates import FixedPointStatus
from utils import get_config_loader, setup_logger


def variable_names(k: int) -> Tuple[str, ...]:
    if k <= 3:
        return ("x", "y", "z")[:k]
    return tuple(f"x{i}" for i in range(1, k + 1))


class ScanRunner:
    """Seeded batch harness: generate specs, run the full pipeline on each, aggregate"""

    def __init__(self, config: ScanConfig):
        """
        Initialize the runner

        :param config: Scan parameters
        """
        self.config = config
        self.logger = setup_logger("Scan Runner")
        self.config_loader = get_config_loader()
        self.dim_cap = config.dim_cap if config.dim_cap is not None else self.config_loader.get_dim_cap()
        self.derivations = DerivationAnalyzer()
        self.classifier = TrivialityClassifier(weight_bound=config.weight_bound,
                                               trust_order_theorem=config.trust_order_theorem,
                                               derivations=self.derivations)

    @classmethod
    def from_overrides(cls, **overrides: Any) -> 'ScanRunner':
        """Build from the config file's scan section, with explicit values taking precedence"""
        data: Dict[str, Any] = dict(get_config_loader().get_scan_config())
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls(ScanConfig.from_dict(data))

    def _random_monomial(self, rng: np.random.Generator, k: int, degree: int) -> Monomial:
        candidates = sorted(monomials_of_degree(k, degree), reverse=True)
        return candidates[int(rng.integers(0, len(candidates)))]

    def _degree(self, rng: np.random.Generator, r: int) -> int:
        low = min(self.config.min_degree, r)
        return int(rng.integers(low, r + 1))

    def _random_generator(self, rng: np.random.Generator, context: RingContext) -> TruncPoly:
        config = self.config
        pool = config.coefficient_pool
        k, r = context.k, context.r
        if config.family == ScanFamily.MONOMIAL:
            return TruncPoly.monomial(context, self._random_monomial(rng, k, self._degree(rng, r)))

        n_terms = int(rng.integers(config.term_range[0], config.term_range[1] + 1))
        terms = []
        degree = self._degree(rng, r)
        for _ in range(n_terms):
            if config.family == ScanFamily.RANDOM:
                degree = self._degree(rng, r)
            coefficient = Fraction(int(pool[int(rng.integers(0, len(pool)))]))
            terms.append((self._random_monomial(rng, k, degree), coefficient))
        return TruncPoly.from_terms(context, terms)

    def generate_instances(self) -> Iterator[AlgebraSpec]:
        """
        Deterministic sequence of random presentations

        :return: `count` specs, reproducible from the seed
        """
        config = self.config
        rng = np.random.default_rng(config.seed)
        for index in range(config.count):
            k = int(rng.integers(config.k_range[0], config.k_range[1] + 1))
            r = int(rng.integers(config.r_range[0], config.r_range[1] + 1))
            context = RingContext(variable_names(k), r)
            n_generators = int(rng.integers(config.generator_range[0], config.generator_range[1] + 1))
            generators = []
            for _ in range(n_generators):
                generator = self._random_generator(rng, context)
                # Terms may cancel
                if not generator.is_zero():
                    generators.append(generator)
            yield AlgebraSpec(name=f"scan-{config.seed}-{index}", context=context, generators=tuple(generators))

    def process_spec(self, index: int, spec: AlgebraSpec) -> ScanRecord:
        """
        build -> invariants -> certificates -> fixed-point bound -> MA -> conjecture

        Domain errors are recorded on the record, never raised.
        """
        start = time.perf_counter()
        record = ScanRecord(index=index, spec=spec)
        try:
            algebra = build(spec, self.dim_cap)
            record.dim = algebra.dim
            record.order = algebra.order()
            record.width = algebra.width()

            estimate = self.derivations.fixed_subalgebra_estimate(algebra)
            report = self.classifier.triviality_report(algebra, estimate=estimate)
            record.verdict = report.verdict.value
            record.certificates = [kind.value for kind in report.granted_kinds()]
            record.kernel_dim = estimate.kernel.dim
            record.refined_dim = estimate.refined.dim
            record.status = estimate.status.value
            record.ma_dim = algebra.ma_subalgebra().dim
            record.conjecture = self.derivations.conjecture_status(algebra, estimate).value
            record.overshoot = (report.verdict == Verdict.TRIVIAL
                                and estimate.status == FixedPointStatus.UPPER_BOUND_ONLY)
            if record.overshoot:
                self.logger.debug(f"Instance {index}: certified trivial but dim K' = {estimate.refined.dim}")
        except DimensionCapExceeded as e:
            record.skipped = True
            record.error = None
            self.logger.warning(f"Instance {index} skipped: {e}")
        except WeilabError as e:
            record.error = str(e)
            self.logger.warning(f"Instance {index} failed: {e}")
        record.elapsed_ms = (time.perf_counter() - start) * 1000
        return record

    def scan_run(self) -> ScanReport:
        """
        Run the pipeline on every generated instance

        :return: ScanReport with records in instance order
        """
        specs = list(self.generate_instances())
        self.logger.info(f"Scanning {len(specs)} instances with {self.config.workers} workers (seed {self.config.seed})")
        start_time = time.time()

        if self.config.workers == 1:
            records = [self.process_spec(i, spec) for i, spec in enumerate(specs)]
        else:
            with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
                records = list(executor.map(self.process_spec, range(len(specs)), specs))

        report = ScanReport(self.config, records)
        summary = report.summary()
        self.logger.info(f"Scan completed in {time.time() - start_time:.2f}s: {summary['processed']} processed, "
                         f"{summary['skipped']} skipped, {summary['failed']} failed")
        return report


def scan_run(config: ScanConfig) -> ScanReport:
    return ScanRunner(config).scan_run()


def generate_instances(config: ScanConfig) -> List[AlgebraSpec]:
    return list(ScanRunner(config).generate_instances())


def rebuild_record(record: ScanRecord, weight_bound: Optional[int] = None) -> ScanRecord:
    """Re-run the pipeline on a record's spec"""
    runner = ScanRunner(ScanConfig(weight_bound=weight_bound))
    return runner.process_spec(record.index, record.spec)
