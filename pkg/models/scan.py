from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from models.algebra_spec import AlgebraSpec

Range = Tuple[int, int]


class ScanFamily(str, Enum):
    """Shape of the random generators"""
    RANDOM = "random"
    MONOMIAL = "monomial"
    HOMOGENEOUS = "homogeneous"


def _range(value: Any) -> Range:
    if isinstance(value, int):
        return value, value
    lo, hi = value
    return int(lo), int(hi)


@dataclass
class ScanConfig:
    """Parameters of a seeded batch scan"""

    seed: int = 42
    k_range: Range = (2, 2)
    r_range: Range = (4, 4)
    generator_range: Range = (1, 3)
    term_range: Range = (1, 3)
    coefficient_pool: Tuple[int, ...] = (-2, -1, 1, 2)
    count: int = 100
    weight_bound: Optional[int] = None
    dim_cap: Optional[int] = None
    family: ScanFamily = ScanFamily.RANDOM
    min_degree: int = 2
    workers: int = 1
    trust_order_theorem: bool = True

    def __post_init__(self):
        self.family = ScanFamily(self.family)
        self.coefficient_pool = tuple(int(c) for c in self.coefficient_pool)
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")
        for label, (lo, hi), minimum in (("k", self.k_range, 1), ("r", self.r_range, 1),
                                          ("generator count", self.generator_range, 0),
                                          ("term count", self.term_range, 1)):
            if lo > hi:
                raise ValueError(f"Empty {label} range [{lo}, {hi}]")
            if lo < minimum:
                raise ValueError(f"{label} range must start at {minimum} or above, got {lo}")
        if self.count < 1:
            raise ValueError(f"Instance count must be >= 1, got {self.count}")
        if not self.coefficient_pool or 0 in self.coefficient_pool:
            raise ValueError("Coefficient pool must be non-empty and must not contain 0")
        if self.min_degree < 1:
            raise ValueError(f"Minimum generator degree must be >= 1, got {self.min_degree}")
        if self.workers < 1:
            raise ValueError(f"Worker count must be >= 1, got {self.workers}")
        if self.weight_bound is not None and self.weight_bound < 1:
            raise ValueError(f"Weight bound must be >= 1, got {self.weight_bound}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ScanConfig':
        """Create a scan configuration from a dictionary (config file section plus overrides)

        :param data: Dictionary containing scan parameters
        :return: ScanConfig instance
        """
        return cls(
            seed=int(data.get('seed', 42)),
            k_range=_range(data.get('k_range', (2, 2))),
            r_range=_range(data.get('r_range', (4, 4))),
            generator_range=_range(data.get('generator_range', (1, 3))),
            term_range=_range(data.get('term_range', (1, 3))),
            coefficient_pool=tuple(data.get('coefficient_pool', (-2, -1, 1, 2))),
            count=int(data.get('count', 100)),
            weight_bound=data.get('weight_bound'),
            dim_cap=data.get('dim_cap'),
            family=ScanFamily(data.get('family', 'random')),
            min_degree=int(data.get('min_degree', 2)),
            workers=int(data.get('workers', 1)),
            trust_order_theorem=bool(data.get('trust_order_theorem', True))
        )

    def to_dict(self) -> Dict[str, Any]:
        """Everything needed to reproduce the scan; worker count is omitted since it never changes output"""
        return {
            'seed': self.seed,
            'k_range': list(self.k_range),
            'r_range': list(self.r_range),
            'generator_range': list(self.generator_range),
            'term_range': list(self.term_range),
            'coefficient_pool': list(self.coefficient_pool),
            'count': self.count,
            'weight_bound': self.weight_bound,
            'dim_cap': self.dim_cap,
            'family': self.family.value,
            'min_degree': self.min_degree,
            'trust_order_theorem': self.trust_order_theorem
        }


@dataclass
class ScanRecord:
    """Result of the per-instance pipeline"""

    index: int
    spec: AlgebraSpec
    dim: Optional[int] = None
    order: Optional[int] = None
    width: Optional[int] = None
    verdict: Optional[str] = None
    certificates: List[str] = field(default_factory=list)
    kernel_dim: Optional[int] = None
    refined_dim: Optional[int] = None
    status: Optional[str] = None
    ma_dim: Optional[int] = None
    conjecture: Optional[str] = None
    # Certificate granted while the derivation bound stays above span{1}
    overshoot: bool = False
    skipped: bool = False
    error: Optional[str] = None
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.skipped and self.error is None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ScanRecord':
        """Create a record from a dictionary

        :param data: Dictionary produced by to_dict
        :return: ScanRecord instance
        """
        return cls(
            index=int(data['index']),
            spec=AlgebraSpec.from_dict(data['spec']),
            dim=data.get('dim'),
            order=data.get('order'),
            width=data.get('width'),
            verdict=data.get('verdict'),
            certificates=list(data.get('certificates', [])),
            kernel_dim=data.get('kernel_dim'),
            refined_dim=data.get('refined_dim'),
            status=data.get('status'),
            ma_dim=data.get('ma_dim'),
            conjecture=data.get('conjecture'),
            overshoot=bool(data.get('overshoot', False)),
            skipped=bool(data.get('skipped', False)),
            error=data.get('error'),
            elapsed_ms=float(data.get('elapsed_ms', 0.0))
        )

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """Convert object to dictionary representation

        :param include_timing: Add the wall-clock time, which makes output run-dependent
        :return: Dictionary representation of the record
        """
        result = {
            'index': self.index,
            'spec': self.spec.to_dict(),
            'dim': self.dim,
            'order': self.order,
            'width': self.width,
            'verdict': self.verdict,
            'certificates': self.certificates,
            'kernel_dim': self.kernel_dim,
            'refined_dim': self.refined_dim,
            'status': self.status,
            'ma_dim': self.ma_dim,
            'conjecture': self.conjecture,
            'overshoot': self.overshoot,
            'skipped': self.skipped,
            'error': self.error
        }
        if include_timing:
            result['elapsed_ms'] = round(self.elapsed_ms, 3)
        return result


@dataclass
class ScanReport:
    """Ordered records plus the aggregate summary"""

    config: ScanConfig
    records: List[ScanRecord] = field(default_factory=list)

    def summary(self) -> Dict[str, Any]:
        processed = [r for r in self.records if r.ok]
        verdicts: Dict[str, int] = {}
        statuses: Dict[str, int] = {}
        conjecture: Dict[str, int] = {}
        for record in processed:
            verdicts[record.verdict] = verdicts.get(record.verdict, 0) + 1
            statuses[record.status] = statuses.get(record.status, 0) + 1
            conjecture[record.conjecture] = conjecture.get(record.conjecture, 0) + 1
        return {
            'seed': self.config.seed,
            'instances': len(self.records),
            'processed': len(processed),
            'skipped': sum(1 for r in self.records if r.skipped),
            'failed': sum(1 for r in self.records if r.error is not None),
            'verdicts': dict(sorted(verdicts.items())),
            'status': dict(sorted(statuses.items())),
            'conjecture': dict(sorted(conjecture.items())),
            'overshoot': sum(1 for r in processed if r.overshoot)
        }

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        return {
            'config': self.config.to_dict(),
            'summary': self.summary(),
            'records': [r.to_dict(include_timing) for r in self.records]
        }
