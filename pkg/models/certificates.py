from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class CertificateKind(str, Enum):
    """Sufficient conditions for a trivial fixed-point subalgebra"""
    MONOMIAL = "Monomial"
    HOMOGENEOUS = "Homogeneous"
    WEIGHT_GRADING = "WeightGrading"
    DWINDLABLE = "Dwindlable"
    ORDER_THEOREM = "OrderTheorem"
    DERIVATION_KERNEL = "DerivationKernelTrivial"


class Outcome(str, Enum):
    GRANTED = "granted"
    NOT_APPLICABLE = "not_applicable"
    FAILED = "failed"


class Verdict(str, Enum):
    TRIVIAL = "Trivial"
    UNKNOWN = "Unknown"


@dataclass
class Certificate:
    """Outcome of one triviality test, with the data needed to re-check it"""

    kind: CertificateKind
    outcome: Outcome
    witness: Dict[str, Any] = field(default_factory=dict)
    note: str = ""

    @property
    def granted(self) -> bool:
        return self.outcome == Outcome.GRANTED

    @property
    def weights(self) -> Optional[List[int]]:
        """Weight vector carried by grading certificates"""
        weights = self.witness.get('weights')
        return list(weights) if weights is not None else None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Certificate':
        """Create a certificate from a dictionary

        :param data: Dictionary containing certificate data
        :return: Certificate instance
        """
        return cls(
            kind=CertificateKind(data['kind']),
            outcome=Outcome(data['outcome']),
            witness=dict(data.get('witness', {})),
            note=data.get('note', '')
        )

    def to_dict(self) -> Dict[str, Any]:
        result = {
            'kind': self.kind.value,
            'outcome': self.outcome.value,
            'witness': self.witness
        }
        if self.note:
            result['note'] = self.note
        return result


@dataclass
class TrivialityReport:
    """All certificate outcomes for one algebra"""

    algebra_name: str
    certificates: List[Certificate] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        """Trivial exactly when at least one certificate is granted"""
        return Verdict.TRIVIAL if any(c.granted for c in self.certificates) else Verdict.UNKNOWN

    def granted_kinds(self) -> List[CertificateKind]:
        return [c.kind for c in self.certificates if c.granted]

    def get(self, kind: CertificateKind) -> Optional[Certificate]:
        for certificate in self.certificates:
            if certificate.kind == kind:
                return certificate
        return None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TrivialityReport':
        """Create a report from a dictionary

        :param data: Dictionary containing report data
        :return: TrivialityReport instance
        """
        return cls(
            algebra_name=data['algebra'],
            certificates=[Certificate.from_dict(c) for c in data.get('certificates', [])]
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert object to dictionary representation

        :return: Dictionary representation of the report
        """
        return {
            'algebra': self.algebra_name,
            'verdict': self.verdict.value,
            'certificates': [c.to_dict() for c in self.certificates]
        }
