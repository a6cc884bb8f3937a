from models.algebra_spec import AlgebraSpec
from models.certificates import Certificate, CertificateKind, Outcome, TrivialityReport, Verdict
from models.estimates import ConjectureStatus, FixedPointEstimate, FixedPointStatus
from models.scan import ScanConfig, ScanFamily, ScanRecord, ScanReport

__all__ = [
    'AlgebraSpec',
    'Certificate',
    'CertificateKind',
    'Outcome',
    'TrivialityReport',
    'Verdict',
    'ConjectureStatus',
    'FixedPointEstimate',
    'FixedPointStatus',
    'ScanConfig',
    'ScanFamily',
    'ScanRecord',
    'ScanReport',
]
