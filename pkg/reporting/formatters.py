from typing import Any, Dict, List, Sequence

from algebra.polynomials import format_rational
from utils import setup_logger

STATUS_TEXT = {
    'TrivialCertified': "trivial (certified)",
    'UpperBoundOnly': "upper bound"
}

SCAN_COLUMNS = ["index", "dim", "ord", "wid", "verdict", "certs", "dimK'", "status", "dimMA", "conjecture"]


def _span(basis: Sequence[str]) -> str:
    return "span{" + ", ".join(basis) + "}"


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    return str(value)


class ReportFormatter:
    """Render command reports as plain text for the terminal"""

    def __init__(self):
        self.logger = setup_logger("Report Formatter")

    def format_info(self, report: Dict[str, Any]) -> str:
        lines = [
            f"dim={report['dim']} order={report['order']} width={report['width']} "
            f"socle_dim={report['socle_dim']} ma_dim={report['ma_dim']} ideal_dim={report['ideal_dim']}"
        ]
        if report['width_deficit']:
            lines.append(f"note: width {report['width']} < k={report['k']}, a variable lies in n^2")
        return "\n".join(lines)

    def format_basis(self, report: Dict[str, Any]) -> str:
        return f"basis (dim {report['dim']}): " + ", ".join(report['basis'])

    def format_multable(self, report: Dict[str, Any]) -> str:
        lines = [f"{p['left']} * {p['right']} = {p['product']}" for p in report['products']]
        if not lines:
            return "all products in n vanish"
        return "\n".join(lines)

    def format_normal_form(self, report: Dict[str, Any]) -> str:
        return report['normal_form']

    def format_socle(self, report: Dict[str, Any]) -> str:
        socle, ma = report['socle'], report['ma']
        return "\n".join([
            f"socle = {_span(socle['basis'])} (dim {socle['dim']})",
            f"MA = {_span(ma['basis'])} (dim {ma['dim']})"
        ])

    def format_classify(self, report: Dict[str, Any]) -> str:
        lines = []
        for certificate in report['certificates']:
            details = ", ".join(f"{key}={self._witness_value(value)}"
                                for key, value in certificate['witness'].items())
            line = f"{certificate['kind']}: {certificate['outcome']}"
            if details:
                line += f" ({details})"
            if certificate.get('note'):
                line += f" - {certificate['note']}"
            lines.append(line)
        lines.append(f"verdict: {report['verdict']}")
        return "\n".join(lines)

    def format_weights(self, report: Dict[str, Any]) -> str:
        lattice = report['lattice']
        if report['weights'] is None:
            head = f"weights: none within bound {report['bound']}"
        else:
            head = "weights: " + " ".join(str(w) for w in report['weights'])
        return f"{head}\nweight lattice dim {lattice['dim']}"

    def format_derivations(self, report: Dict[str, Any]) -> str:
        lines = [f"Der(A) dim {report['dim']}"]
        for i, images in enumerate(report['basis'], 1):
            lines.append(f"D{i}: " + "; ".join(f"D({name}) = {image}" for name, image in images.items()))
        return "\n".join(lines)

    def format_fixed(self, report: Dict[str, Any]) -> str:
        kernel, refined = report['kernel'], report['refined']
        signs = ", ".join("(" + ", ".join(str(s) for s in v) + ")" for v in report['sign_automorphisms'])
        return "\n".join([
            f"K = {_span(kernel['basis'])} (dim {kernel['dim']})",
            f"K' = {_span(refined['basis'])} (dim {refined['dim']}), status: {STATUS_TEXT[report['status']]}",
            f"sign automorphisms: {signs}"
        ])

    def format_conjecture(self, report: Dict[str, Any]) -> str:
        refined, ma = report['refined'], report['ma']
        return "\n".join([
            f"K' = {_span(refined['basis'])} (dim {refined['dim']})",
            f"MA = {_span(ma['basis'])} (dim {ma['dim']})",
            f"K' in MA: {'yes' if report['contained'] else 'no'}",
            f"conjecture: {report['conjecture']}"
        ])

    def format_endo(self, report: Dict[str, Any]) -> str:
        lines = [f"{name} -> {image}" for name, image in report['images'].items()]
        lines.append(f"well-defined: {self._yes_no(report['well_defined'])}")
        if 'linear_part' in report:
            lines.append("linear part:")
            lines.extend("  " + self._row(row) for row in report['linear_part'])
            lines.append(f"det = {format_rational(report['det'])}")
        lines.append(f"automorphism: {self._yes_no(report['automorphism'])}")
        if report['automorphism']:
            lines.append(f"orientation preserving: {self._yes_no(report['orientation_preserving'])}")
            lines.append(f"unipotent: {self._yes_no(report['unipotent'])}")
        return "\n".join(lines)

    def format_constraints(self, report: Dict[str, Any]) -> str:
        lines = [
            f"unknowns: {len(report['unknowns'])} ({len(report['linear_unknowns'])} in the linear part)",
            f"equations: {len(report['equations'])}"
        ]
        lines.extend(f"[{e['source']}] {e['equation']}" for e in report['equations'])
        return "\n".join(lines)

    def format_scan(self, report: Dict[str, Any], include_timing: bool = False) -> str:
        """
        Fixed-width table, one row per instance, then the summary

        :param report: ScanReport dictionary
        :param include_timing: Add the ms column
        :return: Table text
        """
        header = list(SCAN_COLUMNS) + (["ms"] if include_timing else [])
        rows = [header]
        for record in report['records']:
            if record['skipped']:
                verdict = "skipped"
            elif record['error'] is not None:
                verdict = "error"
            else:
                verdict = record['verdict']
            row = [
                str(record['index']), _cell(record['dim']), _cell(record['order']), _cell(record['width']),
                verdict, ",".join(record['certificates']) or "-", _cell(record['refined_dim']),
                _cell(record['status']), _cell(record['ma_dim']), _cell(record['conjecture'])
            ]
            if include_timing:
                row.append(f"{record.get('elapsed_ms', 0.0):.1f}")
            rows.append(row)

        widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
        lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
        lines.append("")
        lines.extend(self._summary_lines(report['summary']))
        return "\n".join(lines)

    def _summary_lines(self, summary: Dict[str, Any]) -> List[str]:
        lines = [
            f"seed {summary['seed']}: {summary['instances']} instances, {summary['processed']} processed, "
            f"{summary['skipped']} skipped, {summary['failed']} failed"
        ]
        for key in ('verdicts', 'status', 'conjecture'):
            counts = ", ".join(f"{name}={count}" for name, count in summary[key].items())
            lines.append(f"{key}: {counts or '-'}")
        lines.append(f"overshoot: {summary['overshoot']}")
        return lines

    def _witness_value(self, value: Any) -> str:
        if isinstance(value, (list, tuple)):
            return "[" + " ".join(self._witness_value(v) for v in value) + "]"
        if isinstance(value, dict):
            return "{" + ", ".join(f"{k}:{self._witness_value(v)}" for k, v in value.items()) + "}"
        return str(value)

    def _row(self, row: Sequence[Any]) -> str:
        return "[" + ", ".join(format_rational(c) for c in row) + "]"

    def _yes_no(self, flag: bool) -> str:
        return "yes" if flag else "no"
