"""Case records, run reports and their JSON form."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, Optional, Tuple, Union


UTF8_ENCODING = 'utf-8'
FLOAT_DIGITS = 17


@dataclass(frozen=True)
class CaseRecord:
    """The outcome of a single identity check."""

    suite: str
    case: str
    inputs_digest: str
    residual: float
    tolerance: float
    error: Optional[str] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        """Tell whether the residual is below the tolerance."""
        return self.residual < self.tolerance

    def to_json(self) -> Dict[str, object]:
        """Serialize the record."""
        document: Dict[str, object] = {
            'suite': self.suite,
            'case': self.case,
            'inputs': self.inputs_digest,
            # non-finite residuals have no JSON number
            'residual': (
                self.residual if math.isfinite(self.residual) else None
            ),
            'tol': self.tolerance,
            'pass': self.passed,
        }
        if self.error is not None:
            document['error'] = self.error
        if self.warnings:
            document['warnings'] = list(self.warnings)
        return document

    @classmethod
    def from_json(cls, document: Dict[str, object]) -> 'CaseRecord':
        """Rebuild a record serialized by :meth:`to_json`."""
        residual = document['residual']
        warning_texts = document.get('warnings', ())
        return cls(
            suite=str(document['suite']),
            case=str(document['case']),
            inputs_digest=str(document['inputs']),
            residual=(
                math.inf if residual is None
                else float(residual)  # type: ignore[arg-type]
            ),
            tolerance=float(document['tol']),  # type: ignore[arg-type]
            error=document.get('error'),  # type: ignore[arg-type]
            warnings=tuple(warning_texts),  # type: ignore[arg-type]
        )


@dataclass(frozen=True)
class SuiteReport:
    """All case records of a run with the configuration that made them."""

    config: Dict[str, object]
    cases: Tuple[CaseRecord, ...]
    version: str

    @property
    def summary(self) -> Dict[str, int]:
        """Count the cases."""
        passed = sum(record.passed for record in self.cases)
        return {
            'total': len(self.cases),
            'passed': passed,
            'failed': len(self.cases) - passed,
        }

    @property
    def ok(self) -> bool:
        """Tell whether every case passed."""
        return self.summary['failed'] == 0

    def to_json(self) -> Dict[str, object]:
        """Serialize the report."""
        return {
            'config': self.config,
            'cases': [record.to_json() for record in self.cases],
            'summary': self.summary,
            'version': self.version,
        }


class _FixedDigitsEncoder(json.JSONEncoder):
    """Write every float with :data:`FLOAT_DIGITS` significant digits."""

    def iterencode(
            self,
            o: object,  # noqa: WPS111
            _one_shot: bool = False,
    ) -> Iterator[str]:
        """Encode ``o`` in chunks with the fixed float notation."""
        def floatstr(number: float) -> str:  # noqa: WPS430
            if not math.isfinite(number):
                raise ValueError(
                    f'Out of range float values are not JSON: {number!r}',
                )
            return f'{number:.{FLOAT_DIGITS - 1}e}'

        encode_chunks = json.encoder._make_iterencode(  # noqa: WPS437
            {} if self.check_circular else None,
            self.default,
            json.encoder.encode_basestring_ascii,
            self.indent,
            floatstr,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return encode_chunks(o, 0)


def dumps_report(report: SuiteReport) -> str:
    """Render the report as a JSON document.

    Keys keep their insertion order and floats carry
    :data:`FLOAT_DIGITS` significant digits in exponent notation.
    """
    return json.dumps(
        report.to_json(), indent=2, cls=_FixedDigitsEncoder,
    ) + '\n'


def emit_report(report: SuiteReport, path: Union[str, Path]) -> None:
    """Write the report as JSON to ``path``.

    :raises OSError: when the file cannot be written
    """
    Path(path).write_text(dumps_report(report), encoding=UTF8_ENCODING)


def load_report(path: Union[str, Path]) -> SuiteReport:
    """Parse a report written by :func:`emit_report`.

    :raises ValueError: when the summary disagrees with the records
    """
    document = json.loads(Path(path).read_text(encoding=UTF8_ENCODING))
    report = SuiteReport(
        config=document['config'],
        cases=tuple(
            CaseRecord.from_json(record) for record in document['cases']
        ),
        version=document['version'],
    )
    if report.summary != document['summary']:
        raise ValueError(
            f'Report {path!s} claims {document["summary"]!r} '
            f'but its records add up to {report.summary!r}',
        )
    return report


def format_table(report: SuiteReport) -> str:
    """Lay the records out as a plain text table."""
    header = ('suite', 'case', 'residual', 'tol', 'status')
    rows = [
        (
            record.suite,
            record.case,
            f'{record.residual:.3e}',
            f'{record.tolerance:.0e}',
            'ok' if record.passed else 'FAIL',
        )
        for record in report.cases
    ]
    widths = [
        max(len(row[column]) for row in [header, *rows])
        for column in range(len(header))
    ]
    lines = [
        '  '.join(
            cell.ljust(width) for cell, width in zip(row, widths)
        ).rstrip()
        for row in [header, *rows]
    ]
    summary = report.summary
    lines.append(
        f'{summary["passed"]} passed, {summary["failed"]} failed, '
        f'{summary["total"]} total',
    )
    return '\n'.join(lines)
