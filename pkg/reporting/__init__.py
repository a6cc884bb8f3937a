from reporting.formatters import ReportFormatter
from reporting.serializers import render_json, to_jsonable

__all__ = [
    'ReportFormatter',
    'render_json',
    'to_jsonable'
]
