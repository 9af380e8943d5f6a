"""Python bindings for the lodrec similarity engine."""

import json as _json

from ._lodrec import *  # noqa: F401,F403
from ._lodrec import evaluation_report as _evaluation_report


def evaluation_report(table):
    """Contingency table, relative deltas and chi-square result as a dict."""
    return _json.loads(_evaluation_report(table))
