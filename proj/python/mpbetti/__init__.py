"""Multigraded Betti tables of one-critical multifiltrations."""

import json

from ._core import Document, barcode, betti, betti_csv, generate, homology, load, parse, verify_json

__all__ = ["Document", "barcode", "betti", "betti_csv", "generate", "homology", "load", "parse", "verify"]


def verify(doc, theorem="support", greedy=True, qmax=None):
    """Support or bounds report as a dict; every claim carries a 'holds' flag."""
    return json.loads(verify_json(doc, theorem, greedy, qmax))
