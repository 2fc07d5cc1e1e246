"""Exact toolkit for unit d-interval graph questions at desk scale.

Subpackage map:

* :mod:`multiinterval.graphs` -- graphs, obstruction certificates, canonical form
* :mod:`multiinterval.catalog` -- all small graphs, one per isomorphism class
* :mod:`multiinterval.intervals` -- exact interval families, intersection graphs
* :mod:`multiinterval.unit_interval` -- unit interval recognition (1 interval)
* :mod:`multiinterval.order_search` -- token-order oracle for unit d-intervals
* :mod:`multiinterval.splits` -- split certificates for colored unit 2-intervals
* :mod:`multiinterval.reduction` -- CNF handling and the SAT-to-graph gadgets
* :mod:`multiinterval.intrep` -- integer fixed-length representation search
* :mod:`multiinterval.fixtures` -- named gadget graphs and representations
* :mod:`multiinterval.cli` -- the ``mil`` command line
"""

from .errors import BudgetExhausted, CapacityError, InputError
from .graphs import (
    BLACK,
    WHITE,
    ColoredGraph,
    ForbiddenCertificate,
    Graph,
    canonical_form,
    find_forbidden_unit_interval,
    induced_subgraph,
    verify_certificate,
)

__all__ = [
    "BLACK",
    "WHITE",
    "BudgetExhausted",
    "CapacityError",
    "ColoredGraph",
    "ForbiddenCertificate",
    "Graph",
    "InputError",
    "canonical_form",
    "find_forbidden_unit_interval",
    "induced_subgraph",
    "verify_certificate",
]

__version__ = "0.1.0"
