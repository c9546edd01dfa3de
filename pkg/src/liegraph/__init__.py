"""Lie-algebra decorated graph complexes over the rationals.

Subpackages:

* :mod:`liegraph.exactq` -- rational scalars, sparse vectors and row reduction;
* :mod:`liegraph.lie` -- structure constants, Killing form, weight systems;
* :mod:`liegraph.graphs` -- half-edge graphs, canonical labels, decorations;
* :mod:`liegraph.graph_complex` -- normalization, the differential, cohomology;
* :mod:`liegraph.series` -- generating-series cocycles and the pairing census;
* :mod:`liegraph.cli` -- the ``liegraph`` command line tool.
"""

__version__ = "0.1.0"
