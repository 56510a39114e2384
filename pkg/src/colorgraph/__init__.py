"""colorgraph: monochromatic-subgraph statistics of uniform random colorings.

Submodules:

* ``graph``    - graph type, family generators, edge-list interchange
* ``census``   - exact cycle/subgraph/edge-tuple censuses and pattern classes
* ``extremal`` - fractional stable number, deficiency, structure reports
* ``spectral`` - adjacency spectra and spectral cycle bounds
* ``colorsim`` - reproducible coloring simulation and the enumeration oracle
* ``moments``  - exact rational conditional moments
* ``limits``   - limit laws: construction, evaluation, sampling
* ``stats``    - distances and empirical moment summaries
* ``cli``      - the ``colorgraph`` command-line interface
"""

__version__ = "0.1.0"

from . import census, colorsim, errors, extremal, graph, limits, moments, spectral, stats  # noqa: F401
