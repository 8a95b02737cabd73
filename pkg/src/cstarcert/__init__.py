"""cstarcert: executable certificates around C*-simplicity of countable groups.

Subpackages:

* :mod:`cstarcert.words` - exact word arithmetic and ball enumeration
  for free groups and free products, plus icc verdicts;
* :mod:`cstarcert.boundary` - tree-boundary dynamics and Powers
  partition certificates (construction and exact verification);
* :mod:`cstarcert.spectral` - group-algebra elements with exact
  rational coefficients, Kesten spectral radii, compressed operator
  norms, and the conjugation-averaging inequality;
* :mod:`cstarcert.coxeter` - Tits form classification of Coxeter
  systems and the resulting C*-simplicity verdicts;
* :mod:`cstarcert.cli` - reproducible command-line reports.
"""

__version__ = "0.1.0"
