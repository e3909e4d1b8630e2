"""Braid words, the Hilden subgroup of B_2n and presentations from group actions.

Subpackages and modules:

* :mod:`hildenkit.braid` - braid words and the Garside normal form.
* :mod:`hildenkit.hilden` - relation families checked as braid equalities.
* :mod:`hildenkit.deduction` - rewriting derivations: checking and search.
* :mod:`hildenkit.action` - presentations of groups acting on 2-complexes.
* :mod:`hildenkit.schema` - face classes and decomposition panels.
* :mod:`hildenkit.cli` - the ``hildenkit`` command.
"""

from .braid import KERNEL, BraidWord, equal, normal_form, parse_word

__version__ = "0.1.0"

__all__ = ["KERNEL", "BraidWord", "equal", "normal_form", "parse_word", "__version__"]
