from .roots import RootDatum, WeylElement
from .parabolic import (ParabolicPair, double_coset_representatives, fiber_codim, is_bad,
                        lw2_harness, root_lemma_check, wpq_enumerate)

__all__ = ["RootDatum", "WeylElement", "ParabolicPair", "double_coset_representatives",
           "fiber_codim", "is_bad", "lw2_harness", "root_lemma_check", "wpq_enumerate"]
