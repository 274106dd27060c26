"""Computing with symmetric bilinear lattices over valuation rings."""

from .errors import (ConfigError, DomainError, IndeterminateValuation,
                     NoSolution, NotApproximatelyIsometric, SplitError,
                     UnsupportedRegime, VrlatError)
from .valgroup import VG_TOP, ValGroupElem, vg, vg_compare
from .rings import (RingConfig, RingElem, ResidueElem, decode_elem, laurent2,
                    padic, ramified2, two_adic)

__all__ = [
    "ConfigError", "DomainError", "IndeterminateValuation", "NoSolution",
    "NotApproximatelyIsometric", "SplitError", "UnsupportedRegime",
    "VrlatError", "VG_TOP", "ValGroupElem", "vg", "vg_compare",
    "RingConfig", "RingElem", "ResidueElem", "decode_elem",
    "padic", "ramified2", "two_adic", "laurent2",
]
