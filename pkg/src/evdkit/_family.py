from __future__ import annotations

from enum import Enum


class Family(str, Enum):
    """The nine identifiable Gumbel generalizations."""

    EV = "EV"
    GEV = "GEV"
    EGu = "EGu"
    TEV = "TEV"
    GTIEV3 = "GTIEV3"
    EGa = "EGa"
    GGu = "GGu"
    GLIV = "GLIV"
    TCEV = "TCEV"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, Family):
            return name
        key = str(name).strip().lower()
        for fam in cls:
            if fam.value.lower() == key:
                return fam
        raise ValueError(f"unknown family {name!r}; expected one of {[f.value for f in cls]}")

    @property
    def code(self) -> int:
        return _CODES[self]

    @property
    def param_names(self) -> tuple:
        return PARAM_NAMES[self]

    @property
    def n_params(self) -> int:
        return len(PARAM_NAMES[self])


_CODES = {fam: i for i, fam in enumerate(Family)}

PARAM_NAMES = {
    Family.EV: ("mu", "sigma"),
    Family.GEV: ("mu", "sigma", "alpha"),
    Family.EGu: ("mu", "sigma", "alpha"),
    Family.TEV: ("mu", "sigma", "alpha"),
    Family.GTIEV3: ("mu", "sigma", "alpha"),
    Family.EGa: ("mu", "sigma", "alpha"),
    Family.GGu: ("mu", "sigma", "alpha"),
    Family.GLIV: ("mu", "sigma", "alpha", "beta"),
    Family.TCEV: ("mu", "sigma", "mu1", "sigma1", "alpha"),
}
