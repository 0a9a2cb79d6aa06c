"""Right-tail heaviness: regular-variation tail index and Rigby types.

Rigby's classification orders unbounded right tails by the asymptotic
form of the log-density:

* type I   ``ln f(x) ~ -k2 (ln x)^k1``
* type II  ``ln f(x) ~ -k4 x^k3``
* type III ``ln f(x) ~ -k6 exp(k5 x)``

Types are in decreasing order of heaviness.  Within type I a smaller k1,
then a smaller k2, is heavier; within type II a smaller k3, then a
smaller k4.  Families that tie at first order (TEV, GTIEV3, TCEV against
the Gumbel) are separated by tabulated second-order results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ._family import Family
from .distributions import DistributionSpec, sf

__all__ = [
    "TailClassification",
    "tail_index",
    "rigby_classify",
    "compare_right_tails",
    "survival_ratio",
    "A_HEAVIER",
    "B_HEAVIER",
    "TIE",
]

A_HEAVIER = "a_heavier"
B_HEAVIER = "b_heavier"
TIE = "tie_unresolved"

_TYPE_RANK = {"I": 3, "II": 2, "III": 1, None: 0}


@dataclass(frozen=True)
class TailClassification:
    """Right-tail summary of one distribution.

    Attributes
    ----------
    tail_index : float
        Regular-variation index xi (0 for non-heavy tails).
    rigby_type : {"I", "II", "III"} or None
        None for a bounded right tail (GEV with alpha < 0).
    k_values : dict
        The defining constants, e.g. ``{"k3": 1.0, "k4": 0.5}``.
    heavier_than_gumbel : {"heavier", "equal_first_order", "lighter"}
        First-order comparison with a Gumbel law of the same scale.
    second_order : {"heavier", "lighter", "equal"} or None
        Tabulated second-order verdict against the Gumbel when the first
        order ties.
    """

    family: str
    tail_index: float
    rigby_type: Optional[str]
    k_values: dict
    heavier_than_gumbel: str
    second_order: Optional[str] = None
    notes: tuple = field(default_factory=tuple)

    @property
    def verdict_vs_gumbel(self) -> str:
        if self.heavier_than_gumbel != "equal_first_order":
            return self.heavier_than_gumbel
        return self.second_order or "unresolved"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "tail_index": self.tail_index,
            "rigby_type": self.rigby_type,
            "k_values": dict(self.k_values),
            "verdict_vs_gumbel": self.verdict_vs_gumbel,
            "heavier_than_gumbel": self.heavier_than_gumbel,
            "second_order": self.second_order,
            "notes": list(self.notes),
        }


def tail_index(spec: DistributionSpec) -> float:
    """Tail index xi: the GEV shape when positive, 0 for every other case."""
    if spec.family is Family.GEV and spec.params[2] > 0.0:
        return spec.params[2]
    return 0.0


def _first_order(ratio: float) -> str:
    # ratio = k4 / (1 / sigma); below one means a slower exponential decay
    if math.isclose(ratio, 1.0, rel_tol=1e-12):
        return "equal_first_order"
    return "heavier" if ratio < 1.0 else "lighter"


def rigby_classify(spec: DistributionSpec) -> TailClassification:
    """Rigby type, k constants and the comparison with the Gumbel tail."""
    fam, p = spec.family, spec.params
    sigma = p[1]
    name = fam.value
    if fam is Family.GEV and p[2] > 0.0:
        a = p[2]
        return TailClassification(name, a, "I", {"k1": 1.0, "k2": 1.0 + 1.0 / a}, "heavier")
    if fam is Family.GEV and p[2] < 0.0:
        return TailClassification(name, 0.0, None, {}, "lighter", None, ("bounded support",))
    if fam in (Family.EV, Family.GEV):
        return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": 1.0 / sigma}, "equal_first_order", "equal")
    if fam in (Family.EGu, Family.EGa, Family.GGu, Family.GLIV):
        a = p[2]
        first = _first_order(a)
        second = None
        if first == "equal_first_order" and fam is not Family.GLIV:
            second = "equal"  # alpha = 1 is the Gumbel law itself
        return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": a / sigma}, first, second)
    if fam is Family.TEV:
        a = p[2]
        second = "heavier" if a < 0.0 else "lighter" if a > 0.0 else "equal"
        return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": 1.0 / sigma}, "equal_first_order", second)
    if fam is Family.GTIEV3:
        return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": 1.0 / sigma}, "equal_first_order", "lighter")
    if fam is Family.TCEV:
        sigma1 = p[3]
        k4 = 1.0 / max(sigma, sigma1)
        if sigma1 > sigma:
            return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": k4}, "heavier", "heavier")
        if sigma1 < sigma:
            return TailClassification(name, 0.0, "II", {"k3": 1.0, "k4": k4}, "equal_first_order", "heavier")
        return TailClassification(
            name, 0.0, "II", {"k3": 1.0, "k4": k4}, "equal_first_order", None, ("equal component scales: second order undetermined",)
        )
    raise ValueError(f"unsupported family {fam!r}")


def _key(tc: TailClassification):
    """Sort key where larger means heavier, up to second-order ties."""
    if tc.rigby_type == "I":
        return (_TYPE_RANK["I"], -tc.k_values["k1"], -tc.k_values["k2"])
    if tc.rigby_type == "II":
        return (_TYPE_RANK["II"], -tc.k_values["k3"], -tc.k_values["k4"])
    if tc.rigby_type == "III":
        return (_TYPE_RANK["III"], -tc.k_values["k5"], -tc.k_values["k6"])
    return (0,)


def _second_rank(tc: TailClassification):
    return {"heavier": 1, "equal": 0, "lighter": -1}.get(tc.second_order)


def _as_classification(obj) -> TailClassification:
    if isinstance(obj, TailClassification):
        return obj
    if isinstance(obj, DistributionSpec):
        return rigby_classify(obj)
    raise TypeError(f"expected DistributionSpec or TailClassification, got {type(obj).__name__}")


def compare_right_tails(a, b) -> str:
    """Which right tail is heavier.

    Accepts specs or ready-made classifications (the latter allow
    reference laws outside the nine families, e.g. a Cauchy-like type I
    tail with ``k1 = 1, k2 = 2``).  Returns ``"a_heavier"``,
    ``"b_heavier"`` or ``"tie_unresolved"``.
    """
    ta, tb = _as_classification(a), _as_classification(b)
    ka, kb = _key(ta), _key(tb)
    if ka != kb:
        if ta.rigby_type is None and tb.rigby_type is None:
            return TIE
        return A_HEAVIER if ka > kb else B_HEAVIER
    if ta.rigby_type is None:
        return TIE
    ra, rb = _second_rank(ta), _second_rank(tb)
    if ra is None or rb is None or ra == rb:
        return TIE
    return A_HEAVIER if ra > rb else B_HEAVIER


def survival_ratio(spec: DistributionSpec, t: float, x: float) -> float:
    """``S(t x) / S(t)`` with S the survival function.

    For a regularly varying tail with index xi this tends to
    ``x ** (-1 / xi)`` as t grows.
    """
    return float(sf(spec, t * x)) / float(sf(spec, t))
