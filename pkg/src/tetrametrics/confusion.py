"""The atomic evaluation point: a 2x2 confusion matrix of integer counts."""

from dataclasses import dataclass
from typing import Optional

__all__ = ["ConfusionMatrix"]


@dataclass(frozen=True, order=True)
class ConfusionMatrix:
    """Four non-negative counts (tp, fn_, fp, tn) with total >= 1.

    The trailing underscore on ``fn_`` avoids shadowing common ``fn``
    variable names; exports and wire formats still spell it ``fn``.
    """

    tp: int
    fn_: int
    fp: int
    tn: int

    def __post_init__(self):
        for name in ("tp", "fn_", "fp", "tn"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v:
                raise ValueError(f"{name} must be an integer, got {v!r}")
            if v < 0:
                raise ValueError(f"{name} must be non-negative, got {v}")
            object.__setattr__(self, name, int(v))
        if self.total() < 1:
            raise ValueError("confusion matrix must contain at least one count")

    def total(self) -> int:
        return self.tp + self.fn_ + self.fp + self.tn

    def as_tuple(self) -> tuple:
        return (self.tp, self.fn_, self.fp, self.tn)

    # Derived rates; None where the defining ratio is 0/0.
    @property
    def tpr(self) -> Optional[float]:
        p = self.tp + self.fn_
        return self.tp / p if p else None

    @property
    def tnr(self) -> Optional[float]:
        n = self.tn + self.fp
        return self.tn / n if n else None

    @property
    def ppv(self) -> Optional[float]:
        pp = self.tp + self.fp
        return self.tp / pp if pp else None

    @property
    def npv(self) -> Optional[float]:
        pn = self.tn + self.fn_
        return self.tn / pn if pn else None

    def class_swapped(self) -> "ConfusionMatrix":
        """Relabel positive and negative classes: (tp,fn,fp,tn) -> (tn,fp,fn,tp)."""
        return ConfusionMatrix(self.tn, self.fp, self.fn_, self.tp)

    def error_swapped(self) -> "ConfusionMatrix":
        """Exchange the two error types: (tp,fn,fp,tn) -> (tp,fp,fn,tn)."""
        return ConfusionMatrix(self.tp, self.fp, self.fn_, self.tn)

    def scaled(self, k: int) -> "ConfusionMatrix":
        """All counts multiplied by a positive integer k (rates unchanged)."""
        if k < 1:
            raise ValueError("scale factor must be >= 1")
        return ConfusionMatrix(self.tp * k, self.fn_ * k, self.fp * k, self.tn * k)
