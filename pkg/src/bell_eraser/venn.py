"""Entropy calculus over labelled subsystems and tripartite entropic Venn diagrams.

Everything is assembled from marginal von Neumann entropies, one
eigendecomposition per marginal. Conditional and ternary entries are
returned as computed; negative values are physical and never clamped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .tensor import SpaceError, State, partial_trace, von_neumann_entropy

Labels = Union[str, Iterable[str]]

IDENTITY_TOL = 1e-9
FAILURE_TOL = 1e-6


def _labels(x: Labels) -> frozenset[str]:
    if isinstance(x, str):
        return frozenset([x])
    return frozenset(x)


def _disjoint(*groups: frozenset[str]) -> None:
    seen: set[str] = set()
    for g in groups:
        if not g:
            raise SpaceError("empty label set")
        clash = seen & g
        if clash:
            raise SpaceError(f"label sets overlap on {sorted(clash)}")
        seen |= g


def joint_entropy(rho: State, subset: Labels) -> float:
    subset = _labels(subset)
    if not subset:
        raise SpaceError("joint_entropy needs a nonempty label set")
    for lab in subset:
        rho.space.index(lab)
    if subset == frozenset(rho.space.labels):
        return von_neumann_entropy(rho)
    return von_neumann_entropy(partial_trace(rho, subset))


def mutual_entropy(rho: State, a: Labels, b: Labels) -> float:
    """S(A:B) = S(A) + S(B) - S(AB)."""
    a, b = _labels(a), _labels(b)
    _disjoint(a, b)
    return joint_entropy(rho, a) + joint_entropy(rho, b) - joint_entropy(rho, a | b)


def conditional_entropy(rho: State, a: Labels, c: Labels) -> float:
    """S(A|C) = S(AC) - S(C); may be negative for entangled states."""
    a, c = _labels(a), _labels(c)
    _disjoint(a, c)
    return joint_entropy(rho, a | c) - joint_entropy(rho, c)


def conditional_mutual(rho: State, a: Labels, b: Labels, c: Labels) -> float:
    """S(A:B|C) = S(AC) + S(BC) - S(C) - S(ABC)."""
    a, b, c = _labels(a), _labels(b), _labels(c)
    _disjoint(a, b, c)
    return (joint_entropy(rho, a | c) + joint_entropy(rho, b | c)
            - joint_entropy(rho, c) - joint_entropy(rho, a | b | c))


def ternary_mutual(rho: State, a: Labels, b: Labels, c: Labels) -> float:
    """Centre of the Venn diagram, by inclusion-exclusion over S(A), S(B), S(C)."""
    a, b, c = _labels(a), _labels(b), _labels(c)
    _disjoint(a, b, c)
    s = lambda x: joint_entropy(rho, x)  # noqa: E731
    return (s(a) + s(b) + s(c)
            - s(a | b) - s(a | c) - s(b | c)
            + s(a | b | c))


@dataclass(frozen=True)
class VennDiagram3:
    """Seven entries (bits) of the entropic Venn diagram of three subsystems.

    ``c_*`` are the conditional entropies of one variable given the other
    two, ``m_xy`` the pairwise mutual entropies conditioned on the third,
    and ``center`` the ternary mutual entropy.
    """

    labels: tuple[str, str, str]
    c_a: float
    c_b: float
    c_c: float
    m_ab: float
    m_ac: float
    m_bc: float
    center: float

    def marginal(self, which: int) -> float:
        """Sum of the entries inside one circle, which recomposes S(X)."""
        return [
            self.c_a + self.m_ab + self.m_ac + self.center,
            self.c_b + self.m_ab + self.m_bc + self.center,
            self.c_c + self.m_ac + self.m_bc + self.center,
        ][which]

    @property
    def total(self) -> float:
        return (self.c_a + self.c_b + self.c_c
                + self.m_ab + self.m_ac + self.m_bc + self.center)

    def entries(self) -> dict[str, float]:
        a, b, c = self.labels
        return {
            f"S({a}|{b} {c})": self.c_a,
            f"S({b}|{a} {c})": self.c_b,
            f"S({c}|{a} {b})": self.c_c,
            f"S({a}:{b}|{c})": self.m_ab,
            f"S({a}:{c}|{b})": self.m_ac,
            f"S({b}:{c}|{a})": self.m_bc,
            f"S({a}:{b}:{c})": self.center,
        }

    def to_text(self) -> str:
        """Flat ``key = value`` form, one entry per line."""
        lines = [f"labels = {' '.join(self.labels)}"]
        lines += [f"{k} = {v!r}" for k, v in self.entries().items()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VennDiagram3":
        kv = {}
        for line in text.splitlines():
            if line.strip():
                k, _, v = line.partition("=")
                kv[k.strip()] = v.strip()
        a, b, c = kv.pop("labels").split()
        probe = cls((a, b, c), *([0.0] * 7))
        values = [float(kv[k]) for k in probe.entries()]
        return cls((a, b, c), *values)


def venn3(rho: State, a: str, b: str, c: str) -> VennDiagram3:
    """Venn diagram of subsystems ``a``, ``b``, ``c``.

    Any other subsystems of ``rho`` are traced out first.
    """
    _disjoint(_labels(a), _labels(b), _labels(c))
    keep = {a, b, c}
    if set(rho.space.labels) != keep:
        rho = partial_trace(rho, keep)

    s_a, s_b, s_c = (joint_entropy(rho, x) for x in (a, b, c))
    s_ab = joint_entropy(rho, {a, b})
    s_ac = joint_entropy(rho, {a, c})
    s_bc = joint_entropy(rho, {b, c})
    s_abc = joint_entropy(rho, keep)

    return VennDiagram3(
        labels=(a, b, c),
        c_a=s_abc - s_bc,
        c_b=s_abc - s_ac,
        c_c=s_abc - s_ab,
        m_ab=s_ac + s_bc - s_c - s_abc,
        m_ac=s_ab + s_bc - s_b - s_abc,
        m_bc=s_ab + s_ac - s_a - s_abc,
        center=s_a + s_b + s_c - s_ab - s_ac - s_bc + s_abc,
    )


def classify_residual(residual: float) -> str:
    """'pass' below 1e-9, 'warn' up to 1e-6, 'fail' beyond."""
    r = abs(residual)
    if r <= IDENTITY_TOL:
        return "pass"
    if r <= FAILURE_TOL:
        return "warn"
    return "fail"

