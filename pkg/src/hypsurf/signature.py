"""Topological calculus on surface descriptions.

Finite-type surfaces are recorded as (g, c, b, a) = handles, crosscaps,
compact boundary circles, annular ends; two noncompact-boundary surfaces
(the half plane and the doubly infinite strip) and the infinite-type
cases are separate variants.  On top of this: Euler characteristic,
the crosscap canonical form, doubling along the boundary, and the
standard/nonstandard classifier with its 13-surface catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from hypsurf.errors import (
    InvalidInput,
    NoBoundary,
    NonorientableDoubleUnsupported,
    UnderdeterminedChi,
)

NEG_INF = float("-inf")


@dataclass(frozen=True)
class Signature:
    """Finite-type signature; all counts are nonnegative integers."""

    g: int
    c: int
    b: int
    a: int

    def __post_init__(self):
        for name in ("g", "c", "b", "a"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise InvalidInput(f"{name} must be a nonnegative integer, got {v!r}")

    @property
    def orientable(self) -> bool:
        return self.c == 0

    def chi(self) -> int:
        return 2 - 2 * self.g - self.c - self.b - self.a


@dataclass(frozen=True)
class CanonicalSignature(Signature):
    """Signature in crosscap normal form: a positive crosscap count
    absorbs all handles (one handle plus one crosscap = three crosscaps)."""

    def __post_init__(self):
        super().__post_init__()
        if self.g > 0 and self.c > 0:
            raise InvalidInput("canonical form forbids g > 0 with c > 0")


def canonicalize(s: Signature) -> CanonicalSignature:
    """Trade handles for crosscaps when any crosscap is present; chi is
    unchanged and the map is idempotent."""
    if s.c > 0:
        return CanonicalSignature(0, s.c + 2 * s.g, s.b, s.a)
    return CanonicalSignature(s.g, 0, s.b, s.a)


@dataclass(frozen=True)
class FiniteType:
    signature: Signature

    @property
    def kind(self) -> str:
        return "finite"


@dataclass(frozen=True)
class HalfPlaneSurface:
    """The half plane R x [0, oo): one noncompact boundary line."""

    @property
    def kind(self) -> str:
        return "half_plane"


@dataclass(frozen=True)
class Strip:
    """The doubly infinite strip [0, 1] x R: two noncompact boundary lines."""

    @property
    def kind(self) -> str:
        return "strip"


@dataclass(frozen=True)
class InfiniteType:
    """Infinitely many boundary components and/or infinite first betti
    number; at least one flag must be set."""

    infinite_boundary: bool = False
    infinite_chi: bool = False

    def __post_init__(self):
        if not (self.infinite_boundary or self.infinite_chi):
            raise InvalidInput("InfiniteType needs at least one flag set")

    @property
    def kind(self) -> str:
        return "infinite"


SurfaceDescription = Union[FiniteType, HalfPlaneSurface, Strip, InfiniteType]


def description_to_json(d: SurfaceDescription) -> dict:
    if isinstance(d, FiniteType):
        s = d.signature
        return {"kind": "finite", "g": s.g, "c": s.c, "b": s.b, "a": s.a}
    if isinstance(d, HalfPlaneSurface):
        return {"kind": "half_plane"}
    if isinstance(d, Strip):
        return {"kind": "strip"}
    if isinstance(d, InfiniteType):
        return {
            "kind": "infinite",
            "inf_boundary": d.infinite_boundary,
            "inf_chi": d.infinite_chi,
        }
    raise InvalidInput(f"not a surface description: {d!r}")


def description_from_json(obj: dict) -> SurfaceDescription:
    try:
        kind = obj["kind"]
    except (TypeError, KeyError):
        raise InvalidInput("surface description JSON needs a 'kind' field")
    if kind == "finite":
        try:
            sig = Signature(int(obj["g"]), int(obj["c"]), int(obj["b"]), int(obj["a"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(f"bad finite-type description: {e}")
        return FiniteType(sig)
    if kind == "half_plane":
        return HalfPlaneSurface()
    if kind == "strip":
        return Strip()
    if kind == "infinite":
        return InfiniteType(bool(obj.get("inf_boundary", False)), bool(obj.get("inf_chi", False)))
    raise InvalidInput(f"unknown surface kind {kind!r}")


def euler_characteristic(d: SurfaceDescription):
    """chi as an integer, or -inf for infinite first betti number.

    The half plane and the strip are contractible, hence chi = 1.  An
    infinite-type description with only the boundary flag set does not
    determine chi (infinitely many noncompact boundary lines can coexist
    with any finite betti number) and is rejected.
    """
    if isinstance(d, FiniteType):
        return d.signature.chi()
    if isinstance(d, (HalfPlaneSurface, Strip)):
        return 1
    if isinstance(d, InfiniteType):
        if d.infinite_chi:
            return NEG_INF
        raise UnderdeterminedChi(
            "infinitely many boundary components alone do not determine chi"
        )
    raise InvalidInput(f"not a surface description: {d!r}")


@dataclass(frozen=True)
class DoublingReport:
    """Both readings of the doubling formula next to the direct count.

    r is the number of noncompact boundary lines.  The implemented
    formula is chi(2L) = 2 chi(L) - r; ``chi_plus_r`` records the other
    sign for comparison, and ``chi_direct`` is chi of the doubled
    description when the double is representable.
    """

    doubled: Optional[SurfaceDescription]
    r: int
    chi_minus_r: int
    chi_plus_r: int
    chi_direct: Optional[int]


def double(d: SurfaceDescription) -> SurfaceDescription:
    """Double along the boundary.

    An orientable (g, 0, b, a) with b > 0 doubles to the closed
    orientable surface of genus 2g + b - 1 with 2a annular ends; the half
    plane doubles to the open disk and the strip to the open annulus.
    Nonorientable signatures are not doubled here (the error still
    carries chi of the double via the doubling formula).
    """
    if isinstance(d, HalfPlaneSurface):
        return FiniteType(Signature(0, 0, 0, 1))
    if isinstance(d, Strip):
        return FiniteType(Signature(0, 0, 0, 2))
    if isinstance(d, FiniteType):
        s = d.signature
        if s.b == 0:
            raise NoBoundary("doubling needs nonempty boundary")
        if s.c > 0:
            raise NonorientableDoubleUnsupported(
                "doubling of nonorientable signatures is not modeled",
                chi_double=2 * s.chi(),
            )
        doubled = Signature(2 * s.g + s.b - 1, 0, 0, 2 * s.a)
        assert doubled.chi() == 2 * s.chi()
        return FiniteType(doubled)
    if isinstance(d, InfiniteType):
        raise InvalidInput("doubling of infinite-type descriptions is not modeled")
    raise InvalidInput(f"not a surface description: {d!r}")


def doubling_report(d: SurfaceDescription) -> DoublingReport:
    """Doubling with the sign cross-check spelled out."""
    chi = euler_characteristic(d)
    if chi == NEG_INF:
        raise InvalidInput("doubling report needs finite chi")
    if isinstance(d, HalfPlaneSurface):
        r = 1
    elif isinstance(d, Strip):
        r = 2
    else:
        r = 0
    try:
        doubled = double(d)
        chi_direct = euler_characteristic(doubled)
    except NonorientableDoubleUnsupported:
        doubled = None
        chi_direct = None
    return DoublingReport(doubled, r, 2 * chi - r, 2 * chi + r, chi_direct)


class Reason(Enum):
    NEGATIVE_CHI = "negative_chi"
    IN_THIRTEEN_LIST = "in_thirteen_list"
    INFINITE_TYPE_RULE = "infinite_type_rule"


@dataclass(frozen=True)
class StandardnessVerdict:
    standard: bool
    reason: Reason
    chi: Optional[float]  # int, -inf, or None when underdetermined
    name: Optional[str] = None

    def to_json(self) -> dict:
        if self.chi is None:
            chi = None
        elif self.chi == NEG_INF:
            chi = "-inf"
        else:
            chi = int(self.chi)
        out = {"standard": self.standard, "reason": self.reason.value, "chi": chi}
        if self.name is not None:
            out["name"] = self.name
        return out


# the 11 compact-boundary entries with chi >= 0, in canonical form
_COMPACT_CATALOG: dict[tuple[int, int, int, int], str] = {
    (0, 0, 0, 1): "open disk",
    (0, 0, 1, 0): "closed disk",
    (0, 0, 0, 2): "open annulus",
    (0, 0, 1, 1): "half open annulus",
    (0, 0, 2, 0): "closed annulus",
    (0, 1, 0, 1): "open Möbius band",
    (0, 1, 1, 0): "closed Möbius band",
    (0, 0, 0, 0): "sphere",
    (0, 1, 0, 0): "projective plane",
    (1, 0, 0, 0): "torus",
    (0, 2, 0, 0): "Klein bottle",
}

HALF_PLANE_NAME = "half plane"
STRIP_NAME = "doubly infinite strip"


def is_standard(d: SurfaceDescription) -> StandardnessVerdict:
    """Does the surface admit a complete hyperbolic metric with geodesic
    boundary and no isometrically embedded half planes?

    Negative chi suffices; infinitely many boundary components or
    infinite chi also suffice; everything else is one of the 13 catalog
    surfaces.  Total on all descriptions.
    """
    if isinstance(d, InfiniteType):
        try:
            chi = euler_characteristic(d)
        except UnderdeterminedChi:
            chi = None
        return StandardnessVerdict(True, Reason.INFINITE_TYPE_RULE, chi)
    if isinstance(d, HalfPlaneSurface):
        return StandardnessVerdict(False, Reason.IN_THIRTEEN_LIST, 1, HALF_PLANE_NAME)
    if isinstance(d, Strip):
        return StandardnessVerdict(False, Reason.IN_THIRTEEN_LIST, 1, STRIP_NAME)
    if isinstance(d, FiniteType):
        chi = d.signature.chi()
        if chi < 0:
            return StandardnessVerdict(True, Reason.NEGATIVE_CHI, chi)
        canon = canonicalize(d.signature)
        key = (canon.g, canon.c, canon.b, canon.a)
        name = _COMPACT_CATALOG.get(key)
        if name is None:  # unreachable: chi >= 0 forces 2g + c + b + a <= 2
            raise AssertionError(f"no catalog entry for {key} with chi = {chi}")
        return StandardnessVerdict(False, Reason.IN_THIRTEEN_LIST, chi, name)
    raise InvalidInput(f"not a surface description: {d!r}")


def thirteen_list() -> list[tuple[str, SurfaceDescription]]:
    """The 13 surfaces with no standard metric, with their fixed names."""
    fin = {name: key for key, name in _COMPACT_CATALOG.items()}

    def ft(name: str) -> tuple[str, SurfaceDescription]:
        g, c, b, a = fin[name]
        return name, FiniteType(Signature(g, c, b, a))

    return [
        ft("open disk"),
        ft("closed disk"),
        ft("open annulus"),
        ft("half open annulus"),
        ft("closed annulus"),
        ft("open Möbius band"),
        ft("closed Möbius band"),
        (HALF_PLANE_NAME, HalfPlaneSurface()),
        (STRIP_NAME, Strip()),
        ft("sphere"),
        ft("projective plane"),
        ft("torus"),
        ft("Klein bottle"),
    ]


def all_finite_descriptions(max_complexity: int) -> list[FiniteType]:
    """All finite-type descriptions with 2g + c + b + a <= max_complexity,
    in lexicographic order; handy for exhaustive classifier scans."""
    out = []
    for g in range(max_complexity // 2 + 1):
        for c in range(max_complexity - 2 * g + 1):
            for b in range(max_complexity - 2 * g - c + 1):
                for a in range(max_complexity - 2 * g - c - b + 1):
                    out.append(FiniteType(Signature(g, c, b, a)))
    return out
