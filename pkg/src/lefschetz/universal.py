"""Universal Lefschetz fibration data built from a presentation of the mapping class group.

Dimension 2: one critical disk per generator in B^4 and one 2-handle per
relator, attached along the relator loop.  Over the torus the result is
fiber summed with torus bundles to kill the structure monodromy.

Dimension 3 is only planned symbolically: bands joining consecutive disks,
1-handles for marked generators, 2- and 3-handles for declared kernel
generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._linalg import hermite_basis_z2
from .exceptions import ValidationError
from .fibration import FibrationData, critical_counts, from_word, validate
from .meyer import fibration_signature
from .mcg import CONSISTENT, DECLARED, Presentation, validate_presentation
from .surfaces import TORUS

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"
VERIFIED = "verified-by-construction"


@dataclass(frozen=True)
class UniversalData2:
    presentation: Presentation
    critical_disks: int
    relator_loops: tuple
    framings: tuple
    torus_amendment: bool
    h2_rank: int

    @property
    def fiber(self):
        return self.presentation.fiber


def build_universal_dim2(p: Presentation) -> UniversalData2:
    if p.fiber.boundary_count not in (0, 1):
        raise ValidationError(f"universal data needs b in {{0, 1}}, got {p.fiber}")
    rep = validate_presentation(p)
    if not rep.ok:
        raise ValidationError("presentation fails validation: " + ", ".join(rep.lines()), rep)
    loops = tuple(p.relators)
    return UniversalData2(
        presentation=p,
        critical_disks=len(p.generators),
        relator_loops=loops,
        framings=(0,) * len(loops),
        torus_amendment=p.fiber == TORUS,
        h2_rank=len(loops),
    )


@dataclass
class ConditionReport:
    """Ordered (key, verdict, note) triples; a report passes unless some verdict is 'fail'."""

    conditions: list = field(default_factory=list)

    def add(self, key, verdict, note=""):
        self.conditions.append((key, verdict, note))

    @property
    def ok(self) -> bool:
        return all(v != FAIL for _, v, _ in self.conditions)

    def verdict(self, key) -> str:
        for k, v, _ in self.conditions:
            if k == key:
                return v
        raise KeyError(key)

    def lines(self) -> list[str]:
        out = [f"universal={'pass' if self.ok else 'fail'}"]
        for k, v, note in self.conditions:
            out.append(f"{k}={v}")
            if note:
                out.append(f"{k}.note={note}")
        return out


def _vanishing_condition(p: Presentation) -> tuple[str, str]:
    # for b in {0, 1} all nonseparating curves form a single class
    if any(t.curve.essential and not t.curve.separating for t in p.generators):
        return CONSISTENT, "a generator curve is nonseparating"
    return FAIL, "no nonseparating generator curve"


def _structure_condition(fiber, amended: bool) -> tuple[str, str]:
    if fiber != TORUS:
        return VACUOUS, "structure group Pi_1(F) is trivial"
    if amended:
        return VERIFIED, "fiber summed with torus bundles"
    return FAIL, "torus fiber without torus bundle amendment"


def universality_report_dim2(u: UniversalData2) -> ConditionReport:
    rep = ConditionReport()
    rep.add("cond1.bundle_monodromy_iso", VERIFIED, "quotient map of the given presentation")
    rep.add("cond2.lefschetz_monodromy_onto", DECLARED, "generators generate by presentation input")
    rep.add("cond2.structure_monodromy_onto", *_structure_condition(u.fiber, u.torus_amendment))
    rep.add("cond3.vanishing_cycle_class", *_vanishing_condition(u.presentation))
    return rep


def lambda_generator(u: UniversalData2, i: int) -> FibrationData:
    """Fibration over the sphere given by relator i (1-based)."""
    if not 1 <= i <= len(u.relator_loops):
        raise IndexError(f"relator index {i} outside 1..{len(u.relator_loops)}")
    f = from_word(u.fiber, u.relator_loops[i - 1])
    rep = validate(f)
    if rep.verdicts["closure"] != PASS:
        raise ValidationError(f"relator {i} is not symplectically trivial", rep)
    return f


@dataclass(frozen=True)
class ImageReport:
    rows: tuple   # (relator name, sigma, eta)
    lattice: tuple

    def lines(self) -> list[str]:
        out = [f"relator.{name}=sigma:{s},eta:{e}" for name, s, e in self.rows]
        out.append("lattice=" + ";".join(f"{a},{b}" for a, b in self.lattice))
        return out


def cobordism_image_report(u: UniversalData2) -> ImageReport:
    rows = []
    for i, name in enumerate(u.presentation.relator_names, start=1):
        f = lambda_generator(u, i)
        plus, minus = critical_counts(f)
        rows.append((name, fibration_signature(f), plus - minus))
    return ImageReport(tuple(rows), hermite_basis_z2([(s, e) for _, s, e in rows]))


# ---------------------------------------------------------------------------
# dimension 3

STEP_KINDS = ("band", "one_handle", "two_handle", "fibersum_torus_bundle", "three_handle")


@dataclass(frozen=True)
class PlanStep:
    kind: str
    label: str

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown plan step {self.kind!r}")


@dataclass(frozen=True)
class HandlePlan3:
    fiber: object
    disks: int
    steps: tuple
    vanishing: str = CONSISTENT  # verdict of condition (3), fixed by the presentation

    def count(self, kind: str) -> int:
        return sum(1 for s in self.steps if s.kind == kind)

    def without(self, index: int) -> "HandlePlan3":
        return HandlePlan3(self.fiber, self.disks, self.steps[:index] + self.steps[index + 1:], self.vanishing)

    def lines(self) -> list[str]:
        return [f"disks={self.disks}", f"vanishing={self.vanishing}"] + [f"step.{k + 1}={s.kind}:{s.label}" for k, s in enumerate(self.steps)]


def build_universal_dim3_plan(p: Presentation, marked_generators: Sequence[str],
                              kernel_words: Sequence[str] = (), spheres: Sequence[str] = ()) -> HandlePlan3:
    """Ordered handle plan: bands, 1-handles, 2-handles, torus fiber sums, 3-handles.

    ``kernel_words`` label declared generators of the kernel killed by
    2-handles and ``spheres`` those killed by 3-handles.
    """
    marked_generators = list(marked_generators)
    if not marked_generators:
        raise ValueError("the marked mapping class group needs at least one declared generator")
    rep = validate_presentation(p)
    if not rep.ok:
        raise ValidationError("presentation fails validation", rep)
    k = len(p.generators)
    steps = [PlanStep("band", f"{i},{i + 1}") for i in range(1, k)]
    steps += [PlanStep("one_handle", str(m)) for m in marked_generators]
    steps += [PlanStep("two_handle", str(w)) for w in kernel_words]
    if p.fiber == TORUS:
        steps += [PlanStep("fibersum_torus_bundle", "a"), PlanStep("fibersum_torus_bundle", "b")]
    steps += [PlanStep("three_handle", str(s)) for s in spheres]
    return HandlePlan3(p.fiber, k, tuple(steps), _vanishing_condition(p)[0])


def _connected(disks: int, bands: list[tuple[int, int]]) -> bool:
    parent = list(range(disks + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in bands:
        if 1 <= i <= disks and 1 <= j <= disks:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(1, disks + 1)}) <= 1


def universality_report_dim3(plan: HandlePlan3) -> ConditionReport:
    rep = ConditionReport()
    rep.add("cond1.bundle_monodromy_iso", VERIFIED, "quotient map of the given presentation")
    rep.add("cond2.lefschetz_monodromy_onto", DECLARED, "generators generate by presentation input")
    if plan.count("one_handle"):
        rep.add("cond2.singular_monodromy_onto", DECLARED, "marked generators declared")
    else:
        rep.add("cond2.singular_monodromy_onto", FAIL, "no 1-handles: marked generators missing")
    rep.add("cond2.structure_monodromy_onto",
            *_structure_condition(plan.fiber, plan.count("fibersum_torus_bundle") == 2))
    rep.add("cond3.vanishing_cycle_class", plan.vanishing)
    bands = []
    first_handle = next((k for k, s in enumerate(plan.steps) if s.kind == "one_handle"), len(plan.steps))
    late = False
    for k, s in enumerate(plan.steps):
        if s.kind == "band":
            i, j = (int(v) for v in s.label.split(","))
            bands.append((i, j))
            late = late or k > first_handle
    if not _connected(plan.disks, bands):
        rep.add("cond4.critical_image_connected", FAIL, "bands do not join all critical disks")
    elif late:
        rep.add("cond4.critical_image_connected", FAIL, "a band follows a 1-handle")
    else:
        rep.add("cond4.critical_image_connected", PASS)
    return rep
