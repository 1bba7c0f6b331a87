"""Line-oriented text format for fibration data.

    VERSION 1
    SURFACE g=1 b=0
    CURVE a homology=1,0 sep=0
    CURVE b homology=0,1 sep=0
    WORD w = a b a b^-1
    FIBRATION base_genus=0 base_bdry=0 twist=0,0 lefschetz=w bundle=
    PRESENTATION gens=a,b relators=r1,r2
    PLAN disks=2 vanishing=homologically-consistent
    STEP band 1,2
    REPORT key=value

Blank lines and lines starting with '#' are ignored.  FIBRATION also takes
optional ``name=``, ``surjective=0|1`` and ``boundary_loops=`` (loops
separated by ';', letters ``index:exp`` separated by ',').  Every name must
be defined before it is used.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .exceptions import ParseError
from .fibration import BaseSurface, FibrationData
from .mcg import CONSISTENT, Presentation, SignedTwist
from .surfaces import CurveClass, FiberSurface
from .universal import HandlePlan3, PlanStep

FORMAT_VERSION = "1"

# diagnostic codes
E_VERSION = "E_VERSION"
E_SYNTAX = "E_SYNTAX"
E_VECTOR = "E_VECTOR"
E_UNKNOWN_CURVE = "E_UNKNOWN_CURVE"
E_UNKNOWN_WORD = "E_UNKNOWN_WORD"
E_DUPLICATE = "E_DUPLICATE"
E_NO_SURFACE = "E_NO_SURFACE"
E_INVALID = "E_INVALID"

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")


@dataclass(frozen=True)
class FibrationEntry:
    """A FIBRATION line, with words referenced by name."""

    base_genus: int
    base_bdry: int
    twist: tuple
    lefschetz: str
    bundle: tuple = ()
    name: str = ""
    surjective: bool = False
    boundary_loops: tuple = None


@dataclass(frozen=True)
class PresentationEntry:
    gens: tuple
    relators: tuple


@dataclass
class Document:
    version: str = FORMAT_VERSION
    surface: FiberSurface = None
    curves: dict = field(default_factory=dict)
    words: dict = field(default_factory=dict)
    fibrations: list = field(default_factory=list)
    presentation: PresentationEntry = None
    plan: HandlePlan3 = None
    report: list = field(default_factory=list)

    def fibration(self, index: int = 0) -> FibrationData:
        if not self.fibrations:
            raise IndexError("document has no FIBRATION")
        e = self.fibrations[index]
        return FibrationData(
            self.surface,
            BaseSurface(e.base_genus, e.base_bdry),
            self.words[e.lefschetz] if e.lefschetz else (),
            tuple(self.words[w] if w else () for w in e.bundle),
            twist=e.twist,
            surjective=e.surjective,
            curves=tuple(self.curves.values()),
            boundary_loops=e.boundary_loops,
        )

    def get_presentation(self) -> Presentation:
        if self.presentation is None:
            raise IndexError("document has no PRESENTATION")
        gens = tuple(SignedTwist(self.curves[n]) for n in self.presentation.gens)
        rels = tuple(self.words[n] for n in self.presentation.relators)
        return Presentation(self.surface, gens, rels, self.presentation.relators)


# ---------------------------------------------------------------------------
# parsing


def _int(s, lineno, what):
    try:
        return int(s)
    except ValueError:
        raise ParseError(E_SYNTAX, lineno, f"{what} must be an integer, got {s!r}") from None


def _vector(s, lineno):
    if s == "":
        return ()
    try:
        return tuple(int(v) for v in s.split(","))
    except ValueError:
        raise ParseError(E_VECTOR, lineno, f"malformed integer vector {s!r}") from None


def _fields(tokens, lineno, required, optional=()):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(E_SYNTAX, lineno, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k not in required and k not in optional:
            raise ParseError(E_SYNTAX, lineno, f"unknown field {k!r}")
        if k in out:
            raise ParseError(E_DUPLICATE, lineno, f"field {k!r} given twice")
        out[k] = v
    missing = [k for k in required if k not in out]
    if missing:
        raise ParseError(E_SYNTAX, lineno, f"missing fields {missing}")
    return out


def _name(s, lineno):
    if not _NAME.match(s):
        raise ParseError(E_SYNTAX, lineno, f"bad identifier {s!r}")
    return s


def _letter(tok, doc, lineno):
    name, sign = tok, 1
    if tok.endswith("^-1"):
        name, sign = tok[:-3], -1
    if name not in doc.curves:
        raise ParseError(E_UNKNOWN_CURVE, lineno, f"curve {name!r} is not defined")
    return SignedTwist(doc.curves[name], sign)


def _word_ref(name, doc, lineno):
    if name and name not in doc.words:
        raise ParseError(E_UNKNOWN_WORD, lineno, f"word {name!r} is not defined")
    return name


def _loops(s, lineno):
    if s == "":
        return ()
    out = []
    for part in s.split(";"):
        loop = []
        for tok in filter(None, part.split(",")):
            x, _, e = tok.partition(":")
            try:
                loop.append((int(x), int(e)))
            except ValueError:
                raise ParseError(E_VECTOR, lineno, f"malformed loop letter {tok!r}") from None
        out.append(tuple(loop))
    return tuple(out)


def parse(text: str) -> Document:
    doc = Document(version=None)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(" ")
        tokens = rest.split()
        if doc.version is None:
            if tag != "VERSION":
                raise ParseError(E_VERSION, lineno, "document must start with VERSION")
            if tokens != [FORMAT_VERSION]:
                raise ParseError(E_VERSION, lineno, f"unsupported version {rest!r}")
            doc.version = FORMAT_VERSION
            continue
        if tag == "VERSION":
            raise ParseError(E_DUPLICATE, lineno, "second VERSION line")
        if tag == "SURFACE":
            if doc.surface is not None:
                raise ParseError(E_DUPLICATE, lineno, "one SURFACE per document")
            kv = _fields(tokens, lineno, ("g", "b"))
            try:
                doc.surface = FiberSurface(_int(kv["g"], lineno, "g"), _int(kv["b"], lineno, "b"))
            except ValueError as exc:
                raise ParseError(E_INVALID, lineno, str(exc)) from None
            continue
        if doc.surface is None and tag != "REPORT":
            raise ParseError(E_NO_SURFACE, lineno, f"{tag} before SURFACE")
        if tag == "CURVE":
            if not tokens:
                raise ParseError(E_SYNTAX, lineno, "CURVE needs a name")
            name = _name(tokens[0], lineno)
            if name in doc.curves:
                raise ParseError(E_DUPLICATE, lineno, f"curve {name!r} defined twice")
            kv = _fields(tokens[1:], lineno, ("homology", "sep"))
            h = _vector(kv["homology"], lineno)
            if len(h) != doc.surface.homology_rank:
                raise ParseError(E_VECTOR, lineno, f"homology of length {len(h)}, surface needs {doc.surface.homology_rank}")
            if kv["sep"] not in ("0", "1"):
                raise ParseError(E_SYNTAX, lineno, "sep must be 0 or 1")
            try:
                doc.curves[name] = CurveClass(name, h, kv["sep"] == "1")
            except ValueError as exc:
                raise ParseError(E_INVALID, lineno, str(exc)) from None
        elif tag == "WORD":
            if len(tokens) < 2 or tokens[1] != "=":
                raise ParseError(E_SYNTAX, lineno, "expected WORD <name> = <letters>")
            name = _name(tokens[0], lineno)
            if name in doc.words:
                raise ParseError(E_DUPLICATE, lineno, f"word {name!r} defined twice")
            doc.words[name] = tuple(_letter(t, doc, lineno) for t in tokens[2:])
        elif tag == "FIBRATION":
            kv = _fields(tokens, lineno, ("base_genus", "base_bdry", "twist", "lefschetz", "bundle"),
                         ("name", "surjective", "boundary_loops"))
            bundle = tuple(kv["bundle"].split(",")) if kv["bundle"] else ()
            entry = FibrationEntry(
                _int(kv["base_genus"], lineno, "base_genus"),
                _int(kv["base_bdry"], lineno, "base_bdry"),
                _vector(kv["twist"], lineno),
                _word_ref(kv["lefschetz"], doc, lineno),
                tuple(_word_ref(w, doc, lineno) for w in bundle),
                kv.get("name", ""),
                kv.get("surjective", "0") == "1",
                _loops(kv["boundary_loops"], lineno) if "boundary_loops" in kv else None,
            )
            doc.fibrations.append(entry)
            try:
                doc.fibration(len(doc.fibrations) - 1)
            except ValueError as exc:
                raise ParseError(E_INVALID, lineno, str(exc)) from None
        elif tag == "PRESENTATION":
            if doc.presentation is not None:
                raise ParseError(E_DUPLICATE, lineno, "one PRESENTATION per document")
            kv = _fields(tokens, lineno, ("gens", "relators"))
            gens = tuple(filter(None, kv["gens"].split(",")))
            for g in gens:
                if g not in doc.curves:
                    raise ParseError(E_UNKNOWN_CURVE, lineno, f"curve {g!r} is not defined")
            rels = tuple(_word_ref(w, doc, lineno) for w in filter(None, kv["relators"].split(",")))
            doc.presentation = PresentationEntry(gens, rels)
        elif tag == "PLAN":
            if doc.plan is not None:
                raise ParseError(E_DUPLICATE, lineno, "one PLAN per document")
            kv = _fields(tokens, lineno, ("disks",), ("vanishing",))
            doc.plan = HandlePlan3(doc.surface, _int(kv["disks"], lineno, "disks"), (),
                                   kv.get("vanishing", CONSISTENT))
        elif tag == "STEP":
            if doc.plan is None:
                raise ParseError(E_SYNTAX, lineno, "STEP outside a PLAN")
            if len(tokens) != 2:
                raise ParseError(E_SYNTAX, lineno, "expected STEP <kind> <label>")
            try:
                step = PlanStep(tokens[0], tokens[1])
            except ValueError as exc:
                raise ParseError(E_SYNTAX, lineno, str(exc)) from None
            p = doc.plan
            doc.plan = HandlePlan3(p.fiber, p.disks, p.steps + (step,), p.vanishing)
        elif tag == "REPORT":
            if "=" not in rest:
                raise ParseError(E_SYNTAX, lineno, "expected REPORT key=value")
            k, v = rest.split("=", 1)
            doc.report.append((k.strip(), v.strip()))
        else:
            raise ParseError(E_SYNTAX, lineno, f"unknown tag {tag!r}")
    if doc.version is None:
        raise ParseError(E_VERSION, 0, "empty document")
    return doc


# ---------------------------------------------------------------------------
# printing


def _vec(v):
    return ",".join(str(x) for x in v)


def format_word(w) -> str:
    return " ".join(t.curve.name if t.sign == 1 else f"{t.curve.name}^-1" for t in w)


def to_text(doc: Document) -> str:
    out = [f"VERSION {doc.version}"]
    if doc.surface is not None:
        out.append(f"SURFACE g={doc.surface.genus} b={doc.surface.boundary_count}")
    for c in doc.curves.values():
        out.append(f"CURVE {c.name} homology={_vec(c.homology)} sep={int(c.separating)}")
    for name, w in doc.words.items():
        out.append(f"WORD {name} = {format_word(w)}".rstrip())
    for e in doc.fibrations:
        parts = []
        if e.name:
            parts.append(f"name={e.name}")
        parts += [f"base_genus={e.base_genus}", f"base_bdry={e.base_bdry}", f"twist={_vec(e.twist)}",
                  f"lefschetz={e.lefschetz}", f"bundle={','.join(e.bundle)}"]
        if e.surjective:
            parts.append("surjective=1")
        if e.boundary_loops is not None:
            loops = ";".join(",".join(f"{x}:{s}" for x, s in loop) for loop in e.boundary_loops)
            parts.append(f"boundary_loops={loops}")
        out.append("FIBRATION " + " ".join(parts))
    if doc.presentation is not None:
        out.append(f"PRESENTATION gens={','.join(doc.presentation.gens)} "
                   f"relators={','.join(doc.presentation.relators)}")
    if doc.plan is not None:
        out.append(f"PLAN disks={doc.plan.disks} vanishing={doc.plan.vanishing}")
        out += [f"STEP {s.kind} {s.label}" for s in doc.plan.steps]
    out += [f"REPORT {k}={v}" for k, v in doc.report]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# building documents from library objects


def _add_curves(doc: Document, curves):
    for c in curves:
        old = doc.curves.get(c.name)
        if old is not None and old != c:
            raise ValueError(f"two different curves named {c.name!r}")
        doc.curves[c.name] = c


def _add_word(doc: Document, name: str, w) -> str:
    _add_curves(doc, [t.curve for t in w])
    doc.words[name] = tuple(w)
    return name


def add_fibration(doc: Document, f: FibrationData, name: str = "") -> None:
    if doc.surface is None:
        doc.surface = f.fiber
    elif doc.surface != f.fiber:
        raise ValueError(f"document fiber {doc.surface} differs from {f.fiber}")
    k = len(doc.fibrations) + 1
    _add_curves(doc, f.known_curves())
    lef = _add_word(doc, f"L{k}", f.lefschetz)
    bundle = tuple(_add_word(doc, f"B{k}_{j + 1}", w) for j, w in enumerate(f.bundle))
    doc.fibrations.append(FibrationEntry(
        f.base.genus, f.base.boundary_count, f.twist, lef, bundle, name, f.surjective, f.boundary_loops))


def fibration_document(*fibrations: FibrationData) -> Document:
    doc = Document()
    for f in fibrations:
        add_fibration(doc, f)
    return doc


def presentation_document(p: Presentation) -> Document:
    doc = Document(surface=p.fiber)
    _add_curves(doc, [t.curve for t in p.generators])
    rels = tuple(_add_word(doc, name, r) for name, r in zip(p.relator_names, p.relators))
    doc.presentation = PresentationEntry(tuple(t.curve.name for t in p.generators), rels)
    return doc
