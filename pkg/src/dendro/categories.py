"""Small finite categories given by explicit hom-sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Hashable
    target: Hashable


@dataclass
class FiniteCategory:
    """Objects, named arrows and a composition table.

    ``composition[(g, f)]`` is the name of ``g . f`` (first ``f``, then ``g``).
    Identities are added automatically as ``id_<object>``.
    """

    objects: tuple
    arrows: dict[str, Arrow] = field(default_factory=dict)
    composition: dict[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.objects = tuple(self.objects)
        for a in self.objects:
            ident = self.identity(a)
            if ident not in self.arrows:
                self.arrows[ident] = Arrow(ident, a, a)
        for name, arr in list(self.arrows.items()):
            self.composition.setdefault((self.identity(arr.target), name), name)
            self.composition.setdefault((name, self.identity(arr.source)), name)
        self.validate()

    @staticmethod
    def identity(obj: Hashable) -> str:
        return f"id_{obj}"

    def hom(self, a: Hashable, b: Hashable) -> tuple[str, ...]:
        return tuple(sorted(n for n, arr in self.arrows.items() if arr.source == a and arr.target == b))

    def compose(self, g: str, f: str) -> str:
        if self.arrows[f].target != self.arrows[g].source:
            raise ValueError(f"arrows {g} and {f} are not composable")
        return self.composition[(g, f)]

    def validate(self) -> None:
        for arr in self.arrows.values():
            if arr.source not in self.objects or arr.target not in self.objects:
                raise ValueError(f"arrow {arr.name} has an unknown endpoint")
        names = list(self.arrows)
        for g in names:
            for f in names:
                if self.arrows[f].target != self.arrows[g].source:
                    continue
                gf = self.composition.get((g, f))
                if gf is None:
                    raise ValueError(f"missing composite {g} . {f}")
                if (self.arrows[gf].source, self.arrows[gf].target) != (self.arrows[f].source, self.arrows[g].target):
                    raise ValueError(f"composite {g} . {f} has the wrong type")
        for h in names:
            for g in names:
                if self.arrows[g].target != self.arrows[h].source:
                    continue
                for f in names:
                    if self.arrows[f].target != self.arrows[g].source:
                        continue
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        raise ValueError(f"composition not associative at {h}, {g}, {f}")

    @classmethod
    def from_poset(cls, elements: Iterable[Hashable], leq: Mapping | None = None, *, chain: bool = False) -> "FiniteCategory":
        """The category of a finite poset; ``chain=True`` uses the given order as a total order."""
        elements = tuple(elements)
        if chain:
            rel = {(a, b) for i, a in enumerate(elements) for b in elements[i:]}
        else:
            rel = {(a, b) for a in elements for b in elements if a == b or (leq and (a, b) in leq)}
        arrows = {}
        for a, b in rel:
            if a != b:
                arrows[f"{a}<{b}"] = Arrow(f"{a}<{b}", a, b)
        cat_name = lambda a, b: cls.identity(a) if a == b else f"{a}<{b}"
        comp = {}
        for a, b in rel:
            for b2, c in rel:
                if b == b2:
                    comp[(cat_name(b, c), cat_name(a, b))] = cat_name(a, c)
        return cls(elements, arrows, comp)

    @classmethod
    def terminal(cls) -> "FiniteCategory":
        return cls(("*",))

    def to_json(self) -> dict:
        return {
            "objects": list(self.objects),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                       for a in self.arrows.values() if a.name != self.identity(a.source) or a.source != a.target],
            "composition": [{"second": g, "first": f, "result": r} for (g, f), r in sorted(self.composition.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteCategory":
        arrows = {a["name"]: Arrow(a["name"], a["source"], a["target"]) for a in data.get("arrows", [])}
        comp = {(c["second"], c["first"]): c["result"] for c in data.get("composition", [])}
        return cls(tuple(data["objects"]), arrows, comp)
