"""Homotopies between maps of nerves, checked at the level of operads."""
from __future__ import annotations

from typing import Callable, Hashable, Mapping

from ..operads import FiniteOperad, Op

__all__ = ["HomotopyError", "check_homotopy", "homotopy_failures"]


class HomotopyError(ValueError):
    pass


def homotopy_failures(source: FiniteOperad, target: FiniteOperad,
                      F: Callable[[Op], Op], G: Callable[[Op], Op],
                      F_obj: Callable[[Hashable], Hashable], G_obj: Callable[[Hashable], Hashable],
                      components: Mapping[Hashable, Op] | Callable[[Hashable], Op],
                      max_arity: int | None = None, limit: int = 5) -> list[str]:
    """Endpoint and interchange failures of a candidate homotopy ``F => G``.

    Each component ``h_c`` must be a unary operation ``F(c) -> G(c)``; for
    every operation ``p: c_1..c_n -> d`` of the source,
    ``h_d o F(p) == G(p) o (h_{c_1}, ..., h_{c_n})``.
    """
    comp = components if callable(components) else components.__getitem__
    problems = []
    for c in source.objects:
        try:
            h = comp(c)
        except KeyError:
            raise HomotopyError(f"missing component at {c!r}") from None
        if target.profile(h) != ((F_obj(c),), G_obj(c)):
            problems.append(f"component at {c!r} does not go from F to G")
    if problems:
        return problems[:limit]
    for p in source.iter_operations(max_arity):
        ins, out = source.profile(p)
        lhs = target.compose(comp(out), 0, F(p))
        rhs = target.full_composite(G(p), [comp(c) for c in ins])
        if lhs != rhs:
            problems.append(f"interchange fails at {p!r}")
            if len(problems) >= limit:
                break
    return problems


def check_homotopy(source: FiniteOperad, target: FiniteOperad,
                   F: Callable[[Op], Op], G: Callable[[Op], Op],
                   F_obj: Callable[[Hashable], Hashable], G_obj: Callable[[Hashable], Hashable],
                   components: Mapping[Hashable, Op] | Callable[[Hashable], Op],
                   max_arity: int | None = None) -> bool:
    return not homotopy_failures(source, target, F, G, F_obj, G_obj, components, max_arity)
