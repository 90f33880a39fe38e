"""Built-in named instances used by the tests and the CLI.

The registry reproduces the concrete objects the library is exercised
on: the Klein four group with its order-two subgroup, the two- and
three-dimensional modules v and v', the induced module, the split and
non-split sequences over C2 and C3, and the standard chain
k -> v -> v'.  Names are stable strings and part of the CLI contract.

Basis conventions are pinned for reproducibility: v has basis
(top, bottom) with g acting by [[1,0],[1,1]] and h trivially; v' has
basis (a, c, b) = (top-left, top-right, bottom) so that 1 + h kills a
and b while 1 + g kills c and b.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .ff import FpMatrix
from .groups import cyclic, direct_product, subgroup_closure
from .reps import (
    Module,
    Morphism,
    ShortExactSequence,
    direct_sum,
    induce,
    module_from_generators,
    regular_module,
    trivial_module,
)
from .triangles import Chain


@dataclass(frozen=True)
class NamedInstance:
    name: str
    kind: str  # group | subgroup | module | ses | chain
    payload: Any


@lru_cache(maxsize=None)
def _build(name: str) -> Any:
    if name == "c2":
        return cyclic(2)
    if name == "c3":
        return cyclic(3)
    if name == "klein4":
        return direct_product(cyclic(2), cyclic(2)).rename(["e", "h", "g", "gh"])
    if name == "klein4.H":
        return subgroup_closure(_build("klein4"), [1])

    if name == "c2.k":
        return trivial_module(_build("c2"), 2)
    if name == "c2.regular":
        return regular_module(_build("c2"), 2)
    if name == "c3.k":
        return trivial_module(_build("c3"), 3)
    if name == "c3.jordan":
        m = FpMatrix(3, [[1, 0], [1, 1]])
        return module_from_generators(_build("c3"), 3, 2, {1: m})
    if name == "klein4.k":
        return trivial_module(_build("klein4"), 2)
    if name == "klein4.regular":
        return regular_module(_build("klein4"), 2)
    if name == "klein4.v":
        g = FpMatrix(2, [[1, 0], [1, 1]])
        h = FpMatrix.identity(2, 2)
        return module_from_generators(_build("klein4"), 2, 2, {2: g, 1: h})
    if name == "klein4.v_prime":
        g = FpMatrix(2, [[1, 0, 0], [0, 1, 0], [1, 0, 1]])
        h = FpMatrix(2, [[1, 0, 0], [0, 1, 0], [0, 1, 1]])
        return module_from_generators(_build("klein4"), 2, 3, {2: g, 1: h})
    if name == "klein4.w_ind":
        sub = _build("klein4.H")
        return induce(_build("klein4"), sub, trivial_module(sub.as_group(), 2))

    if name == "c2.nonsplit_ses":
        k = _build("c2.k")
        reg = _build("c2.regular")
        inj = Morphism(k, reg, FpMatrix(2, [[1], [1]]))  # socle e + g
        surj = Morphism(reg, k, FpMatrix(2, [[1, 1]]))  # augmentation
        return ShortExactSequence(inj, surj)
    if name == "c2.split_ses":
        k = _build("c2.k")
        kk = direct_sum(k, k)
        inj = Morphism(k, kk, FpMatrix(2, [[1], [0]]))
        surj = Morphism(kk, k, FpMatrix(2, [[0, 1]]))
        return ShortExactSequence(inj, surj)
    if name == "c3.jordan_ses":
        k = _build("c3.k")
        jordan = _build("c3.jordan")
        inj = Morphism(k, jordan, FpMatrix(3, [[0], [1]]))  # socle
        surj = Morphism(jordan, k, FpMatrix(3, [[1, 0]]))  # top quotient
        return ShortExactSequence(inj, surj)

    if name == "klein4.chain":
        k = _build("klein4.k")
        v = _build("klein4.v")
        vp = _build("klein4.v_prime")
        socle = Morphism(k, v, FpMatrix(2, [[0], [1]]))
        onto_arm = Morphism(v, vp, FpMatrix(2, [[1, 0], [0, 0], [0, 1]]))
        return Chain.from_maps([socle, onto_arm])

    raise KeyError(name)


_KINDS = {
    "c2": "group",
    "c3": "group",
    "klein4": "group",
    "klein4.H": "subgroup",
    "c2.k": "module",
    "c2.regular": "module",
    "c3.k": "module",
    "c3.jordan": "module",
    "klein4.k": "module",
    "klein4.regular": "module",
    "klein4.v": "module",
    "klein4.v_prime": "module",
    "klein4.w_ind": "module",
    "c2.nonsplit_ses": "ses",
    "c2.split_ses": "ses",
    "c3.jordan_ses": "ses",
    "klein4.chain": "chain",
}


def registry_names() -> tuple[str, ...]:
    return tuple(sorted(_KINDS))


def get_example(name: str) -> NamedInstance:
    """Look up a named instance, or fail listing the whole registry."""
    if name not in _KINDS:
        raise ValueError(
            f"unknown catalog name {name!r}; known names: {', '.join(registry_names())}"
        )
    return NamedInstance(name, _KINDS[name], _build(name))
