"""Built-in test maps, tagged by whether their image touches the unit circle."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .holo import HoloMap, Mobius, Poly, Scale, compose_maps, fix_origin, identity


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    map: HoloMap
    contact: bool
    note: str = ""


def _m(*steps, branch=1):
    return HoloMap(tuple(steps), branch)


@lru_cache(maxsize=None)
def _build():
    half = _m(Poly((0.5, 0.5)))
    quad = _m(Poly((0.0, 1 / 1.4, 0.4 / 1.4)))
    aff = _m(Poly((0.2, 0.5)))
    mob = _m(Mobius(0.3, 0.0))
    # eight-fold contact; boundary longer than the circle, so |W| has eigenvalues > 1
    wavy = _m(Poly((0.0, 1 / 1.11) + (0.0,) * 6 + (0.11 / 1.11,)))
    entries = [
        CorpusEntry("identity", identity(), True, "unitary"),
        CorpusEntry("scale_half", _m(Scale(0.5)), False, "diagonal"),
        CorpusEntry("scale_quarter", _m(Scale(0.25)), False, "diagonal"),
        CorpusEntry("mobius", mob, True, "unitary, phi(0) = -0.3"),
        CorpusEntry("half_disk", half, True, "(1+z)/2, contact at 1"),
        CorpusEntry("quadratic", quad, True, "(z+0.4z^2)/1.4, contact at 1"),
        CorpusEntry("affine", aff, False, "0.5z+0.2, sup |phi| = 0.7"),
        CorpusEntry("wavy", wavy, True, "(z+0.11z^8)/1.11, contact at the 7th roots of unity"),
        CorpusEntry("half_disk_fixed", fix_origin(half), True, "(1+z)/2 followed by a Mobius map fixing 0"),
        CorpusEntry("mobius_then_half", compose_maps(mob, half), True, ""),
        CorpusEntry("mobius_mobius", compose_maps(mob, _m(Mobius(-0.2 + 0.4j, 1.0))), True, "unitary"),
        CorpusEntry("quadratic_then_scale", compose_maps(quad, _m(Scale(0.8))), False, ""),
        CorpusEntry("affine_then_mobius", compose_maps(aff, _m(Mobius(0.2j, 0.5))), False, ""),
    ]
    return tuple(entries)


def corpus():
    """List of :class:`CorpusEntry`; identical objects on every call."""
    return list(_build())


def get(name):
    for e in _build():
        if e.name == name:
            return e
    raise KeyError(f"no corpus map named {name!r}")


def is_unitary(entry: CorpusEntry):
    return all(isinstance(s, Mobius) for s in entry.map.steps)
