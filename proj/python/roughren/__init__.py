"""Python access to the roughren core (trees, Hopf algebras, rough paths, renormalisation)."""

from __future__ import annotations

import json
from fractions import Fraction

from . import _core

__all__ = [
    "enumerate_trees",
    "canonical",
    "coproduct",
    "antipode",
    "extraction",
    "psi",
    "arborify",
    "shuffle",
    "renorm_check",
    "lift",
    "g_table",
    "verify",
]


def _coef(entry):
    return Fraction(int(entry["num"]), int(entry.get("den", "1")))


def _forest(trees):
    return " ".join(trees)


def _tensor(text):
    return {(_forest(e["left"]), _forest(e["right"])): _coef(e) for e in json.loads(text)}


def _forests(text):
    return {_forest(e["forest"]): _coef(e) for e in json.loads(text)}


def _words(text):
    return {tuple(e["word"]): _coef(e) for e in json.loads(text)}


def _character_json(values):
    return json.dumps({k: str(Fraction(v)) for k, v in values.items()})


enumerate_trees = _core.enumerate_trees
canonical = _core.canonical


def coproduct(forest: str) -> dict:
    """BCK coproduct as {(trunk, pruned): coefficient}."""
    return _tensor(_core.coproduct(forest))


def antipode(forest: str) -> dict:
    return _forests(_core.antipode(forest))


def extraction(forest: str) -> dict:
    """Extraction/contraction coproduct as {(extracted, contracted): coefficient}."""
    return _tensor(_core.extraction(forest))


def psi(forest: str) -> dict:
    return _words(_core.psi(forest))


def arborify(forest: str) -> dict:
    return _words(_core.arborify(forest))


def shuffle(u: str, v: str) -> dict:
    return _words(_core.shuffle(u, v))


def renorm_check(character: dict, n: int = 4, d: int = 1, gamma: float = 0.24) -> list:
    """Cointeraction, analytic condition and square checks for the BPHZ map of `character`."""
    return json.loads(_core.renorm_check(_character_json(character), n, d, gamma))


def lift(driver="polynomial", exact=True, d=1, n=4, gamma=0.24, depth=4, seed=20240611) -> dict:
    """Canonical lift dump plus Chen, character and transfer reports."""
    return json.loads(_core.lift(driver, exact, d, n, gamma, depth, seed))


def g_table(character: dict, driver="polynomial", exact=True, d=1, n=4, gamma=0.24, depth=4, seed=20240611) -> dict:
    return json.loads(_core.g_table(_character_json(character), driver, exact, d, n, gamma, depth, seed))


def verify(only=(), mutate=None, depth=6) -> list:
    return json.loads(_core.verify(list(only), mutate, depth))
