#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sentenças sinalizadas (L:phi / R:phi) e sequentes como conjuntos finitos.

A identidade de uma sentença é a igualdade estrutural da forma sem açúcar,
que coincide com a igualdade da sua impressão canônica.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from itl_printer import print_term
from itl_sugar import desugar
from itl_syntax import ITLError, PROP, Term, closed_subterms, constants_of, is_closed


class Sign(Enum):
    L = "L"
    R = "R"

    def flip(self):
        return Sign.R if self is Sign.L else Sign.L


@dataclass(frozen=True)
class SignedSentence:
    sign: Sign
    sentence: Term

    def __post_init__(self):
        expanded = desugar(self.sentence)
        if expanded.type != PROP:
            raise ITLError(f"sentença sinalizada de tipo {expanded.type}, esperado <>")
        if not is_closed(expanded):
            raise ITLError(f"sentença sinalizada não fechada: {print_term(expanded)}")
        object.__setattr__(self, "sentence", expanded)

    @cached_property
    def key(self):
        return f"{self.sign.value}:{print_term(self.sentence)}"

    def __str__(self):
        return self.key


def L(sentence):
    return SignedSentence(Sign.L, sentence)


def R(sentence):
    return SignedSentence(Sign.R, sentence)


@dataclass(frozen=True)
class Sequent:
    """Conjunto finito de sentenças sinalizadas; Pi => Sigma."""

    members: frozenset = frozenset()

    @classmethod
    def of(cls, members=()):
        return cls(frozenset(members))

    @classmethod
    def from_sides(cls, left=(), right=()):
        return cls(frozenset([L(t) for t in left] + [R(t) for t in right]))

    @cached_property
    def ordered(self):
        return tuple(sorted(self.members, key=lambda s: s.key))

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members

    def add(self, *items):
        return Sequent(self.members.union(items))

    def union(self, other):
        return Sequent(self.members.union(other))

    def remove(self, item):
        return Sequent(self.members - {item})

    def issubset(self, other):
        return self.members <= other.members

    def left(self):
        return [s.sentence for s in self.ordered if s.sign is Sign.L]

    def right(self):
        return [s.sentence for s in self.ordered if s.sign is Sign.R]

    @cached_property
    def constants(self):
        result = frozenset()
        for s in self.members:
            result |= constants_of(s.sentence)
        return result

    def closed_subterms(self):
        """Subtermos fechados, sem repetição, em ordem canônica de impressão."""
        seen = {}
        for s in self.ordered:
            for sub in closed_subterms(s.sentence):
                seen.setdefault(sub, None)
        return sorted(seen, key=lambda t: (len(print_term(t)), print_term(t)))

    def __str__(self):
        lhs = ", ".join(print_term(t) for t in self.left())
        rhs = ", ".join(print_term(t) for t in self.right())
        return f"{lhs} => {rhs}".strip()
