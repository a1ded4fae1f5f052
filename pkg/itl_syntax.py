#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Sintaxe central da ITL - tipos, termos, assinaturas e substituições.

Os termos são imutáveis e verificados na construção: uma árvore mal tipada
não chega a existir. O açúcar sintático (->, ~, &, |, <->, forall, exists, =,
top, box, dia) também é representado aqui; a expansão fica em itl_sugar.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from config import INHABITANT_VARIABLE_PREFIX, OMEGA_NAME, RESERVED_PREFIX

logger = logging.getLogger(__name__)


# --- Erros ---

class ITLError(Exception):
    """Erro base do kernel."""


class TypeMismatch(ITLError):
    """Termo mal tipado."""


class UndeclaredConstant(ITLError):
    """Constante ausente da assinatura."""


class CaptureError(ITLError):
    """Substituição capturaria uma variável livre."""

    def __init__(self, binder, variable):
        self.binder = binder
        self.variable = variable
        super().__init__(
            f"captura: o ligador {binder.name}:{binder.ty} capturaria variável livre "
            f"na substituição de {variable.name}:{variable.ty}"
        )


class ITLSyntaxError(ITLError):
    """Erro de sintaxe concreta, com posição."""

    def __init__(self, message, position=None, line=None, column=None):
        self.position = position
        self.line = line
        self.column = column
        where = f" (linha {line}, coluna {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class BudgetExceeded(ITLError):
    """Limite de passos atingido."""


# --- Tipos ---

@dataclass(frozen=True)
class BasicType:
    name: str

    @property
    def is_complex(self) -> bool:
        return False

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ComplexType:
    args: Tuple["Type", ...] = ()

    @property
    def is_complex(self) -> bool:
        return True

    def __str__(self) -> str:
        return "<" + " ".join(str(a) for a in self.args) + ">"


Type = Union[BasicType, ComplexType]

PROP = ComplexType(())




def type_components(ty: Type) -> Iterator[Type]:
    """Percorre o tipo e todos os seus componentes."""
    yield ty
    if ty.is_complex:
        for arg in ty.args:
            yield from type_components(arg)


def basic_names(ty: Type) -> set:
    return {t.name for t in type_components(ty) if not t.is_complex}


# --- Termos ---

class Term:
    """Base de todos os nós de termo. O tipo é calculado na construção."""

    __slots__ = ()

    @property
    def type(self) -> Type:
        return self.__dict__["_type"]

    def _set_type(self, ty: Type) -> None:
        object.__setattr__(self, "_type", ty)


@dataclass(frozen=True)
class Const(Term):
    name: str
    ty: Type

    def __post_init__(self):
        self._set_type(self.ty)


@dataclass(frozen=True)
class Var(Term):
    name: str
    ty: Type

    def __post_init__(self):
        self._set_type(self.ty)


@dataclass(frozen=True)
class Bottom(Term):
    def __post_init__(self):
        self._set_type(PROP)


BOTTOM = Bottom()


def _require_prop(term: Term, where: str) -> None:
    if term.type != PROP:
        raise TypeMismatch(f"{where}: esperado <>, obtido {term.type}")


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term

    def __post_init__(self):
        ft = self.fun.type
        if not ft.is_complex or not ft.args:
            raise TypeMismatch(f"aplicação: cabeça de tipo {ft} não aceita argumentos")
        if ft.args[0] != self.arg.type:
            raise TypeMismatch(
                f"aplicação: argumento de tipo {self.arg.type}, esperado {ft.args[0]}"
            )
        self._set_type(ComplexType(ft.args[1:]))


@dataclass(frozen=True)
class Lam(Term):
    var: Var
    body: Term

    def __post_init__(self):
        bt = self.body.type
        if not bt.is_complex:
            raise TypeMismatch(f"abstração: corpo de tipo básico {bt}")
        self._set_type(ComplexType((self.var.ty,) + bt.args))


@dataclass(frozen=True)
class Subset(Term):
    left: Term
    right: Term

    def __post_init__(self):
        lt, rt = self.left.type, self.right.type
        if lt != rt:
            raise TypeMismatch(f"inclusão entre tipos distintos {lt} e {rt}")
        if not lt.is_complex:
            raise TypeMismatch(f"inclusão em tipo básico {lt}")
        self._set_type(PROP)


# Açúcar sintático (Def. 3 e operadores modais)

@dataclass(frozen=True)
class Top(Term):
    def __post_init__(self):
        self._set_type(PROP)


TOP = Top()


@dataclass(frozen=True)
class Not(Term):
    body: Term

    def __post_init__(self):
        _require_prop(self.body, "negação")
        self._set_type(PROP)


@dataclass(frozen=True)
class _Binary(Term):
    left: Term
    right: Term

    def __post_init__(self):
        _require_prop(self.left, self.__class__.__name__)
        _require_prop(self.right, self.__class__.__name__)
        self._set_type(PROP)


@dataclass(frozen=True)
class Imp(_Binary):
    pass


@dataclass(frozen=True)
class And(_Binary):
    pass


@dataclass(frozen=True)
class Or(_Binary):
    pass


@dataclass(frozen=True)
class Iff(_Binary):
    pass


@dataclass(frozen=True)
class Forall(Term):
    var: Var
    body: Term

    def __post_init__(self):
        _require_prop(self.body, "quantificador universal")
        self._set_type(PROP)


@dataclass(frozen=True)
class Exists(Term):
    var: Var
    body: Term

    def __post_init__(self):
        _require_prop(self.body, "quantificador existencial")
        self._set_type(PROP)


@dataclass(frozen=True)
class Eq(Term):
    left: Term
    right: Term

    def __post_init__(self):
        if self.left.type != self.right.type:
            raise TypeMismatch(
                f"igualdade entre tipos distintos {self.left.type} e {self.right.type}"
            )
        self._set_type(PROP)


ACCESSIBILITY_TYPE = ComplexType((ComplexType((PROP,)),))


@dataclass(frozen=True)
class Box(Term):
    rel: Term
    body: Term

    def __post_init__(self):
        if self.rel.type != ACCESSIBILITY_TYPE:
            raise TypeMismatch(f"box: relação de tipo {self.rel.type}, esperado {ACCESSIBILITY_TYPE}")
        _require_prop(self.body, "box")
        self._set_type(PROP)


@dataclass(frozen=True)
class Diamond(Term):
    rel: Term
    body: Term

    def __post_init__(self):
        if self.rel.type != ACCESSIBILITY_TYPE:
            raise TypeMismatch(f"dia: relação de tipo {self.rel.type}, esperado {ACCESSIBILITY_TYPE}")
        _require_prop(self.body, "dia")
        self._set_type(PROP)


OMEGA = Const(OMEGA_NAME, ACCESSIBILITY_TYPE)

BINDERS = (Lam, Forall, Exists)
SUGAR = (Top, Not, Imp, And, Or, Iff, Forall, Exists, Eq, Box, Diamond)
LEAVES = (Const, Var, Bottom, Top)


def children(term: Term) -> Tuple[Term, ...]:
    if isinstance(term, LEAVES):
        return ()
    if isinstance(term, BINDERS):
        return (term.body,)
    if isinstance(term, App):
        return (term.fun, term.arg)
    if isinstance(term, Not):
        return (term.body,)
    if isinstance(term, (Box, Diamond)):
        return (term.rel, term.body)
    return (term.left, term.right)


def rebuild(term: Term, kids: Tuple[Term, ...]) -> Term:
    """Reconstrói um nó com novos filhos (mesma forma)."""
    if isinstance(term, LEAVES):
        return term
    if isinstance(term, BINDERS):
        return type(term)(term.var, kids[0])
    return type(term)(*kids)


def is_sugar_free(term: Term) -> bool:
    if isinstance(term, SUGAR):
        return False
    return all(is_sugar_free(k) for k in children(term))


# --- Variáveis livres ---

@lru_cache(maxsize=200000)
def free_vars(term: Term) -> frozenset:
    if isinstance(term, Var):
        return frozenset((term,))
    if isinstance(term, BINDERS):
        return free_vars(term.body) - {term.var}
    result = frozenset()
    for kid in children(term):
        result |= free_vars(kid)
    return result


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def is_free_for(b: Term, x: Var, a: Term) -> bool:
    """B é livre para x em A: nenhuma ocorrência livre de x fica sob ligador de var livre de B."""
    if b.type != x.ty:
        raise TypeMismatch(f"is_free_for: tipo {b.type} difere de {x.ty}")
    fv_b = free_vars(b)
    if not fv_b:
        return True

    def ok(t: Term, bound: frozenset) -> bool:
        if x not in free_vars(t):
            return True
        if isinstance(t, Var):
            return not (bound & fv_b)
        if isinstance(t, BINDERS):
            return ok(t.body, bound | {t.var})
        return all(ok(k, bound) for k in children(t))

    return ok(a, frozenset())


# --- Substituição ---

Substitution = Mapping[Var, Term]


def apply_subst(term: Term, sigma: Substitution) -> Term:
    """Substituição simultânea sem renomeação; recusa captura com CaptureError."""
    active = {}
    for x, b in sigma.items():
        if b.type != x.ty:
            raise TypeMismatch(f"substituição: {x.name}:{x.ty} recebe termo de tipo {b.type}")
        if b != x:
            active[x] = b
    return _subst(term, active)


def _subst(term: Term, sigma: Dict[Var, Term]) -> Term:
    if not sigma:
        return term
    fv = free_vars(term)
    relevant = {x: b for x, b in sigma.items() if x in fv}
    if not relevant:
        return term
    if isinstance(term, Var):
        return relevant.get(term, term)
    if isinstance(term, BINDERS):
        y = term.var
        inner = {x: b for x, b in relevant.items() if x != y}
        for x, b in inner.items():
            if y in free_vars(b):
                raise CaptureError(y, x)
        return type(term)(y, _subst(term.body, inner))
    return rebuild(term, tuple(_subst(k, relevant) for k in children(term)))


def substitute(term: Term, x: Var, b: Term) -> Term:
    return apply_subst(term, {x: b})


# --- Utilidades estruturais ---

def spine(term: Term) -> Tuple[Term, List[Term]]:
    """Decompõe A B1 ... Bn em (A, [B1..Bn]) com A não aplicação."""
    args = []
    while isinstance(term, App):
        args.append(term.arg)
        term = term.fun
    args.reverse()
    return term, args


def apply_args(head: Term, args: Iterable[Term]) -> Term:
    for arg in args:
        head = App(head, arg)
    return head


def peel_args(term: Term, n: int) -> Optional[Tuple[Term, Tuple[Term, ...]]]:
    """Remove os últimos n argumentos; None se o termo não tiver n aplicações."""
    args = []
    for _ in range(n):
        if not isinstance(term, App):
            return None
        args.append(term.arg)
        term = term.fun
    args.reverse()
    return term, tuple(args)


def subterms(term: Term) -> Iterator[Term]:
    yield term
    if isinstance(term, BINDERS):
        yield term.var
    for kid in children(term):
        yield from subterms(kid)


def closed_subterms(term: Term) -> Iterator[Term]:
    for sub in subterms(term):
        if is_closed(sub):
            yield sub


def constants_of(term: Term) -> frozenset:
    return frozenset(s for s in subterms(term) if isinstance(s, Const))


def term_size(term: Term) -> int:
    return 1 + sum(term_size(k) for k in children(term))


def canonical_inhabitant(ty: Type) -> Term:
    """λx1...λxn.⊥ para o tipo complexo <a1...an>."""
    if not ty.is_complex:
        raise TypeMismatch(f"tipo básico {ty} não tem habitante canônico")
    body: Term = BOTTOM
    for i in reversed(range(len(ty.args))):
        body = Lam(Var(f"{INHABITANT_VARIABLE_PREFIX}{i + 1}", ty.args[i]), body)
    return body


# --- Assinatura ---

@dataclass(frozen=True)
class Signature:
    """Linguagem: constantes unicamente tipadas sobre tipos básicos declarados."""

    constants: Tuple[Tuple[str, Type], ...] = ()
    basic_types: frozenset = frozenset()
    _index: Dict[str, Type] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        index = {}
        for name, ty in self.constants:
            if name in index and index[name] != ty:
                raise TypeMismatch(f"constante {name} declarada com dois tipos")
            missing = basic_names(ty) - set(self.basic_types)
            if missing:
                raise UndeclaredConstant(f"tipo básico não declarado: {sorted(missing)}")
            index[name] = ty
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, basic_types: Iterable[str], constants: Mapping[str, Type]) -> "Signature":
        for name in constants:
            if name.startswith(RESERVED_PREFIX):
                raise ITLError(f"nome reservado não pode ser declarado: {name}")
        return cls(tuple(sorted(constants.items())), frozenset(basic_types))

    def has(self, name: str) -> bool:
        return name in self._index

    def type_of_constant(self, name: str) -> Type:
        try:
            return self._index[name]
        except KeyError:
            raise UndeclaredConstant(f"constante não declarada: {name}") from None

    def const(self, name: str) -> Const:
        return Const(name, self.type_of_constant(name))

    def constants_of_type(self, ty: Type) -> List[Const]:
        return [Const(n, t) for n, t in self.constants if t == ty]

    def names(self) -> List[str]:
        return [n for n, _ in self.constants]

    def extend(self, consts: Iterable[Const], basic_types: Iterable[str] = ()) -> "Signature":
        """Nova assinatura com constantes extras (nomes reservados permitidos)."""
        merged = dict(self.constants)
        for c in consts:
            if c.name in merged and merged[c.name] != c.ty:
                raise TypeMismatch(f"constante {c.name} com tipo conflitante")
            merged[c.name] = c.ty
        types = set(self.basic_types) | set(basic_types)
        for c in consts:
            types |= basic_names(c.ty)
        return Signature(tuple(sorted(merged.items())), frozenset(types))

    def union(self, other: "Signature") -> "Signature":
        return self.extend([Const(n, t) for n, t in other.constants], other.basic_types)

    def require_inhabited(self, types: Iterable[Type]) -> None:
        for ty in types:
            if not ty.is_complex and not self.constants_of_type(ty):
                raise ITLError(f"tipo básico {ty} sem constantes na assinatura")


# --- Verificação de tipos ---

def type_of(term: Term, sig: Signature, ctx: Union[Mapping[Var, Type], Iterable[Var], None] = None) -> Type:
    """Tipo de um termo relativo à assinatura e ao contexto de variáveis livres."""
    if ctx is None:
        ctx = {}
    elif not isinstance(ctx, Mapping):
        ctx = {v: v.ty for v in ctx}

    def check(t: Term, bound: frozenset) -> None:
        if isinstance(t, Const):
            declared = sig.type_of_constant(t.name)
            if declared != t.ty:
                raise TypeMismatch(f"constante {t.name}: tipo {t.ty}, declarado {declared}")
        elif isinstance(t, Var):
            if t in bound:
                return
            if t not in ctx:
                raise TypeMismatch(f"variável livre fora do contexto: {t.name}:{t.ty}")
            if ctx[t] != t.ty:
                raise TypeMismatch(f"variável {t.name}: tipo {t.ty}, contexto {ctx[t]}")
        elif isinstance(t, BINDERS):
            check(t.body, bound | {t.var})
        else:
            for kid in children(t):
                check(kid, bound)

    check(term, frozenset())
    return term.type
