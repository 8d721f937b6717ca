"""Tangent cone at infinity of an affine variety from ideal generators.

The pipeline: compute a reduced Groebner basis of the input ideal under
a degree-compatible order, homogenize each basis element, restrict to
the hyperplane at infinity (equivalently: take its top-degree form) and
canonicalize the resulting homogeneous generators.  If the input ideal
is radical this cuts out the cone exactly; otherwise it cuts out a
variety containing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import Basis, _fresh_name, buchberger, reduce_basis
from .polyring import (
    Monomial,
    MonomialOrder,
    Polynomial,
    VariableContext,
    ZeroPolynomialError,
    _raw,
    evaluate_exact,
    leading_form,
    total_degree,
)


@dataclass(frozen=True)
class ConeDescription:
    """Homogeneous generators cutting out the tangent cone at infinity."""

    generators: Basis
    source_order: MonomialOrder
    source_basis: Basis

    def __post_init__(self):
        for g in self.generators:
            if not g.is_homogeneous():
                raise ValueError("cone generator is not homogeneous")


def homogenize(f: Polynomial, fresh_var: str) -> Polynomial:
    """f made homogeneous of degree deg(f) by a new trailing variable.

    Setting the new variable to 1 recovers f.
    """
    if f.is_zero():
        raise ZeroPolynomialError("cannot homogenize the zero polynomial")
    if fresh_var in f.context.names:
        raise ValueError(f"variable {fresh_var!r} already present")
    d = total_degree(f)
    ectx = VariableContext(f.context.names + (fresh_var,))
    return _raw(ectx, {Monomial(m.exponents + (d - m.degree,)): c
                       for m, c in f.terms.items()})


def restrict_infinity(g: Polynomial, var: str) -> Polynomial:
    """Substitute 0 for ``var`` and drop it from the context."""
    i = g.context.index(var)
    names = g.context.names[:i] + g.context.names[i + 1:]
    ctx = VariableContext(names)
    return _raw(ctx, {Monomial(m.exponents[:i] + m.exponents[i + 1:]): c
                      for m, c in g.terms.items() if m.exponents[i] == 0})


def tangent_cone_at_infinity(F: Sequence[Polynomial], order: MonomialOrder) -> ConeDescription:
    """Generators of the ideal cutting out the tangent cone at infinity.

    Requires a degree-compatible order.  Both the homogenize-restrict
    route and the top-degree-form shortcut are computed and checked
    against each other before canonicalization.
    """
    if not order.degree_compatible:
        raise ValueError(f"order {order.kind!r} is not degree-compatible")
    basis = buchberger(F, order)
    fresh = _fresh_name(basis.context.names, "h")
    forms = []
    for g in basis:
        form = leading_form(g)
        via_infinity = restrict_infinity(homogenize(g, fresh), fresh)
        assert form == via_infinity, "homogenize/restrict disagrees with top form"
        forms.append(form)
    return ConeDescription(generators=reduce_basis(forms, order),
                           source_order=order, source_basis=basis)


def cone_membership(cone: ConeDescription, v) -> bool:
    """Exact membership of a rational point in the cone variety."""
    return all(evaluate_exact(g, v) == 0 for g in cone.generators)


def naive_leading_form_set(F: Sequence[Polynomial]) -> list[Polynomial]:
    """Top-degree forms of the generators as given.

    This is deliberately the wrong construction for ideals with more
    than one generator: its zero set can strictly contain the cone.
    Exposed for demonstration and tests.
    """
    return [leading_form(f) for f in F]
