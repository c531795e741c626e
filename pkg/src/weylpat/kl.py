"""Kazhdan-Lusztig polynomials over enumerable Weyl groups.

Computation uses the classical recursion on a left descent s of v:

    P(u,v) = q^(1-c) P(su,sv) + q^c P(u,sv)
             - sum over z with u <= z < sv, sz < z of
               mu(z,sv) q^((l(v)-l(z))/2) P(u,z)

with c = 1 when su < u and c = 0 otherwise, where mu(z,y) is the
coefficient of q^((l(y)-l(z)-1)/2) in P(z,y).  When su > u the recursion
collapses to P(u,v) = P(su,v), which is what the implementation uses for
that case.  The descent is chosen deterministically (smallest simple
index); independence of the choice is asserted in the test suite by
recomputing whole tables with other descent choices.

Tables are memoized per group and filled column by column (fixed v, all
u <= v together), keyed on element indices of the enumerated group.
Inside a table, polynomials are packed as Python ints with 16 bits per
coefficient, which keeps the sweeps over six-letter symmetric groups
fast; coefficients at the ranks this package targets stay far below
2^16.  Table fills are idempotent, so concurrent callers at worst repeat
work and observe identical values.
"""

from __future__ import annotations

from typing import Callable

from .errors import NotComparableError
from .roots import RootSystem
from .weyl import (
    DEFAULT_ENUMERATION_CAP,
    WeylElement,
    WeylGroup,
    format_word,
)

__all__ = ["KLPolynomial", "kl_polynomial", "mu", "is_rationally_smooth"]

_SHIFT = 16
_MASK = (1 << _SHIFT) - 1


class KLPolynomial:
    """A polynomial in q with nonnegative integer coefficients.

    >>> str(KLPolynomial([1, 1]))
    '1 + q'
    >>> str(KLPolynomial([1, 0, 2]))
    '1 + 2q^2'
    >>> KLPolynomial([1, 1, 0]) == KLPolynomial([1, 1])
    True
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __call__(self, q):
        return sum(c * q ** k for k, c in enumerate(self.coefficients))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, KLPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, int):
            return self.coefficients == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("q" if c == 1 else f"{c}q")
            else:
                terms.append(f"q^{k}" if c == 1 else f"{c}q^{k}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"KLPolynomial({self})"


def _unpack(val: int) -> KLPolynomial:
    coeffs = []
    while val:
        coeffs.append(val & _MASK)
        val >>= _SHIFT
    return KLPolynomial(coeffs)


class _KLTable:
    """Per-group memo of packed polynomials, filled column by column."""

    def __init__(self, wg: WeylGroup, descent: Callable[[int], int] | None = None):
        self.wg = wg
        self.packed: dict[tuple[int, int], int] = {}
        self.cols_done: set[int] = set()
        # descent maps an element index to a 0-based simple index that is
        # a left descent; default is the smallest one
        self.descent = descent or (lambda v: self.wg.min_left_descent_idx(v))

    def ensure_column(self, v: int) -> None:
        if v in self.cols_done:
            return
        down_v = self.wg.downsets[v]
        m = down_v
        pending = []
        while m:
            low = m & -m
            y = low.bit_length() - 1
            if y not in self.cols_done:
                pending.append(y)
            m ^= low
        for y in pending:  # bit extraction above yields ascending indices
            self._compute_column(y)
            self.cols_done.add(y)

    def _compute_column(self, v: int) -> None:
        wg = self.wg
        packed = self.packed
        lengths = wg.lengths
        if lengths[v] == 0:
            packed[(v, v)] = 1
            return
        s = self.descent(v)
        row = wg.lmult[s]
        sv = row[v]
        lv = lengths[v]
        downsets = wg.downsets

        # mu data of column sv, restricted to z with sz < z
        mu_terms: list[tuple[int, int, int]] = []
        m = downsets[sv] & ~(1 << sv)
        while m:
            low = m & -m
            z = low.bit_length() - 1
            m ^= low
            if lengths[row[z]] >= lengths[z]:
                continue
            gap = lengths[sv] - lengths[z]
            if gap % 2 == 0:
                continue
            mu_val = (packed[(z, sv)] >> (_SHIFT * ((gap - 1) // 2))) & _MASK
            if mu_val:
                mu_terms.append((z, mu_val, _SHIFT * ((lv - lengths[z]) // 2)))

        order = []
        m = downsets[v]
        while m:
            low = m & -m
            order.append(low.bit_length() - 1)
            m ^= low
        for u in reversed(order):  # descending index = descending length first
            if u == v:
                packed[(u, v)] = 1
                continue
            su = row[u]
            if lengths[su] > lengths[u]:
                packed[(u, v)] = packed[(su, v)]
                continue
            val = packed.get((su, sv), 0) + (packed.get((u, sv), 0) << _SHIFT)
            for z, mu_val, shift in mu_terms:
                if downsets[z] >> u & 1:
                    val -= mu_val * (packed[(u, z)] << shift)
            packed[(u, v)] = val

    def get(self, u: int, v: int) -> int:
        self.ensure_column(v)
        return self.packed.get((u, v), 0)


_TABLES: dict[str, _KLTable] = {}


def _table_for(wg: WeylGroup) -> _KLTable:
    table = _TABLES.get(wg.rs.cartan_type)
    if table is None:
        table = _KLTable(wg)
        _TABLES[wg.rs.cartan_type] = table
    return table


def kl_polynomial(u: WeylElement, v: WeylElement,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> KLPolynomial:
    """The Kazhdan-Lusztig polynomial P_(u,v); requires u <= v."""
    wg = WeylGroup.for_system(u.group, cap)
    ui, vi = wg.idx(u), wg.idx(v)
    if not wg.leq_idx(ui, vi):
        raise NotComparableError(
            f"not comparable: {format_word(u)} !<= {format_word(v)}"
        )
    return _unpack(_table_for(wg).get(ui, vi))


def mu(u: WeylElement, v: WeylElement, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """The mu coefficient: top permitted coefficient of P_(u,v).

    Zero when l(v) - l(u) is even (in particular for u = v), otherwise
    the coefficient of q^((l(v)-l(u)-1)/2).
    """
    poly = kl_polynomial(u, v, cap)
    gap = v.length - u.length
    if gap % 2 == 0:
        return 0
    return poly.coefficient((gap - 1) // 2)


def is_rationally_smooth(v: WeylElement, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True when P_(u,v) = 1 for every u <= v.

    In type A this is also equivalent to smoothness of the corresponding
    Schubert variety.
    """
    wg = WeylGroup.for_system(v.group, cap)
    table = _table_for(wg)
    vi = wg.idx(v)
    table.ensure_column(vi)
    m = wg.downsets[vi]
    while m:
        low = m & -m
        u = low.bit_length() - 1
        m ^= low
        if table.packed[(u, vi)] != 1:
            return False
    return True


def _fresh_table(rs: RootSystem, descent: Callable[[int], int] | None = None,
                 cap: int = DEFAULT_ENUMERATION_CAP) -> _KLTable:
    """A standalone table, optionally with a custom descent choice.

    Used by the test suite to assert that the recursion result does not
    depend on which left descent is taken at each step.
    """
    return _KLTable(WeylGroup.for_system(rs, cap), descent)
