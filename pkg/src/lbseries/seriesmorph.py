"""Series-level layer: truncated dual-basis series, the substitution
endomorphism on forests, its adjoint, and the composition / substitution
products on characters."""

from __future__ import annotations

from fractions import Fraction

from .coeffalg import CharacterMap, LinComb, is_logarithmic
from .postlie import b_minus, concat, delta_n, left_graft
from .subst import delta_w, star_w
from .trees import EMPTY_FOREST, OrderedForest, enumerate_ordered_forests


class TruncatedSeries:
    """A linear combination of ordered forests truncated at a vertex order."""

    __slots__ = ("order", "element")

    def __init__(self, order: int, element: LinComb):
        self.order = int(order)
        self.element = LinComb(
            (f, c) for f, c in element.items() if f.vertex_count <= order
        )

    def coeff(self, forest: OrderedForest) -> Fraction:
        return self.element.coeff(forest)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, self.element + other.element)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.order, self.element.scale(c))

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, concat(self.element, other.element))

    def graft(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(order, left_graft(self.element, other.element))

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.element == other.element
        )

    def __repr__(self):
        from .coeffalg import format_lincomb

        return f"TruncatedSeries(order={self.order}, {format_lincomb(self.element)})"


def series_of(alpha: CharacterMap) -> TruncatedSeries:
    """The dual-basis series of a character, up to its truncation order."""
    terms = [(EMPTY_FOREST, alpha.empty_value)]
    for size in range(1, alpha.order + 1):
        for forest in enumerate_ordered_forests(size):
            terms.append((forest, alpha(forest)))
    return TruncatedSeries(alpha.order, LinComb(terms))


def a_alpha(alpha: CharacterMap, forest: OrderedForest) -> TruncatedSeries:
    """The substitution endomorphism: the unique map fixing concatenation and
    grafting that sends the single vertex to the series of ``alpha``.

    ``alpha`` must be logarithmic, so the single-vertex image is primitive
    and the map sends Lie polynomials to Lie polynomials.
    """
    if not is_logarithmic(alpha):
        raise ValueError("character is not logarithmic")
    order = alpha.order
    seed = series_of(alpha)
    cache: dict[OrderedForest, TruncatedSeries] = {}

    def rec(w: OrderedForest) -> TruncatedSeries:
        if w in cache:
            return cache[w]
        if w.is_empty:
            out = TruncatedSeries(order, LinComb.of(EMPTY_FOREST))
        elif len(w.trees) == 1:
            out = rec(b_minus(w.trees[0])).graft(seed)
        else:
            out = rec(OrderedForest(w.trees[:1])).mul(rec(OrderedForest(w.trees[1:])))
        cache[w] = out
        return out

    return rec(forest)


def a_alpha_dagger(alpha: CharacterMap, forest: OrderedForest) -> LinComb:
    """Adjoint of the substitution endomorphism, computed through the
    partition coaction with ``alpha`` multiplicative over parts."""
    if not is_logarithmic(alpha):
        raise ValueError("character is not logarithmic")
    out = LinComb()
    for (word, quotient), c in delta_w(forest).items():
        factor = c
        for part in word.parts:
            factor *= alpha(part)
            if not factor:
                break
        if factor:
            out = out + LinComb.of(quotient, factor)
    return out


def check_adjoint(alpha: CharacterMap, order: int) -> bool:
    """Pairing of the substitution endomorphism against its adjoint."""
    forests = [EMPTY_FOREST]
    for size in range(1, order + 1):
        forests.extend(enumerate_ordered_forests(size))
    images = {w: a_alpha(alpha, w) for w in forests}
    daggers = {w: a_alpha_dagger(alpha, w) for w in forests}
    for w1 in forests:
        for w2 in forests:
            if images[w1].coeff(w2) != daggers[w2].coeff(w1):
                return False
    return True


def compose_lb(beta: CharacterMap, alpha: CharacterMap) -> CharacterMap:
    """Composition convolution of characters through the left-cut coproduct."""
    if beta.order != alpha.order:
        raise ValueError("truncation orders differ")
    order = beta.order
    values = []
    empty = beta.empty_value * alpha.empty_value
    for size in range(1, order + 1):
        for forest in enumerate_ordered_forests(size):
            total = Fraction(0)
            for (left, right), c in delta_n(forest).items():
                total += c * beta(left) * alpha(right)
            values.append((forest, total))
    return CharacterMap(order, empty, values)


def substitute_lb(alpha: CharacterMap, beta: CharacterMap) -> CharacterMap:
    """Substitution of a logarithmic series into another series' coefficients."""
    return star_w(alpha, beta)
