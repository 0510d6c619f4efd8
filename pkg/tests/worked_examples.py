"""Hand-checked worked examples shared by the unit tests and the acceptance
suite.  Each entry is built from bracket strings so the tests stay
readable; every nontrivial coefficient is certified by an independent
oracle elsewhere in the suite (labeled brute force, product-coproduct
duality, or the adjoint identity against the substitution-endomorphism
recursion).  The third coaction example enters through the planar mirror
map, which exercises the orientation-sensitivity of the partition
conditions."""

from fractions import Fraction

from lbseries import (
    LinComb,
    SymWord,
    canonicalize,
    mirror_forest,
    parse_forest,
    parse_nonplanar_forest,
    parse_tree,
)
from lbseries.postlie import LiePoly, bracket
from lbseries.subst import SymLieWord

pf = parse_forest
pt = parse_tree
pnf = parse_nonplanar_forest


def cn(text):
    return canonicalize(pt(text))


def lp(text):
    return LiePoly.from_tree(pt(text))


def comb(*terms):
    return LinComb(list(terms))


def t2(left, right, coeff=1):
    return ((left, right), Fraction(coeff))


# grafting of the cherry onto the 2-chain
GRAFT_EXAMPLE = (
    cn("[[][]]"),
    cn("[[]]"),
    comb((cn("[[][[][]]]"), 1), (cn("[[[[][]]]]"), 1)),
)

# adding a root below a three-tree forest
B_PLUS_EXAMPLE = (pf("[[][]] [[]] [[][[][]]]"), "[[[][[][]]][[]][[][]]]")

# Grossman-Larson product
GL_EXAMPLE = (
    pf("[[][]]"),
    pf("[] [[]]"),
    comb(
        (pf("[[][]] [] [[]]"), 1),
        (pf("[[[][]]] [[]]"), 1),
        (pf("[] [[][[][]]]"), 1),
        (pf("[] [[[[][]]]]"), 1),
    ),
)

SHUFFLE_EXAMPLE = (
    pf("[] [[]]"),
    pf("[[][]] [[[]]]"),
    comb(
        (pf("[] [[]] [[][]] [[[]]]"), 1),
        (pf("[] [[][]] [[]] [[[]]]"), 1),
        (pf("[[][]] [] [[]] [[[]]]"), 1),
        (pf("[[][]] [] [[[]]] [[]]"), 1),
        (pf("[] [[][]] [[[]]] [[]]"), 1),
        (pf("[[][]] [[[]]] [] [[]]"), 1),
    ),
)

UNSHUFFLE_EXAMPLE = (
    pf("[] [[]] [[][]]"),
    comb(
        t2(pf("[] [[]] [[][]]"), pf("")),
        t2(pf("[] [[]]"), pf("[[][]]")),
        t2(pf("[] [[][]]"), pf("[[]]")),
        t2(pf("[[]] [[][]]"), pf("[]")),
        t2(pf("[]"), pf("[[]] [[][]]")),
        t2(pf("[[]]"), pf("[] [[][]]")),
        t2(pf("[[][]]"), pf("[] [[]]")),
        t2(pf(""), pf("[] [[]] [[][]]")),
    ),
)

CK_EXAMPLES = [
    (
        pnf("[[]]"),
        comb(
            t2(pnf(""), pnf("[[]]")),
            t2(pnf("[]"), pnf("[]")),
            t2(pnf("[[]]"), pnf("")),
        ),
    ),
    (
        pnf("[[][]]"),
        comb(
            t2(pnf(""), pnf("[[][]]")),
            t2(pnf("[]"), pnf("[[]]"), 2),
            t2(pnf("[] []"), pnf("[]")),
            t2(pnf("[[][]]"), pnf("")),
        ),
    ),
    (
        pnf("[[]] [[][]]"),
        comb(
            t2(pnf(""), pnf("[[]] [[][]]")),
            t2(pnf("[]"), pnf("[] [[][]]")),
            t2(pnf("[]"), pnf("[[]] [[]]"), 2),
            t2(pnf("[] []"), pnf("[] [[]]"), 3),
            t2(pnf("[] [] []"), pnf("[] []")),
            t2(pnf("[[]]"), pnf("[[][]]")),
            t2(pnf("[[]] []"), pnf("[[]]"), 2),
            t2(pnf("[[]] [] []"), pnf("[]")),
            t2(pnf("[[][]]"), pnf("[[]]")),
            t2(pnf("[[][]] []"), pnf("[]")),
            t2(pnf("[[]] [[][]]"), pnf("")),
        ),
    ),
]

H_EXAMPLES = [
    (
        pnf("[[[]]]"),
        comb(
            t2(pnf("[[[]]]"), pnf("[]")),
            t2(pnf("[[]] []"), pnf("[[]]"), 2),
            t2(pnf("[] [] []"), pnf("[[[]]]")),
        ),
    ),
    (
        pnf("[[][]]"),
        comb(
            t2(pnf("[[][]]"), pnf("[]")),
            t2(pnf("[[]] []"), pnf("[[]]"), 2),
            t2(pnf("[] [] []"), pnf("[[][]]")),
        ),
    ),
    (
        pnf("[[[]][]]"),
        comb(
            t2(pnf("[[[]][]]"), pnf("[]")),
            t2(pnf("[] [[[]]]"), pnf("[[]]")),
            t2(pnf("[] [[][]]"), pnf("[[]]")),
            t2(pnf("[] [] [[]]"), pnf("[[][]]"), 2),
            t2(pnf("[[]] [[]]"), pnf("[[]]")),
            t2(pnf("[] [] [[]]"), pnf("[[[]]]")),
            t2(pnf("[] [] [] []"), pnf("[[[]][]]")),
        ),
    ),
]

N_EXAMPLES = [
    (
        pf("[[][[]][]]"),
        comb(
            t2(pf(""), pf("[[][[]][]]")),
            t2(pf("[]"), pf("[[][[]]]")),
            t2(pf("[]"), pf("[[][][]]")),
            t2(pf("[] []"), pf("[[][]]"), 2),
            t2(pf("[] [[]]"), pf("[[]]")),
            t2(pf("[] [[]] []"), pf("[]")),
            t2(pf("[[][[]][]]"), pf("")),
        ),
    ),
    # certified term-by-term by the exhaustive Grossman-Larson duality law
    (
        pf("[] [[]] []"),
        comb(
            t2(pf(""), pf("[] [[]] []")),
            t2(pf("[]"), pf("[[]] []")),
            t2(pf("[]"), pf("[] [] []")),
            t2(pf("[] []"), pf("[] []"), 2),
            t2(pf("[] [[]]"), pf("[]")),
            t2(pf("[] [[]] []"), pf("")),
        ),
    ),
    (
        pf("[[][]] [[]]"),
        comb(
            t2(pf(""), pf("[[][]] [[]]")),
            t2(pf("[]"), pf("[[]] [[]]")),
            t2(pf("[]"), pf("[[][]] []")),
            t2(pf("[] []"), pf("[[]] []"), 2),
            t2(pf("[] []"), pf("[] [[]]")),
            t2(pf("[] [] []"), pf("[] []"), 3),
            t2(pf("[[][]]"), pf("[[]]")),
            # the shuffled left leg evaluates to two words
            t2(pf("[[][]] []"), pf("[]")),
            t2(pf("[] [[][]]"), pf("[]")),
            t2(pf("[[][]] [[]]"), pf("")),
        ),
    ),
]

# labeled vertex-replacement example: a two-leaf base, a 2-chain at the
# root and two 4-vertex trees at the leaves
PRELIE_OPERAD_EXAMPLE = (
    [cn("[[]]"), cn("[[][[]]]"), cn("[[[[]]]]")],
    cn("[[][]]"),
    comb(
        (cn("[[][[[[]]]][[][[]]]]"), 1),
        (cn("[[[[[[]]]][[][[]]]]]"), 1),
        (cn("[[[[][[]]]][[[[]]]]]"), 1),
        (cn("[[[[[[]]]]][[][[]]]]"), 1),
    ),
)

W_EXAMPLE = (
    pf("[[[]][]]"),
    comb(
        ((SymWord.of(pf("[[[]][]]")), pf("[]")), 1),
        ((SymWord.of(pf("[]"), pf("[]"), pf("[]"), pf("[]")), pf("[[[]][]]")), 1),
        ((SymWord.of(pf("[]"), pf("[[[]]]")), pf("[[]]")), 1),
        ((SymWord.of(pf("[]"), pf("[[][]]")), pf("[[]]")), 1),
        ((SymWord.of(pf("[]"), pf("[]"), pf("[[]]")), pf("[[][]]")), 3),
        ((SymWord.of(pf("[] [[]]"), pf("[]")), pf("[[]]")), 1),
    ),
)


def _slw(*factors):
    normalized = []
    sign = 1
    for f in factors:
        s, canonical = f.sign_normalized()
        sign *= s
        normalized.append(canonical)
    return sign, SymLieWord(normalized)


def slw_term(factors, right, coeff=1):
    sign, word = _slw(*factors)
    return ((word, right), Fraction(coeff) * sign)


_dot = lp("[]")
_ladder = lp("[[]]")
_cherry = lp("[[][]]")

RHO_EXAMPLE_1 = (
    pf("[] [[]]"),
    comb(
        slw_term([bracket(_dot, _ladder)], pf("[]")),
        slw_term([_dot, _ladder], pf("[] []")),
        slw_term([_dot, _dot, _dot], pf("[] [[]]")),
    ),
)

RHO_EXAMPLE_2 = (
    pf("[] [[]] []"),
    comb(
        slw_term([bracket(bracket(_dot, _ladder), _dot)], pf("[]")),
        slw_term([bracket(_dot, bracket(_ladder, _dot))], pf("[]")),
        slw_term([_dot, _ladder, _dot], pf("[] [] []")),
        slw_term([bracket(_dot, _ladder), _dot], pf("[] []")),
        slw_term([_dot, bracket(_ladder, _dot)], pf("[] []")),
        slw_term([_dot, _dot, _dot, _dot], pf("[] [[]] []")),
    ),
)

# Stated through the planar mirror (see module docstring); the doubled
# coefficient below comes from two admissible partitions with the same
# parts, certified by the adjoint identity.
RHO_EXAMPLE_3 = (
    mirror_forest(pf("[[][[][]]]")),
    comb(
        slw_term([lp("[[[][]][]]")], pf("[]")),
        slw_term([_ladder, _dot, _dot, _dot], pf("[[][][]]"), 3),
        slw_term([_ladder, _dot, _dot, _dot], pf("[[[]][]]")),
        slw_term([lp("[[[]]]"), _dot, _dot], pf("[[][]]"), 2),
        slw_term([_cherry, _dot, _dot], pf("[[][]]"), 2),
        slw_term([lp("[[[][]]]"), _dot], pf("[[]]")),
        slw_term([lp("[[[]][]]"), _dot], pf("[[]]")),
        slw_term([bracket(_dot, _cherry), _dot], pf("[[]]")),
        slw_term([bracket(_dot, _ladder), _dot, _dot], pf("[[[]]]")),
        slw_term([_dot, _dot, _dot, _dot, _dot], pf("[[[][]][]]")),
    ),
)
