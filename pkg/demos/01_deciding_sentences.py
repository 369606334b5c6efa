"""Quantifier elimination and sentence decision, end to end.

The engine works over an ordered rational vector space with a
distinguished positive unit, a predicate Q for a dense proper subspace,
and a quotient sort reached through the linear map pi.  Run this file
directly; it prints each formula next to its eliminated form.
"""

from densepairs import TheoryMode, decide_sentence, parse, qe, render

EXAMPLES = [
    # plain ordered-vector-space reasoning (no subspace predicate)
    ("E x1. (x1 < x2 & x3 < x1)", TheoryMode.OVS),
    # the dense pair: a witness inside an interval and inside Q
    ("E x1. (0 < x1 & x1 < x2 & Q(x1))", TheoryMode.POVS),
    # coset constraints merge into side conditions on the parameters
    ("E x1. (pi(x1) = u1 & pi(x1) != u2)", TheoryMode.POVS),
    # universal quantifiers run through their existential duals
    ("A x1. (Q(x1) -> x1 >= 0)", TheoryMode.POVS),
    # the ordered expansion adds a dense order on the quotient sort
    ("E u1. (pi(x1) prec u1 & u1 prec pi(x2))", TheoryMode.POVS_PREC),
]

SENTENCES = [
    ("E x1. (0 < x1 & x1 < 1 & !Q(x1))", TheoryMode.POVS),
    ("A u1. E x1. (pi(x1) = u1 & 0 < x1 & x1 < 1)", TheoryMode.POVS),
    ("A x1. A x2. (x1 < x2 -> E x3. (x1 < x3 & x3 < x2 & Q(x3)))", TheoryMode.POVS),
    ("A u1. E u2. (u1 prec u2)", TheoryMode.POVS_PREC),
]


def main():
    print("-- quantifier elimination --")
    for text, mode in EXAMPLES:
        f = parse(text, mode)
        print(f"  {text}")
        print(f"    ==> {render(qe(f, mode))}   [{mode.value}]")

    print()
    print("-- deciding sentences (the theories are complete) --")
    for text, mode in SENTENCES:
        value = decide_sentence(parse(text, mode), mode)
        print(f"  {text}")
        print(f"    ==> {value}   [{mode.value}]")


if __name__ == "__main__":
    main()
