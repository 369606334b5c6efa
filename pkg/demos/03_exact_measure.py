"""The canonical finitely additive measure, evaluated exactly.

Intervals carry their length, coset-coverable sets are null, and the
decomposition determines everything else.  Values are exact elements of
the model; the decimal rendering below is display only.
"""

from fractions import Fraction

from densepairs import ModelElement, bucket_partition, hvar, measure, parse

SETS = [
    "0 < x1 & x1 < 1",
    "0 < x1 & x1 < 1/2",
    "Q(x1)",
    "!Q(x1)",
    "x1 > r2 - 1 & x1 < 1",
    "Q(x1) | (x1 > 1/4 & x1 < 1/3)",
]


def main():
    x = hvar(1)
    for text in SETS:
        value = measure(parse(text), x).value
        print(f"  mu({text}) = {value}" + ("" if value.in_q() else f"  ~ {value.decimal_str(10)}"))

    print()
    print("-- bucketing a definable family by its measure --")
    family = parse("0 < x1 & x1 < x2")
    params = [
        {hvar(2): ModelElement.from_rational(Fraction(n, 12))} for n in range(0, 13)
    ]
    report = bucket_partition(family, x, params, 4)
    for entry in report.entries:
        shown = ", ".join(f"{var.name} = {val}" for var, val in entry.params)
        print(f"  {shown:14s} mu = {str(entry.value):6s} bucket {entry.bucket}/4")


if __name__ == "__main__":
    main()
