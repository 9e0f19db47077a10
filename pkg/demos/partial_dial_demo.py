"""Pin some levels, let the others float.

Dialling k levels normally spends the powers h^1..h^k. The partial variant
pins a sparse set of levels instead — here levels 0 and 2 — and reports what
the unpinned level in between ends up with. Dropping a chosen power from the
polynomial works the same way.
"""

from fractions import Fraction

from polyosc import SpectrumTarget, dial_partial, evaluate_spectrum


def main() -> None:
    target = SpectrumTarget(((0, Fraction(1)), (2, Fraction(2))))
    ham = dial_partial(target)
    print("pinned: E_0 = 1 and E_2 = 2, using powers h^1 and h^2")
    for power, coeff in ham.terms:
        print(f"  a_{power} = {coeff}")

    records = evaluate_spectrum(ham, 3)
    print("\ninduced bottom of the spectrum:")
    for rec in records:
        pinned = "pinned" if rec.level in (0, 2) else "floats"
        print(f"  E_{rec.level} = {rec.energy}  ({pinned})")

    # same two pins, but force the quadratic coefficient to zero: the solver
    # moves to powers {1, 3} and the floating level lands elsewhere
    alt = dial_partial(target, drop_powers=[2])
    print("\nsame pins with the h^2 term dropped:")
    for power, coeff in alt.terms:
        print(f"  a_{power} = {coeff}")
    for rec in evaluate_spectrum(alt, 3):
        print(f"  E_{rec.level} = {rec.energy}")


if __name__ == "__main__":
    main()
