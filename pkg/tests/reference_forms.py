"""Fixed reference formulas for the coefficients and grouped decompositions.

Some entries disagree with an independent derivation. They stay as given so
the acceptance suite can report the mismatch; repaired versions sit beside them.
"""

from fractions import Fraction as F

from hankel3.classes import ClassId
from hankel3.polynomial import Polynomial

c1, c2, c3, c4 = Polynomial.gens(("c1", "c2", "c3", "c4"))

PRINTED_COEFFICIENTS = {
    ClassId.STARLIKE: (
        2 * c1,
        c2 + 3 * c1**2,
        F(2, 3) * (c3 + 5 * c1 * c2 + 6 * c1**3),
        F(1, 2) * (c4 + F(14, 3) * c1 * c3 + F(43, 3) * c1**2 * c2 + 2 * c2**2 + 10 * c1**4),
    ),
    ClassId.SYMMETRIC_POINTS: (
        c1,
        c2 + c1**2,
        F(1, 2) * (c3 + 3 * c1 * c2 + 2 * c1**3),
        F(1, 2) * (c4 + 2 * c1 * c3 + 5 * c1**2 * c2 + 2 * c2**2 + 2 * c1**4),
    ),
    ClassId.EXPONENTIAL: (
        c1,
        F(1, 2) * c2 + F(3, 4) * c1**2,
        F(1, 3) * (c3 + F(5, 2) * c1 * c2 + F(17, 12) * c1**3),
        # printed with the c2^2 and c1^4 coefficients exchanged
        F(1, 4) * (c4 + F(7, 3) * c1 * c3 + F(10, 3) * c1**2 * c2 + F(19, 18) * c2**2 + c1**4),
    ),
    ClassId.LUNE: (
        c1,
        F(1, 2) * c2 + F(3, 4) * c1**2,
        F(1, 3) * (c3 + F(5, 2) * c1 * c2 + F(5, 4) * c1**3),
        F(1, 4) * (c4 + F(7, 3) * c1 * c3 + F(17, 6) * c1**2 * c2 + c2**2 + F(2, 3) * c1**4),
    ),
}

# exponential a5 with the two coefficients in their derived positions
CORRECTED_EXPONENTIAL_A5 = F(1, 4) * (
    c4 + F(7, 3) * c1 * c3 + F(10, 3) * c1**2 * c2 + c2**2 + F(19, 18) * c1**4
)

PRINTED_GROUPED = {
    # unsquared first bracket with 5/4, as printed
    ClassId.STARLIKE: F(1, 18) * (
        -8 * (c3 - F(5, 4) * c1 * c2)
        - F(63, 8) * c1**2 * c2**2
        + 6 * c1**3 * (c3 + F(1, 2) * c1 * c2)
        + 9 * (c2 - c1**2) * c4
    ),
    ClassId.SYMMETRIC_POINTS: F(1, 4) * (-((c3 - c1 * c2) ** 2) + 2 * c1**2 * c2**2 + 2 * c2 * c4),
    # first square printed with 15/16
    ClassId.EXPONENTIAL: (
        -F(1, 9) * (c3 - F(15, 16) * c1 * c2) ** 2
        - F(15, 256) * c1**2 * c2**2
        + F(17, 432) * c1**3 * (c3 + F(13, 34) * c1 * c2 - F(13, 204) * c1**3)
        + F(1, 16) * (2 * c2 - c1**2) * c4
    ),
    ClassId.LUNE: (
        -F(1, 9) * (c3 - F(5, 16) * c1 * c2) ** 2
        - F(31, 256) * c1**2 * c2**2
        + F(11, 144) * c1**3 * (c3 + F(5, 11) * c1 * c2 - F(7, 44) * c1**3)
        + F(1, 8) * (c2 - F(1, 2) * c1**2) * c4
    ),
}

SYMMETRIC_RAW = F(1, 4) * (-(c3**2) + 2 * c1 * c2 * c3 + c1**2 * c2**2 + 2 * c2 * c4)

EXPONENTIAL_RAW = (
    F(5, 72) * c1 * c2 * c3
    - F(5, 72) * c1**2 * c2**2
    + F(13, 864) * c1**4 * c2
    + F(17, 432) * c1**3 * c3
    - F(1, 9) * c3**2
    - F(13, 5184) * c1**6
    + F(1, 16) * (2 * c2 - c1**2) * c4
)

# the printed groupings with the two evident slips repaired
CORRECTED_GROUPED = {
    ClassId.STARLIKE: F(1, 18) * (
        -8 * (c3 - F(5, 8) * c1 * c2) ** 2
        - F(63, 8) * c1**2 * c2**2
        + 6 * c1**3 * (c3 + F(1, 2) * c1 * c2)
        + 9 * (c2 - c1**2) * c4
    ),
    ClassId.EXPONENTIAL: (
        -F(1, 9) * (c3 - F(5, 16) * c1 * c2) ** 2
        - F(15, 256) * c1**2 * c2**2
        + F(17, 432) * c1**3 * (c3 + F(13, 34) * c1 * c2 - F(13, 204) * c1**3)
        + F(1, 16) * (2 * c2 - c1**2) * c4
    ),
}
