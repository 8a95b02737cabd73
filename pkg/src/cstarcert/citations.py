"""Literature citations attached to report claims.

Every pass/fail line a report emits carries one of these strings, or
``PLUMBING`` when the claim is internal machinery with no external
source.
"""

POWERS = (
    "R.T. Powers, Duke Math. J. 42 (1975) 151-156: "
    "non-abelian free groups have simple reduced C*-algebra"
)

PASCHKE_SALINAS = (
    "W. Paschke & N. Salinas, Pacific J. Math. 82 (1979) 211-221: "
    "C*-simplicity of non-trivial free products (excluding Z/2 * Z/2)"
)

KESTEN = (
    "H. Kesten, Trans. Amer. Math. Soc. 92 (1959) 336-354: "
    "spectral radius of symmetric random walks; sp(h) in [-1, 1-eps] "
    "iff the group is non-amenable"
)

DIXMIER = (
    "J. Dixmier, Les algebres d'operateurs dans l'espace hilbertien (1969), "
    "ch. III: averaging toward the trace (Dixmier property)"
)

BOURBAKI = (
    "N. Bourbaki, Groupes et algebres de Lie, ch. IV-VI (1968): "
    "a Coxeter group is finite iff its Tits form is positive definite, "
    "affine iff the form is positive semidefinite with nontrivial kernel"
)

FENDLER = (
    "G. Fendler, Illinois J. Math. 47 (2003) 883-897: "
    "irreducible Coxeter groups that are neither finite nor affine are C*-simple"
)

VINBERG = (
    "E.B. Vinberg, Izv. Akad. Nauk SSSR 35 (1971), Prop. 13: "
    "faithfulness of the reduced geometric representation of a Coxeter group"
)

TAKESAKI = (
    "M. Takesaki, Tohoku Math. J. 16 (1964) 111-122: "
    "a direct product of two C*-simple groups is C*-simple"
)

AMENABLE_OBSTRUCTION = (
    "M.M. Day, Illinois J. Math. 1 (1957), amenable radical; a nontrivial "
    "amenable normal subgroup obstructs C*-simplicity (weak containment of "
    "the quasi-regular representation)"
)

MURRAY_VON_NEUMANN = (
    "F. Murray & J. von Neumann, Rings of operators IV (1943): "
    "the group von Neumann algebra is a II_1 factor iff the group is icc"
)

PLUMBING = "plumbing"
