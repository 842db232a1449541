"""Field, polynomial, tower, and integer-resultant arithmetic."""

from .field import CoeffField
from .poly import (
    factor_fq,
    find_irreducible,
    padd,
    pdeg,
    pdivmod,
    peval,
    pgcd,
    pirreducible,
    pmonic,
    pmul,
    pneg,
    ppowmod,
    proots,
    pscale,
    psmooth_test,
    psub,
    pxgcd,
    PolySmoothness,
)
from .tower import FieldTower, TowerElement, tower_from_spec
from .zpoly import (
    IntBiPoly,
    kalkbrener_kappa,
    resultant_int,
    resultant_zz,
    sylvester_resultant,
)

__all__ = [
    "CoeffField",
    "FieldTower",
    "TowerElement",
    "IntBiPoly",
    "PolySmoothness",
    "factor_fq",
    "find_irreducible",
    "kalkbrener_kappa",
    "padd",
    "pdeg",
    "pdivmod",
    "peval",
    "pgcd",
    "pirreducible",
    "pmonic",
    "pmul",
    "pneg",
    "ppowmod",
    "proots",
    "pscale",
    "psmooth_test",
    "psub",
    "pxgcd",
    "resultant_int",
    "resultant_zz",
    "sylvester_resultant",
    "tower_from_spec",
]
