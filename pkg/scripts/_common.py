from pathlib import Path

from ecdenom.cli import parse_curve_input
from ecdenom.lattice import MWBasis
from ecdenom.torsion import torsion_subgroup

CURVES = Path(__file__).resolve().parent.parent / "curves"


def load_basis(name):
    ci = parse_curve_input((CURVES / f"{name}.json").read_text())
    return ci, MWBasis(ci.curve, ci.generators, torsion_subgroup(ci.curve))
