"""Reference flat-locus ideals, embedded so verification needs no data files.

Each cell lists generators as expression strings over the surface's
parameters: ``["1"]`` is the unit ideal and ``[]`` the zero ideal.
"""

from __future__ import annotations

COLUMNS = ("web", "hess12", "hess23", "hess13")
COLUMN_LABELS = {"web": "W", "hess12": "(F1,F2)", "hess23": "(F2,F3)", "hess13": "(F1,F3)"}

UNIT = ["1"]
ZERO: list[str] = []

# curvature ideals of the nine Painleve I-V surfaces
REFERENCE_TABLE: dict[str, dict[str, list[str]]] = {
    "pv": {"web": UNIT, "hess12": ["s3"], "hess23": UNIT, "hess13": UNIT},
    "pv-deg": {"web": UNIT, "hess12": ZERO, "hess23": UNIT, "hess13": UNIT},
    "piii-d6": {"web": UNIT, "hess12": ZERO, "hess23": UNIT, "hess13": UNIT},
    "piii-d7": {"web": UNIT, "hess12": ZERO, "hess23": UNIT, "hess13": UNIT},
    "piii-d8": {"web": UNIT, "hess12": UNIT, "hess23": UNIT, "hess13": ZERO},
    "piv": {"web": ["s2^2"], "hess12": ["s2^2"], "hess23": ["s1*s2", "s2^2"], "hess13": ["s2^2"]},
    "pii-fn": {"web": ZERO, "hess12": UNIT, "hess23": UNIT, "hess13": UNIT},
    "pii": {"web": ZERO, "hess12": UNIT, "hess23": UNIT, "hess13": ["alpha"]},
    "pi": {"web": ZERO, "hess12": ZERO, "hess23": UNIT, "hess13": UNIT},
}

# the generic PVI surface: flat exactly at a = (0, 0, 0, 4) for the web and every pair
PVI_FLAT = ["a1", "a2", "a3", "a4 - 4"]
PVI_ROW: dict[str, list[str]] = {c: PVI_FLAT for c in COLUMNS}
PVI_FLAT_POINT = {"a1": 0, "a2": 0, "a3": 0, "a4": 4}

# displayed Hess numerator for PVI, pair (1,2): coefficients of x1^2 x2^2, x1^2 x2, x1 x2^2, x1 x2
PVI_HESS12_COEFFS: dict[tuple[int, int, int], str] = {
    (2, 2, 0): "a3",
    (2, 1, 0): "-4*a1",
    (1, 2, 0): "-4*a2",
    (1, 1, 0): "32 - 2*a3^2 - 8*a4",
}

# PIII(D8) with x2 and x3 exchanged; its curvature ideals reproduce the reference D8 row
PIII_D8_SWAPPED = "x1*x2*x3 + x1^2 - x3^2 - x1"
