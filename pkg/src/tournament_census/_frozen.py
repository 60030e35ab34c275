"""Generated by ``census calibrate --emit-module``; do not edit by hand."""

FROZEN_CODES = {
    "T3": "26",
    "C3": "62",
    "T4": "8ce",
    "X4": "18c6",
    "D": "18d4",
    "DT": "9ca",
    "T5": "8639e",
    "H1": "1867a8",
    "H1T": "8679a",
    "H2": "1863ac",
    "H2T": "8e396",
    "H3": "8e3b4",
    "H4": "18638e",
    "H5": "18678a",
    "H6": "19628e",
    "H7": "1962ac",
    "H8": "18e386",
    "R5": "38e186",
}
