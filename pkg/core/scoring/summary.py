"""
Verdict summary rows for analysis reports.

One row per form: identity, nondegeneracy, 3-regularity, Lie closure
dimension, Hilbert match depth and Koszul exactness depth. Depth columns read
"n/a" when the stage was skipped and "mismatch@d" when the Hilbert series
leaves the prediction at degree d.
"""
from typing import Optional

COLUMNS = ["name", "f_label", "n", "nondegenerate", "three_regular", "lie_dim", "hilbert", "koszul", "verdict"]


def yes_no(flag: Optional[bool]) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def hilbert_cell(report: dict) -> str:
    hilbert = report.get("hilbert")
    if not hilbert:
        return "n/a"
    bad = hilbert["first_mismatch"]
    if bad is None:
        return f"match<={len(hilbert['actual']) - 1}"
    return f"mismatch@{bad}"


def koszul_cell(report: dict) -> str:
    koszul = report.get("koszul")
    if not koszul:
        return "n/a"
    return f"exact<={koszul['exact_up_to']}"


def verdict(report: dict) -> str:
    """'3-CY<=d' when 3-regular with matching Hilbert series and exact Koszul strands up to d."""
    reg = report["regularity"]
    if not reg["nondegenerate"]:
        return "degenerate"
    if not reg["three_regular"]:
        return "not regular"
    hilbert, koszul = report.get("hilbert"), report.get("koszul")
    if not hilbert or not koszul:
        return "3-regular"
    if hilbert["first_mismatch"] is not None:
        return "3-regular, not Koszul"
    depth = min(len(hilbert["actual"]) - 1, koszul["exact_up_to"])
    return f"3-CY<={depth}"


def summary_row(report: dict) -> dict:
    form = report["form"]
    lie = report.get("lie")
    return {
        "name": form["name"] or form["source"],
        "f_label": form["f_label"] or "",
        "n": form["n"],
        "nondegenerate": yes_no(report["regularity"]["nondegenerate"]),
        "three_regular": yes_no(report["regularity"]["three_regular"]),
        "lie_dim": lie["dimension"] if lie else "n/a",
        "hilbert": hilbert_cell(report),
        "koszul": koszul_cell(report),
        "verdict": verdict(report),
    }
