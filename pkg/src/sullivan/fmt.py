"""Small text helpers for reports."""

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def sup(n: int) -> str:
    return str(n).translate(_SUP)


def gl(p: int) -> str:
    return f"GL({p},ℚ)"


def matrix(rows) -> str:
    """[1 0; 0 1] style, with the shape spelled out when empty."""
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return f"0 ({rows.shape[0]}×{rows.shape[1]})"
    return "[" + "; ".join(" ".join(str(x) for x in r) for r in rows) + "]"
