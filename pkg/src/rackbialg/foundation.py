"""Exact scalars, polynomials in hbar, sparse vectors and rational linear algebra.

Everything here is exact.  Scalars are :class:`fractions.Fraction`; a sparse
vector is a plain ``dict`` mapping basis keys to nonzero coefficients, and the
coefficients may be scalars or :class:`HPoly`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

Scalar = Fraction

HBAR = "ħ"


def parse_scalar(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int exactly.  Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(s)
    raise TypeError(f"cannot read a scalar from {type(value).__name__}")


def format_scalar(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class HPoly:
    """Polynomial in hbar with rational coefficients, optionally truncated.

    ``order`` is the highest power kept (``None`` means exact).  Arithmetic
    between two truncated polynomials keeps the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be nonnegative")
            del cs[order + 1:]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def hbar(cls, power: int = 1, order: int | None = None) -> "HPoly":
        return cls([0] * power + [1], order)

    @staticmethod
    def _lift(other):
        if isinstance(other, HPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return HPoly([other])
        return None

    @staticmethod
    def _join(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def truncate(self, order: int | None) -> "HPoly":
        return HPoly(self.coeffs, self._join(self.order, order))

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return HPoly([self.coefficient(i) + o.coefficient(i) for i in range(n)],
                     self._join(self.order, o.order))

    __radd__ = __add__

    def __neg__(self):
        return HPoly([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = self._join(self.order, o.order)
        n = len(self.coeffs) + len(o.coeffs) - 1
        if order is not None:
            n = min(n, order + 1)
        out = [Fraction(0)] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if i + j >= n:
                    break
                out[i + j] += a * b
        return HPoly(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return HPoly([c / other for c in self.coeffs], self.order)
        return NotImplemented

    def __pow__(self, k: int):
        out = HPoly([1], self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"HPoly({[str(c) for c in self.coeffs]}, order={self.order})"

    def __str__(self):
        if not self.coeffs:
            return "0/1"
        parts = []
        for k, c in enumerate(self.coeffs):
            if k == 0:
                parts.append(format_scalar(c))
            elif k == 1:
                parts.append(f"{format_scalar(c)}·{HBAR}")
            else:
                parts.append(f"{format_scalar(c)}·{HBAR}^{k}")
        return " + ".join(parts)


def hpoly_mul(p: HPoly, q: HPoly) -> HPoly:
    return p * q


def coeff_to_json(c):
    """Scalars become ``"p/q"``; hbar-polynomials become their display string."""
    if isinstance(c, HPoly):
        return str(c)
    return format_scalar(c)


# ---------------------------------------------------------------------------
# sparse vectors (dict key -> coefficient)

def add_into(acc: dict, vec: Mapping, scale=1) -> dict:
    """acc += scale * vec, in place; zero entries are removed."""
    if not scale:
        return acc
    for k, v in vec.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        elif k in acc:
            del acc[k]
    return acc


def add_term(acc: dict, key, value) -> None:
    if not value:
        return
    s = acc.get(key, 0) + value
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def clean(vec: Mapping) -> dict:
    return {k: v for k, v in vec.items() if v}


def scale(vec: Mapping, c) -> dict:
    if not c:
        return {}
    return clean({k: c * v for k, v in vec.items()})


def vsub(a: Mapping, b: Mapping) -> dict:
    return add_into(dict(a), b, -1)


def vec_str(vec: Mapping) -> str:
    if not vec:
        return "0"
    return " + ".join(f"({c})*{k}" for k, c in sorted(vec.items(), key=lambda kv: repr(kv[0])))


# ---------------------------------------------------------------------------
# rational power series

def series_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[:n - i]):
                out[i + j] += x * y
    return out


def series_divide(num, den, n):
    """First ``n`` coefficients of num/den; den[0] must be invertible."""
    num = [Fraction(c) for c in num] + [Fraction(0)] * n
    den = [Fraction(c) for c in den] + [Fraction(0)] * n
    if den[0] == 0:
        raise ZeroDivisionError("series denominator has zero constant term")
    out = []
    for k in range(n):
        s = num[k] - sum(out[j] * den[k - j] for j in range(k))
        out.append(s / den[0])
    return out


def exp_coeffs(n):
    return [Fraction(1, factorial(k)) for k in range(n)]


def log1p_coeffs(n):
    """Coefficients of log(1 + s)."""
    return [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n)]


# ---------------------------------------------------------------------------
# exact matrices

class ExactMatrix:
    """Sparse rational matrix; ``entries`` maps (row, col) to nonzero values."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        self.rows = rows
        self.cols = cols
        ents = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry {(r, c)} outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                ents[(r, c)] = v
        self.entries = ents

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        ents = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, ents)

    @classmethod
    def from_row_dicts(cls, row_dicts, cols):
        ents = {(i, j): v for i, r in enumerate(row_dicts) for j, v in r.items()}
        return cls(len(row_dicts), cols, ents)

    @classmethod
    def from_columns(cls, columns, rows):
        ents = {}
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, Mapping) else enumerate(col)
            for i, v in items:
                if v:
                    ents[(i, j)] = v
        return cls(rows, len(columns), ents)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    def to_rows(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def column(self, j):
        return tuple(self.entries.get((i, j), Fraction(0)) for i in range(self.rows))

    def transpose(self):
        return ExactMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vec):
        """Matrix times a dense vector (sequence of length ``cols``)."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return tuple(out)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        ents = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                add_term(ents, (r, c), v * w)
        return ExactMatrix(self.rows, other.cols, ents)

    def __add__(self, other):
        return ExactMatrix(self.rows, self.cols, add_into(dict(self.entries), other.entries))

    def __sub__(self, other):
        return ExactMatrix(self.rows, self.cols, add_into(dict(self.entries), other.entries, -1))

    def __mul__(self, c):
        return ExactMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def is_zero(self):
        return not self.entries

    def rref(self):
        """Reduced row echelon form as ``{pivot_col: row_dict}``."""
        return _rref(self.row_dicts())

    def rank(self) -> int:
        return len(self.rref())

    def kernel_basis(self):
        return _kernel_from_rref(self.rref(), self.cols)

    def solve(self, rhs):
        """One exact solution of ``self @ x = rhs`` (free variables zero), or None."""
        if len(rhs) != self.rows:
            raise ValueError("dimension mismatch")
        rows = self.row_dicts()
        for i, b in enumerate(rhs):
            if b:
                rows[i][self.cols] = Fraction(b)
        piv = _rref(rows)
        if self.cols in piv:
            return None
        x = [Fraction(0)] * self.cols
        for p, row in piv.items():
            x[p] = row.get(self.cols, Fraction(0))
        return tuple(x)


def _rref(row_dicts):
    """Incremental Gauss-Jordan elimination over the rationals.

    Pivot rows are kept fully reduced and normalised; the pivot of each new
    row is its smallest surviving column.  The result is the (unique) reduced
    echelon form of the row space, so bases derived from it are reproducible.
    """
    pivots: dict[int, dict] = {}
    for row in row_dicts:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for p in [c for c in row if c in pivots]:
            f = row.get(p)
            if f:
                add_into(row, pivots[p], -f)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {c: v * inv for c, v in row.items()}
        for q, other in pivots.items():
            f = other.get(p)
            if f:
                add_into(other, row, -f)
        pivots[p] = row
    return dict(sorted(pivots.items()))


def _kernel_from_rref(piv, cols):
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for p, row in piv.items():
            x = row.get(f)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return basis


def kernel_basis(m: ExactMatrix):
    return m.kernel_basis()


def rank(m: ExactMatrix) -> int:
    return m.rank()


def span_rank(vectors, length=None) -> int:
    """Rank of a family of vectors (dense sequences or sparse dicts keyed by int)."""
    rows = []
    for v in vectors:
        if isinstance(v, Mapping):
            rows.append(dict(v))
        else:
            rows.append({i: x for i, x in enumerate(v) if x})
    return len(_rref(rows))


# ---------------------------------------------------------------------------
# check reports

def _jsonable(x):
    if isinstance(x, (Fraction, HPoly)):
        return coeff_to_json(x)
    if isinstance(x, dict):
        return [[_jsonable(k), _jsonable(v)] for k, v in sorted(x.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    return x


class CheckResult:
    """Outcome of one exhaustive check: how many cases ran and which failed."""

    def __init__(self, name: str, checked: int = 0, failures=None, keep: int = 5):
        self.name = name
        self.checked = checked
        self.failures = list(failures or [])
        self.nfailed = len(self.failures)
        self.keep = keep

    def record(self, ok: bool, case=None):
        self.checked += 1
        if not ok:
            self.nfailed += 1
            if len(self.failures) < self.keep:
                self.failures.append(case)

    @property
    def passed(self) -> bool:
        return self.nfailed == 0

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failed": self.nfailed, "failures": _jsonable(self.failures)}

    def __repr__(self):
        return f"CheckResult({self.name}: {'pass' if self.passed else 'FAIL'}, {self.checked} cases)"


class Report:
    def __init__(self, title: str, checks=()):
        self.title = title
        self.checks = list(checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}

    def __repr__(self):
        return f"Report({self.title}: {'pass' if self.passed else 'FAIL'}, {self.checks})"
