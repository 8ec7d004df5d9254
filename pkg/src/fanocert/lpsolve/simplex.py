"""Exact two-phase simplex with Bland's rule.

Problem form: maximise ``c.x`` subject to rows ``a.x <= b`` or ``a.x = b``
and ``x >= 0``.  Entries are exact field elements.  Matrix entries are
normally ``gmpy2.mpq``; right-hand sides may be elements of Q(sqrt 2), in
which case only the rhs column and the objective value leave Q.

The tableau keeps the identity column that started each row (slack or
artificial), so ``y = c_B B^-1`` can be read off the reduced costs at the
end.  Those duals are the Farkas multipliers for infeasible problems.
"""

from __future__ import annotations

from dataclasses import dataclass

LE, EQ = "L", "E"


@dataclass
class LPResult:
    status: str  # "infeasible", "optimal", "unbounded", "feasible"
    x: list | None = None
    value: object = None
    duals: list | None = None  # per row, in the caller's orientation


class _Tableau:
    def __init__(self, rows, n, zero, one):
        self.zero = zero
        self.one = one
        self.n = n
        m = len(rows)
        self.m = m
        self.flip = []
        # count extra columns
        ncols = n
        slack_of, surplus_of, art_of = {}, {}, {}
        for i, (_, sense, b) in enumerate(rows):
            negative = b < 0
            self.flip.append(-1 if negative else 1)
            if sense == LE:
                if negative:
                    surplus_of[i] = ncols
                    ncols += 1
                else:
                    slack_of[i] = ncols
                    ncols += 1
        for i, (_, sense, b) in enumerate(rows):
            if sense == EQ or i in surplus_of:
                art_of[i] = ncols
                ncols += 1
        self.ncols = ncols
        self.artificial = set(art_of.values())
        self.id_col = [slack_of.get(i, art_of.get(i)) for i in range(m)]
        self.T = []
        self.rhs = []
        self.basis = []
        for i, (coeffs, _, b) in enumerate(rows):
            f = self.flip[i]
            row = [zero] * ncols
            for j, a in coeffs.items():
                row[j] = a if f > 0 else -a
            if i in slack_of:
                row[slack_of[i]] = one
            if i in surplus_of:
                row[surplus_of[i]] = -one
            if i in art_of:
                row[art_of[i]] = one
            self.T.append(row)
            self.rhs.append(b if f > 0 else -b)
            self.basis.append(self.id_col[i])
        self.cost = [zero] * ncols
        self.z = [zero] * ncols
        self.zval = zero

    def set_objective(self, cost):
        zero = self.zero
        self.cost = cost
        z = [-c for c in cost]
        val = zero
        for i, bcol in enumerate(self.basis):
            cb = cost[bcol]
            if cb != 0:
                row = self.T[i]
                for j in range(self.ncols):
                    if row[j] != 0:
                        z[j] += cb * row[j]
                val = val + cb * self.rhs[i]
        self.z = z
        self.zval = val

    def pivot(self, r, c):
        row = self.T[r]
        piv = row[c]
        if piv != self.one:
            inv = self.one / piv
            for j in range(self.ncols):
                if row[j] != 0:
                    row[j] = row[j] * inv
            self.rhs[r] = self.rhs[r] * inv
        nz = [j for j in range(self.ncols) if row[j] != 0]
        br = self.rhs[r]
        for i in range(self.m):
            if i == r:
                continue
            other = self.T[i]
            f = other[c]
            if f != 0:
                for j in nz:
                    other[j] = other[j] - f * row[j]
                self.rhs[i] = self.rhs[i] - f * br
        f = self.z[c]
        if f != 0:
            for j in nz:
                self.z[j] = self.z[j] - f * row[j]
            self.zval = self.zval - f * br
        self.basis[r] = c

    def run(self, allowed) -> str:
        """Maximise the current objective. Bland's rule on both choices."""
        while True:
            enter = None
            for j in range(self.ncols):
                if allowed[j] and self.z[j] < 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            for i in range(self.m):
                a = self.T[i][enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best is None
                        or ratio < best[0]
                        or (ratio == best[0] and self.basis[i] < self.basis[best[1]])
                    ):
                        best = (ratio, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)

    def primal(self) -> list:
        x = [self.zero] * self.n
        for i, bcol in enumerate(self.basis):
            if bcol < self.n:
                x[bcol] = self.rhs[i]
        return x

    def duals(self) -> list:
        # reduced cost of the identity column e_i is y_i - cost_i
        return [
            (self.z[col] + self.cost[col]) * self.flip[i]
            for i, col in enumerate(self.id_col)
        ]


def solve(rows, n, objective=None, zero=0, one=1) -> LPResult:
    """Solve the LP described in the module docstring.

    ``rows`` is a list of ``(coeffs, sense, rhs)`` with ``coeffs`` a dict
    from column index to value.  Without an objective the result is
    ``feasible`` with a basic feasible point, or ``infeasible`` with
    multipliers ``u`` (``u_i >= 0`` on ``<=`` rows) such that
    ``sum u_i a_i >= 0`` componentwise and ``sum u_i b_i < 0``.
    With an objective the ``optimal`` result carries the dual solution.
    """
    tab = _Tableau(rows, n, zero, one)
    if tab.artificial:
        cost = [zero] * tab.ncols
        for j in tab.artificial:
            cost[j] = -one
        tab.set_objective(cost)
        tab.run([True] * tab.ncols)
        if tab.zval < 0:
            return LPResult("infeasible", duals=tab.duals())
        # drive zero-level artificials out of the basis where possible
        for i in range(tab.m):
            if tab.basis[i] in tab.artificial:
                row = tab.T[i]
                for j in range(tab.ncols):
                    if j not in tab.artificial and row[j] != 0:
                        tab.pivot(i, j)
                        break
    if objective is None:
        return LPResult("feasible", x=tab.primal())
    cost = [zero] * tab.ncols
    for j, c in objective.items():
        cost[j] = c
    tab.set_objective(cost)
    allowed = [j not in tab.artificial for j in range(tab.ncols)]
    status = tab.run(allowed)
    if status == "unbounded":
        return LPResult("unbounded", x=tab.primal())
    return LPResult("optimal", x=tab.primal(), value=tab.zval, duals=tab.duals())
