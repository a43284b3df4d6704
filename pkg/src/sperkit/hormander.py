"""Cohen-Hormander sign matrices with parametric case splits.

Polynomials are recursive dense (see :mod:`sperkit.mpoly`) with the variable
being eliminated at index 0; every other variable is a parameter.  A sign
matrix for a list of polynomials is a list of rows, one per cell of the line
in increasing order (interval, point, interval, ..., interval), each row
holding the signs of the polynomials on that cell.

The matrix for a list is deduced from the matrix of a list of lower degree:
the derivative of the highest-degree polynomial ``p`` plus every pseudo-
remainder of ``p``.  At a root of any other polynomial the sign of ``p`` is
the sign of the corresponding remainder; between consecutive points ``p`` is
monotone, so it has a root there exactly when its endpoint signs differ.

Whenever a leading coefficient (a polynomial in the parameters) has unknown
sign the computation splits into cases; the result is a quantifier-free
formula over the parameters whose branches are guarded by those sign
assumptions.  Branches whose assumptions are contradictory may produce
arbitrary (but guarded) results and are discarded when detected.
"""
from __future__ import annotations

from typing import Callable

from . import mpoly
from .errors import ResourceLimit
from .formula import FALSE, TRUE, Formula, PAtom, conj, disj

NZ = 2  # known nonzero, sign not yet split


class Inconsistent(Exception):
    pass


def sign_atom(p, s: int) -> Formula:
    """The parameter condition sign(p) = s as a formula."""
    if mpoly.is_const(p):
        v = (p > 0) - (p < 0)
        if s == NZ:
            return TRUE if v else FALSE
        return TRUE if v == s else FALSE
    if s == 0:
        return PAtom(p, "=")
    if s == NZ:
        return PAtom(p, "!=")
    if s > 0:
        return PAtom(p, ">")
    return PAtom(mpoly.neg(p), ">")


def find_sign(ctx: dict, p):
    if mpoly.is_const(p):
        return (p > 0) - (p < 0)
    key, k = mpoly.normalize(p)
    s = ctx.get(key)
    if s is None or s == NZ:
        return s
    return s * k


def assert_sign(ctx: dict, p, s: int) -> dict:
    if mpoly.is_const(p):
        v = (p > 0) - (p < 0)
        if (s == NZ and v == 0) or (s != NZ and v != s):
            raise Inconsistent
        return ctx
    key, k = mpoly.normalize(p)
    s_norm = s if s == NZ else s * k
    old = ctx.get(key)
    if old is not None:
        if old == s_norm or (s_norm == NZ and old != 0):
            return ctx
        if not (old == NZ and s_norm != 0):
            raise Inconsistent
    new = dict(ctx)
    new[key] = s_norm
    return new


class _Engine:
    def __init__(self, max_depth: int, feasible: Callable[[dict], bool] | None = None):
        self.max_depth = max_depth
        self.depth = 0
        self.feasible = feasible

    # -- case splitting ---------------------------------------------------
    def _branch(self, ctx, pol, cases) -> Formula:
        """Split on the sign of pol; cases is a list of (sign, continuation)."""
        live = []
        for s, cont in cases:
            try:
                c = assert_sign(ctx, pol, s)
            except Inconsistent:
                continue
            if self.feasible is not None and not self.feasible(c):
                continue
            live.append((s, cont, c))
        if len(live) == 1 and self.feasible is not None:
            # the context already forces this case, so no guard is needed
            _, cont, c = live[0]
            return cont(c)
        return disj(*(_guard(sign_atom(pol, s), lambda cont=cont, c=c: cont(c))
                      for s, cont, c in live))

    def split_zero(self, ctx, pol, cont_z, cont_nz) -> Formula:
        z = find_sign(ctx, pol)
        if z is not None:
            return cont_z(ctx) if z == 0 else cont_nz(ctx)
        return self._branch(ctx, pol, [(0, cont_z), (NZ, cont_nz)])

    def split_sign(self, ctx, pol, cont) -> Formula:
        s = find_sign(ctx, pol)
        if s != NZ:
            return cont(ctx)
        return self._branch(ctx, pol, [(1, cont), (-1, cont)])

    def split_trichotomy(self, ctx, pol, cont_z, cont_pn) -> Formula:
        return self.split_zero(ctx, pol, cont_z,
                               lambda c: self.split_sign(c, pol, cont_pn))

    # -- matrix construction ----------------------------------------------
    def casesplit(self, dun: list, pols: list, cont, ctx) -> Formula:
        if not pols:
            return self.matrix(dun, cont, ctx)
        p, ops = pols[0], pols[1:]
        if mpoly.var_of(p) != 0:
            return self.split_trichotomy(
                ctx, p,
                lambda c: self.delconst(dun, p, ops, cont, c),
                lambda c: self.delconst(dun, p, ops, cont, c))
        return self.split_trichotomy(
            ctx, mpoly.head(p),
            lambda c: self.casesplit(dun, [mpoly.behead(p)] + ops, cont, c),
            lambda c: self.casesplit(dun + [p], ops, cont, c))

    def delconst(self, dun, p, ops, cont, ctx) -> Formula:
        i = len(dun)
        s = find_sign(ctx, p)

        def cont2(m):
            return cont([row[:i] + [s] + row[i:] for row in m])

        return self.casesplit(dun, ops, cont2, ctx)

    def matrix(self, pols: list, cont, ctx) -> Formula:
        if not pols:
            try:
                return cont([[]])
            except Inconsistent:
                return FALSE
        self.depth += 1
        try:
            if self.depth > self.max_depth:
                raise ResourceLimit(f"sign matrix recursion depth exceeds {self.max_depth}")
            degs = [mpoly.degree(q, 0) for q in pols]
            i = degs.index(max(degs))
            p = pols[i]
            dp = mpoly.diff(p, 0)
            qs = [dp] + pols[:i] + pols[i + 1:]
            gs = [self.pdivide_pos(ctx, p, q) for q in qs]

            def cont2(m):
                return cont([row[1:i + 1] + [row[0]] + row[i + 1:] for row in m])

            return self.casesplit([], qs + gs, lambda m: dedmatrix(cont2, m), ctx)
        finally:
            self.depth -= 1

    @staticmethod
    def pdivide_pos(ctx, p, q):
        a = mpoly.head(q, 0)
        k, r = mpoly.pdivide(p, q, 0)
        s = find_sign(ctx, a)
        if s == 0 or s is None:
            raise Inconsistent
        if s == 1 or k % 2 == 0:
            return r
        if s == -1:
            return mpoly.neg(r)
        return mpoly.mul(a, r)


def _guard(cond: Formula, thunk: Callable[[], Formula]) -> Formula:
    if isinstance(cond, type(FALSE)):
        return FALSE
    try:
        body = thunk()
    except Inconsistent:
        return FALSE
    return conj(cond, body)


def _infer_psign(row: list, l: int) -> list:
    pd, qd = row[:l], row[l:]
    for j, s in enumerate(pd):
        if s == 0:
            return [qd[j]] + pd
    return [NZ] + pd


def _condense(rows: list) -> list:
    out = [rows[0]]
    for k in range(1, len(rows) - 1, 2):
        if 0 in rows[k]:
            out.append(rows[k])
            out.append(rows[k + 1])
    return out


def _infer_isign(rows: list) -> list:
    out = [rows[0]]
    for k in range(1, len(rows) - 1, 2):
        left, right = rows[k - 1][0], rows[k + 1][0]
        rest = rows[k][1:]
        if left == NZ or right == NZ:
            raise Inconsistent
        if left == 0 and right == 0:
            raise Inconsistent
        if left == 0:
            out.append([right] + rest)
        elif right == 0 or left == right:
            out.append([left] + rest)
        else:
            out.append([left] + rest)
            out.append([0] + rest)
            out.append([right] + rest)
        out.append(rows[k + 1])
    return out


def dedmatrix(cont, mat: list) -> Formula:
    l = len(mat[0]) // 2
    mat1 = _condense([_infer_psign(row, l) for row in mat])
    first_dp = mat1[0][1]
    last_dp = mat1[-1][1]
    if first_dp in (0, NZ) or last_dp in (0, NZ):
        raise Inconsistent
    mat2 = [[-first_dp]] + mat1 + [[last_dp]]
    mat3 = _infer_isign(mat2)[1:-1]
    return cont(_condense([[row[0]] + row[2:] for row in mat3]))


def sign_matrix_qe(polys: list, test: Callable[[dict], bool], ctx: dict | None = None,
                   max_depth: int = 32,
                   feasible: Callable[[dict], bool] | None = None) -> Formula:
    """Quantifier-free equivalent of "there is a value of variable 0 at which
    ``test`` holds", where ``test`` receives a map poly -> sign on one cell.

    The result is a formula in the parameters (PAtom atoms).  ``feasible``, if
    given, must decide exactly whether a sign context is satisfiable; it is
    used to prune case splits.
    """
    polys = list(dict.fromkeys(polys))
    engine = _Engine(max_depth, feasible)

    def cont(mat):
        for row in mat:
            if test(dict(zip(polys, row))):
                return TRUE
        return FALSE

    return engine.casesplit([], polys, cont, dict(ctx or {}))


def sign_matrix(polys: list, max_depth: int = 64) -> list:
    """The sign matrix of univariate polynomials with rational coefficients
    (variable 0 only); rows alternate interval/point starting and ending with
    an interval."""
    polys = list(polys)
    engine = _Engine(max_depth)
    box = []

    def cont(mat):
        box.append(mat)
        return TRUE

    engine.casesplit([], polys, cont, {})
    if len(box) != 1:
        raise ValueError("sign_matrix requires polynomials without parameters")
    return box[0]
