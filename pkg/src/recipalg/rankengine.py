"""Exact-by-construction rank computations for spans of formal linear
combinations of generator monomials, realized as rational functions in the
module generators and t.

Probabilistic mode realizes every vector at P random points of GF(q^m)
(variables and t alike), computes the rank of the evaluation matrix, and
requires all trials to agree; disagreement escalates the extension degree.
The computed rank can never exceed the true rank, and by Schwartz-Zippel
it falls below with probability at most about n_rows * d * q^(rn) / q^m
per trial, since each realized function is a ratio of polynomials of total
degree at most d * q^(rn).

Exact mode clears every vector to the common factored denominator and runs
fraction-exact Gaussian elimination on sparse numerator coefficients over
F = F_q(t).
"""

from __future__ import annotations

import numpy as np

from .errors import EngineDisagreement
from .fields import RatFunc, RatFuncField
from .symalg import FracContext, PolyContext
from .zech import TABLE_LIMIT, default_extension_degree, get_zech_field


class RankEngine:
    def __init__(self, mode, seed=0, trials=3, ext_m=None, margin=8, escalations=2):
        if mode not in ("prob", "exact"):
            raise ValueError("mode must be 'prob' or 'exact'")
        self.mode = mode
        self.seed = seed
        self.trials = trials
        self.ext_m = ext_m
        self.margin = margin
        self.escalations = escalations
        self._cache = {}

    @classmethod
    def probabilistic(cls, seed=0, trials=3, ext_m=None, margin=8, escalations=2):
        return cls("prob", seed=seed, trials=trials, ext_m=ext_m, margin=margin,
                   escalations=escalations)

    @classmethod
    def exact(cls):
        return cls("exact")

    def describe(self):
        if self.mode == "exact":
            return {"mode": "exact"}
        return {
            "mode": "prob",
            "seed": self.seed,
            "trials": self.trials,
            "ext_m": self.ext_m,
            "margin": self.margin,
        }

    def failure_bound(self, n_vectors, degree, space, m):
        """Documented Schwartz-Zippel bound per trial."""
        return n_vectors * max(degree, 1) * space.size / float(space.q**m)

    # ------------------------------------------------------------------
    def rank_of(self, space, vectors, cache_key=None):
        """vectors: iterable of dicts {monomial: coefficient}; a monomial is
        a sorted tuple of nonzero module elements, a coefficient is a GF(q)
        code or a RatFunc over GF(q)."""
        if cache_key is not None and cache_key in self._cache:
            return self._cache[cache_key]
        vecs = [dict(v) for v in vectors if v]
        if not vecs:
            rank = 0
        elif self.mode == "exact":
            rank = self._rank_exact(space, vecs)
        else:
            rank = self._rank_prob(space, vecs)
        if cache_key is not None:
            self._cache[cache_key] = rank
        return rank

    # ------------------------------------------------------------------
    # probabilistic mode
    def _rank_prob(self, space, vecs):
        q = space.q
        m0 = self.ext_m or default_extension_degree(q)
        attempts = []
        for attempt in range(self.escalations + 1):
            m = m0 * (2**attempt)
            if q**m > TABLE_LIMIT:
                break
            ranks = [
                self._prob_trial(space, vecs, m, attempt, trial)
                for trial in range(self.trials)
            ]
            attempts.append((m, ranks))
            if len(set(ranks)) == 1:
                return ranks[0]
        raise EngineDisagreement(f"trials disagree after escalation: {attempts}")

    def _prob_trial(self, space, vecs, m, attempt, trial):
        zf = get_zech_field(space.q, m)
        monos = sorted({mono for v in vecs for mono in v})
        gens = sorted({g for mono in monos for g in mono})
        gen_index = {g: i for i, g in enumerate(gens)}
        mono_index = {mo: i for i, mo in enumerate(monos)}
        coeffs = {}
        for v in vecs:
            for c in v.values():
                key = c if isinstance(c, int) else c
                coeffs.setdefault(key, c)
        P = min(len(vecs), len(monos)) + self.margin
        nvars = space.dim

        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=(attempt, trial))
        )
        # sample points: one column per point, rows = variables then t
        codes = rng.integers(0, zf.Q, size=(nvars + 1, P), dtype=np.int64)
        den_polys = [
            c.den for c in coeffs.values() if isinstance(c, RatFunc)
        ]
        C = np.array([[g[j] for j in range(nvars)] for g in gens], dtype=np.int64)

        def form_logs(cols):
            X = zf.log[codes[:, cols]]
            acc = np.full((len(gens), len(cols)), -1, dtype=np.int64)
            for j in range(nvars):
                cl = zf.const_log[C[:, j]]
                term = zf.vmul(cl[:, None], X[j][None, :])
                acc = zf.vadd(acc, term)
            return acc

        all_cols = np.arange(P)
        FV = form_logs(all_cols)
        for _ in range(200):
            bad = (FV < 0).any(axis=0)
            T = zf.log[codes[nvars]]
            for den in den_polys:
                bad |= zf.vpoly_eval(den, T) < 0
            if not bad.any():
                break
            cols = np.nonzero(bad)[0]
            codes[:, cols] = rng.integers(0, zf.Q, size=(nvars + 1, len(cols)))
            FV[:, cols] = form_logs(cols)
        else:
            raise EngineDisagreement("could not sample denominator-free points")

        GVAL = (-FV) % zf.Qm1  # logs of the generator values 1/l_v
        M = np.zeros((len(monos), P), dtype=np.int64)
        for mo, i in mono_index.items():
            for g in mo:
                M[i] += GVAL[gen_index[g]]
        M %= zf.Qm1

        T = zf.log[codes[nvars]]
        coeff_rows = {}
        for key, c in coeffs.items():
            if isinstance(c, RatFunc):
                vnum = zf.vpoly_eval(c.num, T)
                vden = zf.vpoly_eval(c.den, T)
                coeff_rows[key] = zf.vmul(vnum, (zf.Qm1 - vden) % zf.Qm1)
            else:
                coeff_rows[key] = np.full(P, zf.s_from_code(c), dtype=np.int64)

        R = np.full((len(vecs), P), -1, dtype=np.int64)
        for i, v in enumerate(vecs):
            row = R[i]
            for mo, c in v.items():
                row = zf.vadd(row, zf.vmul(coeff_rows[c], M[mono_index[mo]]))
            R[i] = row
        return zf.rank_of_matrix(R)

    # ------------------------------------------------------------------
    # exact mode
    def _rank_exact(self, space, vecs):
        F = RatFuncField(space.gf)
        fctx = FracContext(PolyContext(F, space.var_names))
        gen_cache = {}

        def gen_inv(g):
            if g not in gen_cache:
                gen_cache[g] = fctx.gen_inverse(g)
            return gen_cache[g]

        realized = []
        for v in vecs:
            acc = fctx.zero
            for mono, c in v.items():
                term = fctx.one
                for g in mono:
                    term = term * gen_inv(g)
                coeff = c if isinstance(c, RatFunc) else F.scalar(c)
                acc = acc + fctx.from_coeff(coeff) * term
            realized.append(acc)
        # clear to the common factored denominator
        common = {}
        for fr in realized:
            for f, mult in fr.den.items():
                common[f] = max(common.get(f, 0), mult)
        pctx = fctx.pctx
        rows = []
        for fr in realized:
            num = fr.num
            for f, mult in common.items():
                extra = mult - fr.den.get(f, 0)
                if extra:
                    fp = pctx.form_poly(f, F.scalar)
                    for _ in range(extra):
                        num = num * fp
            rows.append(dict(num.terms))
        return _sparse_rank(F, rows)


def _sparse_rank(F, rows):
    """Gaussian elimination on sparse rows {column: coefficient} over a
    field context; columns are any orderable keys."""
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                f = row.pop(c)
                for cc, v in pivots[c].items():
                    if cc == c:
                        continue
                    nv = F.sub(row.get(cc, F.zero), F.mul(f, v))
                    if F.is_zero(nv):
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
            else:
                inv = F.inv(row[c])
                pivots[c] = {cc: F.mul(v, inv) for cc, v in row.items()}
                rank += 1
                break
    return rank
