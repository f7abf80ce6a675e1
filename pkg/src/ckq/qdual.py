"""Triangular functionals dual to the quantum matrix algebra.

The dual algebra is generated by two triangular matrices of linear
functionals on the quantum group: an upper family read off the flipped
braid tensor and a lower family read off its inverse.  Degree one fixes
every value; longer monomials are evaluated by threading the functional
rows through the word, one matrix column per generator.

Weight-tagged generators never force an inverse nilpotent into a
coefficient: each column value is taken whole from the paired tensor and
split over the entry's weight pattern, so the leftover weight stays in
the coefficient ring where it is well defined.
"""

from itertools import product

from .ckclassical import weight_pattern_symplectic
from .coeffring import DualElement, JSignature
from .freealg import GenSymbol, NCPoly, word_key
from .qgroup import QuantumCKGroup, build_t
from .rmatrix import contract, frt_c, frt_r, r_plus_minus

FUNCTIONAL_FAMILIES = ("upper", "lower")


def upper_symbol(i: int, k: int) -> GenSymbol:
    return GenSymbol("upper", i, k)


def lower_symbol(i: int, k: int) -> GenSymbol:
    return GenSymbol("lower", i, k)


def dual_symbols(N: int) -> tuple:
    """All triangular functional generators, upper block first."""
    upper = [upper_symbol(i, k)
             for i in range(1, N + 1) for k in range(i, N + 1)]
    lower = [lower_symbol(i, k)
             for i in range(1, N + 1) for k in range(1, i + 1)]
    return tuple(upper + lower)


def entry_positions(N: int) -> tuple:
    return tuple((k, l) for k in range(1, N + 1) for l in range(1, N + 1))


def entry_words(N: int, degree: int):
    """All products of assembled matrix entries up to a degree, unit first."""
    pos = entry_positions(N)
    for d in range(degree + 1):
        for word in product(pos, repeat=d):
            yield word


def _check_functional(sym: GenSymbol):
    if sym.family not in FUNCTIONAL_FAMILIES or sym.mask or sym.copy:
        raise ValueError("not a functional generator: %s" % (sym,))


def _add_to(out: dict, key, val):
    acc = out.get(key)
    t = val if acc is None else acc + val
    if t:
        out[key] = t
    elif acc is not None:
        del out[key]


def _position_counit(n: int, positions) -> DualElement:
    for k, l in positions:
        if k != l:
            return DualElement.zero(n)
    return DualElement.one(n)


# ------------------------------------------------------------ the pairing


class DualPairing:
    """Evaluation context for one signature: tensors, patterns, caches."""

    __slots__ = ("j", "N", "n", "r_plus", "r_minus", "metric", "_pattern",
                 "_hops", "_hops_rev", "_slices", "_columns", "_columns_rev",
                 "_vcolumns", "_tmat")

    def __init__(self, j: JSignature):
        if j.N < 3:
            raise ValueError("functional layer defined for N >= 3")
        self.j = j
        self.N = j.N
        self.n = j.n
        braid = contract(frt_r(self.N, self.n), j)
        self.r_plus, self.r_minus = r_plus_minus(braid)
        self.metric = contract(frt_c(self.N, self.n), j)
        self._pattern = weight_pattern_symplectic(j)
        self._hops = {}
        self._hops_rev = {}
        self._slices = {}
        for fam in FUNCTIONAL_FAMILIES:
            hop: dict = {}
            rev: dict = {}
            sli: dict = {}
            for (o1, o2, i1, i2), val in self.tensor(fam).data.items():
                hop.setdefault((o1, o2), []).append((i1, i2, val))
                rev.setdefault((i1, i2), []).append((o1, o2, val))
                sli.setdefault(o2, []).append((o1, i1, i2, val))
            self._hops[fam] = hop
            self._hops_rev[fam] = rev
            self._slices[fam] = sli
        self._columns = {}
        self._columns_rev = {}
        self._vcolumns = {}
        self._tmat = None

    def tensor(self, family):
        """The degree-one value table of one family, as a two-leg tensor."""
        if family == "upper":
            return self.r_plus
        if family == "lower":
            return self.r_minus
        raise ValueError("unknown functional family %r" % (family,))

    def entry_matrix(self):
        """The split generating matrix of the paired quantum group."""
        if self._tmat is None:
            self._tmat = build_t(self.j)
        return self._tmat

    # -- one matrix column through a stack of functional rows ----------

    def _column(self, fams: tuple, avec: tuple, k: int, l: int) -> dict:
        """Transitions avec -> cvec across one assembled entry (k, l)."""
        key = (fams, avec, k, l)
        got = self._columns.get(key)
        if got is not None:
            return got
        states = {((), k): DualElement.one(self.n)}
        for r, fam in enumerate(fams):
            hop = self._hops[fam]
            a = avec[r]
            new: dict = {}
            for (pre, y), acc in states.items():
                for x2, y2, val in hop.get((a, y), ()):
                    _add_to(new, (pre + (x2,), y2), acc * val)
            states = new
        got = {pre: acc for (pre, y), acc in states.items() if y == l}
        self._columns[key] = got
        return got

    def _column_rev(self, fams: tuple, cvec: tuple, k: int, l: int) -> dict:
        """Same transitions keyed from the produced side; used as an oracle."""
        key = (fams, cvec, k, l)
        got = self._columns_rev.get(key)
        if got is not None:
            return got
        states = {((), l): DualElement.one(self.n)}
        for r in range(len(fams) - 1, -1, -1):
            rev = self._hops_rev[fams[r]]
            c = cvec[r]
            new: dict = {}
            for (suf, y), acc in states.items():
                for x1, y1, val in rev.get((c, y), ()):
                    _add_to(new, ((x1,) + suf, y1), val * acc)
            states = new
        got = {pre: acc for (pre, y), acc in states.items() if y == k}
        self._columns_rev[key] = got
        return got

    # -- weight bookkeeping --------------------------------------------

    def _valuate(self, value: DualElement, k: int, l: int,
                 mask: int) -> DualElement:
        """One weight-tagged generator's share of a column value.

        Each term of the column value is charged to the first pattern
        weight it contains; the leftover nilpotent factor stays in the
        coefficient, so no inverse weight is ever formed.
        """
        masks = self._pattern[(k, l)]
        out: dict = {}
        for m, c in value.terms.items():
            target = None
            for w in masks:
                if w & m == w:
                    target = w
                    break
            if target is None:
                raise ArithmeticError(
                    "column value carries a weight outside the entry pattern")
            if target != mask:
                continue
            _add_to(out, m ^ target, c)
        return DualElement(self.n, out)

    def _column_at(self, fams: tuple, avec: tuple, sym: GenSymbol) -> dict:
        key = (fams, avec, sym)
        got = self._vcolumns.get(key)
        if got is None:
            got = {}
            for cvec, col in self._column(fams, avec, sym.i, sym.k).items():
                v = self._valuate(col, sym.i, sym.k, sym.mask)
                if v:
                    got[cvec] = v
            self._vcolumns[key] = got
        return got

    # -- word values -----------------------------------------------------

    def _word_value(self, fams, avec, bvec, word) -> DualElement:
        states = {avec: DualElement.one(self.n)}
        for g in word:
            new: dict = {}
            for cur, acc in states.items():
                for cvec, val in self._column_at(fams, cur, g).items():
                    _add_to(new, cvec, acc * val)
            states = new
            if not states:
                break
        got = states.get(bvec)
        return DualElement.zero(self.n) if got is None else got

    def _word_value_right(self, fams, avec, bvec, word) -> DualElement:
        """Right-folded evaluation of the same value; cross-check path."""
        states = {bvec: DualElement.one(self.n)}
        for g in reversed(word):
            new: dict = {}
            for cur, acc in states.items():
                for pvec, col in self._column_rev(fams, cur, g.i, g.k).items():
                    v = self._valuate(col, g.i, g.k, g.mask)
                    if v:
                        _add_to(new, pvec, v * acc)
            states = new
            if not states:
                break
        got = states.get(avec)
        return DualElement.zero(self.n) if got is None else got

    def _entry_word_value(self, fams, avec, bvec, positions) -> DualElement:
        """Value on a product of assembled entries (no weight splitting)."""
        states = {avec: DualElement.one(self.n)}
        for k, l in positions:
            new: dict = {}
            for cur, acc in states.items():
                for cvec, val in self._column(fams, cur, k, l).items():
                    _add_to(new, cvec, acc * val)
            states = new
            if not states:
                break
        got = states.get(bvec)
        return DualElement.zero(self.n) if got is None else got

    # -- public evaluation -------------------------------------------

    def _functional_terms(self, x) -> list:
        if isinstance(x, GenSymbol):
            x = (x,)
        if isinstance(x, tuple):
            x = NCPoly(self.n, {x: DualElement.one(self.n)})
        if not isinstance(x, NCPoly):
            raise TypeError("cannot pair %r" % (x,))
        out = []
        for w in sorted(x.terms, key=word_key):
            for g in w:
                _check_functional(g)
            out.append((x.terms[w], w))
        return out

    def _matrix_terms(self, x) -> list:
        if isinstance(x, GenSymbol):
            x = (x,)
        if isinstance(x, tuple):
            x = NCPoly(self.n, {x: DualElement.one(self.n)})
        if not isinstance(x, NCPoly):
            raise TypeError("cannot pair %r" % (x,))
        out = []
        for w in sorted(x.terms, key=word_key):
            for g in w:
                if g.family != "mat" or g.copy:
                    raise ValueError("not a matrix generator: %s" % (g,))
            out.append((x.terms[w], w))
        return out

    def pair(self, functional, element) -> DualElement:
        """Evaluate a functional word/polynomial on an algebra element.

        The functional side lives in the upper/lower families; the
        element side is anything the quantum matrix algebra produces
        (split generators, assembled entries, relation polynomials).
        """
        total = DualElement.zero(self.n)
        for lc, lw in self._functional_terms(functional):
            fams = tuple(g.family for g in lw)
            avec = tuple(g.i for g in lw)
            bvec = tuple(g.k for g in lw)
            for tc, tw in self._matrix_terms(element):
                val = self._word_value(fams, avec, bvec, tw)
                if val:
                    total = total + lc * tc * val
        return total

    def pair_right_folded(self, functional, element) -> DualElement:
        """Same value folded from the other end; evaluation-order oracle."""
        total = DualElement.zero(self.n)
        for lc, lw in self._functional_terms(functional):
            fams = tuple(g.family for g in lw)
            avec = tuple(g.i for g in lw)
            bvec = tuple(g.k for g in lw)
            for tc, tw in self._matrix_terms(element):
                val = self._word_value_right(fams, avec, bvec, tw)
                if val:
                    total = total + lc * tc * val
        return total

    def degree_one(self, family) -> dict:
        """Values on assembled entries, keyed like the paired tensor."""
        T = self.entry_matrix()
        out = {}
        for i in range(1, self.N + 1):
            for jj in range(1, self.N + 1):
                sym = GenSymbol(family, i, jj)
                for k in range(1, self.N + 1):
                    for l in range(1, self.N + 1):
                        val = self.pair(sym, T.entry(k, l))
                        if val:
                            out[(i, k, jj, l)] = val
        return out

    # -- batched two-row transitions (the exchange-law workhorse) ------

    def _pair_matrix(self, fams: tuple, k: int, l: int) -> dict:
        """All two-row transitions ((x1,x2) -> (y1,y2)) across entry (k,l)."""
        f1, f2 = fams
        out: dict = {}
        for x1, y1, mid, v1 in self._slices[f1].get(k, ()):
            for x2, y2, end, v2 in self._slices[f2].get(mid, ()):
                if end == l:
                    _add_to(out, ((x1, x2), (y1, y2)), v1 * v2)
        return out


def _composite_identity(N: int, n: int) -> dict:
    one = DualElement.one(n)
    return {((a, b), (a, b)): one
            for a in range(1, N + 1) for b in range(1, N + 1)}


def _mat_mul(A: dict, B: dict) -> dict:
    by_row: dict = {}
    for (r, c), val in B.items():
        by_row.setdefault(r, []).append((c, val))
    out: dict = {}
    for (r, m), u in A.items():
        for c, v in by_row.get(m, ()):
            _add_to(out, (r, c), u * v)
    return out


def _fold_word(ctx: DualPairing, fams: tuple, word: tuple) -> dict:
    """Pairing values of every two-row functional word against one entry word."""
    if not word:
        return _composite_identity(ctx.N, ctx.n)
    acc = ctx._pair_matrix(fams, *word[0])
    for pos in word[1:]:
        acc = _mat_mul(acc, ctx._pair_matrix(fams, *pos))
    return acc


# ------------------------------------------------------------ verification


def verify_ll(j: JSignature, degree: int = 2) -> dict:
    """Exchange law between two functional rows, checked as functionals.

    For every family pair and every product of assembled entries up to
    the degree, both sides of the braid exchange are paired against the
    word and compared exactly.
    """
    ctx = DualPairing(j)
    N = ctx.N
    rp = ctx.r_plus
    rp_rows: dict = {}
    for (a, b, k, l), val in rp.data.items():
        rp_rows.setdefault((a, b), []).append(((k, l), val))
    failures = []
    identities = 0
    for fams in (("upper", "upper"), ("lower", "lower"), ("upper", "lower")):
        rev = (fams[1], fams[0])
        for word in entry_words(N, degree):
            A = _fold_word(ctx, fams, word)
            B = _fold_word(ctx, rev, word)
            a_rows: dict = {}
            for (row, col), val in A.items():
                a_rows.setdefault(row, []).append((col, val))
            lhs: dict = {}
            for (i, jj, a, b), val in rp.data.items():
                for col, av in a_rows.get((a, b), ()):
                    _add_to(lhs, ((i, jj), col), val * av)
            rhs: dict = {}
            for ((jj, i), (b, a)), bv in B.items():
                for col, val in rp_rows.get((a, b), ()):
                    _add_to(rhs, ((i, jj), col), bv * val)
            identities += 1
            if lhs != rhs:
                failures.append({"families": fams, "word": word})
    return {"ok": not failures, "identities": identities,
            "failures": failures}


def verify_l_additional(j: JSignature, degree: int = 2) -> dict:
    """Metric and diagonal laws for the functional rows, as functionals.

    Checks, against every product of assembled entries up to the degree:
    each family is orthogonal for the transposed metric and its inverse
    (one factor of the sandwich transposed, in either position, exactly
    as the generating matrix is); opposite diagonal generators are
    mutually inverse; the full upper diagonal multiplies to the unit
    functional.
    """
    ctx = DualPairing(j)
    N, n = ctx.N, ctx.n
    ct = ctx.metric.transpose()
    cti = ct.inverse()
    failures = []
    identities = 0
    words = tuple(entry_words(N, degree))
    for fam in FUNCTIONAL_FAMILIES:
        fams = (fam, fam)
        for word in words:
            A = _fold_word(ctx, fams, word)
            eps = _position_counit(n, word)
            for label, M in (("metric", ct), ("inverse-metric", cti)):
                right: dict = {}
                left: dict = {}
                for ((x1, x2), (y1, y2)), av in A.items():
                    c = M.entry(y1, y2)
                    if c:
                        _add_to(right, (x1, x2), c * av)
                    c = M.entry(x1, x2)
                    if c:
                        _add_to(left, (y1, y2), c * av)
                expect: dict = {}
                if eps:
                    for i in range(1, N + 1):
                        for k in range(1, N + 1):
                            e = M.entry(i, k)
                            if e:
                                expect[(i, k)] = e * eps
                for law, vals in (("sandwich-right", right),
                                  ("sandwich-left", left)):
                    identities += 1
                    if vals != expect:
                        failures.append({"family": fam, "metric": label,
                                         "law": law, "word": word})
    for k in range(1, N + 1):
        for fams in (("upper", "lower"), ("lower", "upper")):
            for word in words:
                val = ctx._entry_word_value(fams, (k, k), (k, k), word)
                identities += 1
                if val != _position_counit(n, word):
                    failures.append({"law": "diagonal-inverse", "slot": k,
                                     "families": fams, "word": word})
    diag = tuple(range(1, N + 1))
    fams = ("upper",) * N
    for word in words:
        val = ctx._entry_word_value(fams, diag, diag, word)
        identities += 1
        if val != _position_counit(n, word):
            failures.append({"law": "diagonal-product", "word": word})
    return {"ok": not failures, "identities": identities,
            "failures": failures}


def relations_pair_to_zero(j: JSignature, max_len: int = 2) -> dict:
    """Every functional word kills every defining relation.

    This is the statement that the degree-one tables extend to
    functionals on the quotient algebra, not merely on the free one.
    """
    ctx = DualPairing(j)
    rels = QuantumCKGroup(j).relations()
    syms = dual_symbols(ctx.N)
    words = [()]
    if max_len >= 1:
        words += [(s,) for s in syms]
    if max_len >= 2:
        words += [(s, t) for s in syms for t in syms]
    checked = 0
    failures = []
    for r, source in rels.tagged():
        for w in words:
            checked += 1
            if ctx.pair(w, r):
                failures.append({"source": source, "word": w})
    return {"ok": not failures, "checked": checked, "failures": failures}


def verify_antipode_duality(j: JSignature) -> dict:
    """Degree-one mirror law: pairing the twisted-transpose functional
    against an entry equals pairing the functional against the antipode
    entry."""
    ctx = DualPairing(j)
    N = ctx.N
    C = ctx.metric
    ci = C.inverse()
    ct = C.transpose()
    cti = ct.inverse()
    mismatches = 0
    checked = 0
    rng = range(1, N + 1)
    for fam in FUNCTIONAL_FAMILIES:
        R = ctx.tensor(fam)
        for i in rng:
            for jj in rng:
                for k in rng:
                    for l in rng:
                        lhs = DualElement.zero(ctx.n)
                        for a in rng:
                            u = ct.entry(i, a)
                            if not u:
                                continue
                            for b in rng:
                                v = cti.entry(b, jj)
                                if v:
                                    lhs = lhs + u * v * R.get(b, k, a, l)
                        rhs = DualElement.zero(ctx.n)
                        for c in rng:
                            u = C.entry(k, c)
                            if not u:
                                continue
                            for d in rng:
                                v = ci.entry(d, l)
                                if v:
                                    rhs = rhs + u * v * R.get(i, d, jj, c)
                        checked += 1
                        if lhs != rhs:
                            mismatches += 1
    return {"ok": mismatches == 0, "checked": checked,
            "mismatches": mismatches}


# ------------------------------------------------------- structure maps


def dual_coproduct(sym: GenSymbol, N: int) -> tuple:
    """Matrix-style splitting of one functional generator."""
    _check_functional(sym)
    return tuple((GenSymbol(sym.family, sym.i, m), GenSymbol(sym.family, m, sym.k))
                 for m in range(1, N + 1))


def dual_counit(sym: GenSymbol, n: int) -> DualElement:
    _check_functional(sym)
    if sym.i == sym.k:
        return DualElement.one(n)
    return DualElement.zero(n)


def dual_antipode(ctx: DualPairing, sym: GenSymbol) -> tuple:
    """(coefficient, generator): the metric twist of the transpose.

    Entries mirror across the antidiagonal with an invertible scalar, so
    the antipode of a generator is again a scalar multiple of a single
    generator of the same family.
    """
    _check_functional(sym)
    N = ctx.N
    ct = ctx.metric.transpose()
    cti = ct.inverse()
    im = N + 1 - sym.i
    km = N + 1 - sym.k
    coeff = ct.entry(sym.i, im) * cti.entry(km, sym.k)
    return coeff, GenSymbol(sym.family, km, im)


def formal_l_pattern(j: JSignature) -> dict:
    """Documentation-only inverse-weight shape of the functional matrices.

    Mirrors the weight pattern of the generating matrix: each entry
    lists one term per weight, tagged with the slot indices whose
    weights would appear inverted.  Terms with a nilpotent weight are
    marked pairing-defined: their functionals only exist through the
    pairing, never as coefficient-ring elements.
    """
    pat = weight_pattern_symplectic(j)
    out = {}
    for (i, k) in sorted(pat):
        terms = []
        for mask in pat[(i, k)]:
            slots = tuple(b + 1 for b in range(j.n) if (mask >> b) & 1)
            terms.append({"mask": mask, "slots": slots,
                          "pairing_defined": mask != 0})
        out[(i, k)] = tuple(terms)
    return out
