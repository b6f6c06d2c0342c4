"""Partition-basis representation of the deformed boson pair algebra.

Basis vectors are partitions.  The raising operator for p_m adds horizontal
m-strips; the dual raising operator adds vertical strips.  The lowering
operator for q_n removes boxes in two horizontal-strip stages, with the
second stage weighted by powers of t:

    act_q(n) = sum_{j=0}^{n} t^j * (remove an (n-j)-strip, then a j-strip)

For n = 1 this splits as the two one-box-removal summands with weights 1
and t; the split pieces satisfy [Q1, P1] = Id and [Q2, P1] = t*Id.
"""

from .reporting import VerifyRecord
from .scalars import LaurentPoly, qint
from .heisenberg import NCPoly

# A partition is a weakly decreasing tuple of positive ints.


def partition(parts):
    p = tuple(int(x) for x in parts)
    if any(x <= 0 for x in p):
        raise ValueError(f"partition entries must be positive, got {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"partition entries must be weakly decreasing, got {p}")
    return p


def render_partition(lam):
    return "[" + ",".join(str(x) for x in lam) + "]"


def parse_partition(text):
    text = text.strip()
    if text in ("∅", "[]", ""):
        return ()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    try:
        return partition(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad partition literal {text!r}: {exc}") from None


def partitions_of(n):
    """Partitions of n in reverse lexicographic order, e.g. for n=4:
    (4), (3,1), (2,2), (2,1,1), (1,1,1,1)."""
    if n < 0:
        return []
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maxpart), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n if n else 1, [])
    return out


def partitions_up_to(n):
    """All partitions of size 0..n, size ascending, reverse-lex within size."""
    out = []
    for k in range(n + 1):
        out.extend(partitions_of(k))
    return out


def add_horizontal_strips(lam, m):
    """Partitions mu >= lam where mu/lam is a horizontal m-strip.

    The strip condition is the interleaving lam[i-1] >= mu[i] >= lam[i],
    with one optional new bottom row of length <= lam[-1].
    """
    if m < 0:
        return []
    if m == 0:
        return [tuple(lam)]
    lam = tuple(lam)
    if not lam:
        return [(m,)]
    out = []

    def rec(i, remaining, built):
        if i == len(lam):
            if remaining == 0:
                out.append(tuple(built))
            elif remaining <= lam[-1]:
                out.append(tuple(built + [remaining]))
            return
        lo = lam[i]
        hi = min(lam[i - 1] if i > 0 else lam[0] + remaining, lam[i] + remaining)
        for new in range(lo, hi + 1):
            rec(i + 1, remaining - (new - lam[i]), built + [new])

    rec(0, m, [])
    return out


def remove_horizontal_strips(lam, m):
    """Partitions mu <= lam where lam/mu is a horizontal m-strip."""
    if m < 0:
        return []
    if m == 0:
        return [tuple(lam)]
    lam = list(lam)
    out = []

    def rec(i, remaining, built):
        if i == len(lam):
            if remaining == 0:
                out.append(tuple(x for x in built if x > 0))
            return
        cur = lam[i]
        below = lam[i + 1] if i + 1 < len(lam) else 0
        # new length between below (strip condition: removed boxes must sit
        # strictly right of the next row's boxes) and cur
        for new in range(cur, below - 1, -1):
            take = cur - new
            if take > remaining:
                continue
            rec(i + 1, remaining - take, built + [new])

    rec(0, m, [])
    return [p for p in out if _is_partition(p)]


def add_vertical_strips(lam, m):
    """Partitions mu >= lam where mu/lam is a vertical m-strip."""
    if m < 0:
        return []
    if m == 0:
        return [tuple(lam)]
    lam = list(lam)
    rows = len(lam) + m
    out = []

    def rec(i, remaining, built):
        if remaining == 0:
            tail = [x for x in lam[i:] if x > 0]
            cand = tuple(built + tail)
            if _is_partition(cand):
                out.append(cand)
            return
        if i >= rows:
            return
        cur = lam[i] if i < len(lam) else 0
        for add in (1, 0):
            if add <= remaining and (cur + add) > 0:
                rec(i + 1, remaining - add, built + [cur + add])
            if cur == 0 and add == 0:
                break

    rec(0, m, [])
    return [p for p in out if _is_partition(p)]


def _is_partition(p):
    return all(p[i] >= p[i + 1] for i in range(len(p) - 1)) and all(x > 0 for x in p)


class FockElem:
    """Linear combination of partitions with LaurentPoly coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for lam, coeff in terms.items():
                coeff = LaurentPoly.coerce(coeff)
                if coeff.is_zero():
                    continue
                lam = partition(lam)
                prev = clean.get(lam)
                clean[lam] = coeff if prev is None else prev + coeff
                if clean[lam].is_zero():
                    del clean[lam]
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FockElem is immutable")

    @staticmethod
    def zero():
        return FockElem()

    @staticmethod
    def vacuum():
        return FockElem({(): LaurentPoly.one()})

    @staticmethod
    def basis(lam):
        return FockElem({tuple(lam): LaurentPoly.one()})

    def items(self):
        return self._terms.items()

    def coeff(self, lam):
        return self._terms.get(tuple(lam), LaurentPoly.zero())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FockElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for lam, c in other._terms.items():
            prev = out.get(lam)
            out[lam] = c if prev is None else prev + c
        return FockElem(out)

    def __neg__(self):
        return FockElem({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        return FockElem({lam: coeff * c for lam, coeff in self._terms.items()})

    def render(self):
        """Canonical text form, e.g. '(1+t)*[2,1] + [3]'."""
        from .scalars import render_coeff_factor

        if not self._terms:
            return "0"
        parts = []
        for lam in sorted(self._terms, key=lambda p: (sum(p), p)):
            parts.append(render_coeff_factor(self._terms[lam]) + render_partition(lam))
        text = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text

    def __repr__(self):
        return f"FockElem({self.render()!r})"


def act_p(m, x):
    """Raising action of p_m: add horizontal m-strips."""
    if m < 1:
        raise ValueError("index must be >= 1")
    out = FockElem.zero()
    for lam, coeff in x.items():
        for mu in add_horizontal_strips(lam, m):
            out = out + FockElem({mu: coeff})
    return out


def act_tilde_p(m, x):
    """Raising action of the dual power sum: add vertical m-strips."""
    if m < 1:
        raise ValueError("index must be >= 1")
    out = FockElem.zero()
    for lam, coeff in x.items():
        for mu in add_vertical_strips(lam, m):
            out = out + FockElem({mu: coeff})
    return out


def act_q(n, x):
    """Lowering action of q_n: two-stage horizontal strip removal,
    t^j weighting the size-j second stage."""
    if n < 1:
        raise ValueError("index must be >= 1")
    out = FockElem.zero()
    for lam, coeff in x.items():
        for j in range(n + 1):
            weight = coeff * LaurentPoly.t(j) if j else coeff
            for nu in remove_horizontal_strips(lam, n - j):
                for mu in remove_horizontal_strips(nu, j):
                    out = out + FockElem({mu: weight})
    return out


def act_q_split(x):
    """The two summands of act_q(1): (remove a box, t * remove a box)."""
    q1 = FockElem.zero()
    q2 = FockElem.zero()
    for lam, coeff in x.items():
        for mu in remove_horizontal_strips(lam, 1):
            q1 = q1 + FockElem({mu: coeff})
            q2 = q2 + FockElem({mu: coeff * LaurentPoly.t()})
    return q1, q2


def apply_ncpoly(expr, x):
    """Apply a word polynomial to a Fock element; letters act right-to-left."""
    expr = NCPoly.coerce(expr)
    out = FockElem.zero()
    for word, coeff in expr.items():
        cur = x
        for kind, k in reversed(word):
            cur = act_p(k, cur) if kind == "p" else act_q(k, cur)
            if cur.is_zero():
                break
        out = out + cur.scale(coeff)
    return out


def verify_q_split(size_bound):
    """Check the commutators of the lowering splits with the one-box raiser
    on all partitions of size <= size_bound:

        [Q, P1] = (1+t) Id,   [Q1, P1] = Id,   [Q2, P1] = t Id.
    """
    records = []
    checks = [
        ("commutator[q1,p1]=(1+t)*id", lambda y: act_q(1, act_p(1, y)) - act_p(1, act_q(1, y)), qint(2)),
        ("commutator[q1-split1,p1]=id", lambda y: act_q_split(act_p(1, y))[0] - act_p(1, act_q_split(y)[0]), LaurentPoly.one()),
        ("commutator[q1-split2,p1]=t*id", lambda y: act_q_split(act_p(1, y))[1] - act_p(1, act_q_split(y)[1]), LaurentPoly.t()),
    ]
    for name, op, scalar in checks:
        residuals = []
        for lam in partitions_up_to(size_bound):
            got = op(FockElem.basis(lam))
            want = FockElem.basis(lam).scale(scalar)
            if got != want:
                residuals.append(f"{render_partition(lam)}: {(got - want).render()}")
        records.append(
            VerifyRecord(
                id=f"{name}[size<={size_bound}]",
                status="pass" if not residuals else "fail",
                residual_terms="; ".join(residuals) if residuals else None,
            )
        )
    return records
