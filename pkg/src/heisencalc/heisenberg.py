"""Two families of generators p_k, q_k with a straightening rule.

Words in the letters p_k, q_k (k >= 1) span a free module over Laurent
polynomials in t.  Same-kind letters commute; a q passing a p straightens by

    q_n * p_m  =  sum_{k >= 0} [k+1] * p_{m-k} * q_{n-k}      (deformed)
    q_n * p_m  =  sum_{k >= 0}         p_{m-k} * q_{n-k}      (classical)

with p_0 = q_0 = 1 and letters of negative index absent.  Normal form puts
all p letters first, then all q letters, each block weakly decreasing.
"""

import heapq

from .reporting import VerifyRecord
from .scalars import LaurentPoly, qint, render_coeff_factor

# A letter is ('p', k) or ('q', k) with k >= 1; a word is a tuple of letters.


def _check_letter(kind, k):
    if kind not in ("p", "q"):
        raise ValueError(f"unknown generator kind {kind!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"generator index must be a nonnegative int, got {k!r}")


def _letter_sort_key(letter):
    kind, k = letter
    return (0 if kind == "p" else 1, -k)


def _word_sort_key(word):
    return tuple(_letter_sort_key(let) for let in word)


class NCPoly:
    """Linear combination of words, coefficients in LaurentPoly."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for word, coeff in terms.items():
                coeff = LaurentPoly.coerce(coeff)
                if coeff.is_zero():
                    continue
                word = tuple(word)
                for kind, k in word:
                    _check_letter(kind, k)
                    if k == 0:
                        raise ValueError("index-0 letters are the empty word; drop them")
                prev = clean.get(word)
                clean[word] = coeff if prev is None else prev + coeff
                if clean[word].is_zero():
                    del clean[word]
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def one():
        return NCPoly({(): LaurentPoly.one()})

    @staticmethod
    def letter(kind, k):
        _check_letter(kind, k)
        if k == 0:
            return NCPoly.one()
        return NCPoly({((kind, k),): LaurentPoly.one()})

    @staticmethod
    def coerce(x):
        if isinstance(x, NCPoly):
            return x
        return NCPoly({(): LaurentPoly.coerce(x)})

    def items(self):
        return self._terms.items()

    def coeff(self, word):
        return self._terms.get(tuple(word), LaurentPoly.zero())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = NCPoly.coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            prev = out.get(w)
            out[w] = c if prev is None else prev + c
        return NCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-NCPoly.coerce(other))

    def __rsub__(self, other):
        return NCPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)) or other.__class__.__name__ == "Fraction":
            other = NCPoly.coerce(other)
        out = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                prev = out.get(w)
                out[w] = c if prev is None else prev + c
        return NCPoly(out)

    def __rmul__(self, other):
        return NCPoly.coerce(other) * self

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        return NCPoly({w: coeff * c for w, coeff in self._terms.items()})

    def render(self):
        """Canonical text form, e.g. 'p3*q2 + (1 + t)*p2*q1'."""
        if not self._terms:
            return "0"
        parts = []
        for word in sorted(self._terms, key=_word_sort_key):
            coeff = self._terms[word]
            body = "*".join(f"{kind}{k}" for kind, k in word)
            if not word:
                text = coeff.render(compact=True)
                if len(dict(coeff.items())) > 1 or text.startswith("-"):
                    text = f"({text})"
                parts.append(text)
            else:
                parts.append(render_coeff_factor(coeff) + body)
        text = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text

    def __repr__(self):
        return f"NCPoly({self.render()!r})"


def p(k):
    """Generator p_k as a one-letter word (p_0 is the empty word)."""
    return NCPoly.letter("p", k)


def q(k):
    """Generator q_k as a one-letter word (q_0 is the empty word)."""
    return NCPoly.letter("q", k)


def _find_redex(word, strategy):
    """Index i of an adjacent out-of-order pair, or None if in normal form."""
    positions = range(len(word) - 1) if strategy == "leftmost" else range(len(word) - 2, -1, -1)
    for i in positions:
        (k1, n1), (k2, n2) = word[i], word[i + 1]
        if k1 == "q" and k2 == "p":
            return i
        if k1 == k2 and n1 < n2:
            return i
    return None


def _straighten(n, m, deformed):
    """Expansion of q_n * p_m as a list of (word, coeff)."""
    out = []
    for k in range(0, min(n, m) + 1):
        coeff = qint(k + 1) if deformed else LaurentPoly.one()
        word = []
        if m - k > 0:
            word.append(("p", m - k))
        if n - k > 0:
            word.append(("q", n - k))
        out.append((tuple(word), coeff))
    return out


def normal_order(x, deformed=True, strategy="leftmost"):
    """Rewrite to the normal form: p block then q block, indices decreasing.

    The result does not depend on the redex-choice strategy; exposing the
    strategy lets tests check exactly that.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    x = NCPoly.coerce(x)
    done = {}
    # Worklist keyed by word so like terms stay merged.  Words are processed
    # in decreasing order of the rewrite measure (every rewrite step strictly
    # decreases it), which guarantees each distinct word is expanded at most
    # once; naive stack order reprocesses words once per derivation path.
    pending = {}
    heap = []

    def measure(word):
        qp = kind = 0
        for i in range(len(word)):
            k1, n1 = word[i]
            for j in range(i + 1, len(word)):
                k2, n2 = word[j]
                if k1 == "q" and k2 == "p":
                    qp += 1
                elif k1 == k2 and n1 < n2:
                    kind += 1
        return (qp, kind)

    def push(word, coeff):
        prev = pending.get(word)
        total = coeff if prev is None else prev + coeff
        if total.is_zero():
            pending.pop(word, None)
        else:
            if word not in pending:
                m = measure(word)
                heapq.heappush(heap, (-m[0], -m[1], word))
            pending[word] = total

    for word, coeff in x.items():
        push(word, coeff)
    while heap:
        _, _, word = heapq.heappop(heap)
        if word not in pending:
            continue
        coeff = pending.pop(word)
        i = _find_redex(word, strategy)
        if i is None:
            prev = done.get(word)
            total = coeff if prev is None else prev + coeff
            if total.is_zero():
                done.pop(word, None)
            else:
                done[word] = total
            continue
        (k1, n1), (k2, n2) = word[i], word[i + 1]
        if k1 == "q" and k2 == "p":
            for mid, c in _straighten(n1, n2, deformed):
                push(word[:i] + mid + word[i + 2:], coeff * c)
        else:
            push(word[:i] + (word[i + 1], word[i]) + word[i + 2:], coeff)
    return NCPoly(done)


def specialize_t(x, value):
    """Substitute a rational value for t in every coefficient.

    Substituting 0 into a coefficient with a negative t-exponent raises
    ZeroDivisionError.
    """
    x = NCPoly.coerce(x)
    out = {}
    for word, coeff in x.items():
        c = coeff.substitute(value)
        if c != 0:
            out[word] = LaurentPoly.const(c)
    return NCPoly(out)


def a_as_pq(n):
    """Log-derivative generator a_n expanded as a word polynomial.

    For n > 0:  a_n = n*q_n - sum_{i=1}^{n-1} a_i * q_{n-i},  so a_1 = q_1.
    For n < 0 the same recursion runs in the p letters.  n = 0 is rejected.
    """
    if not isinstance(n, int) or n == 0:
        raise ValueError(f"a-generator index must be a nonzero int, got {n!r}")
    kind = "q" if n > 0 else "p"
    m = abs(n)
    # Same-kind letters commute, so no normal ordering is needed here.
    memo = {1: NCPoly.letter(kind, 1)}
    for j in range(2, m + 1):
        acc = NCPoly.letter(kind, j).scale(LaurentPoly.const(j))
        for i in range(1, j):
            acc = acc - memo[i] * NCPoly.letter(kind, j - i)
        memo[j] = acc
    return normal_order(memo[m])


def tilde_p_as_p(m):
    """Dual power sum written in the p letters via series inversion.

    Defined by (1 + sum_m tp_m z^m)(1 + sum_m (-1)^m p_m z^m) = 1, which
    unrolls to tp_m = -(-1)^m p_m - sum_{i=1}^{m-1} (-1)^(m-i) tp_i p_{m-i}.
    tilde_p_as_p(0) is the empty word.
    """
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"index must be a nonnegative int, got {m!r}")
    memo = {0: NCPoly.one()}
    for j in range(1, m + 1):
        sign = -1 if j % 2 else 1
        acc = p(j).scale(LaurentPoly.const(-sign))
        for i in range(1, j):
            s = -1 if (j - i) % 2 else 1
            acc = acc - (memo[i] * p(j - i)).scale(LaurentPoly.const(s))
        memo[j] = normal_order(acc)
    return memo[m]


def commutator(x, y, deformed=True):
    """Normal-ordered [x, y] = x*y - y*x."""
    return normal_order(x * y - y * x, deformed=deformed)


def verify_a_commutator(n, m, deformed=True):
    """Check [a_n, a_m] = n * (1 + t^|n|) * delta(n + m, 0) (deformed), or
    n * delta(n + m, 0) classically."""
    got = commutator(a_as_pq(n), a_as_pq(m), deformed=deformed)
    if n + m != 0:
        expected = NCPoly.zero()
    elif deformed:
        expected = NCPoly.coerce(LaurentPoly({0: n, abs(n): n}))
    else:
        expected = NCPoly.coerce(n)
    residual = got - expected
    label = "deformed" if deformed else "classical"
    return VerifyRecord(
        id=f"a-commutator[{n},{m},{label}]",
        status="pass" if residual.is_zero() else "fail",
        residual_terms=None if residual.is_zero() else residual.render(),
    )


def verify_tilde_relation(n, m):
    """Check the classical straightening of q_n past the dual power sum:

        q_n * tp_m = tp_m * q_n + tp_{m-1} * q_{n-1}    (at t = 0)

    together with tp_n * tp_m = tp_m * tp_n.
    """
    if n < 1 or m < 1:
        raise ValueError("indices must be >= 1")
    lhs = normal_order(q(n) * tilde_p_as_p(m), deformed=False)
    rhs = normal_order(
        tilde_p_as_p(m) * q(n) + tilde_p_as_p(m - 1) * NCPoly.letter("q", n - 1),
        deformed=False,
    )
    residual = lhs - rhs
    commute = normal_order(
        tilde_p_as_p(n) * tilde_p_as_p(m) - tilde_p_as_p(m) * tilde_p_as_p(n),
        deformed=False,
    )
    ok = residual.is_zero() and commute.is_zero()
    bad = residual if not residual.is_zero() else commute
    return VerifyRecord(
        id=f"tilde-straightening[{n},{m}]",
        status="pass" if ok else "fail",
        residual_terms=None if ok else bad.render(),
    )
