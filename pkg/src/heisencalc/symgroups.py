"""Symmetric group algebra over exact rationals: row/column symmetrizers,
hook-length dimensions, and semistandard tableau counts."""

import itertools
import math
from fractions import Fraction

from .reporting import VerifyRecord
from .fock import partitions_of


class Perm:
    """Permutation of {1..n}, stored as the image tuple (sigma(1),...,sigma(n)).

    Composition applies the right factor first: (f * g)(x) = f(g(x)).
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @staticmethod
    def identity(n):
        return Perm(range(1, n + 1))

    @property
    def n(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x - 1]

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self):
        inv = [0] * self.n
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Perm(inv)

    def sign(self):
        seen = [False] * self.n
        sign = 1
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            length = 0
            x = start
            while not seen[x - 1]:
                seen[x - 1] = True
                x = self(x)
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest element."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            x = start
            while not seen[x - 1]:
                seen[x - 1] = True
                cyc.append(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def render(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def __eq__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm{self.images}"


def parse_cycles(text, n):
    """Parse cycle notation like '(1 2)(3 4 5)' into a Perm of degree n."""
    text = text.strip()
    if text in ("()", "", "e"):
        return Perm.identity(n)
    if text.count("(") != text.count(")") or not text.startswith("("):
        raise ValueError(f"bad cycle notation: {text!r}")
    images = list(range(1, n + 1))
    for chunk in text[1:-1].split(")("):
        entries = [int(x) for x in chunk.replace(",", " ").split()]
        if len(set(entries)) != len(entries) or any(not 1 <= x <= n for x in entries):
            raise ValueError(f"bad cycle {chunk!r} for degree {n}")
        for i, x in enumerate(entries):
            images[x - 1] = entries[(i + 1) % len(entries)]
    return Perm(images)


class GroupAlgElem:
    """Linear combination of permutations with Fraction coefficients."""

    __slots__ = ("_terms", "_n")

    def __init__(self, n, terms=None):
        clean = {}
        if terms:
            for g, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if g.n != n:
                    raise ValueError("degree mismatch")
                prev = clean.get(g)
                clean[g] = c if prev is None else prev + c
                if clean[g] == 0:
                    del clean[g]
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GroupAlgElem is immutable")

    @staticmethod
    def unit(n):
        return GroupAlgElem(n, {Perm.identity(n): 1})

    @property
    def n(self):
        return self._n

    def items(self):
        return self._terms.items()

    def coeff(self, g):
        return self._terms.get(g, Fraction(0))

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, GroupAlgElem):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __add__(self, other):
        out = dict(self._terms)
        for g, c in other._terms.items():
            prev = out.get(g)
            out[g] = c if prev is None else prev + c
        return GroupAlgElem(self._n, out)

    def __neg__(self):
        return GroupAlgElem(self._n, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for g1, c1 in self._terms.items():
            for g2, c2 in other._terms.items():
                g = g1 * g2
                prev = out.get(g)
                out[g] = c1 * c2 if prev is None else prev + c1 * c2
        return GroupAlgElem(self._n, out)

    def scale(self, c):
        c = Fraction(c)
        return GroupAlgElem(self._n, {g: coeff * c for g, coeff in self._terms.items()})

    def render(self):
        if not self._terms:
            return "0"
        parts = []
        for g in sorted(self._terms, key=lambda h: h.images):
            c = self._terms[g]
            body = g.render()
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        text = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                text += " - " + part[1:]
            else:
                text += " + " + part
        return text

    def __repr__(self):
        return f"GroupAlgElem({self.render()!r})"


def canonical_tableau(lam):
    """Row-reading filling of the shape: row 0 gets 1..lam[0], and so on."""
    grid = []
    next_entry = 1
    for row_len in lam:
        grid.append(list(range(next_entry, next_entry + row_len)))
        next_entry += row_len
    return grid


def _block_permutations(blocks, n):
    """All permutations of 1..n preserving each block setwise."""
    perms = []
    for images_per_block in itertools.product(
        *(itertools.permutations(block) for block in blocks)
    ):
        images = list(range(1, n + 1))
        for block, image in zip(blocks, images_per_block):
            for src, dst in zip(block, image):
                images[src - 1] = dst
        perms.append(Perm(images))
    return perms


def row_symmetrizer(lam):
    """Sum of all permutations preserving the rows of the canonical tableau."""
    n = sum(lam)
    rows = canonical_tableau(lam)
    return GroupAlgElem(n, {g: Fraction(1) for g in _block_permutations(rows, n)})


def column_antisymmetrizer(lam):
    """Signed sum over permutations preserving the columns of the canonical
    tableau."""
    n = sum(lam)
    grid = canonical_tableau(lam)
    ncols = lam[0] if lam else 0
    cols = [[row[c] for row in grid if len(row) > c] for c in range(ncols)]
    return GroupAlgElem(
        n, {g: Fraction(g.sign()) for g in _block_permutations(cols, n)}
    )


def hook_lengths(lam):
    """Hook length of every cell, row by row."""
    lam = tuple(lam)
    conj = conjugate(lam)
    return [
        [lam[r] - c + conj[c] - r - 1 for c in range(lam[r])] for r in range(len(lam))
    ]


def conjugate(lam):
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0]))


def dimension(lam):
    """Irreducible dimension by the hook length formula."""
    n = sum(lam)
    denom = 1
    for row in hook_lengths(lam):
        for h in row:
            denom *= h
    dim, rem = divmod(math.factorial(n), denom)
    assert rem == 0
    return dim


def young_symmetrizer(lam):
    """Idempotent e = (dim/n!) * (row sum) * (signed column sum)."""
    lam = tuple(lam)
    n = sum(lam)
    if n == 0:
        raise ValueError("empty shape has no symmetrizer")
    scale = Fraction(dimension(lam), math.factorial(n))
    return (row_symmetrizer(lam) * column_antisymmetrizer(lam)).scale(scale)


def count_ssyt(shape, content):
    """Number of semistandard tableaux: rows weakly increase, columns strictly
    increase, entry i appears content[i-1] times.  Row-by-row enumeration."""
    shape = tuple(shape)
    content = tuple(content)
    if sum(shape) != sum(content):
        return 0
    nvals = len(content)
    total = 0

    def rec_rows(r, prev_row, counts):
        nonlocal total
        if r == len(shape):
            total += 1
            return
        row_len = shape[r]
        min_vals = [prev_row[c] if c < len(prev_row) else 0 for c in range(row_len)]

        def rec(c, prev, counts, built):
            if c == row_len:
                rec_rows(r + 1, built, counts)
                return
            for v in range(max(prev, min_vals[c] + 1), nvals + 1):
                if counts[v - 1] > 0:
                    new = list(counts)
                    new[v - 1] -= 1
                    rec(c + 1, v, tuple(new), built + [v])

        rec(0, 1, counts, [])

    rec_rows(0, [], content)
    return total


def kostka(lam, mu):
    """Kostka number: semistandard tableaux of shape lam and content mu."""
    return count_ssyt(lam, mu)


def dominates(lam, mu):
    """Dominance order on partitions of the same size."""
    if sum(lam) != sum(mu):
        return False
    total_l = total_m = 0
    for k in range(max(len(lam), len(mu))):
        total_l += lam[k] if k < len(lam) else 0
        total_m += mu[k] if k < len(mu) else 0
        if total_l < total_m:
            return False
    return True


def verify_symmetrizers(n_max=5, dims_n_max=6):
    """Idempotency of every symmetrizer for |lam| <= n_max, the sum rule
    sum(dim^2) = n!, and Kostka unitriangularity for sizes <= dims_n_max."""
    records = []
    for n in range(1, n_max + 1):
        for lam in partitions_of(n):
            e = young_symmetrizer(lam)
            ok = (e * e) == e
            records.append(
                VerifyRecord(
                    id=f"symmetrizer-idempotent[{','.join(map(str, lam))}]",
                    status="pass" if ok else "fail",
                    residual_terms=None if ok else ((e * e) - e).render(),
                )
            )
    for n in range(1, dims_n_max + 1):
        total = sum(dimension(lam) ** 2 for lam in partitions_of(n))
        ok = total == math.factorial(n)
        records.append(
            VerifyRecord(
                id=f"dimension-squares-sum[{n}]",
                status="pass" if ok else "fail",
                residual_terms=None if ok else f"{total} != {n}!",
            )
        )
    for n in range(1, dims_n_max + 1):
        bad = []
        for lam in partitions_of(n):
            if kostka(lam, lam) != 1:
                bad.append(f"K[{lam},{lam}] != 1")
            for mu in partitions_of(n):
                k = kostka(lam, mu)
                if k != 0 and not dominates(lam, mu):
                    bad.append(f"K[{lam},{mu}]={k} without dominance")
        records.append(
            VerifyRecord(
                id=f"kostka-unitriangular[{n}]",
                status="pass" if not bad else "fail",
                residual_terms="; ".join(bad) if bad else None,
            )
        )
    return records
