"""Degree-truncated two-sided Groebner bases in the free algebra and the
exact Hilbert series they yield.

The completion is the noncommutative Buchberger loop for homogeneous
input: resolve every overlap ambiguity of total degree <= D, processing
the queue in increasing degree.  Reductions run through a per-degree
cache of fully reduced word normal forms, so each reducible word is
eliminated once per basis state instead of once per S-polynomial.
Dimension counting walks a factor-matching automaton over the leading
words rather than enumerating monomials.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .freealg import DegLexOrder, Polynomial, Presentation, Word, word_str
from .series import TruncatedSeries


class _Reducer:
    """Rewriting engine for a fixed set of monic leading words.

    nf(word) returns the fully reduced form of a word as a dict
    {normal word: coeff}.  Results are cached per degree and the caches
    for degrees >= k are dropped whenever a new degree-k element lands.
    """

    def __init__(self, field, order: DegLexOrder):
        self.field = field
        self.order = order
        self.elements: list[Polynomial] = []
        self.tails: list[list] = []
        self.lead_by_len: dict[int, dict[Word, int]] = {}
        self.cache: dict[int, dict[Word, dict]] = {}

    def add(self, poly: Polynomial):
        """Insert a monic element; invalidates caches at its degree and above."""
        lead, _ = poly.lead(self.order)
        idx = len(self.elements)
        self.elements.append(poly)
        self.tails.append([(w, c) for w, c in poly.terms.items() if w != lead])
        self.lead_by_len.setdefault(len(lead), {})[lead] = idx
        for deg in list(self.cache):
            if deg >= len(lead):
                del self.cache[deg]
        return idx

    def find_reducer(self, word: Word):
        """Leftmost position carrying a match; longest leading word wins there."""
        lengths = sorted(self.lead_by_len, reverse=True)
        for pos in range(len(word)):
            for ln in lengths:
                if pos + ln > len(word):
                    continue
                idx = self.lead_by_len[ln].get(word[pos:pos + ln])
                if idx is not None:
                    return pos, ln, idx
        return None

    def nf_word(self, word: Word) -> dict:
        cache = self.cache.setdefault(len(word), {})
        hit = cache.get(word)
        if hit is not None:
            return hit
        field = self.field
        stack = [word]
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            red = self.find_reducer(u)
            if red is None:
                cache[u] = {u: field.one}
                stack.pop()
                continue
            pos, ln, idx = red
            left, right = u[:pos], u[pos + ln:]
            shifted = [(left + t + right, c) for t, c in self.tails[idx]]
            pending = [v for v, _ in shifted if v not in cache]
            if pending:
                stack.extend(pending)
                continue
            # u = left*lead*right, so u reduces to -sum(c * nf(left*t*right))
            out: dict = {}
            for v, c in shifted:
                for wv, cv in cache[v].items():
                    s = field.add(out.get(wv, field.zero), field.neg(field.mul(c, cv)))
                    if s == field.zero:
                        out.pop(wv, None)
                    else:
                        out[wv] = s
            cache[u] = out
            stack.pop()
        return cache[word]

    def nf_terms(self, terms) -> dict:
        field = self.field
        out: dict = {}
        for w, c in terms:
            for wn, cn in self.nf_word(w).items():
                s = field.add(out.get(wn, field.zero), field.mul(c, cn))
                if s == field.zero:
                    out.pop(wn, None)
                else:
                    out[wn] = s
        return out

    def nf_poly(self, poly: Polynomial) -> Polynomial:
        out = Polynomial(self.field)
        out.terms = self.nf_terms(poly.terms.items())
        return out

    def leading_words(self) -> list[Word]:
        out = []
        for ln in sorted(self.lead_by_len):
            out.extend(self.lead_by_len[ln])
        return out


def normal_form(poly: Polynomial, basis, order: DegLexOrder) -> Polynomial:
    """Reduce a polynomial modulo a set of monic elements.

    No monomial of the result contains any leading word as a factor;
    the result is congruent to the input modulo the two-sided ideal
    generated by the basis.
    """
    elements = basis.elements if isinstance(basis, GroebnerBasis) else list(basis)
    red = _Reducer(poly.field, order)
    for g in elements:
        red.add(g.monic(order))
    return red.nf_poly(poly)


@dataclass
class GroebnerBasis:
    """Reduced degree-truncated basis: monic elements, no leading word a
    factor of another, every overlap of degree <= complete_to resolved."""

    elements: list[Polynomial]
    order: DegLexOrder
    complete_to: int
    field: object
    n: int

    def leading_words(self) -> list[Word]:
        return [g.lead(self.order)[0] for g in self.elements]

    def dims(self, cap: int) -> list[int]:
        return count_normal_words(self.leading_words(), self.n, cap)

    def dump(self) -> str:
        """One element per line, terms in decreasing order, leading term first."""
        return "\n".join(g.to_str(self.order) for g in self.elements) + ("\n" if self.elements else "")


def _overlaps(u: Word, v: Word):
    """Proper suffix of u equal to a proper prefix of v; yields the overlap length."""
    for k in range(1, min(len(u), len(v))):
        if u[len(u) - k:] == v[:k]:
            yield k


def complete_to_degree(pres: Presentation, cap: int) -> GroebnerBasis:
    """Run the truncated completion until all ambiguities of degree <= cap resolve.

    Input relations must be homogeneous, which makes every S-polynomial
    homogeneous of the degree of its overlap word; the queue is processed
    in increasing degree (ties by the monomial order on the overlap word),
    so dimensions at degree q are final once the queue passes q.
    """
    maxdeg = max((r.degree() for r in pres.relations), default=0)
    if pres.relations and cap < maxdeg:
        raise ValueError(f"cap {cap} below maximal relation degree {maxdeg}")
    order = pres.order
    field = pres.field
    red = _Reducer(field, order)
    queue: list = []
    seq = 0

    def enqueue_overlaps(m: int):
        nonlocal seq
        lead_m = red.elements[m].lead(order)[0]
        for i in range(len(red.elements)):
            lead_i = red.elements[i].lead(order)[0]
            if i == m:
                pairs = ((m, m, lead_m, lead_m),)
            else:
                pairs = ((i, m, lead_i, lead_m), (m, i, lead_m, lead_i))
            for a, b, la, lb in pairs:
                for k in _overlaps(la, lb):
                    deg = len(la) + len(lb) - k
                    if deg <= cap:
                        sword = la + lb[k:]
                        heapq.heappush(queue, (deg, order.key(sword), seq, a, b, k))
                        seq += 1

    def add_element(poly: Polynomial) -> int:
        m = red.add(poly.monic(order))
        enqueue_overlaps(m)
        return m

    for rel in sorted(pres.relations, key=lambda r: r.degree()):
        r = red.nf_poly(rel)
        if not r.is_zero():
            add_element(r)

    done_degree = max((r.degree() for r in pres.relations), default=0)
    while queue:
        deg, _, _, i, j, k = heapq.heappop(queue)
        if deg > done_degree:
            # all ambiguities below deg are resolved; if some completed
            # degree already has no normal words, nothing above matters
            counts = count_normal_words(red.leading_words(), pres.n, done_degree)
            if counts and counts[-1] == 0:
                queue.clear()
                break
            done_degree = deg
        gi, gj = red.elements[i], red.elements[j]
        lead_i = gi.lead(order)[0]
        lead_j = gj.lead(order)[0]
        # S-word lead_i + lead_j[k:] == lead_i[:len-k] + lead_j
        s_terms = dict(gi.shift((), lead_j[k:]).terms)
        for w, c in gj.shift(lead_i[:len(lead_i) - k], ()).terms.items():
            s = field.sub(s_terms.get(w, field.zero), c)
            if s == field.zero:
                s_terms.pop(w, None)
            else:
                s_terms[w] = s
        result = red.nf_terms(s_terms.items())
        if result:
            poly = Polynomial(field)
            poly.terms = result
            add_element(poly)

    # interreduce tails against the final leading-word set
    final: list[Polynomial] = []
    for idx, g in enumerate(red.elements):
        lead = g.lead(order)[0]
        tail = red.nf_terms(red.tails[idx])
        poly = Polynomial(field)
        poly.terms = dict(tail)
        poly.terms[lead] = field.one
        final.append(poly)
    final.sort(key=lambda g: order.key(g.lead(order)[0]))
    return GroebnerBasis(final, order, cap, field, pres.n)


# ---------------------------------------------------------------------------
# counting words that avoid forbidden factors

class NormalWordAutomaton:
    """Deterministic factor-matching automaton over the alphabet 1..n.

    States are the proper prefixes of the forbidden words (plus the
    root); failure links supply the longest proper suffix that is again
    a prefix.  A transition that completes any forbidden word leads to
    an absorbing dead state, so the live mass at step q counts exactly
    the words of length q avoiding every forbidden factor.
    """

    def __init__(self, forbidden, n: int):
        self.n = n
        children: list[dict[int, int]] = [{}]
        terminal = [False]
        for w in forbidden:
            node = 0
            for a in w:
                nxt = children[node].get(a)
                if nxt is None:
                    nxt = len(children)
                    children[node][a] = nxt
                    children.append({})
                    terminal.append(False)
                node = nxt
            terminal[node] = True

        fail = [0] * len(children)
        bfs = []
        for a, v in children[0].items():
            fail[v] = 0
            bfs.append(v)
        head = 0
        while head < len(bfs):
            u = bfs[head]
            head += 1
            for a, v in children[u].items():
                f = fail[u]
                while f and a not in children[f]:
                    f = fail[f]
                fail[v] = children[f].get(a, 0)
                terminal[v] = terminal[v] or terminal[fail[v]]
                bfs.append(v)

        # dense transition table; -1 is the dead state
        table = [[0] * (n + 1) for _ in children]
        for u in range(len(children)):
            for a in range(1, n + 1):
                s = u
                while s and a not in children[s]:
                    s = fail[s]
                t = children[s].get(a, 0)
                table[u][a] = -1 if terminal[t] else t
        self.dead_root = terminal[0]
        self.table = table

    def counts(self, cap: int) -> list[int]:
        """Number of accepted words of each length 0..cap (exact integers)."""
        if self.dead_root:
            return [0] * (cap + 1)
        mass = [0] * len(self.table)
        mass[0] = 1
        out = [1]
        for _ in range(cap):
            nxt = [0] * len(self.table)
            for s, m in enumerate(mass):
                if m:
                    row = self.table[s]
                    for a in range(1, self.n + 1):
                        t = row[a]
                        if t >= 0:
                            nxt[t] += m
            mass = nxt
            out.append(sum(mass))
        return out


def count_normal_words(leading_words, n: int, cap: int) -> list[int]:
    """Exact count per degree 0..cap of words with no forbidden factor."""
    return NormalWordAutomaton(leading_words, n).counts(cap)


def naive_count_avoiding(forbidden, n: int, cap: int) -> list[int]:
    """Brute-force oracle for count_normal_words (use only at desk scale)."""
    forb = [tuple(w) for w in forbidden]
    out = []
    words = [()]
    for q in range(cap + 1):
        if q > 0:
            words = [w + (a,) for w in words for a in range(1, n + 1)]
        good = 0
        for w in words:
            ok = True
            for f in forb:
                ln = len(f)
                if ln == 0 or any(w[i:i + ln] == f for i in range(len(w) - ln + 1)):
                    ok = False
                    break
            good += ok
        out.append(good)
    return out


def hilbert_series(pres: Presentation, cap: int) -> TruncatedSeries:
    """Exact graded dimensions of the presented algebra through degree cap.

    For a homogeneous ideal the normal words form a basis of the
    quotient, so the counts are exact dimensions, not just bounds.
    """
    return hilbert_with_basis(pres, cap)[0]


def hilbert_with_basis(pres: Presentation, cap: int):
    basis = complete_to_degree(pres, cap)
    dims = basis.dims(cap)
    return TruncatedSeries(tuple(dims)), basis
