"""Words, noncommutative polynomials and presentations of graded algebras.

A monomial in the free algebra on x1..xn is a tuple of generator
indices (1-based); the empty tuple is the unit.  Polynomials are dicts
mapping words to nonzero field elements.  A presentation bundles the
generator count, the coefficient field, a list of homogeneous relations
and a degree-lexicographic monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg
from .fields import FieldError, PrimeField, RationalField, gf, rationals

Word = tuple[int, ...]


@dataclass(frozen=True)
class DegLexOrder:
    """Degree first, then lexicographic by a ranking of the variables.

    ranking[0] is the greatest variable.  The order is total,
    degree-compatible and multiplicative.
    """

    ranking: tuple[int, ...]

    def __post_init__(self):
        n = len(self.ranking)
        if sorted(self.ranking) != list(range(1, n + 1)):
            raise ValueError("ranking must be a permutation of 1..n")
        object.__setattr__(self, "_prio", {g: i for i, g in enumerate(self.ranking)})

    @property
    def n(self) -> int:
        return len(self.ranking)

    def key(self, word: Word):
        """Sort key: key(u) < key(v) iff u < v in the monomial order."""
        prio = self._prio
        return (len(word), tuple(-prio[g] for g in word))

    def compare(self, a: Word, b: Word) -> int:
        """-1, 0 or 1 as a <, =, > b."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sorted_desc(self, words):
        return sorted(words, key=self.key, reverse=True)

    def __str__(self):
        return " > ".join(f"x{g}" for g in self.ranking)


def default_order(n: int) -> DegLexOrder:
    return DegLexOrder(tuple(range(1, n + 1)))


def compare(a: Word, b: Word, order: DegLexOrder) -> int:
    return order.compare(a, b)


def word_str(word: Word) -> str:
    """Render a word as x1*x2^2*x3 (runs compressed with ^)."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        parts.append(f"x{word[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(parts)


class Polynomial:
    """Finite sum of words with nonzero coefficients in a fixed field."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms: dict[Word, object] = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                c = field.coerce(c)
                if c != field.zero:
                    acc = self.terms.get(w)
                    if acc is None:
                        self.terms[w] = c
                    else:
                        s = field.add(acc, c)
                        if s == field.zero:
                            del self.terms[w]
                        else:
                            self.terms[w] = s

    @classmethod
    def from_word(cls, field, word: Word, coeff=1):
        return cls(field, [(tuple(word), coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        degs = {len(w) for w in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def lead(self, order: DegLexOrder):
        """(word, coeff) of the greatest monomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        w = max(self.terms, key=order.key)
        return w, self.terms[w]

    def monic(self, order: DegLexOrder) -> "Polynomial":
        _, c = self.lead(order)
        inv = self.field.inv(c)
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.coerce(c)
        if c == f.zero:
            return Polynomial(f)
        return Polynomial(f, [(w, f.mul(x, c)) for w, x in self.terms.items()])

    def add(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        f = self.field
        for w, c in other.terms.items():
            s = f.add(out.get(w, f.zero), c)
            if s == f.zero:
                out.pop(w, None)
            else:
                out[w] = s
        p = Polynomial(f)
        p.terms = out
        return p

    def sub(self, other: "Polynomial") -> "Polynomial":
        return self.add(other.scale(self.field.neg(self.field.one)))

    def mul(self, other: "Polynomial") -> "Polynomial":
        """Bilinear concatenation product; zero coefficients pruned."""
        self._check(other)
        f = self.field
        out: dict[Word, object] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                s = f.add(out.get(w, f.zero), f.mul(a, b))
                if s == f.zero:
                    out.pop(w, None)
                else:
                    out[w] = s
        p = Polynomial(f)
        p.terms = out
        return p

    def shift(self, left: Word, right: Word) -> "Polynomial":
        """left * self * right for words left, right."""
        p = Polynomial(self.field)
        p.terms = {left + w + right: c for w, c in self.terms.items()}
        return p

    def to_str(self, order: DegLexOrder) -> str:
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for w in order.sorted_desc(self.terms):
            c = self.terms[w]
            cs = f.serialize(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not w:
                body = cs
            elif cs == "1":
                body = word_str(w)
            else:
                body = f"{cs}*{word_str(w)}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"Polynomial({self.terms})"

    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise ValueError("field mismatch")


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p.mul(q)


@dataclass
class Presentation:
    """Generators, field, homogeneous relations, monomial order."""

    n: int
    field: object
    relations: list[Polynomial]
    order: DegLexOrder
    mode: str = "quadratic"
    name: str | None = None
    warnings: list[str] = dc_field(default_factory=list)

    def __post_init__(self):
        if self.order.n != self.n:
            raise ValueError("order ranking size must equal generator count")
        for i, rel in enumerate(self.relations):
            if rel.is_zero():
                raise ValueError(f"relation {i + 1} is zero")
            if not rel.is_homogeneous():
                raise ValueError(f"relation {i + 1} is not homogeneous")
            if self.mode == "quadratic" and rel.degree() != 2:
                raise ValueError(f"relation {i + 1} has degree {rel.degree()}, expected 2")
            for w in rel.terms:
                if any(g < 1 or g > self.n for g in w):
                    raise ValueError(f"relation {i + 1} uses a generator outside x1..x{self.n}")

    def with_field(self, field) -> "Presentation":
        rels = [Polynomial(field, [(w, _move_coeff(c, field)) for w, c in r.terms.items()])
                for r in self.relations]
        return Presentation(self.n, field, rels, self.order, self.mode, self.name, list(self.warnings))

    def with_order(self, order: DegLexOrder) -> "Presentation":
        return Presentation(self.n, self.field, self.relations, order, self.mode, self.name,
                            list(self.warnings))


def _move_coeff(c, field):
    if isinstance(field, PrimeField) and isinstance(c, Fraction):
        return field.coerce(c)
    return c


def relation_matrix(pres: Presentation) -> list[list]:
    """Coefficient rows of the quadratic relations over the n^2 word basis.

    Column of word (a, b) is (a-1)*n + (b-1), row-major.
    """
    if pres.mode != "quadratic":
        raise ValueError("relation matrix is defined for quadratic presentations")
    n = pres.n
    rows = []
    for rel in pres.relations:
        row = [pres.field.zero] * (n * n)
        for (a, b), c in rel.terms.items():
            row[(a - 1) * n + (b - 1)] = c
        rows.append(row)
    return rows


def effective_relation_count(pres: Presentation) -> int:
    """Number of linearly independent relations (rank of the coefficient matrix)."""
    return linalg.rank(relation_matrix(pres), pres.field)


# ---------------------------------------------------------------------------
# presentation text format

class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


def parse_presentation(text: str, name: str | None = None) -> Presentation:
    """Parse the line-oriented presentation format.

    Statements are separated by newlines or ';'.  '#' starts a comment.
    Recognized statements: ``field rational``, ``field gf <p>``,
    ``gens <n>``, ``order x<i> > x<j> > ...``, ``rel <expr>``.
    """
    field = rationals()
    n = None
    order = None
    raw_rels: list[tuple[str, int, int]] = []
    saw_field = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        col0 = 1
        for stmt in body.split(";"):
            stripped = stmt.strip()
            col = col0 + (len(stmt) - len(stmt.lstrip()))
            col0 += len(stmt) + 1
            if not stripped:
                continue
            head, _, rest = stripped.partition(" ")
            rest = rest.strip()
            if head == "field":
                if raw_rels:
                    raise ParseError("field must come before relations", lineno, col)
                try:
                    field = _parse_field_stmt(rest)
                except FieldError as e:
                    raise ParseError(str(e), lineno, col) from None
                saw_field = True
            elif head == "gens":
                if not rest.isdigit() or int(rest) < 1:
                    raise ParseError(f"bad generator count {rest!r}", lineno, col)
                n = int(rest)
            elif head == "order":
                if n is None:
                    raise ParseError("order must come after gens", lineno, col)
                order = _parse_order(rest, n, lineno, col)
            elif head == "rel":
                if n is None:
                    raise ParseError("rel must come after gens", lineno, col)
                raw_rels.append((rest, lineno, col))
            else:
                raise ParseError(f"unknown statement {head!r}", lineno, col)

    if n is None:
        raise ParseError("missing 'gens <n>'", 1, 1)
    if order is None:
        order = default_order(n)
    relations = []
    for expr, lineno, col in raw_rels:
        poly = _parse_expr(expr, field, n, lineno, col)
        if poly.is_zero():
            raise ParseError("relation is zero", lineno, col)
        relations.append(poly)

    mode = "quadratic" if all(r.degree() == 2 for r in relations) else "homogeneous"
    pres = Presentation(n, field, relations, order, mode, name)
    if not saw_field:
        pres.warnings.append("field defaulted to rational")
    if mode == "quadratic" and relations:
        d = effective_relation_count(pres)
        if d < len(relations):
            pres.warnings.append(
                f"relations are linearly dependent: {len(relations)} given, {d} independent")
    return pres


def _parse_field_stmt(rest: str):
    rest = rest.strip()
    if rest == "rational":
        return rationals()
    if rest.startswith("gf"):
        num = rest[2:].strip()
        if num.isdigit():
            return gf(int(num))
    raise FieldError(f"bad field {rest!r}")


def _parse_order(rest: str, n: int, lineno: int, col: int) -> DegLexOrder:
    names = [p.strip() for p in rest.split(">")]
    ranking = []
    for nm in names:
        if not (nm.startswith("x") and nm[1:].isdigit()):
            raise ParseError(f"bad order entry {nm!r}", lineno, col)
        ranking.append(int(nm[1:]))
    if sorted(ranking) != list(range(1, n + 1)):
        raise ParseError("order must rank every generator exactly once", lineno, col)
    return DegLexOrder(tuple(ranking))


class _ExprScanner:
    def __init__(self, text: str, lineno: int, col: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno
        self.col = col

    def error(self, msg):
        raise ParseError(msg, self.lineno, self.col + self.pos)

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_int(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])


def _parse_expr(text: str, field, n: int, lineno: int, col: int) -> Polynomial:
    """expr := ['-'] term (('+'|'-') term)*
    term := [coeff '*'] mono | coeff ;  mono := var (['*'] var)*
    var := 'x'INT['^'INT] ;  coeff := INT | INT'/'INT
    """
    sc = _ExprScanner(text, lineno, col)
    poly = Polynomial(field)
    sign = 1
    ch = sc.peek()
    if ch in "+-":
        sign = -1 if ch == "-" else 1
        sc.pos += 1
    while True:
        poly = poly.add(_parse_term(sc, field, n, sign))
        ch = sc.peek()
        if ch == "":
            return poly
        if ch not in "+-":
            sc.error(f"expected '+' or '-', found {ch!r}")
        sign = -1 if ch == "-" else 1
        sc.pos += 1


def _parse_term(sc: _ExprScanner, field, n: int, sign: int) -> Polynomial:
    coeff = field.one
    ch = sc.peek()
    if ch.isdigit():
        num = sc.take_int()
        den = 1
        if sc.peek() == "/":
            sc.pos += 1
            den = sc.take_int()
        try:
            coeff = field.coerce(Fraction(num, den))
        except FieldError as e:
            sc.error(str(e))
        if sc.peek() == "*":
            sc.pos += 1
        if sc.peek() != "x":
            sc.error("expected a variable after the coefficient")
    word_parts: list[int] = []
    while True:
        ch = sc.peek()
        if ch != "x":
            break
        sc.pos += 1
        idx = sc.take_int()
        if not 1 <= idx <= n:
            sc.error(f"generator x{idx} out of range 1..{n}")
        power = 1
        if sc.peek() == "^":
            sc.pos += 1
            power = sc.take_int()
        word_parts.extend([idx] * power)
        if sc.peek() == "*":
            sc.pos += 1
    if not word_parts:
        sc.error("expected a variable")
    if sign < 0:
        coeff = field.neg(coeff)
    return Polynomial(field, [(tuple(word_parts), coeff)])


def print_presentation(pres: Presentation) -> str:
    """Canonical text form; parse(print(p)) reproduces p."""
    lines = [f"field {pres.field.spec}", f"gens {pres.n}"]
    if pres.order != default_order(pres.n):
        lines.append("order " + str(pres.order))
    for rel in pres.relations:
        lines.append("rel " + rel.to_str(pres.order))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in presentations

def _poly(field, *terms) -> Polynomial:
    return Polynomial(field, [(tuple(w), c) for c, w in terms])


def _builtin_lemma3_4(field):
    return [
        _poly(field, (1, (1, 2))),
        _poly(field, (1, (1, 3))),
        _poly(field, (1, (2, 3))),
        _poly(field, (1, (1, 1)), (1, (2, 2)), (1, (3, 3))),
    ]


def _builtin_lemma3_3(field):
    return [
        _poly(field, (1, (3, 3)), (-1, (1, 2))),
        _poly(field, (1, (3, 2)), (-1, (2, 3)), (1, (2, 1)), (-1, (1, 3)), (-1, (1, 2)), (1, (1, 1))),
        _poly(field, (1, (3, 1)), (1, (2, 2)), (-1, (1, 1))),
    ]


def _builtin_ex7_19(field):
    w = [
        [(1, 7)],
        [(3, 7), (4, 6), (6, 2)],
        [(5, 7), (6, 4), (3, 5), (2, 1), (4, 3)],
        [(7, 1), (1, 6)],
        [(7, 2), (6, 1), (1, 5)],
        [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7)],
        [(2, 7), (7, 3)],
        [(6, 7), (3, 6), (4, 5), (5, 2)],
        [(7, 5), (2, 6), (5, 3), (1, 4), (3, 2)],
        [(5, 7), (7, 6)],
        [(7, 6), (6, 2), (5, 1), (3, 4)],
        [(7, 4), (6, 3), (2, 5), (3, 2), (4, 1)],
        [(7, 5), (4, 7)],
        [(7, 2), (3, 6), (6, 4)],
        [(2, 7), (6, 5), (5, 4), (3, 1), (4, 2)],
        [(3, 7), (7, 4)],
        [(4, 7), (2, 6), (6, 3)],
        [(7, 3), (4, 6), (5, 2), (2, 4), (3, 1)],
        [(6, 7), (6, 4), (2, 6), (2, 5), (3, 5), (4, 5)],
    ]
    return [_poly(field, *[(1, pair) for pair in rel]) for rel in w]


def _builtin_ex4_6(field):
    w = [
        [(1, 2)],
        [(1, 4), (4, 2), (2, 3)],
        [(1, 3), (3, 4), (4, 1)],
        [(1, 1), (2, 2), (3, 3), (4, 4)],
        [(3, 4), (4, 2), (2, 4)],
        [(2, 3), (3, 1), (1, 3)],
    ]
    return [_poly(field, *[(1, pair) for pair in rel]) for rel in w]


def _builtin_ex4_5(field):
    w = [
        [(1, 1), (2, 2), (3, 3), (4, 4)],
        [(1, 2), (2, 3), (3, 4)],
        [(4, 1), (1, 3), (3, 2)],
        [(1, 3), (3, 2), (2, 4)],
        [(1, 4), (4, 3), (3, 2), (2, 4)],
    ]
    return [_poly(field, *[(1, pair) for pair in rel]) for rel in w]


_BUILTINS = {
    "lemma3-4": (3, "rational", _builtin_lemma3_4),
    "lemma3-3": (3, "rational", _builtin_lemma3_3),
    "ex7-19": (7, "gf2", _builtin_ex7_19),
    "ex4-6": (4, "gf2", _builtin_ex4_6),
    "ex4-5": (4, "gf2", _builtin_ex4_5),
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS) + ["commutative(n)"]


def builtin_presentation(name: str, field=None) -> Presentation:
    """Named example presentations; ``commutative(n)`` takes the size inline.

    The default coefficient field of each example can be overridden.
    """
    name = name.strip()
    if name.startswith("commutative(") and name.endswith(")"):
        inner = name[len("commutative("):-1]
        if not inner.isdigit() or int(inner) < 2:
            raise ValueError(f"bad size in {name!r}")
        n = int(inner)
        f = field or rationals()
        rels = [
            _poly(f, (1, (i, j)), (-1, (j, i)))
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        ]
        return Presentation(n, f, rels, default_order(n), "quadratic", name)
    if name not in _BUILTINS:
        raise ValueError(f"unknown builtin {name!r} (known: {', '.join(builtin_names())})")
    n, default_f, build = _BUILTINS[name]
    f = field or (rationals() if default_f == "rational" else gf(2))
    return Presentation(n, f, build(f), default_order(n), "quadratic", name)
