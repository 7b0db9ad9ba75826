"""Sparse exact Laurent polynomials in m variables over the integers."""
from __future__ import annotations

from .errors import InexactDivision, ZeroPolynomial


class LaurentPoly:
    """Map from exponent vectors (tuples in Z^m) to nonzero int coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                assert len(e) == nvars
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}
        self._hash = None

    # --- constructors ------------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars)

    @staticmethod
    def one(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple([0] * nvars): 1})

    @staticmethod
    def monomial(nvars: int, exp, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(exp): coeff})

    @staticmethod
    def variable(nvars: int, i: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return LaurentPoly.monomial(nvars, e)

    # --- basic structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {tuple([0] * self.nvars): 1}

    def support(self):
        return list(self.terms.keys())

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    # --- arithmetic ----------------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: k * c for e, c in self.terms.items()})

    def shift(self, exp) -> "LaurentPoly":
        exp = tuple(exp)
        return LaurentPoly(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def pow(self, k: int) -> "LaurentPoly":
        assert k >= 0
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # --- ordering helpers ----------------------------------------------------
    def _lead(self):
        """Leading term under grlex (total degree, then lex)."""
        return max(self.terms, key=lambda e: (sum(e), e))

    def min_exponents(self):
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def to_json(self):
        return [
            {"exp": list(e), "coeff": c}
            for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        ]

    @staticmethod
    def from_json(nvars, data) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(t["exp"]): t["coeff"] for t in data})

    def format(self, names) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mono = "*".join(
                f"{names[i]}" + (f"^{p}" if p != 1 else "") for i, p in enumerate(e) if p
            )
            if not mono:
                bits.append(f"{c:+d}")
            elif c == 1:
                bits.append(f"+{mono}")
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c:+d}*{mono}")
        s = " ".join(bits)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"LaurentPoly({self.format([f'x{i}' for i in range(self.nvars)])})"


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient q with a = b*q; raises InexactDivision otherwise.

    Both inputs are shifted into the polynomial range and divided by
    leading-term elimination under grlex; when b divides a, the leading
    term of the remainder stays divisible at every step.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.nvars)
    sa = a.min_exponents()
    sb = b.min_exponents()
    ap = a.shift(tuple(-x for x in sa))
    bp = b.shift(tuple(-x for x in sb))
    lead_b = bp._lead()
    cb = bp.terms[lead_b]
    q = {}
    r = ap
    while not r.is_zero():
        lead_r = r._lead()
        cr = r.terms[lead_r]
        e = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in e) or cr % cb != 0:
            raise InexactDivision("leading term not divisible")
        coeff = cr // cb
        q[e] = coeff
        r = r - bp.shift(e).scale(coeff)
    quot = LaurentPoly(a.nvars, q)
    return quot.shift(tuple(x - y for x, y in zip(sa, sb)))


def substitute(u: LaurentPoly, values) -> LaurentPoly:
    """Evaluate u at x_j = values[j], each a Laurent polynomial.

    Negative exponents are handled by clearing denominators and one exact
    division; this is valid exactly when the result is Laurent, which the
    Laurent phenomenon guarantees for our uses.
    """
    nvars = values[0].nvars
    shift = [max(0, -min((e[j] for e in u.terms), default=0)) for j in range(u.nvars)]
    num = LaurentPoly.zero(nvars)
    for e, c in u.terms.items():
        term = LaurentPoly.one(nvars).scale(c)
        for j, p in enumerate(e):
            term = term * values[j].pow(p + shift[j])
        num = num + term
    den = LaurentPoly.one(nvars)
    for j, s in enumerate(shift):
        if s:
            den = den * values[j].pow(s)
    return exact_divide(num, den)


def tropical_eval(f: LaurentPoly, r) -> int:
    """Max of <v, r> over the support of f (f nonzero)."""
    if f.is_zero():
        raise ZeroPolynomial("tropical evaluation of 0")
    r = tuple(r)
    assert len(r) == f.nvars
    return max(sum(a * b for a, b in zip(e, r)) for e in f.terms)
