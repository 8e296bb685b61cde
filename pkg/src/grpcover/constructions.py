"""Builders for named group families and the group-expression language.

Grammar (whitespace insignificant)::

    expr    := name "(" int ("," int)* ")"
             | "product" "(" expr "," expr ")"
             | "semidirect" "(" expr "," action ")"
    action  := int ":" "[" int ("," int)* "]"

``semidirect(B, m:[i1,...,ir])`` adjoins an element t of order m acting on
B by the automorphism sending the j-th generator of B to element ``ij`` of
B; t b t^-1 = phi(b).  Generators of each builder are listed in its
docstring together with the element numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import prod as iprod

import numpy as np

from . import config
from .errors import BadParameter, OrderBudgetExceeded, ParseError
from .fields import gf_field, is_prime
from .group import GroupTable, Permutation, direct_product, group_from_generators


# -- expression tree ---------------------------------------------------------

PRIMITIVES = {
    "cyclic": (1, 1),
    "abelian": (1, None),
    "dihedral": (1, 1),
    "dicyclic": (1, 1),
    "symmetric": (1, 1),
    "alternating": (1, 1),
    "heisenberg": (1, 1),
    "modular2": (1, 1),
    "affine": (2, 2),
}


@dataclass(frozen=True)
class Prim:
    name: str
    args: tuple[int, ...]

    def __str__(self):
        return f"{self.name}({','.join(map(str, self.args))})"

    def order(self) -> int:
        a = self.args
        if self.name in ("cyclic", "dihedral", "dicyclic", "modular2"):
            return a[0]
        if self.name == "abelian":
            return iprod(a)
        if self.name == "symmetric":
            return _factorial(a[0])
        if self.name == "alternating":
            return max(1, _factorial(a[0]) // 2)
        if self.name == "heisenberg":
            return a[0] ** 3
        if self.name == "affine":
            q = a[0] ** a[1]
            return q * (q - 1)
        raise BadParameter(f"unknown group family {self.name!r}")

    def validate(self):
        lo, hi = PRIMITIVES.get(self.name, (None, None))
        if lo is None:
            raise BadParameter(f"unknown group family {self.name!r}")
        if len(self.args) < lo or (hi is not None and len(self.args) > hi):
            raise BadParameter(f"{self.name} takes {lo if lo == hi else f'at least {lo}'} argument(s)")
        a = self.args
        n = self.name
        if n in ("cyclic", "symmetric", "alternating") and a[0] < 1:
            raise BadParameter(f"{n} needs a positive argument")
        if n == "abelian" and any(x < 1 for x in a):
            raise BadParameter("abelian factors must be positive")
        if n == "dihedral" and (a[0] < 4 or a[0] % 2):
            raise BadParameter("dihedral(2n) needs an even order of at least 4")
        if n == "dicyclic" and (a[0] < 8 or a[0] % 4):
            raise BadParameter("dicyclic(4n) needs a multiple of 4 of at least 8")
        if n == "heisenberg" and not is_prime(a[0]):
            raise BadParameter("heisenberg(p) needs a prime p")
        if n == "modular2" and (a[0] < 16 or a[0] & (a[0] - 1)):
            raise BadParameter("modular2(2^n) needs a power of two of at least 16")
        if n == "affine" and (not is_prime(a[0]) or a[1] < 1):
            raise BadParameter("affine(p,k) needs a prime p and k >= 1")


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"

    def __str__(self):
        return f"product({self.left},{self.right})"

    def order(self) -> int:
        return self.left.order() * self.right.order()

    def validate(self):
        self.left.validate()
        self.right.validate()


@dataclass(frozen=True)
class Semidirect:
    base: "GroupExpr"
    acting_order: int
    images: tuple[int, ...]

    def __str__(self):
        return f"semidirect({self.base},{self.acting_order}:[{','.join(map(str, self.images))}])"

    def order(self) -> int:
        return self.base.order() * self.acting_order

    def validate(self):
        self.base.validate()
        if self.acting_order < 1:
            raise BadParameter("acting cyclic group must have positive order")


GroupExpr = Prim | Product | Semidirect


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([a-z_][a-z0-9_]*)|(\d+)|([(),:\[\]]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError("unexpected character", offset=self._offset(pos + len(text[pos:]) - len(text[pos:].lstrip())))
            start = m.start(m.lastindex)
            kind = ("name", "int", "punct")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def _offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", offset=self._offset(tok[2]))
        self.i += 1
        return tok

    def expr(self) -> GroupExpr:
        _, name, start = self.take("name")
        self.take("punct", "(")
        if name == "product":
            left = self.expr()
            self.take("punct", ",")
            right = self.expr()
            self.take("punct", ")")
            return Product(left, right)
        if name == "semidirect":
            base = self.expr()
            self.take("punct", ",")
            m = int(self.take("int")[1])
            self.take("punct", ":")
            self.take("punct", "[")
            images = [int(self.take("int")[1])]
            while self.peek()[1] == ",":
                self.take("punct", ",")
                images.append(int(self.take("int")[1]))
            self.take("punct", "]")
            self.take("punct", ")")
            return Semidirect(base, m, tuple(images))
        if name not in PRIMITIVES:
            raise ParseError(f"unknown group family {name!r}", offset=self._offset(start))
        args = [int(self.take("int")[1])]
        while self.peek()[1] == ",":
            self.take("punct", ",")
            args.append(int(self.take("int")[1]))
        self.take("punct", ")")
        return Prim(name, tuple(args))


def parse_group_expr(text: str) -> GroupExpr:
    p = _Parser(text)
    expr = p.expr()
    tok = p.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", offset=p._offset(tok[2]))
    expr.validate()
    return expr


# -- builders ----------------------------------------------------------------

def cyclic(n: int) -> GroupTable:
    """Element i is x^i; generator x = 1."""
    i = np.arange(n)
    return GroupTable((i[:, None] + i[None, :]) % n, name=f"cyclic({n})", generators=[1] if n > 1 else [])


def abelian(*ns: int, max_order: int | None = None) -> GroupTable:
    """Row-major product of cyclic factors."""
    G = cyclic(ns[0])
    for n in ns[1:]:
        G = direct_product(G, cyclic(n), max_order=max_order)
    G.name = f"abelian({','.join(map(str, ns))})"
    return G


def dihedral(order: int) -> GroupTable:
    """Element r^i s^j has index j*n + i; generators r = 1, s = n."""
    n = order // 2
    idx = np.arange(order)
    i, j = idx % n, idx // n
    sign = np.where(j == 1, -1, 1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    ref = (j[:, None] + j[None, :]) % 2
    return GroupTable(ref * n + rot, name=f"dihedral({order})", generators=[1, n])


def dicyclic(order: int) -> GroupTable:
    """<a, x | a^2n, x^2 = a^n, a^x = a^-1>; a^i x^j has index j*2n + i."""
    m = order // 2
    n = m // 2
    table = [[0] * order for _ in range(order)]
    for u in range(order):
        i, j = u % m, u // m
        for v in range(order):
            k, l = v % m, v // m
            if j == 0:
                e, f = i + k, l
            elif l == 0:
                e, f = i - k, 1
            else:
                e, f = i - k + n, 0
            table[u][v] = f * m + e % m
    return GroupTable(table, name=f"dicyclic({order})", generators=[1, m])


def symmetric(n: int, max_order: int | None = None) -> GroupTable:
    """Permutations of n points from (0 1) and (0 1 ... n-1), breadth-first."""
    if n <= 1:
        return GroupTable([[0]], name=f"symmetric({n})")
    gens = [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))]
    if n == 2:
        gens = gens[:1]
    return group_from_generators(gens, name=f"symmetric({n})", max_order=max_order)


def alternating(n: int, max_order: int | None = None) -> GroupTable:
    """Even permutations generated by the 3-cycles (0 1 i), i = 2..n-1."""
    if n <= 2:
        return GroupTable([[0]], name=f"alternating({n})")
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return group_from_generators(gens, name=f"alternating({n})", max_order=max_order)


def heisenberg(p: int) -> GroupTable:
    """Unitriangular 3x3 matrices over GF(p).

    Matrix [[1,a,c],[0,1,b],[0,0,1]] has index a*p^2 + b*p + c; generators
    are (1,0,0) and (0,1,0).
    """
    idx = np.arange(p ** 3)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    C = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return GroupTable(A * p * p + B * p + C, name=f"heisenberg({p})", generators=[p * p, p])


def affine_group(p: int, k: int, max_order: int | None = None) -> GroupTable:
    """GF(q)+ extended by b of order q-1 acting as multiplication by a primitive element.

    Element h b^e (h a field element, 0 <= e < q-1) has index e*q + h, so the
    elementary abelian normal subgroup is indices 0..q-1; b has index q.
    """
    if max_order is None:
        max_order = config.max_order()
    if not is_prime(p) or k < 1:
        raise BadParameter("affine(p,k) needs a prime p and k >= 1")
    q = p ** k
    if q * (q - 1) > max_order:
        raise OrderBudgetExceeded(f"affine({p},{k}) has order {q * (q - 1)} > {max_order}")
    F = gf_field(p, k)
    m = q - 1
    tpow = [1]
    for _ in range(m - 1):
        tpow.append(F.mul[tpow[-1]][F.generator])
    n = q * m
    table = [[0] * n for _ in range(n)]
    for u in range(n):
        e1, h1 = divmod(u, q)
        scale = F.mul[tpow[e1]]
        add = F.add[h1]
        row = table[u]
        for v in range(n):
            e2, h2 = divmod(v, q)
            row[v] = ((e1 + e2) % m) * q + add[scale[h2]]
    gens = [q] + ([1] if q > 2 else [])
    if m == 1:
        gens = [1]
    G = GroupTable(table, name=f"affine({p},{k})", generators=gens)
    G.field = F
    return G


def semidirect(B: GroupTable, acting_order: int, images, name: str | None = None, max_order: int | None = None) -> GroupTable:
    """``B`` extended by t of order ``acting_order`` with t b t^-1 = phi(b).

    Element b t^i has index i*|B| + b; generators are B's followed by t.
    """
    if max_order is None:
        max_order = config.max_order()
    images = [int(x) for x in images]
    if len(images) != len(B.generators):
        raise BadParameter(f"action needs {len(B.generators)} images, one per base generator")
    if any(not 0 <= x < B.order for x in images):
        raise BadParameter("action image outside the base group")
    n = B.order * acting_order
    if n > max_order:
        raise OrderBudgetExceeded(f"semidirect product of order {n} exceeds {max_order}")
    prod = B.product
    phi = [-1] * B.order
    phi[0] = 0
    queue = [0]
    for x in queue:
        for g, img in zip(B.generators, images):
            y = prod[x][g]
            if phi[y] < 0:
                phi[y] = prod[phi[x]][img]
                queue.append(y)
    if any(v < 0 for v in phi) or sorted(phi) != list(range(B.order)):
        raise BadParameter("action does not define a bijection of the base group")
    P = B.table
    ph = np.asarray(phi)
    if not np.array_equal(ph[P], P[ph[:, None], ph[None, :]]):
        raise BadParameter("action does not extend to an automorphism")
    powers = [np.arange(B.order)]
    for _ in range(acting_order):
        powers.append(ph[powers[-1]])
    if not np.array_equal(powers[acting_order], powers[0]):
        raise BadParameter(f"automorphism order does not divide {acting_order}")
    nb = B.order
    table = np.empty((n, n), dtype=np.int64)
    for i in range(acting_order):
        for j in range(acting_order):
            # (b1 t^i)(b2 t^j) = b1 phi^i(b2) t^(i+j)
            block = P[:, powers[i]] + ((i + j) % acting_order) * nb
            table[i * nb:(i + 1) * nb, j * nb:(j + 1) * nb] = block
    gens = list(B.generators) + ([nb] if acting_order > 1 else [])
    return GroupTable(table, name=name or f"semidirect({B.name},{acting_order})", generators=gens or None)


def modular2(order: int) -> GroupTable:
    """<x, y | x^(order/2), y^2, y x y = x^(1 + order/4)>, via semidirect."""
    m = order // 2
    G = semidirect(cyclic(m), 2, [1 + m // 2])
    G.name = f"modular2({order})"
    return G


def build(expr: GroupExpr | str, max_order: int | None = None) -> GroupTable:
    if isinstance(expr, str):
        expr = parse_group_expr(expr)
    if max_order is None:
        max_order = config.max_order()
    expr.validate()
    if expr.order() > max_order:
        raise OrderBudgetExceeded(f"{expr} has order {expr.order()} > max order {max_order}")
    return _build(expr, max_order)


@lru_cache(maxsize=512)
def _build(expr: GroupExpr, max_order: int) -> GroupTable:
    if isinstance(expr, Product):
        G = direct_product(_build(expr.left, max_order), _build(expr.right, max_order), max_order=max_order)
    elif isinstance(expr, Semidirect):
        G = semidirect(_build(expr.base, max_order), expr.acting_order, expr.images, max_order=max_order)
    else:
        a = expr.args
        G = {
            "cyclic": lambda: cyclic(a[0]),
            "abelian": lambda: abelian(*a, max_order=max_order),
            "dihedral": lambda: dihedral(a[0]),
            "dicyclic": lambda: dicyclic(a[0]),
            "symmetric": lambda: symmetric(a[0], max_order=max_order),
            "alternating": lambda: alternating(a[0], max_order=max_order),
            "heisenberg": lambda: heisenberg(a[0]),
            "modular2": lambda: modular2(a[0]),
            "affine": lambda: affine_group(a[0], a[1], max_order=max_order),
        }[expr.name]()
    G.name = str(expr)
    return G
