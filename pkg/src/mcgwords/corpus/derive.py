"""Authoring code for the corpus derivation scripts.

Each ``derive_*`` function drives a :class:`Builder` through one
construction on the cubed relator and returns it; the scripts shipped in the
corpus are the rendered move lists.  Run ``python -m mcgwords.corpus.generate``
to rebuild the assets.
"""
from __future__ import annotations

from collections import Counter

from ..words import parse_word
from .builder import Builder


def rotation_trick(b: Builder, copy_len: int, head="c1"):
    """Cancel each ``c1^-1`` against the leading ``c1`` of the next copy.

    The cubed word is rotated by one letter so that the first copy's leading
    ``c1`` moves to the end; every ``c1^-1`` then slides right into the ``c1``
    that opens the following copy.
    """
    b.rotate(1)
    s = 0
    for _ in range(3):
        i = b.find(f"{head}^-1", s)
        j = b.find(head, i)
        b.cancel_pair(i, j)
        s = i
    return b


def derive_x2(ctx):
    b = Builder(ctx, 2, "g2", [("C2a", 1), ("C2b", -1)])
    b.cancel(b.find("delta^-1 delta"))
    b.reorder(0, "((c1 c2)^2 (c5 c4)^-2)^3")
    s = 0
    for _ in range(3):
        b.insert("C2b", s + 4, "fwd")
        e = b.reduce(s + 4, s + 4 + 13 + 4)
        b.subst("L1", b.find("delta^-1", s), "fwd", rot=4, length=1)
        e += 5
        b.cancel(b.find("c5^-1 c5", s))
        e -= 2
        # c1 c2 c1 c2 x c3 c1^-1 c1^-1 c5^-1 c4 c5 c4 ...
        b.reach(s, e, "c1 c2 c1 c2 c1^-1 c1^-1 x c3 c5^-1 c4 c5 c4 c5 c4 c5 c4")
        b.braid(s + 1)
        b.braid(s + 9)
        e = b.reach(s, e, "c1 c1 c2 c1^-1 x c3 c4 c5 c5 c4 c5 c4")
        s = e
    b.check("(c1 c1 c2 c1^-1 x c3 c4 c5 c5 c4 c5 c4)^3")
    rotation_trick(b, 12)
    b.check("(c1 c2 x c3 c4 c5 c5 c4 c5 c4)^3")
    return b


def _x2_site_a(b: Builder, finish: bool):
    """First lantern of a copy: ``c3^-2 c3^2 c5^2`` becomes ``c3^-2 k1 h1 c1``."""
    i = b.find("c4 c5 c5 c4 c5 c4")
    b.uncancel("c3^-1", i + 1)
    b.uncancel("c3^-1", i + 2)
    b.subst("Lk", i + 3, "fwd")
    if not finish:
        return
    # c3 c4 c3^-1 c3^-1 k1 h1 c1 c4 c5 c4  ->  m n p c1 c5 c4
    s = i - 1
    b.uncancel("c4^-1", s)
    b.braid(s + 1)
    b.cancel(s + 3)
    j = b.find("c1 c4 c5 c4", s)
    b.swap(j)
    b.uncancel("c4", s + 4)
    b.uncancel("c4", s + 7)
    b.collapse("m", s)
    b.collapse("n", s + 1)
    b.collapse("p", s + 2)


def _x2_site_b(b: Builder):
    """Second lantern of a copy, borrowing the leading ``c1`` of the next copy."""
    i = b.find("k1 h1 c1 c4 c5 c4 c1")
    b.slide(i + 6, i + 3)
    b.uncancel("c5", i + 4)
    b.uncancel("c5", i + 5)
    b.subst("L1c", i + 2, "fwd")
    # c3 c4 c3^-1 c3^-1 k1 h1 c3 delta x c5^-1 c5^-1 c4 c5 c4
    s = i - 4
    b.cancel_pair(s + 3, s + 6)
    b.braid(s + 9)
    b.cancel(s + 8)
    b.collapse("t2", s)
    b.collapse("s2", b.find("c5^-1 c4 c5", s))


def derive_x2k(ctx, k):
    """The genus-two relator with ``k`` of its six lantern sites used."""
    if not 1 <= k <= 6:
        raise ValueError("k must lie in 1..6")
    b = derive_x2(ctx)
    sites = ["A0", "B0", "A1", "B1", "A2", "B2"][:k]
    for site in sites:
        if site[0] == "A":
            paired = f"B{site[1]}" in sites
            _x2_site_a(b, finish=not paired)
        else:
            if site == "B2":
                b.rotate(1)
            _x2_site_b(b)
    return b


def zg_copy(g, expanded=False, r_name="r{}"):
    """One third of the achiral genus-``g`` word, optionally with ``d`` and ``r_i`` written out."""
    d = "c1 c2 c1^-1" if expanded else "d"
    parts = ["c1", d]
    for k in range(2, g):
        parts.append(f"x{k - 1} c{2 * k - 1}")
        if k % 2 == 0:
            r = f"f{k - 1}^-1 c{2 * k} f{k - 1}" if expanded else r_name.format(k - 1)
            parts.append(f"{r} e{k - 1} e{k - 1} c{2 * k}")
        else:
            parts.append(f"f{k - 1}^-1 c{2 * k}")
    parts.append(f"x{g - 1} c{2 * g - 1}")
    a, b = f"c{2 * g}", f"c{2 * g + 1}"
    parts.append(f"{a} {b} {b} {a} {b} {a}" if g % 2 == 0 else f"{a} {b}")
    return " ".join(parts)


def zg_base_relations(g):
    rels = [("C2a", 1)]
    rels += [(f"C3_{k - 1}", -1 if k % 2 == 0 else 1) for k in range(2, g)]
    rels.append(("C2b", -1 if g % 2 == 0 else 1))
    return rels


def _torus(k):
    c, e, f = f"c{2 * k}", f"e{k - 1}", f"f{k - 1}"
    return f"{c} {e} {c} {f}"


def derive_zg(ctx, g, table=None, r_name="r{}"):
    """The achiral word on the glued chain surface of genus ``g >= 3``.

    Every negative torus block absorbs a three-chain, the last block absorbs
    the two-chain when it is negative, and each separating curve left over
    is traded for the interior of its lantern.  Braids and commuting
    cancellations then tidy each copy.
    """
    if g < 3:
        raise ValueError("genus must be at least 3")
    b = Builder(ctx, g, table or f"g{g}", zg_base_relations(g))
    b.reduce()
    a, z = f"c{2 * g}", f"c{2 * g + 1}"
    copy = ["c1 c2 c1 c2"]
    for k in range(2, g):
        copy.append(f"({_torus(k)})^{-1 if k % 2 == 0 else 1}")
    copy.append(f"({z} {a})^{-2 if g % 2 == 0 else 2}")
    layout = " ".join(copy)
    b.reorder(0, f"({layout})^3")
    n0 = len(b) // 3
    target = zg_copy(g, expanded=True)
    for j in (2, 1, 0):
        s = j * n0
        tail = len(b) - (j + 1) * n0
        for k in range(2, g, 2):
            i = b.find(f"({_torus(k)})^-1", s)
            b.insert(f"C3_{k - 1}", i, "fwd", rot=1)
            b.slide(i + 13, i + 17)
            for m in range(4):
                b.cancel(i + 12 - m)
        if g % 2 == 0:
            i = b.find(f"({z} {a})^-2", s)
            b.insert("C2b", i, "fwd")
            for m in range(4):
                b.cancel(i + 12 - m)
        for i_ in range(1, g):
            b.subst(f"L{i_}", b.find(f"delta{i_}^-1", s), "fwd", rot=4, length=1)
        b.braid(b.find("c2 c1 c2", s))
        for k in range(2, g):
            pat = f"c{2 * k} e{k - 1} c{2 * k}"
            for _ in range(2 if k % 2 == 0 else 1):
                b.braid(b.find(pat, s))
        i = b.find(f"{z}^-1 {z} {a}", s)
        b.cancel(i)
        b.braid(i)
        b.cancel(i - 1)
        b.reach(s, len(b) - tail, target)
        b.collapse("d", b.find("c1 c2 c1^-1", s))
        for k in range(2, g, 2):
            b.collapse(r_name.format(k - 1), b.find(f"f{k - 1}^-1 c{2 * k} f{k - 1}", s))
    b.check(f"({zg_copy(g, r_name=r_name)})^3")
    return b


def derive_x3(ctx):
    b = derive_zg(ctx, 3, r_name="r")
    for _ in range(3):
        b.expand(b.find("d"))
    rotation_trick(b, 14)
    for _ in range(6):
        b.rename(b.find("e1"), "c8")
    b.check("(c1 c2 x1 c3 r c8 c8 c4 x2 c5 c6 c7)^3")
    return b


X3_COPY = "c1 c2 x1 c3 r c8 c8 c4 x2 c5 c6 c7"
X3_ALT = "ybar1 x1 t v s2 c8 f1 c8 s2 xbar2 r3"


def _x3_site(b: Builder, s):
    """Trade the ``f1^-1`` hidden in ``r`` for the interior of the t,v lantern."""
    b.expand(s + 4)
    b.subst("Lt", s + 4, "fwd", rot=4, length=1)
    b.cancel_pair(s + 3, s + 7)
    e = b.reach(s, s + 17, "c1 c2 c1^-1 x1 t v c5^-1 c4 c8 f1 c8 c4 x2 c5 c7^-1 c6 c7")
    b.uncancel("c5", s + 8)
    b.slide(s + 9, s + 12)
    b.uncancel("c5", s + 14)
    b.collapse("d", s)
    b.collapse("s2", s + 4)
    b.collapse("s2", s + 8)
    b.collapse("xbar2", s + 9)
    b.collapse("r3", s + 10)
    return e


def derive_x3k(ctx, k):
    """X3 with its first ``k`` copies passed through the t,v lantern."""
    if not 1 <= k <= 3:
        raise ValueError("k must lie in 1..3")
    b = derive_x3(ctx)
    n = len(X3_COPY.split())
    for j in range(k):
        _x3_site(b, j * (n - 1))
    if k == 3:
        conjugate_leading_c1(b, n - 1)
        b.check(f"({X3_ALT})^3")
    return b


def derive_x3km(ctx, k, m):
    """X3,k with ``m`` of its lantern copies also carrying the three-chain."""
    if not 1 <= m <= k <= 3:
        raise ValueError("need 1 <= m <= k <= 3")
    b = derive_x3k(ctx, k)
    for _ in range(m):
        b.subst("C3x", b.find("s2 c8 f1") + 1, "fwd")
    return b


def conjugate_leading_c1(b: Builder, n, name="ybar1"):
    """Turn ``(d X)^3`` into ``(c1 d c1^-1 X)^3`` and collapse the head to ``name``.

    ``n`` is the copy length; ``X`` must commute with ``c1``.
    """
    for j in range(3):
        s = j * (n + 2)
        b.uncancel("c1^-1", s + 1)
        b.slide(s + 2, s + n + 1)
    b.rotate(-1)
    for j in range(3):
        b.expand(b.find("d", j * (n + 4)))
    for j in range(3):
        b.collapse(name, j * n)
    return b


def _tidy_end_g4(b: Builder, s):
    """``c9^-1 ... c8 c9 c9 c8 c9 c8`` -> ``... c8 c9 c9 c8 c8`` by two braids."""
    i = b.find("c9^-1", s)
    j = b.find("c8 c9 c9 c8 c9 c8", s)
    b.slide(i, j - 1)
    b.braid(j + 2)
    b.braid(j)
    b.cancel(j - 1)


def _y_trick(b: Builder, s, k=1):
    """``r_k e_k e_k c f_k^-1`` -> ``y y c`` with ``y = f_k^-1 c e_k c^-1 f_k``."""
    c, e, f, y = f"c{2 * k + 2}", f"e{k}", f"f{k}", f"y{k + 1}"
    i = b.find(f"r{k} {e} {e} {c} {f}^-1", s)
    b.expand(i)
    b.slide(i + 2, i + 4)             # f^-1 c e e f c f^-1
    b.uncancel(f"{c}^-1", i + 4)      # .. e e c^-1 c f c f^-1
    b.braid(i + 5)                    # .. c^-1 f c f f^-1
    b.cancel(i + 7)
    b.uncancel(f"{c}^-1", i + 3)
    b.uncancel(f, i + 4)
    b.collapse(y, i)
    b.collapse(y, i + 1)


def _r_trick(b: Builder, s, k=3):
    """``f_k^-1 r_k e_k e_k c`` -> ``r_k rbar_k rbar_k`` with ``rbar_k = c^-1 e_k c``."""
    c, e, f = f"c{2 * k + 2}", f"e{k}", f"f{k}"
    i = b.find(f"{f}^-1 r{k} {e} {e} {c}", s)
    b.expand(i + 1)                   # f^-1 f^-1 c f e e c
    b.uncancel(c, i + 4)              # f^-1 f^-1 c f c c^-1 e e c
    b.braid(i + 2)                    # f^-1 f^-1 f c f c^-1 ..
    b.cancel(i + 1)                   # f^-1 c f c^-1 e e c
    b.uncancel(c, i + 5)
    b.collapse(f"r{k}", i)
    b.collapse(f"rbar{k}", i + 1)
    b.collapse(f"rbar{k}", i + 2)


def derive_y4(ctx):
    b = derive_zg(ctx, 4)
    n = len(zg_copy(4).split())
    for j in (2, 1, 0):
        s = j * n
        _lantern_f2(b, s)
        _tidy_end_g4(b, s)
        _y_trick(b, s)
    for _ in range(3):
        b.expand(b.find("d"))
    rotation_trick(b, 18)
    b.check("(c1 c2 x1 c3 y2 y2 c4 x2 t v s3 xbar3 c8 c9 c9 c8 c8)^3")
    return b


Y4_COPY = "c1 c2 x1 c3 y2 y2 c4 x2 t v s3 xbar3 c8 c9 c9 c8 c8"
Y4_ALT = "ybar1 x1 u1 e1 e1 sbar2 t1_4 v1_4 w z s3 xbar3 r4 c9 c8 c8"


def _y4_site(b: Builder, s):
    """Undo the ``y2`` trick on one copy and spend its ``f1^-1`` on the second lantern."""
    b.expand(s + 4)
    b.expand(s + 9)
    b.cancel(s + 8)
    b.cancel(s + 7)                   # f1^-1 c4 e1 e1 c4^-1 f1 c4
    b.uncancel("f1", s + 11)
    b.braid(s + 9)
    b.cancel(s + 8)                   # f1^-1 c4 e1 e1 f1 c4 f1^-1
    b.slide(s + 8, s + 6)
    b.subst("Lt14", s + 10, "fwd", rot=4, length=1)
    b.reach(s, s + 26, "c1 c2 c1^-1 x1 c3 f1^-1 c4 f1 e1 e1 c4 c3^-1 t1_4 v1_4 v^-1 x2 t v "
                       "s3 xbar3 c9^-1 c8 c9 c9 c8 c8")
    b.uncancel("c3^-1", s + 8)
    b.slide(s + 9, s + 11)
    b.uncancel("v", s + 18)
    b.collapse("d", s)
    b.collapse("r1", s + 3)
    b.collapse("u1", s + 2)
    b.collapse("sbar2", s + 5)
    b.collapse("w", s + 8)
    b.collapse("z", s + 9)
    b.collapse("r4", s + 12)


def derive_y4k(ctx, k):
    """Y4 with its first ``k`` copies passed through the second lantern."""
    if not 1 <= k <= 3:
        raise ValueError("k must lie in 1..3")
    b = derive_y4(ctx)
    n = len(Y4_COPY.split())
    for j in range(k):
        _y4_site(b, j * (n - 1))
    if k == 3:
        conjugate_leading_c1(b, n - 1)
        b.check(f"({Y4_ALT})^3")
    return b


X4_COPY = "a1 b1 a2 b2 a3 b3 x1 c1 x2 c2 x3 c3 r d"
X4_ALT = "g1 g2 a3 b3 x1 x2 alpha2 t v x3 c3 r d"


def derive_x4(ctx):
    """Three two-chains around the star relation on the genus-four rose."""
    b = Builder(ctx, 4, "g4rose", [("C2_1", 1), ("C2_2", 1), ("C2_3", 1), ("E", -1)])
    b.reduce()
    b.reorder(0, "((b1 a1)^2 (b2 a2)^2 (b3 a3)^2 (alpha1 alpha2 alpha3 d)^-1)^3")
    n0 = 16
    star = "alpha3^-1 alpha2^-1 alpha1^-1 d alpha1 alpha2 alpha3 d"
    head = "b1 a1 b1 a1^-1 b2 a2 b2 a2^-1 b3 a3 b3 a3^-1 x1 c1 x2 c2 x3 c3"
    for j in (2, 1, 0):
        s = j * n0
        i = b.find("d^-1", s)
        b.insert("E", i, "fwd")
        for m in range(4):
            b.cancel(i + 14 - m)
        for k in (1, 2, 3):
            b.subst(f"L{k}", b.find(f"delta{k}^-1", s), "fwd", rot=4, length=1)
        e = s + 12 + 3 * 6 + 8
        need = Counter(parse_word(f"{head} {star}"))
        b.reduce(s, e, need)
        b.reorder(s, f"{head} {star}")
        for k in range(3):
            b.braid(s + 4 * k)
            b.cancel(s + 4 * k + 2)
            s -= 2
        s = j * n0
        b.collapse("r", b.find("alpha3^-1", s))
    b.check(f"({X4_COPY})^3")
    return b


def derive_x4k(ctx, k):
    """The rose word with the alpha2 lantern used in its first ``k`` copies."""
    if not 1 <= k <= 3:
        raise ValueError("k must lie in 1..3")
    b = derive_x4(ctx)
    n = len(X4_COPY.split())
    for j in range(k):
        s = j * (n - 1)
        b.uncancel("a1^-1", s + 2)
        b.uncancel("a2^-1", s + 6)
        b.reach(s, s + n + 4, "a1 b1 a1^-1 a2 b2 a2^-1 a3 b3 x1 x2 a1 a2 c1 c2 x3 c3 r d")
        b.subst("Lr", s + 10, "fwd")
        b.collapse("g1", s)
        b.collapse("g2", s + 1)
    if k == 3:
        b.check(f"({X4_ALT})^3")
    return b


def _lantern_f2(b: Builder, s, name="Lt"):
    """Spend ``f2^-1`` on the lantern around f1 c5 c7 and the next curve over.

    Leaves ``... c4 f1^-1 x2 t v s3 xbar3 <f3^-1 or c9^-1> ...``.
    """
    b.subst(name, b.find("f2^-1", s), "fwd", rot=4, length=1)
    b.cancel_pair(b.find("c5", s + 9), b.find("c5^-1", s))
    i = b.find("f1^-1", b.find("c4", s))
    b.slide(i, b.find("x2", s))
    i = b.find("c7^-1", s)
    b.slide(i, b.find("c6", s) - 1)
    b.uncancel("c7", b.find("x3", s))
    b.collapse("s3", b.find("c7^-1 c6 c7", s))
    b.collapse("xbar3", b.find("c7^-1 x3 c7", s))


Y5_COPY = "c1 c2 x1 c3 y2 y2 c4 x2 t v s3 xbar3 r3 rbar3 rbar3 x4 c9 c10 c11"


def derive_y5(ctx):
    b = derive_zg(ctx, 5)
    n = len(zg_copy(5).split())
    for j in (2, 1, 0):
        s = j * n
        _lantern_f2(b, s)
        i = b.find("f3^-1", s)
        b.slide(i, b.find("r3", s) - 1)
        _y_trick(b, s, 1)
        _r_trick(b, s, 3)
    for _ in range(3):
        b.expand(b.find("d"))
    rotation_trick(b, 21)
    b.check(f"({Y5_COPY})^3")
    return b


Y6_COPY = ("u1 xbar1 y2 y2 c4 x2 t2_4 s3 xbar3_2 t2_6 t1_2_6 v1_6 y4_6 y4_6 c8_12 x4_5 "
           "tbar4_6 s5 xbar5 w6 c12 c13")


def _conjugate(b: Builder, s, e, by, letters, name_of):
    """Rewrite ``by^-1 X1 X2 ... by`` as a product of ``by``-conjugates.

    ``w[s]`` must be ``by^-1`` and ``w[e]`` the matching ``by``; every gap
    gets an inserted ``by by^-1`` and each conjugate is collapsed.
    """
    for k in range(letters - 1, 0, -1):
        b.uncancel(by, s + 1 + k)
    for k in range(letters):
        b.collapse(name_of(b.w[s + 1 + k].curve), s + k)


def derive_y6(ctx):
    """Twelve lantern substitutions on the genus-six achiral word."""
    b = derive_zg(ctx, 6)
    n = len(zg_copy(6).split())
    for j in (2, 1, 0):
        s = j * n
        b.subst("L24", b.find("f2^-1", s), "fwd", rot=4, length=1)
        b.subst("L46", b.find("f4^-1", s), "fwd", rot=4, length=1)
        e = len(b) - (2 - j) * n
        e = b.reach(s, e, "c1 d x1 c3 r1 e1 e1 c4 f1^-1 x2 t2_4 v2_4 c7^-1 c6 x3 c7 f3^-1 r3 e3 e3 "
                          "c8 f3^-1 x4 t4_6 v4_6 c11^-1 c10 x5 c11 c13^-1 c12 c13 c13 c12 c13 c12")
        b.uncancel("c7", b.find("x3", s))
        b.collapse("s3", b.find("c7^-1 c6 c7", s))
        b.collapse("xbar3", b.find("c7^-1 x3 c7", s))
        b.uncancel("c11", b.find("x5", s))
        b.collapse("s5", b.find("c11^-1 c10 c11", s))
        b.collapse("xbar5", b.find("c11^-1 x5 c11", s))
        b.collapse("s6", b.find("c13^-1 c12 c13", s))
        _y_trick(b, s, 1)
        _y_trick(b, s, 3)
        # ... xbar3 f3^-1 y4 y4 c8 x4 t4_6 v4_6 s5 xbar5 s6 c13 c12 c13 c12
        b.subst("L26", b.find("f3^-1", s), "fwd", rot=4, length=1)
        i = b.find("x2", s)
        b.reorder(i, "x2 t2_4 s3 v2_4 xbar3 v2_4^-1 t2_6 v2_6 f1^-1 v4_6^-1 y4 y4 c8 x4 t4_6 "
                     "v4_6 s5 xbar5 c13^-1 s6 c13 c12 c13 c12")
        b.collapse("xbar3_2", i + 3)
        k = b.find("x4 t4_6", s) + 1
        b.uncancel("v4_6", k)
        b.collapse("tbar4_6", k + 1)
        k = b.find("v4_6^-1 y4", s)
        _conjugate(b, k, k + 9, "v4_6", 4, lambda c: {"y4": "y4_6", "c8": "c8_12", "x4": "x4_5"}[c])
        b.collapse("y6", b.find("c13^-1 s6 c13", s))
        # ... t2_6 v2_6 f1^-1 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 y6 c12 c13 c12
        b.subst("L16", b.find("f1^-1", s), "fwd", rot=4, length=1)
        i = b.find("t2_6", s)
        b.reorder(i, "t2_6 v2_6 t1_6 v2_6^-1 v1_6 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 "
                     "c13^-1 y6 c12 c13 c12 c3^-1 c1^-1")
        b.collapse("t1_2_6", i + 1)
        k = b.find("c12 c13 c12", s)
        b.braid(k)
        b.collapse("w6", k - 2)
    b.rotate(1)
    for _ in range(3):
        b.cancel(b.find("c1^-1 c1"))
    b.rotate(-1)
    for j in range(3):
        k = b.find("d x1 c3", j * 22)
        b.uncancel("c3", k + 1)
        b.collapse("u1", k - 1)
        b.collapse("xbar1", k)
    b.check(f"({Y6_COPY})^3")
    return b
