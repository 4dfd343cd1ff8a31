#!/usr/bin/env python3
"""Generate the figure-eight knot complement fixtures.

Gluing data is the two-tetrahedron triangulation of the census manifold m004
(as printed by SnapPy).  Everything else is computed here from that
combinatorics and the regular ideal shapes:

  * the developed fundamental domain (tet 0 at 0, 1, inf, w; tet 1 glued
    across the tree face 0),
  * face-pairing matrices for the three non-tree face pairs,
  * edge-cycle relators,
  * edge classes, cusp classes, and the meridian completeness equation in the
    shape convention used by mutkit (z on edges 02/13, 1/(1-z) on 12/03,
    1-1/z on 01/23).

If SnapPy is importable, its gluing equations are used as a cross-check of
the edge equations and as the source of the meridian curve.  The committed
meridian row was produced this way and is re-verified on every run.

Run from the repository root:
    python3 tools/fixtures/gen_figure_eight.py data/fixtures
"""

import itertools
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

NEIGHBORS = [[1, 1, 1, 1], [0, 0, 0, 0]]
GLUINGS = [["0132", "1230", "2310", "2103"], ["0132", "3201", "3012", "2103"]]
# Meridian in mutkit's column convention; see translate_snappy_row().
MERIDIAN = [0, 0, 1, -1, 0, 0]

EDGE_PARAM = {  # vertex pair -> which shape column (0: z, 1: z', 2: z'')
    (0, 2): 0, (1, 3): 0,
    (1, 2): 1, (0, 3): 1,
    (0, 1): 2, (2, 3): 2,
}
EDGE_ORDER = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def perm(s):
    return [int(ch) for ch in s]


def edge_classes():
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for t in range(2):
        for f in range(4):
            sigma = perm(GLUINGS[t][f])
            for a, b in itertools.combinations([v for v in range(4) if v != f], 2):
                lhs = (t, tuple(sorted((a, b))))
                rhs = (NEIGHBORS[t][f], tuple(sorted((sigma[a], sigma[b]))))
                ra, rb = find(lhs), find(rhs)
                if ra != rb:
                    parent[ra] = rb
    labels, out = {}, {}
    for t in range(2):
        for e in EDGE_ORDER:
            root = find((t, e))
            labels.setdefault(root, len(labels))
            out[(t, e)] = labels[root]
    return out, len(labels)


def edge_rows(classes, count):
    rows = [[0] * 6 for _ in range(count)]
    for (t, e), k in classes.items():
        rows[k][3 * t + EDGE_PARAM[e]] += 1
    return rows


def translate_snappy_row(row, shift):
    out = [0] * len(row)
    for t in range(len(row) // 3):
        for j in range(3):
            out[3 * t + j] = row[3 * t + (j + shift) % 3]
    return out


def mobius_from_three(src, dst):
    """SL(2,C) matrix sending the three points src to dst (None = infinity)."""

    def to_std(p):
        # Matrix sending p0 -> 0, p1 -> 1, p2 -> inf.
        p0, p1, p2 = p
        if p0 is None:
            return mp.matrix([[0, p1 - p2], [1, -p2]])
        if p1 is None:
            return mp.matrix([[1, -p0], [1, -p2]])
        if p2 is None:
            return mp.matrix([[1, -p0], [0, p1 - p0]])
        return mp.matrix([[(p1 - p2), -p0 * (p1 - p2)], [(p1 - p0), -p2 * (p1 - p0)]])

    m = mp.inverse(to_std(dst)) * to_std(src)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return m / mp.sqrt(det)


def act(m, p):
    if p is None:
        return None if m[1, 0] == 0 else m[0, 0] / m[1, 0]
    den = m[1, 0] * p + m[1, 1]
    if abs(den) < mp.mpf(10) ** (-30):
        return None
    return (m[0, 0] * p + m[0, 1]) / den


def close(p, q):
    if p is None or q is None:
        return p is None and q is None
    return abs(p - q) < mp.mpf(10) ** (-25)


def develop():
    w = mp.exp(1j * mp.pi / 3)
    pos = {(0, 0): mp.mpc(0), (0, 1): mp.mpc(1), (0, 2): None, (0, 3): w}
    sigma = perm(GLUINGS[0][0])
    for v in (1, 2, 3):
        pos[(1, sigma[v])] = pos[(0, v)]
    known = [v for v in range(4) if (1, v) in pos]
    missing = [v for v in range(4) if (1, v) not in pos][0]
    std = [mp.mpc(0), mp.mpc(1), None, w]
    g = mobius_from_three([std[v] for v in known], [pos[(1, v)] for v in known])
    pos[(1, missing)] = act(g, std[missing])
    return pos


def face_pairings(pos):
    mats = {}
    for f in (1, 2, 3):
        sigma = perm(GLUINGS[0][f])
        verts = [v for v in range(4) if v != f]
        src = [pos[(1, sigma[v])] for v in verts]
        dst = [pos[(0, v)] for v in verts]
        mats[f] = mobius_from_three(src, dst)
        for v in verts:
            assert close(act(mats[f], pos[(1, sigma[v])]), pos[(0, v)])
    return mats


def face_words():
    names = {1: "a", 2: "b", 3: "c"}
    words = [["1"] * 4, ["1"] * 4]
    for f in (1, 2, 3):
        words[0][f] = names[f]
        words[1][perm(GLUINGS[0][f])[f]] = names[f] + "^-1"
    return words


def edge_relators(words):
    seen, relators = set(), []
    for t in range(2):
        for a, b in EDGE_ORDER:
            if (t, a, b) in seen:
                continue
            c, d = [v for v in range(4) if v not in (a, b)]
            cur_t, cur_a, cur_b, exit_v, other_v = t, a, b, c, d
            letters = []
            while True:
                seen.add((cur_t, min(cur_a, cur_b), max(cur_a, cur_b)))
                sigma = perm(GLUINGS[cur_t][exit_v])
                word = words[cur_t][exit_v]
                if word != "1":
                    letters.append(word)
                nt = NEIGHBORS[cur_t][exit_v]
                na, nb = sigma[cur_a], sigma[cur_b]
                entered = sigma[exit_v]
                nothers = [v for v in range(4) if v not in (na, nb, entered)]
                cur_t, cur_a, cur_b = nt, na, nb
                exit_v, other_v = nothers[0], entered
                if cur_t == t and {cur_a, cur_b} == {a, b} and exit_v == c:
                    break
            relators.append(" ".join(letters))
    return relators


def reduce_word(letters):
    out = []
    for x in letters:
        inv = x[:-3] if x.endswith("^-1") else x + "^-1"
        if out and out[-1] == inv:
            out.pop()
        else:
            out.append(x)
    return out


def eval_word(mats, word):
    m = mp.eye(2)
    for x in word.split():
        if x.endswith("^-1"):
            g = mats[x[:-3]]
            m = m * mp.matrix([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])
        else:
            m = m * mats[x]
    return m


def fmt_matrix(m):
    parts = []
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        z = mp.mpc(m[i, j])
        z = mp.mpc(mp.chop(z.real, tol=1e-30), mp.chop(z.imag, tol=1e-30))
        parts.append("[%s,%s]" % (mp.nstr(z.real, 17, min_fixed=-30, max_fixed=30),
                                  mp.nstr(z.imag, 17, min_fixed=-30, max_fixed=30)))
    return "[" + ",".join(parts) + "]"


def random_sl2(seed):
    rng = mp.mpf(seed)
    entries = [mp.mpc(mp.sin(rng * (k + 1) * 1.7) + 0.3, mp.cos(rng * (k + 2) * 0.9)) for k in range(4)]
    m = mp.matrix([[entries[0], entries[1]], [entries[2], entries[3]]])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return m / mp.sqrt(det)


def cross_check_snappy(rows):
    try:
        import snappy  # noqa: F401
    except ImportError:
        print("snappy not available; skipping cross-check")
        return
    M = snappy.Manifold("m004")
    eqs = [list(map(int, r)) for r in M.gluing_equations()]
    snappy_edges = sorted(eqs[:2])
    for shift in range(3):
        if sorted(translate_snappy_row(r, shift) for r in snappy_edges) == sorted(rows):
            meridian = translate_snappy_row(eqs[2], shift)
            assert meridian == MERIDIAN, (meridian, MERIDIAN)
            print("snappy cross-check ok (column shift %d)" % shift)
            return
    raise SystemExit("edge equations do not match SnapPy under any column rotation")


def write_files(outdir, pos, mats, words, relators, classes, cusps):
    outdir.mkdir(parents=True, exist_ok=True)
    w = mp.exp(1j * mp.pi / 3)
    shapes = [w, w]

    tri = ["% mutkit-triangulation 1",
           "# Figure-eight knot complement (census m004), two regular ideal tetrahedra.",
           "# Gluings from the SnapPy census triangulation; face words name the",
           "# face-pairing generators of figure_eight.rep (tree face: empty word '1').",
           "tetrahedra 2"]
    for t in range(2):
        tri.append("tet %d" % t)
        tri.append("  neighbors %s" % " ".join(map(str, NEIGHBORS[t])))
        tri.append("  gluings %s" % " ".join(GLUINGS[t]))
        tri.append("  face_words %s" % " ".join(words[t]))
        tri.append("  edges %s" % " ".join(str(classes[(t, e)]) for e in EDGE_ORDER))
        tri.append("  cusps %s" % " ".join(str(c) for c in cusps[t]))
        tri.append("  orientation +1")
    tri.append("cusp_equation %s" % " ".join(map(str, MERIDIAN)))
    (outdir / "figure_eight.tri").write_text("\n".join(tri) + "\n")

    def rep_text(images, header):
        lines = ["% mutkit-representation 1"] + header + [
            "generators a b c"]
        lines += ["relator %s" % r for r in relators]
        lines.append("lift psl")
        for name in ("a", "b", "c"):
            lines.append("image %s %s" % (name, fmt_matrix(images[name])))
        return "\n".join(lines) + "\n"

    images = {"a": mats[1], "b": mats[2], "c": mats[3]}
    (outdir / "figure_eight.rep").write_text(rep_text(images, [
        "# Face-pairing holonomy of the complete hyperbolic structure on the",
        "# figure-eight knot complement; generated by tools/fixtures/gen_figure_eight.py."]))

    g = random_sl2(7)
    ginv = mp.inverse(g)
    conj = {k: g * v * ginv for k, v in images.items()}
    (outdir / "figure_eight_conjugated.rep").write_text(rep_text(conj, [
        "# figure_eight.rep conjugated by a fixed generic SL(2,C) element",
        "# g = %s" % fmt_matrix(g)]))

    for t in range(2):
        verts = [pos[(t, v)] for v in range(4)]
        print("tet", t, [None if p is None else mp.nstr(p, 12) for p in verts], "shape", mp.nstr(shapes[t], 12))


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
    classes, count = edge_classes()
    rows = edge_rows(classes, count)
    print("edge rows", rows)
    cross_check_snappy(rows)
    pos = develop()
    mats = face_pairings(pos)
    words = face_words()
    relators = [" ".join(reduce_word(r.split())) for r in edge_relators(words)]
    named = {"a": mats[1], "b": mats[2], "c": mats[3]}
    for r in relators:
        m = eval_word(named, r)
        err = min(mp.norm(m - mp.eye(2)), mp.norm(m + mp.eye(2)))
        assert err < mp.mpf(10) ** (-25), (r, err)
    print("relators", relators)
    cusps = [[0] * 4, [0] * 4]
    write_files(outdir, pos, mats, words, relators, classes, cusps)


if __name__ == "__main__":
    main()
