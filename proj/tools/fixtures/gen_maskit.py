#!/usr/bin/env python3
"""Generate the Sanov-group mutation fixtures and the round-circle HNN fixture.

The Sanov pair a = [[1,2],[0,1]], b = [[1,0],[2,1]] generates a Fuchsian
group preserving the upper half-plane.  The amalgam fixtures glue two copies
of <a, b, e> along <a, b>, where e = diag(i, -i) acts as z -> -z and
conjugates a, b to their inverses.

The HNN fixture moves the Sanov group onto the circle |z - 1| = 1/2 and
uses z -> 4 - 1/(4(z - 1)) as the stable letter, which carries the outside
of W onto the inside of the disjoint circle |z - 4| = 1/2.

Run from the repository root:
    python3 tools/fixtures/gen_maskit.py data/fixtures
"""

import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

I = mp.mpc(0, 1)


def mat(a, b, c, d):
    return mp.matrix([[a, b], [c, d]])


def normalize(m):
    s = mp.sqrt(mp.det(m))
    return m / s


def fmt(m):
    parts = []
    for z in (m[0, 0], m[0, 1], m[1, 0], m[1, 1]):
        z = mp.mpc(z)
        re = float(z.real) if abs(z.real) > 1e-30 else 0.0
        im = float(z.imag) if abs(z.imag) > 1e-30 else 0.0
        parts.append("[%.17g,%.17g]" % (re, im))
    return "[" + ",".join(parts) + "]"


A = mat(1, 2, 0, 1)
B = mat(1, 0, 2, 1)
E = mat(I, 0, 0, -I)

AMALGAM_HEADER = """\
% mutkit-mutation 1
# {title}
# Two copies of <a, b, e> (Sanov pair plus z -> -z) amalgamated along <a, b>;
# generated by tools/fixtures/gen_maskit.py.
generators a b e c d f
relator e a e^-1 a
relator e b e^-1 b
relator e e
relator f c f^-1 c
relator f d f^-1 d
relator f f
relator a c^-1
relator b d^-1
lift psl
image a {a}
image b {b}
image e {e}
image c {a}
image d {b}
image f {e}
surface h1 a
surface h2 b
{tau}
order {order}
separating yes
split c d f
phi2 h1 c
phi2 h2 d
coset1 e
coset1 e a
coset1 e b
coset1 a e
coset1 e a b^-1
coset2 f
coset2 f c
coset2 f d
coset2 d f
coset2 f c d^-1
"""

MUTATIONS = {
    "sanov_involution.mut": ("Inverting involution tau: a -> a^-1, b -> b^-1; A = diag(i,-i) (z -> -z).",
                             "tau h1 h1^-1\ntau h2 h2^-1", 2),
    "sanov_swap.mut": ("Generator swap tau: a <-> b; A = [[0,i],[i,0]] (z -> 1/z).",
                       "tau h1 h2\ntau h2 h1", 2),
    "sanov_negative_inverse.mut": ("tau: a -> b^-1, b -> a^-1; A = [[0,-1],[1,0]] (z -> -1/z).",
                                   "tau h1 h2^-1\ntau h2 h1^-1", 2),
    "sanov_identity.mut": ("Identity mutation; A = 1.", "tau h1 h1\ntau h2 h2", 1),
}

HNN = """\
% mutkit-mutation 1
# Round-circle HNN fixture: the Sanov group H moved onto W: |z - 1| = 1/2 by
# {m0}; f = {f_desc} maps the outside of W onto the inside of
# W_2: |z - 4| = 1/2. Base group <a, b, c, d> with c = f a f^-1, d = f b f^-1,
# stable letter v -> f.
# tau: a -> b^-1, b -> a^-1 (conjugator preserves W and its sides).
# Generated by tools/fixtures/gen_maskit.py.
generators a b c d v
relator v a v^-1 c^-1
relator v b v^-1 d^-1
lift psl
image a {a}
image b {b}
image c {c}
image d {d}
image v {f}
surface h1 a
surface h2 b
tau h1 h2^-1
tau h2 h1^-1
order 2
separating no
stable v
phi2 h1 c
phi2 h2 d
alpha h1 h1
alpha h2 h2
coset0 c
coset0 d
coset0 c^-1
coset0 c a
coset0 a d^-1
coset0 c d
"""

SANOV_REP = """\
% mutkit-representation 1
# Sanov pair: a free Fuchsian group of rank 2 (level-2 congruence subgroup).
generators a b
lift sl
image a {a}
image b {b}
"""

SANOV_PRES = """\
% mutkit-presentation 1
# Free group on a, b with the inverting involution's extension relators.
generators a b t
relator t a t^-1 a
relator t b t^-1 b
"""


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (title, tau, order) in MUTATIONS.items():
        text = AMALGAM_HEADER.format(title=title, a=fmt(A), b=fmt(B), e=fmt(E), tau=tau, order=order)
        (out / name).write_text(text)

    m0 = normalize(mat(mp.mpf(1.5), 0.5 * I, 1, I))
    m0i = m0 ** -1
    a_w = m0 * A * m0i
    b_w = m0 * B * m0i
    f = normalize(mat(4, mp.mpf(-4.25), 1, -1))
    fi = f ** -1
    (out / "hnn_circle.mut").write_text(
        HNN.format(m0="z -> (3z + i)/(2z + 2i)", f_desc="z -> 4 - 1/(4(z - 1))", a=fmt(a_w), b=fmt(b_w),
                   c=fmt(f * a_w * fi), d=fmt(f * b_w * fi), f=fmt(f)))
    (out / "sanov.rep").write_text(SANOV_REP.format(a=fmt(A), b=fmt(B)))
    (out / "sanov_extended.pres").write_text(SANOV_PRES)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
