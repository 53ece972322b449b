"""Regenerate crates/core/data/filters.txt.

Daubechies and symlet lowpass filters are obtained by spectral factorization
at 60-digit precision. Symlet root selection is the one whose filter matches
PyWavelets (when installed) most closely; otherwise the least-asymmetric
selection by group-delay variance is used. Taps are written with 17
significant digits in analysis order (Lo_D convention).
"""
import itertools
import sys

import mpmath as mp

mp.mp.dps = 60


def halfband_roots(n):
    # P(y) = sum_k C(n-1+k, k) y^k, y = (2 - z - 1/z)/4
    # z^{n-1} P(y(z)) as polynomial in z
    poly = [mp.mpf(0)] * (2 * n - 1)
    for k in range(n):
        c = mp.binomial(n - 1 + k, k) / mp.mpf(4) ** k
        # (2 - z - 1/z)^k * z^{n-1} = z^{n-1-k} (-1)^k (z - 1)^{2k}
        for j in range(2 * k + 1):
            coef = mp.binomial(2 * k, j) * (-1) ** (2 * k - j)
            deg = n - 1 - k + j
            poly[deg] += c * (-1) ** k * coef
    coeffs = list(reversed(poly))
    return mp.polyroots(coeffs, maxsteps=500, extraprec=400)


def build(zeros, n):
    # h(z) ∝ (1 + z^{-1})^n prod (1 - r z^{-1})
    h = [mp.mpc(1)]
    for _ in range(n):
        h = conv(h, [mp.mpc(1), mp.mpc(1)])
    for r in zeros:
        h = conv(h, [mp.mpc(1), -r])
    h = [x.real for x in h]
    s = sum(h)
    return [x * mp.sqrt(2) / s for x in h]


def conv(a, b):
    out = [mp.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def groups(roots):
    inside = [r for r in roots if abs(r) < 1]
    used = [False] * len(inside)
    out = []
    for i, r in enumerate(inside):
        if used[i]:
            continue
        used[i] = True
        if abs(r.imag) > mp.mpf(10) ** -30:
            for j in range(i + 1, len(inside)):
                if not used[j] and abs(inside[j] - mp.conj(r)) < mp.mpf(10) ** -30:
                    used[j] = True
                    break
            out.append([r, mp.conj(r)])
        else:
            out.append([r])
    return out


def daubechies(n):
    g = groups(halfband_roots(n))
    return build([r for grp in g for r in grp], n)


def symlet(n, reference=None):
    g = groups(halfband_roots(n))
    best = None
    for choice in itertools.product([False, True], repeat=len(g)):
        zs = []
        for flip, grp in zip(choice, g):
            zs.extend([1 / r for r in grp] if flip else grp)
        h = build(zs, n)
        for cand in (h, list(reversed(h))):
            if reference is not None:
                score = max(abs(float(a) - b) for a, b in zip(cand, reference))
            else:
                score = asymmetry(cand)
            if best is None or score < best[0]:
                best = (score, cand)
    return best[1]


def asymmetry(h):
    c = sum(i * float(x) ** 2 for i, x in enumerate(h))
    return c


def main():
    try:
        import pywt
    except ImportError:
        pywt = None
    lines = ["# name L tap0 ... tapL-1 (analysis lowpass, 17 significant digits)"]
    lines.append(fmt("haar", [1 / mp.sqrt(2)] * 2))
    for n in range(2, 11):
        h = daubechies(n)
        if pywt is not None:
            ref = pywt.Wavelet(f"db{n}").dec_lo
            if max(abs(float(a) - b) for a, b in zip(h, ref)) > 1e-6:
                h = list(reversed(h))
            err = max(abs(float(a) - b) for a, b in zip(h, ref))
            print(f"db{n}: max |table - pywt| = {err:.2e}", file=sys.stderr)
        lines.append(fmt(f"db{n}", h))
    for n in range(2, 9):
        ref = pywt.Wavelet(f"sym{n}").dec_lo if pywt is not None else None
        h = symlet(n, ref)
        if ref is not None:
            err = max(abs(float(a) - b) for a, b in zip(h, ref))
            print(f"sym{n}: max |table - pywt| = {err:.2e}", file=sys.stderr)
        lines.append(fmt(f"sym{n}", h))
    print("\n".join(lines))


def fmt(name, taps):
    return " ".join([name, str(len(taps))] + [mp.nstr(t, 17, min_fixed=1, max_fixed=0) for t in taps])


if __name__ == "__main__":
    main()
