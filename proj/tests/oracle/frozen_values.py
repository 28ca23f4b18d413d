"""High-precision reference values for the frozen tests.

Builds the antiperiodic transfer matrix from scratch with mpmath, reads off
t(xi_n) per eigenvector and solves both T-Q equations by a coefficient-space
nullspace (a method independent of the interpolation solvers in the library).
Prints C++ initializer snippets.
"""
import itertools

import mpmath as mp

mp.mp.dps = 40
ETA = mp.mpc("0.31", "0.07")


def spin_ops(two_s, eta):
    d = two_s + 1
    s = mp.mpf(two_s) / 2
    sz = mp.diag([s - k for k in range(d)])
    sp = mp.zeros(d, d)
    qint = lambda j: mp.sinh(eta * j) / mp.sinh(eta)
    for k in range(1, d):
        sp[k - 1, k] = mp.sqrt(qint(k) * qint(two_s - k + 1))
    sm = sp.T
    return sz, sp, sm


def funm_diag(f, sz):
    out = mp.zeros(sz.rows, sz.cols)
    for i in range(sz.rows):
        out[i, i] = f(sz[i, i])
    return out


def kron(a, b):
    out = mp.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] == 0:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = a[i, j] * b[k, l]
    return out


def lax_blocks(two_s, eta, lam):
    sz, sp, sm = spin_ops(two_s, eta)
    a = funm_diag(lambda z: mp.sinh(lam + eta * z), sz)
    d = funm_diag(lambda z: mp.sinh(lam - eta * z), sz)
    return [[a, sm * mp.sinh(eta)], [sp * mp.sinh(eta), d]]


def transfer(two_s, xi, eta, kappa, lam):
    # M = L_N ... L_1, site 1 most significant tensor factor.
    m = None
    for n in range(len(two_s)):
        l = lax_blocks(two_s[n], eta, lam - xi[n])
        if m is None:
            m = l
            continue
        m = [[kron(m[0][j], l[i][0]) + kron(m[1][j], l[i][1]) for j in range(2)] for i in range(2)]
    return m[0][1] / kappa + m[1][0] * kappa


def spectrum(two_s, xi, eta, kappa=1):
    lam0 = mp.mpc("0.37", "0.81")
    t0 = transfer(two_s, xi, eta, kappa, lam0)
    ev, vr = mp.eig(t0)
    out = []
    mats = [transfer(two_s, xi, eta, kappa, x) for x in xi]
    for k in range(len(ev)):
        v = vr[:, k]
        vals = []
        for m in mats:
            w = m * v
            i = max(range(v.rows), key=lambda r: abs(v[r]))
            vals.append(w[i] / v[i])
        out.append(vals)
    out.sort(key=lambda t: (float(mp.re(t[0])), float(mp.im(t[0]))))
    return out


def t_eval(xi, tvals, lam):
    tot = 0
    for n in range(len(xi)):
        p = tvals[n]
        for l in range(len(xi)):
            if l != n:
                p *= mp.sinh(lam - xi[l]) / mp.sinh(xi[n] - xi[l])
        tot += p
    return tot


def a_of(two_s, xi, eta, lam):
    return mp.fprod(mp.sinh(lam - xi[n] + two_s[n] * eta / 2) for n in range(len(xi)))


def d_of(two_s, xi, eta, lam):
    return mp.fprod(mp.sinh(lam - xi[n] - two_s[n] * eta / 2) for n in range(len(xi)))


def sample_points(count):
    return [mp.mpc(-1.3 + 2.6 * k / (count - 1), 1.1 * mp.sin(1.7 * k + 0.3)) for k in range(count)]


def nullvec(rows):
    a = mp.matrix(rows)
    u, s, v = mp.svd_c(a)
    return [mp.conj(v[v.rows - 1, j]) for j in range(v.cols)], s


def hom_roots(two_s, xi, eta, tvals):
    # Q(l) = sum_k c_k e^{(k - Ns/2) l}, k = 0..Ns.
    ns = sum(two_s)
    rows = []
    for l in sample_points(3 * ns + 8):
        t = t_eval(xi, tvals, l)
        a = a_of(two_s, xi, eta, l)
        d = d_of(two_s, xi, eta, l)
        row = []
        for k in range(ns + 1):
            e = lambda z: mp.exp((k - mp.mpf(ns) / 2) * z)
            row.append(t * e(l) + a * e(l - eta) - d * e(l + eta))
        rows.append(row)
    c, _ = nullvec(rows)
    # polynomial in z = e^l: sum c_k z^k ; Q = prod sinh((l-l_a)/2) -> z roots e^{l_a}
    zr = mp.polyroots(list(reversed(c)), maxsteps=200, extraprec=200)
    roots = []
    for z in zr:
        r = mp.log(z)
        im = mp.im(r) % (2 * mp.pi)
        roots.append(mp.mpc(mp.re(r), im))
    return sorted(roots, key=lambda r: (float(mp.re(r)), float(mp.im(r))))


def inhom_roots(two_s, xi, eta, tvals, alpha=0):
    # Q(l) = sum_k c_k e^{(2k - Ns) l}; monic form has c_Ns = 2^-Ns e^-lbar,
    # c_0 = (-1)^Ns 2^-Ns e^{lbar}, so F is linear in (c_Ns, c_0).
    ns = sum(two_s)
    shifts = [xi[n] + (mp.mpf(two_s[n]) / 2 - h) * eta for n in range(len(xi)) for h in range(two_s[n] + 1)]
    upper = sum(xi[n] + (mp.mpf(two_s[n]) / 2 - h) * eta for n in range(len(xi)) for h in range(1, two_s[n] + 1))
    rows = []
    for l in sample_points(4 * ns + 10):
        t = t_eval(xi, tvals, l)
        a = a_of(two_s, xi, eta, l)
        d = d_of(two_s, xi, eta, l)
        pref = 2 * mp.exp(-(ns + 1) * eta / 2) * mp.fprod(mp.sinh(l - z) for z in shifts)
        c0 = upper + (ns + 1) * eta / 2
        # sinh(l - alpha - lbar + c0) = (e^{l-alpha+c0} e^{-lbar} - e^{-(l-alpha+c0)} e^{lbar}) / 2
        row = []
        for k in range(ns + 1):
            e = lambda z: mp.exp((2 * k - ns) * z)
            v = t * e(l) + mp.exp(l - alpha) * a * e(l - eta) - mp.exp(alpha - l - eta) * d * e(l + eta)
            if k == ns:
                v -= pref * mp.exp(l - alpha + c0) / 2 * 2 ** ns
            if k == 0:
                v += pref * mp.exp(-(l - alpha + c0)) / 2 * 2 ** ns * (-1) ** ns
            row.append(v)
        rows.append(row)
    c, _ = nullvec(rows)
    zr = mp.polyroots(list(reversed(c)), maxsteps=200, extraprec=200)
    roots = []
    for z in zr:
        r = mp.log(z) / 2
        im = mp.im(r) % mp.pi
        roots.append(mp.mpc(mp.re(r), im))
    return sorted(roots, key=lambda r: (float(mp.re(r)), float(mp.im(r))))


def fmt(z):
    return "{%s, %s}" % (mp.nstr(mp.re(z), 17), mp.nstr(mp.im(z), 17))


MODELS = {
    "D2": ([1, 1], [mp.mpc("0.1", "-0.05"), mp.mpc("0.6", "0.08")]),
    "D3": ([1, 2], [mp.mpc("0.1", "-0.05"), mp.mpc("0.6", "0.08")]),
    "D4": ([1, 1, 1], [mp.mpc("0.1", "-0.05"), mp.mpc("0.6", "0.08"), mp.mpc("1.1", "0.21")]),
}

if __name__ == "__main__":
    for name, (two_s, xi) in MODELS.items():
        sp = spectrum(two_s, xi, ETA)
        print("// %s spectrum t(xi_n)" % name)
        for t in sp:
            print("{" + ", ".join(fmt(v) for v in t) + "},")
        if name in ("D2", "D3"):
            print("// %s homogeneous roots" % name)
            for t in sp:
                print("{" + ", ".join(fmt(r) for r in hom_roots(two_s, xi, ETA, t)) + "},")
            print("// %s inhomogeneous roots (alpha = 0)" % name)
            for t in sp:
                print("{" + ", ".join(fmt(r) for r in inhom_roots(two_s, xi, ETA, t)) + "},")
