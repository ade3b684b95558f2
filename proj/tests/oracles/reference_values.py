"""Independent numpy evaluation of the reference numbers frozen in the C++ tests.

Run: python3 tests/oracles/reference_values.py
"""
import numpy as np

MS = [2, 1, 0, -1, -2]
R6 = np.sqrt(6.0)


def chi(m, t, p):
    c, s = np.cos(t / 2) ** 2, np.sin(t / 2) ** 2
    st, ct = np.sin(t), np.cos(t)
    e = lambda k: np.exp(1j * k * p)
    rows = {
        2: [c * c * e(-2), st * c * e(-1), R6 / 4 * st**2, st * s * e(1), s * s * e(2)],
        1: [st * c * e(-2), (3 * s - c) * c * e(-1), -R6 / 2 * st * ct, -(3 * c - s) * s * e(1), -st * s * e(2)],
        0: [R6 / 4 * st**2 * e(-2), -R6 / 2 * st * ct * e(-1), 0.5 * (2 * ct**2 - st**2), R6 / 2 * st * ct * e(1),
            R6 / 4 * st**2 * e(2)],
        -1: [st * s * e(-2), -(3 * c - s) * s * e(-1), R6 / 2 * st * ct, (3 * s - c) * c * e(1), -st * c * e(2)],
        -2: [s * s * e(-2), -st * s * e(-1), R6 / 4 * st**2, -st * c * e(1), c * c * e(2)],
    }
    return (-1) ** m * np.array(rows[m], dtype=complex)


def eigvecs(x):
    t, p, tp, pp = x
    xc = np.array([chi(m, t, p) for m in MS]).T
    xb = np.array([chi(m, tp, pp) for m in MS]).T
    return xb.conj().T @ xc  # column i = xi_i


def generate(x, lam):
    u = eigvecs(x)
    return u @ np.diag(lam) @ u.conj().T


def residual(m, x):
    u = eigvecs(x)
    total = 0
    for i in range(5):
        v = u[:, i]
        w = m @ v
        total += sum(v[s] * w[r] - v[r] * w[s] for r in range(4) for s in range(r + 1, 5))
    return total


def spread(m, x):
    u = eigvecs(x)
    worst = 0.0
    for i in range(5):
        v = u[:, i]
        w = m @ v
        est = [w[r] / v[r] for r in range(5) if abs(v[r]) >= 1e-10 * np.abs(v).max()]
        worst = max([worst] + [abs(a - b) for a in est for b in est])
    return worst


x0 = np.array([1.1, 0.7, 0.4, 2.0])
lam = np.array([5, 3, 1, -2, -4], dtype=complex)
M = generate(x0, lam)
np.set_printoptions(precision=17)
print("M(0,1) =", repr(M[0, 1]))
print("M(2,4) =", repr(M[2, 4]))
print("M(3,3) =", repr(M[3, 3]))
print("S at theta_p + 0.1 =", repr(residual(M, x0 + [0, 0, 0.1, 0])))
print("S at phi + 0.3 =", repr(residual(M, x0 + [0, 0.3, 0, 0])))
print("S at theta + 0.1 =", repr(residual(M, x0 + [0.1, 0, 0, 0])))
print("spread at theta + 0.1 =", repr(spread(M, x0 + [0.1, 0, 0, 0])))
print("spread at theta + 0.05 =", repr(spread(M, x0 + [0.05, 0, 0, 0])))
print("eigvals(M) =", np.sort_complex(np.linalg.eigvals(M)))
