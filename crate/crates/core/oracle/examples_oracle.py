"""High-precision reference values for the two worked qubit examples.

Runs with mpmath at 60 significant digits and writes ../golden/examples.json.
Independent of the Rust implementation: every spectral function is evaluated
through mpmath's Hermitian eigensolver.
"""
import json
import os

import mpmath as mp

mp.mp.dps = 60


def herm_fn(a, fn):
    e, q = mp.eigh(a)
    n = a.rows
    d = mp.zeros(n, n)
    for k in range(n):
        lam = mp.re(e[k])
        d[k, k] = fn(lam) if lam > mp.mpf(10) ** -50 else mp.mpf(0)
    return q * d * q.transpose_conj()


def power(a, t):
    return herm_fn(a, lambda x: x ** t)


def conj(a):
    return a.conjugate()


def trace(a):
    return mp.re(sum(a[k, k] for k in range(a.rows)))


def hermitize(a):
    return (a + a.transpose_conj()) / 2


def renyi_az(rho, alpha, z):
    sig = conj(rho)
    s = power(sig, (1 - alpha) / (2 * z))
    x = hermitize(s * power(rho, alpha / z) * s)
    return 1 - trace(power(x, z))


def tsallis(rho, q):
    return 1 - trace(power(rho, q) * power(conj(rho), 1 - q))


def operator(delta, lam):
    half = power(delta, mp.mpf(1) / 2)
    inv_half = power(delta, -mp.mpf(1) / 2)
    inner = hermitize(inv_half * conj(delta) * inv_half)
    mean = half * power(inner, lam) * half
    return 1 - trace(mean)


def entropy(rho):
    e, _ = mp.eigh(rho)
    return -sum(mp.re(x) * mp.log(mp.re(x)) for x in e if mp.re(x) > 0)


def umegaki(rho):
    avg = (rho + conj(rho)) / 2
    return entropy(avg) - entropy(rho)


def main():
    i = mp.mpc(0, 1)
    rho0 = mp.matrix([[4, 3 - i], [3 + i, 6]]) / 10
    # Hermitian correction of the printed second example state.
    delta0 = mp.matrix([[6, 1 + i], [1 - i, 4]]) / 10
    half = mp.mpf(1) / 2
    p3 = mp.mpf(3) / 10
    values = {
        "rho0": {
            "tsallis_q0.3": tsallis(rho0, p3),
            "renyi_a0.5_z0.5": renyi_az(rho0, half, half),
            "tsallis_q0.5": tsallis(rho0, half),
            "umegaki": umegaki(rho0),
        },
        "delta0": {
            "operator_l0.3": operator(delta0, p3),
            "renyi_a0.5_z0.5": renyi_az(delta0, half, half),
            "tsallis_q0.5": tsallis(delta0, half),
            "operator_l0.5": operator(delta0, half),
            "umegaki": umegaki(delta0),
        },
    }
    out = {k: {m: mp.nstr(v, 30) for m, v in d.items()} for k, d in values.items()}
    path = os.path.join(os.path.dirname(__file__), "..", "golden", "examples.json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(out, f, indent=2)
        f.write("\n")
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
