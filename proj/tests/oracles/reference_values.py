"""Regenerates the high-precision reference values embedded in tests/unit/test_reference.cpp."""
import mpmath as mp

mp.mp.dps = 40

PSI = mp.matrix([[0.5, 0.1 + 0.2j, 0], [0.1 - 0.2j, 0.3, 0.05j], [0, -0.05j, 0.2]])
PHI = mp.matrix([[0.4, 0.1, 0.1j], [0.1, 0.35, 0], [-0.1j, 0, 0.25]])
# rank two: v v* + w w*
V = mp.matrix([[1], [0.5j], [-0.25]])
W = mp.matrix([[0.2], [1], [0.3 - 0.1j]])
PHI_RANK2 = (V * V.H + W * W.H) * 0.5


def power(h, t):
    e, q = mp.eighe(h)
    d = mp.diag([ (x ** t if x > mp.mpf(10) ** -30 else 0) for x in e])
    return q * d * q.H


def q_alpha_z(psi, phi, alpha, z):
    a = power(phi, (1 - alpha) / (2 * z))
    m = a * power(psi, alpha / z) * a
    e, _ = mp.eighe((m + m.H) / 2)
    return mp.fsum(max(x, 0) ** z for x in e)


def main():
    cases = [(0.5, 1), (0.3, 0.5), (0.7, 2), (0.4, 0.4), (2, 1), (1.5, 1.5), (3, 2), (2, 0.8)]
    for alpha, z in cases:
        alpha, z = mp.mpf(alpha), mp.mpf(z)
        print(f"full  a={float(alpha)} z={float(z)} Q={mp.nstr(q_alpha_z(PSI, PHI, alpha, z), 20)}")
    for alpha, z in [(0.5, 1), (0.3, 0.5), (0.7, 2)]:
        alpha, z = mp.mpf(alpha), mp.mpf(z)
        print(f"rank2 a={float(alpha)} z={float(z)} Q={mp.nstr(q_alpha_z(PSI, PHI_RANK2, alpha, z), 20)}")
    print("phi_rank2 entries", PHI_RANK2)


if __name__ == "__main__":
    main()
