"""Reference values frozen into the unit tests.

Computed with mpmath at 30 significant digits from direct formulas, written
independently of the C++ code paths (x-space integration, plain powers).
Run: python3 tests/oracles/oracles.py
"""
import mpmath as mp

mp.mp.dps = 30


def frechet_sf(x):
    return -mp.expm1(-1 / x)


# Survival Clayton on the Frechet scale.
def clayton_joint_sf(theta, x, y):
    sx, sy = frechet_sf(x), frechet_sf(y)
    return (sx ** -theta + sy ** -theta - 1) ** (-1 / theta)


def clayton_F1(theta, y, x):
    return 1 - clayton_joint_sf(theta, x, y) / frechet_sf(x)


def clayton_F2(theta, y, x):
    fx = mp.e ** (-1 / x)
    sy = frechet_sf(y)
    return 1 - (sy - clayton_joint_sf(theta, x, y)) / fx


def clayton_F3(theta, y, x):
    # P(Y > y | X = x) is the u-derivative of the survival copula at u = sf(x).
    sy = frechet_sf(y)
    cbar = lambda u: (u ** -theta + sy ** -theta - 1) ** (-1 / theta)
    return 1 - mp.diff(cbar, frechet_sf(x))


def logistic_V(g, x, y):
    return (x ** (-1 / g) + y ** (-1 / g)) ** g


def logistic_joint_sf(g, x, y):
    return 1 - mp.e ** (-1 / x) - mp.e ** (-1 / y) + mp.e ** (-logistic_V(g, x, y))


def logistic_F3(g, y, x):
    dF = mp.diff(lambda t: mp.e ** (-logistic_V(g, t, y)), x)
    fx = mp.diff(lambda t: mp.e ** (-1 / t), x)
    return dF / fx


def H1_clayton(theta, y, x):
    return 1 - (1 + (y / x) ** theta) ** (-1 / theta)


def ctilde_clayton(theta, x, y):
    return mp.sqrt(x * y) * (x ** theta + y ** theta) ** (-1 / theta)


def H2_clayton(theta, y, x):
    c = lambda t: ctilde_clayton(theta, t, y)
    cx = mp.diff(c, x)
    f2 = mp.e ** (-(1 - c(x) * mp.sqrt(y / x)) / y)
    f3 = 1 + x ** 1.5 * y ** -0.5 * (cx - c(x) / (2 * x))
    return f2 * f3


def joint_limit(theta, k, v1, v2):
    f = lambda x: (H1_clayton(theta, v1, x) ** k * H2_clayton(theta, v2, x)
                   * x ** (-k - 2) * mp.e ** (-1 / x) / mp.factorial(k))
    return mp.quad(f, [0, 1 / (k + 1) / 4, 1 / (k + 1), 4 / (k + 1), 1, mp.inf])


def finite_sample_clayton(theta, n, k, v1, v2):
    coef = mp.factorial(n) / (mp.factorial(n - k - 1) * mp.factorial(k))

    def f(x):
        F = mp.e ** (-1 / x)
        dens = coef * F ** (n - k - 1) * (1 - F) ** k * F / x ** 2
        h = (clayton_F1(theta, v1, x) ** k * clayton_F2(theta, v2, x) ** (n - k - 1)
             * clayton_F3(theta, v2, x))
        return dens * h
    return mp.quad(f, [mp.mpf('0.02'), 0.5, 2, 5, 10, 30, 100, mp.inf])


def norming(n, rho):
    L = mp.log(n)
    an = 1 / mp.sqrt(2 * L)
    bn = mp.sqrt(2 * L) - mp.log(4 * mp.pi * L) / (2 * mp.sqrt(2 * L))
    bE = rho ** 2 * L - rho ** 2 / 2 * mp.log(4 * mp.pi * L) + rho ** 2 / 16 * mp.log(4 * mp.pi * L) ** 2 / L
    aE = rho * mp.sqrt(1 - rho ** 2) * bn
    return an, bn, aE, bE


def wt_L1(n, rho, z):
    s = mp.sqrt(z)
    L = mp.log(4 * mp.pi * mp.log(n))
    e1 = (2 * rho ** 2 - rho * (s + 1 / s)) / (2 * (1 - rho ** 2))
    e2 = (1 - rho / s) / (2 * (1 - rho ** 2))
    return mp.e ** (e1 * L) * z ** e2 * (1 - rho ** 2) ** 1.5 / ((s - rho) * (1 - rho * s))


def bvn_cdf(h, k, r):
    f = lambda x: mp.npdf(x) * mp.ncdf((k - r * x) / mp.sqrt(1 - r ** 2))
    return mp.quad(f, [-mp.inf, h])


def show(name, value):
    print(f"{name} = {mp.nstr(value, 17)}")


if __name__ == "__main__":
    show("normal.cdf(1.5)", mp.ncdf(1.5))
    show("normal.sf(10)", 1 - mp.ncdf(10))
    show("normal.log_sf(40)", mp.log(mp.erfc(40 / mp.sqrt(2)) / 2))
    show("normal.quantile(0.975)", mp.sqrt(2) * mp.erfinv(2 * mp.mpf("0.975") - 1))
    show("normal.quantile(1e-10)", -mp.sqrt(2) * mp.erfinv(1 - 2 * mp.mpf("1e-10")))
    show("bvn_cdf(0.5,-0.3,0.6)", bvn_cdf(0.5, -0.3, 0.6))
    show("bvn_cdf(-2,1,-0.8)", bvn_cdf(-2, 1, -0.8))
    show("bvn_cdf(3,3,0.95)", bvn_cdf(3, 3, 0.95))
    show("clayton_sf(theta=2;1,1)", clayton_joint_sf(2, 1, 1))
    show("clayton_sf(theta=2;3,0.5)", clayton_joint_sf(2, 3, 0.5))
    show("clayton_F1(theta=2;y=2,x=1)", clayton_F1(2, 2, 1))
    show("clayton_F2(theta=2;y=2,x=1)", clayton_F2(2, 2, 1))
    show("clayton_F3(theta=2;y=2,x=1)", clayton_F3(2, 2, 1))
    show("logistic_sf(g=0.5;1,2)", logistic_joint_sf(mp.mpf(0.5), 1, 2))
    show("logistic_F3(g=0.5;y=2,x=1)", logistic_F3(mp.mpf(0.5), 2, 1))
    show("H2_clayton(theta=2;1,1)", H2_clayton(2, 1, 1))
    show("H2_clayton(theta=2;y=2,x=0.5)", H2_clayton(2, 2, mp.mpf(0.5)))
    show("joint_limit(theta=2,k=10;50,2)", joint_limit(2, 10, 50, 2))
    show("joint_limit(theta=2,k=1;1,1)", joint_limit(2, 1, 1, 1))
    show("finite(theta=2,n=50,k=5;5,3)", finite_sample_clayton(2, 50, 5, 5, 3))
    an, bn, aE, bE = norming(mp.mpf(10) ** 5, mp.mpf(0.5))
    show("a_n(1e5)", an)
    show("b_n(1e5)", bn)
    show("a_tilde_nE(1e5,0.5)", aE)
    show("b_tilde_nE(1e5,0.5)", bE)
    show("wt_L1(1e5,0.5,1)", wt_L1(mp.mpf(10) ** 5, mp.mpf(0.5), 1))
    show("wt_L1(1e5,0.5,2)", wt_L1(mp.mpf(10) ** 5, mp.mpf(0.5), 2))
    show("tail_limit(0.5,2)", mp.e ** (-mp.mpf(0.5)) / (2 * mp.sqrt(2 * mp.pi)))
    show("finite(theta=2,n=50,k=5;40,60)", finite_sample_clayton(2, 50, 5, 40, 60))
    show("finite(theta=2,n=200,k=5;300,150)", finite_sample_clayton(2, 200, 5, 300, 150))
    show("joint_limit(theta=2,k=5;1.5,0.8)", joint_limit(2, 5, mp.mpf(1.5), mp.mpf(0.8)))
