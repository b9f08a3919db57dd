"""Self-contained dense-matrix oracle for small rings (n <= 8).

Everything here is written directly from the game definitions with explicit
loops over states and events, deliberately sharing no code with the package
under test: dense transition matrices, a linear-solve stationary
distribution, and the mean-profit formulas evaluated by brute force.  Slow
and obvious on purpose.
"""

import numpy as np


def bits_of(state, n):
    return [(state >> x) & 1 for x in range(n)]


def int_of(bits):
    return sum(b << x for x, b in enumerate(bits))


def coin_matrix(n, p):
    """Dense coin-game kernel: chosen player x tosses the p_m coin and the
    bit at x records the outcome."""
    size = 2 ** n
    P = np.zeros((size, size))
    for state in range(size):
        eta = bits_of(state, n)
        for x in range(n):
            m = 2 * eta[(x - 1) % n] + eta[(x + 1) % n]
            for outcome, prob in ((1, p[m]), (0, 1.0 - p[m])):
                new = list(eta)
                new[x] = outcome
                P[state, int_of(new)] += prob / n
    return P


def duel_matrix_events(n):
    """Dense duel-game kernel from the four explicit events per chosen
    player: duel the left or right neighbour, win or lose, each with
    probability 1/(4n)."""
    size = 2 ** n
    P = np.zeros((size, size))
    for state in range(size):
        eta = bits_of(state, n)
        for x in range(n):
            for partner in ((x - 1) % n, (x + 1) % n):
                for x_wins in (True, False):
                    new = list(eta)
                    if x_wins:
                        new[x], new[partner] = 1, 0
                    else:
                        new[x], new[partner] = 0, 1
                    P[state, int_of(new)] += 1.0 / (4 * n)
    return P


def duel_matrix_pairform(n):
    """Dense duel-game kernel from the two-event form: the chosen player
    loses to the left or to the right neighbour, each with probability
    1/(2n)."""
    size = 2 ** n
    P = np.zeros((size, size))
    for state in range(size):
        eta = bits_of(state, n)
        for x in range(n):
            left = list(eta)
            left[(x - 1) % n], left[x] = 1, 0
            right = list(eta)
            right[x], right[(x + 1) % n] = 0, 1
            P[state, int_of(left)] += 1.0 / (2 * n)
            P[state, int_of(right)] += 1.0 / (2 * n)
    return P


def mixture_matrix(n, gamma, p):
    return gamma * duel_matrix_events(n) + (1.0 - gamma) * coin_matrix(n, p)


def cycle_matrix(n, r, s, p):
    A = duel_matrix_events(n)
    B = coin_matrix(n, p)
    P = np.eye(2 ** n)
    for _ in range(r):
        P = P @ A
    for _ in range(s):
        P = P @ B
    return P


def stationary_dense(P):
    """Solve pi P = pi, sum(pi) = 1 by replacing one balance equation with
    the normalisation row."""
    size = P.shape[0]
    A = P.T - np.eye(size)
    A[-1, :] = 1.0
    b = np.zeros(size)
    b[-1] = 1.0
    return np.linalg.solve(A, b)


def profit_field(n, p):
    """Expected ensemble profit of one coin-game turn from each state:
    (1/n) * sum_x (2 p_{m_x} - 1)."""
    size = 2 ** n
    phi = np.zeros(size)
    for state in range(size):
        eta = bits_of(state, n)
        phi[state] = sum(
            2.0 * p[2 * eta[(x - 1) % n] + eta[(x + 1) % n]] - 1.0 for x in range(n)
        ) / n
    return phi


def mean_profit_mixture_dense(n, gamma, p):
    pi = stationary_dense(mixture_matrix(n, gamma, p))
    return (1.0 - gamma) * float(pi @ profit_field(n, p))


def mean_profit_pure_coin_dense(n, p):
    pi = stationary_dense(coin_matrix(n, p))
    return float(pi @ profit_field(n, p))


def mean_profit_periodic_dense(n, r, s, p):
    """Equilibrium profit per turn of the cycle: average the one-turn coin
    profit over the s coin phases, starting from the cycle's stationary law
    pushed through the r duel steps."""
    A = duel_matrix_events(n)
    B = coin_matrix(n, p)
    pi = stationary_dense(cycle_matrix(n, r, s, p))
    phi = profit_field(n, p)
    law = pi.copy()
    for _ in range(r):
        law = law @ A
    total = 0.0
    for _ in range(s):
        total += float(law @ phi)
        law = law @ B
    return total / (r + s)


def pair_marginal_dense(pi, n, i, j):
    """Joint law of (eta(i), eta(j)) under pi, as a 2x2 array."""
    out = np.zeros((2, 2))
    for state in range(2 ** n):
        eta = bits_of(state, n)
        out[eta[i], eta[j]] += pi[state]
    return out
