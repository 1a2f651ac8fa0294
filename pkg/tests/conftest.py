import math
import random

import pytest
from hypothesis import strategies as st

from zeta_notation.expr import (
    Add,
    Constant,
    Divide,
    Exp,
    I,
    Log,
    LogBase,
    Multiply,
    N,
    Negate,
    Power,
    Sqrt,
    Subtract,
)
from zeta_notation.parser import parse

SMALL_CONSTANTS = [0.0, 1.0, 2.0, 3.0, 5.0, 0.5, 2.5]
COMPLEX_CONSTANTS = [1j, 2j, 1 + 1j, 3 - 2j, -1j]


def constants():
    return st.one_of(
        st.sampled_from(SMALL_CONSTANTS).map(Constant),
        st.sampled_from(COMPLEX_CONSTANTS).map(Constant),
        st.just(I),
    )


leaves = st.one_of(st.just(N), st.just(N), constants())


def _extend(children):
    return st.one_of(
        st.builds(Add, children, children),
        st.builds(Subtract, children, children),
        st.builds(Multiply, children, children),
        st.builds(Divide, children, children),
        st.builds(Negate, children),
        st.builds(Power, children, st.sampled_from([1.0, 2.0, 3.0, -1.0, 0.5]).map(Constant)),
        st.builds(Log, children),
        st.builds(LogBase, st.sampled_from([2.0, 10.0, math.e]), children),
        st.builds(Sqrt, children),
        st.builds(Exp, st.builds(Multiply, st.just(I), children)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=6)


# Deterministic corpus of expressions that evaluate without error for n >= 2
# and stay in double range up to n = 2^30.
_POSITIVE = ["n", "n + 1", "log(n)", "sqrt(n)", "n^2", "n*log(n)", "log2(n) + 1", "2*n + 3"]
_COEFFS = ["1", "2", "i", "3*i", "1 + i", "2 - i", "-1", "-i", "0.5", "-2 + 3*i"]


def make_corpus(size=60, seed=20241016):
    rng = random.Random(seed)
    corpus = ["n*log(n) + i*n^2", "n", "i*n", "-n", "-i*n", "(1 + i)*n", "exp(i*n)"]
    while len(corpus) < size:
        terms = []
        for _ in range(rng.randint(1, 3)):
            c = rng.choice(_COEFFS)
            a = rng.choice(_POSITIVE)
            shape = rng.randrange(5)
            if shape == 0:
                t = f"({c})*{a}"
            elif shape == 1:
                t = f"({c})*({a})/({rng.choice(_POSITIVE)})"
            elif shape == 2:
                t = f"({c})*({a})^{rng.choice(['2', '0.5', '1.5', '-1'])}"
            elif shape == 3:
                t = f"({c})*exp(i*({a}))"
            else:
                t = f"({c})*sqrt({a})*log({rng.choice(_POSITIVE)})"
            terms.append(t)
        corpus.append(" + ".join(terms))
    return [parse(t) for t in corpus]


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()
