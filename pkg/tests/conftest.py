import pytest

from ordalg import parse_algebra

# Two five/six-element worked examples used throughout the suite.  The first
# is two 2-chains glued at the top; the second adds an incomparable atom d
# under the top of a pentagon.  Arrow and meet tables are transcribed from
# the worked tables and double-checked at parse time against the derived
# greatest lower bounds.

FIG1_ORDER_SRC = """\
algebra
name: fig1
elements: a b c d 1
order:
  a < b
  b < 1
  c < d
  d < 1
end
"""

FIG1_NCIS_SRC = """\
algebra
name: fig1
elements: a b c d 1
order:
  a < b
  b < 1
  c < d
  d < 1
op meet partial:
  a a - - a
  a b - - b
  - - c c c
  - - c d d
  a b c d 1
op imp:
  1 1 c d 1
  a 1 c d 1
  a b 1 1 1
  a b c 1 1
  a b c d 1
end
"""

FIG1_RRS_SRC = """\
algebra
name: fig1
elements: a b c d 1
order:
  a < b
  b < 1
  c < d
  d < 1
op imp:
  1 1 c d 1
  a 1 c d 1
  a b 1 1 1
  a b c 1 1
  a b c d 1
op prod partial:
  a a - - a
  a b - - b
  - - c c c
  - - c d d
  a b c d 1
end
"""

FIG2_ORDER_SRC = """\
algebra
name: fig2
elements: 0 a b c d 1
order:
  0 < a
  a < c
  c < 1
  0 < b
  b < 1
  d < 1
end
"""

# The (0, d) arrow entry is d, forced by the axioms: 0 v d = 1 and the
# pseudocomplement of 1 in [d, 1] is d (0 is not below d here).
FIG2_NCIS_SRC = """\
algebra
name: fig2
elements: 0 a b c d 1
order:
  0 < a
  a < c
  c < 1
  0 < b
  b < 1
  d < 1
op meet partial:
  0 0 0 0 - 0
  0 a 0 a - a
  0 0 b 0 - b
  0 a 0 c - c
  - - - - d d
  0 a b c d 1
op imp:
  1 1 1 1 d 1
  b 1 b 1 d 1
  c a 1 c d 1
  b a b 1 d 1
  0 a b c 1 1
  0 a b c d 1
end
"""

FIG2_RRS_SRC = """\
algebra
name: fig2
elements: 0 a b c d 1
order:
  0 < a
  a < c
  c < 1
  0 < b
  b < 1
  d < 1
op imp:
  1 1 1 1 d 1
  b 1 b 1 d 1
  c a 1 c d 1
  b a b 1 d 1
  0 a b c 1 1
  0 a b c d 1
op prod partial:
  0 0 0 0 - 0
  0 a 0 a - a
  0 0 b 0 - b
  0 a 0 c - c
  - - - - d d
  0 a b c d 1
end
"""

ONE_ELEMENT_SRC = """\
algebra
elements: 1
end
"""


@pytest.fixture(scope="session")
def fig1():
    return parse_algebra(FIG1_NCIS_SRC)


@pytest.fixture(scope="session")
def fig1_order():
    return parse_algebra(FIG1_ORDER_SRC)


@pytest.fixture(scope="session")
def fig1_rrs():
    return parse_algebra(FIG1_RRS_SRC)


@pytest.fixture(scope="session")
def fig2():
    return parse_algebra(FIG2_NCIS_SRC)


@pytest.fixture(scope="session")
def fig2_order():
    return parse_algebra(FIG2_ORDER_SRC)


@pytest.fixture(scope="session")
def fig2_rrs():
    return parse_algebra(FIG2_RRS_SRC)


@pytest.fixture(scope="session")
def one_element():
    return parse_algebra(ONE_ELEMENT_SRC)


def idx(alg, *labs):
    out = tuple(alg.index[l] for l in labs)
    return out[0] if len(out) == 1 else out


def labs(alg, items):
    return tuple(alg.label(i) for i in items)
