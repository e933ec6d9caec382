import pytest

from khpotts import fixtures
from khpotts.bracket import (BracketFlavor, a_bracket, bracket, collapse_sqrt, cross_check_brackets, jones,
                             khovanov_bracket, khovanov_bracket_enhanced, potts_bracket, rho_bracket)
from khpotts.diagram import iter_states
from khpotts.errors import MalformedParity, TooLarge
from khpotts.poly import Laurent, parse, substitute

D = fixtures.diagrams()
A = Laurent.var("A")
q = Laurent.var("q")
qinv = Laurent.monomial({"q": -1})
delta = -(A ** 2) - Laurent.monomial({"A": -2})


def corpus():
    return list(D.items()) + [(f"random_{k}", d) for k, d in enumerate(fixtures.random_diagrams(30, seed=3))]


def literal_a_bracket(d):
    """Term-by-term: A^(#A - #B) delta^loops."""
    total = Laurent.const(0)
    for s in iter_states(d):
        total = total + Laurent.monomial({"A": d.n_crossings - 2 * s.n_B}) * delta ** s.n_loops
    return total


def test_khovanov_bracket_examples():
    assert khovanov_bracket(D["unknot"]) == q + qinv
    assert khovanov_bracket(D["hopf"]) == parse("q^4 + q^2 + 1 + q^-2", ("q",))
    assert khovanov_bracket(D["unlink2"]) == (q + qinv) ** 2
    assert khovanov_bracket(D["empty"]) == Laurent.const(1)


def test_khovanov_bracket_matches_enhanced_state_sum():
    for name, d in corpus():
        assert khovanov_bracket(d) == khovanov_bracket_enhanced(d), name


def test_a_bracket_examples():
    assert a_bracket(D["unknot"]) == delta
    # curl relation: a positive kink multiplies by -A^3
    assert a_bracket(D["kink_pos"]) == -(A ** 3) * delta
    assert a_bracket(D["kink_neg"]) == -Laurent.monomial({"A": -3}) * delta
    for name, d in corpus():
        assert a_bracket(d) == literal_a_bracket(d), name


def test_cross_check_holds_everywhere():
    for name, d in corpus():
        assert cross_check_brackets(d), name


def test_rho_bracket():
    assert rho_bracket(D["unknot"]) == q + qinv
    kink = rho_bracket(D["kink_pos"])
    rho = Laurent.var("rho")
    # A-state two loops, B-state one loop
    assert kink == (q + qinv) ** 2 - q * rho * (q + qinv)
    assert max(kink.exponents_of("rho")) == 1
    for name, d in corpus():
        assert substitute(rho_bracket(d), "rho", Laurent.const(1)) == khovanov_bracket(d), name


def test_potts_bracket():
    S = Laurent.var("S")
    v = Laurent.var("v")
    assert potts_bracket(D["unknot"]) == S
    kink = potts_bracket(D["kink_pos"])
    assert kink == S ** 2 + v
    assert collapse_sqrt(potts_bracket(D["unlink2"])) == Laurent.var("Q")
    with pytest.raises(MalformedParity):
        collapse_sqrt(potts_bracket(D["unknot"]))


def test_jones_examples():
    assert jones(D["unknot"]) == delta
    assert jones(D["kink_pos"]) == delta
    assert jones(D["kink_neg"]) == delta
    assert jones(D["trefoil_braid"]) == jones(D["trefoil_braid_stab"])
    assert jones(D["trefoil_mirror"]) == jones(D["trefoil_braid"])


def test_jones_of_trefoils():
    # unreduced: delta times the usual one-variable polynomial in t = A^-4
    t = Laurent.monomial({"A": -4})
    tinv = Laurent.monomial({"A": 4})
    right = -(t ** 4) + t ** 3 + t
    assert jones(D["trefoil_mirror"]) == delta * right
    assert jones(D["trefoil"]) == delta * (-(tinv ** 4) + tinv ** 3 + tinv)


def test_reidemeister_pairs_share_jones():
    for move, a, b, da, db in fixtures.reidemeister_pairs():
        assert jones(da) == jones(db), (move, a, b)


def test_flavor_dispatch_and_cap():
    d = D["hopf"]
    assert bracket(d, "q") == khovanov_bracket(d)
    assert bracket(d, BracketFlavor.A) == a_bracket(d)
    assert BracketFlavor("potts").variables == ("S", "v")
    big = fixtures.braid_closure([1] * 21, 2)
    with pytest.raises(TooLarge):
        khovanov_bracket(big)


def test_bracket_is_multiplicative_under_disjoint_union():
    for name, d in list(D.items())[:8]:
        u = d.disjoint_union(D["hopf"])
        assert khovanov_bracket(u) == khovanov_bracket(d) * khovanov_bracket(D["hopf"]), name
