import json

import pytest

from monoquartic.families import (COND2_PAIRS, COND3_PAIRS, DISC_NOTE, CaseTag, Certificate, Family, Verdict,
                                  check_f, check_f_bb, check_g, check_g_1d, check_resolvent_cubic)
from monoquartic.intpoly import IntPoly, is_squarefree, vp_int
from monoquartic.montes import dedekind_test
from monoquartic.quartic import GaloisGroup


def _tags(cert):
    return {e.p: e.tag for e in cert.prime_evidence if e.certifying}


def test_congruence_tables():
    assert COND2_PAIRS == {(0, 1), (2, 3)}
    expected = set()
    for a in range(9):
        for b in range(9):
            if a % 3 == 0 or b % 3:
                continue
            shifted = b - a + 1 if a % 3 == 1 else b + a + 1
            if vp_int(shifted, 3) == 1:
                expected.add((a, b))
    assert COND3_PAIRS == expected
    assert len(COND3_PAIRS) == 12


def test_check_f_examples():
    cert = check_f(2, 2)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.statement == 'theta generates the ring of integers of Q(theta)'
    assert cert.discriminant == 1616
    assert _tags(cert) == {2: CaseTag.CASE1_EISENSTEIN_SHAPE, 101: CaseTag.SQFREE_VAL_1}
    assert DISC_NOTE in cert.deviation_notes
    assert cert.flags['b_divides_a']

    cert = check_f(1, 3)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.discriminant == 6885
    assert _tags(cert) == {3: CaseTag.CASE3_P3, 5: CaseTag.SQFREE_VAL_1, 17: CaseTag.SQFREE_VAL_1}

    cert = check_f(2, 4)
    assert cert.verdict is Verdict.HYPOTHESES_NOT_MET
    assert cert.statement == 'theorem inapplicable'
    assert cert.prime_evidence == ()
    assert any(h.name == 'p=2 condition' and not h.passed for h in cert.hypothesis_trail)


def test_check_f_reducible():
    cert = check_f(0, -4)
    assert cert.verdict is Verdict.NOT_IRREDUCIBLE
    assert cert.hypothesis_trail[0].value == 'quadratic-split'
    assert check_f(1, -2).hypothesis_trail[0].value == 'rational-root'


def test_check_g_examples():
    cert = check_g(1, 1)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.statement == 'tau generates the ring of integers of Q(tau)'
    assert _tags(cert) == {229: CaseTag.SQFREE_VAL_1}
    assert not cert.flags['four_divides_m']

    cert = check_g(2, 3)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.flags['four_divides_m']
    assert _tags(cert) == {2: CaseTag.CASE2_P2, 3: CaseTag.GCD_SIEVE, 7: CaseTag.SQFREE_VAL_1}

    cert = check_g(3, 3)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert _tags(cert) == {3: CaseTag.CASE1_EISENSTEIN_SHAPE, 11: CaseTag.SQFREE_VAL_1,
                           43: CaseTag.SQFREE_VAL_1}

    assert check_g(1, -2).verdict is Verdict.NOT_IRREDUCIBLE
    assert check_g(1, 4).verdict is Verdict.HYPOTHESES_NOT_MET


def test_restricted_families():
    cert = check_f_bb(2)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.family is Family.F_BB and cert.params == (2, 2)
    assert cert.galois.group is GaloisGroup.S4

    cert = check_f_bb(3)
    assert cert.verdict is Verdict.HYPOTHESES_NOT_MET
    assert cert.galois.group is GaloisGroup.D8_OR_C4

    cert = check_g_1d(1)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.params == (1, 1)
    assert cert.galois.group is GaloisGroup.S4


def test_resolvent_cubic():
    cert = check_resolvent_cubic(1)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert cert.polynomial == IntPoly([-1, -4, 0, 1])
    assert cert.statement == 'beta generates the ring of integers of Q(beta)'
    assert cert.discriminant == 229

    cert = check_resolvent_cubic(2, crosscheck=True)
    assert cert.verdict is Verdict.MONOGENIC_GENERATOR
    assert _tags(cert)[2] is CaseTag.CASE1_EISENSTEIN_SHAPE
    assert [e.dedekind for e in cert.prime_evidence if not e.certifying] == [True]

    cert = check_resolvent_cubic(-2)
    assert cert.verdict is Verdict.HYPOTHESES_NOT_MET
    assert any('d = -2' in n for n in cert.deviation_notes)


@pytest.mark.parametrize('cert', [check_f(2, 2), check_g(2, 3, crosscheck=True), check_f_bb(3),
                                  check_resolvent_cubic(2), check_g(1, -2)],
                         ids=['f', 'g-crosscheck', 'fbb', 'cubic', 'reducible'])
def test_certificate_json_is_stable(cert):
    text = cert.to_json()
    again = Certificate.from_dict(json.loads(text))
    assert again.to_json() == text
    assert again.verdict is cert.verdict
    assert again.prime_evidence == cert.prime_evidence


def test_certificate_rejects_unknown_schema():
    d = check_f(2, 2).to_dict()
    d['schema_version'] = 'something/else'
    with pytest.raises(ValueError):
        Certificate.from_dict(d)


def test_seed_is_recorded(monkeypatch):
    assert check_f(2, 2, seed=5).rng_seed == 5
    monkeypatch.setenv('MQ_SEED', '11')
    cert = check_f(2, 2, seed=5)
    assert cert.rng_seed == 11


def test_text_rendering():
    text = check_g(2, 3).to_text()
    assert text.startswith('x^4 + 2*x^3 + 3  (G_CD, c=2, d=3)')
    assert 'p=3 GCD_SIEVE' in text
    assert 'verdict: MONOGENIC_GENERATOR' in text


def _assert_sound(cert):
    """Every certified polynomial passes Dedekind at each prime whose square divides the discriminant"""
    assert len(cert.certified_primes) == len(set(cert.certified_primes))
    if cert.verdict is not Verdict.MONOGENIC_GENERATOR:
        assert not cert.statement.startswith(('theta', 'tau', 'beta'))
        return
    for e in cert.prime_evidence:
        if e.certifying and e.vp_disc >= 2:
            assert dedekind_test(cert.polynomial, e.p)
            assert e.report.exact and e.report.lower_bound == 0


def _sweep(bound):
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if b == 0:
                continue
            _assert_sound(check_f(a, b, crosscheck=True))
            _assert_sound(check_g(a, b, crosscheck=True))


def test_soundness():
    _sweep(12)


@pytest.mark.slow
def test_soundness_sweep():
    _sweep(60)


def _restricted(bound):
    for b in range(-bound, bound + 1):
        if b in (0, 3, 5) or not is_squarefree(b) or not is_squarefree(256 - 27 * b):
            continue
        cert = check_f_bb(b, crosscheck=True)
        assert cert.verdict is Verdict.MONOGENIC_GENERATOR, b
        assert cert.galois.group is GaloisGroup.S4
    for d in range(-bound, bound + 1):
        if d in (0, -2) or not is_squarefree(d) or not is_squarefree(256 * d - 27):
            continue
        cert = check_g_1d(d, crosscheck=True)
        assert cert.verdict is Verdict.MONOGENIC_GENERATOR, d
        assert cert.galois.group is GaloisGroup.S4
        assert check_resolvent_cubic(d, crosscheck=True).verdict is Verdict.MONOGENIC_GENERATOR


def test_restricted_families_sweep():
    _restricted(150)


@pytest.mark.slow
def test_restricted_families_full_sweep():
    _restricted(10**4)
