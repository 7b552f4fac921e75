"""Spectrum parsing, the reality check, and the pair-coordinate bijection."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niepkit import (
    CanonicalSpectrum,
    ParseError,
    RealityViolation,
    Spectrum,
    canonicalize,
    check_reality,
    format_spectrum,
    parse_spectrum,
    phi_inverse,
)

finite = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-3, max_value=1e4, allow_nan=False, allow_infinity=False)


@st.composite
def canonical_spectra(draw):
    n_reals = draw(st.integers(min_value=0, max_value=5))
    n_pairs = draw(st.integers(min_value=0 if n_reals else 1, max_value=3))
    reals = tuple(draw(st.lists(finite, min_size=n_reals, max_size=n_reals)))
    pairs = tuple(
        (draw(finite), draw(positive)) for _ in range(n_pairs)
    )
    return CanonicalSpectrum(reals=reals, pairs=pairs)


class TestSpectrumType:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Spectrum(())

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            Spectrum((complex(float("nan"), 0),))

    def test_rejects_inf(self):
        with pytest.raises(ValueError):
            Spectrum((complex(1, float("inf")),))


class TestParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1,-1", (1, -1)),
            ("1, 2+3i, 2-3i", (1, 2 + 3j, 2 - 3j)),
            ("i,-i", (1j, -1j)),
            (" 2.5e-1 , -0.5i ", (0.25, -0.5j)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_spectrum(text).values == tuple(complex(v) for v in expected)

    def test_round_trip(self):
        for text in ["1.0,-1.0", "1.5+2.25i,1.5-2.25i", "0.1,0.2,0.30000000000004"]:
            s = parse_spectrum(text)
            assert parse_spectrum(format_spectrum(s)).values == s.values

    def test_bad_literal(self):
        with pytest.raises(ParseError):
            parse_spectrum("1,zz")

    def test_empty_entry(self):
        with pytest.raises(ParseError):
            parse_spectrum("1,,2")


class TestCheckReality:
    def test_all_real(self):
        rep = check_reality(Spectrum((1, -1)))
        assert rep.holds and rep.pairs == ()

    def test_exact_conjugates(self):
        rep = check_reality(Spectrum((1, 2 + 3j, 2 - 3j)))
        assert rep.holds
        assert rep.pairs == ((1, 2),)

    def test_duplicated_upper_fails(self):
        rep = check_reality(Spectrum((1, 2 + 3j, 2 + 3j)))
        assert not rep.holds
        assert set(rep.unmatched) == {1, 2}

    def test_tolerance_allows_fuzzy_pair(self):
        s = Spectrum((1, 2 + 3j, 2 - 3.0000001j))
        assert not check_reality(s, tol=1e-9).holds
        assert check_reality(s, tol=1e-3).holds

    @settings(max_examples=100, deadline=None)
    @given(st.permutations(list(range(6))), st.data())
    def test_permutation_invariance(self, perm, data):
        base = [1.0 + 0j, -2.0 + 0j, 0.5 + 1j, 0.5 - 1j, 3 + 2j, 3 - 2j]
        s1 = Spectrum(tuple(base))
        s2 = Spectrum(tuple(base[i] for i in perm))
        assert check_reality(s1).holds == check_reality(s2).holds


class TestCanonicalize:
    def test_all_real_sorts(self):
        c = canonicalize(Spectrum((1, -1)))
        assert c.reals == (1.0, -1.0) and c.k == 0

    def test_single_pair(self):
        c = canonicalize(Spectrum((5, 2 + 3j, 2 - 3j)))
        assert c.reals == (5.0,)
        assert c.pairs == ((2.0, 3.0),)
        assert c.k == 1

    def test_two_pairs_sorted(self):
        c = canonicalize(Spectrum((1 + 1j, 1 - 1j, 2 + 2j, 2 - 2j)))
        assert c.reals == ()
        assert c.pairs == ((2.0, 2.0), (1.0, 1.0))
        assert c.k == 2

    def test_reality_violation(self):
        with pytest.raises(RealityViolation):
            canonicalize(Spectrum((1, 2 + 3j, 2 + 3j)))


class TestPhiInverse:
    def test_single_pair(self):
        s = phi_inverse(CanonicalSpectrum(reals=(5,), pairs=((2, 3),)))
        assert s.values == (5 + 0j, 2 + 3j, 2 - 3j)

    def test_identity_on_reals(self):
        s = phi_inverse(CanonicalSpectrum(reals=(1, -1)))
        assert s.values == (1 + 0j, -1 + 0j)

    def test_pure_imaginary_pair(self):
        s = phi_inverse(CanonicalSpectrum(pairs=((0, 1),)))
        assert s.values == (1j, -1j)

    def test_z_must_be_positive(self):
        with pytest.raises(ValueError):
            CanonicalSpectrum(pairs=((1.0, -2.0),))
        with pytest.raises(ValueError):
            CanonicalSpectrum(pairs=((1.0, 0.0),))


class TestRoundTrip:
    @settings(max_examples=200, deadline=None)
    @given(canonical_spectra())
    def test_exact_round_trip(self, c):
        assert canonicalize(phi_inverse(c)) == c

    @settings(max_examples=100, deadline=None)
    @given(st.lists(finite, min_size=1, max_size=7))
    def test_all_real_gives_sort(self, xs):
        c = canonicalize(Spectrum(tuple(xs)))
        assert c.k == 0
        assert c.reals == tuple(sorted((float(x) for x in xs), reverse=True))

    def test_default_tolerance_scales(self):
        big = Spectrum((1e6, 1e6 + 0.0005j))
        assert check_reality(big).holds  # 5e-4 imag is below 1e-9 * (1 + 1e6)
        small = Spectrum((1.0, 1.0 + 0.0005j))
        assert not check_reality(small).holds
