"""Randomized invariant checks for the numeric kernels and the fit."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cavityfit.cavity import CavityModel, RefractiveIndex, chi
from cavityfit.corpus import Corpus, derive_rows, emit_table, make_record, parse_corpus
from cavityfit.fit import WeightScheme, compare_models, fit_model
from cavityfit.radiative import derive_reff, predicted_lifetime_ns
from cavityfit.units import RadialIntegralNm, WavelengthNm, wavelength_to_wavenumber

finite = dict(allow_nan=False, allow_infinity=False)

wavelengths = st.floats(min_value=1.0, max_value=1e5, **finite)
radial = st.floats(min_value=1e-4, max_value=1.0, **finite)
indices = st.floats(min_value=1.0, max_value=2.5, **finite)
models = st.sampled_from(list(CavityModel))

host_chars = st.characters(
    whitelist_categories=("Lu", "Ll", "Nd"), whitelist_characters=" -_.,()'\""
)
hosts = st.text(alphabet=host_chars, min_size=1, max_size=20).filter(
    lambda s: s.strip() and not s.lstrip().startswith("#")
)
sources = st.text(alphabet=host_chars, max_size=12)


@given(lam=wavelengths)
def test_wavelength_round_trip(lam):
    nu = wavelength_to_wavenumber(WavelengthNm(lam))
    back = 1e7 / nu.value
    assert abs(back - lam) <= 1e-12 * lam


@given(lam1=wavelengths, lam2=wavelengths)
def test_wavelength_conversion_strictly_decreasing(lam1, lam2):
    assume(abs(lam1 - lam2) > 1e-9 * max(lam1, lam2))
    lo, hi = sorted((lam1, lam2))
    assert (
        wavelength_to_wavenumber(WavelengthNm(lo)).value
        > wavelength_to_wavenumber(WavelengthNm(hi)).value
    )


@given(n=st.floats(min_value=1.0, max_value=3.0, **finite))
def test_chi_ordering(n):
    idx = RefractiveIndex(n)
    v = chi(CavityModel.VIRTUAL, idx).value
    r = chi(CavityModel.REAL, idx).value
    assert v >= r >= n >= chi(CavityModel.VACUUM, idx).value == 1.0


@given(n=st.floats(min_value=1.001, max_value=3.0, **finite))
def test_chi_ordering_strict_away_from_one(n):
    idx = RefractiveIndex(n)
    v = chi(CavityModel.VIRTUAL, idx).value
    r = chi(CavityModel.REAL, idx).value
    assert v > r > n > 1.0


@given(
    n1=st.floats(min_value=1.0, max_value=3.0, **finite),
    n2=st.floats(min_value=1.0, max_value=3.0, **finite),
    model=st.sampled_from([CavityModel.VIRTUAL, CavityModel.REAL]),
)
def test_chi_strictly_increasing(n1, n2, model):
    assume(abs(n1 - n2) > 1e-9)
    lo, hi = sorted((n1, n2))
    assert chi(model, RefractiveIndex(hi)).value > chi(model, RefractiveIndex(lo)).value


@given(
    r=radial,
    # emission-band wavelengths keep the predicted lifetime above the
    # near-zero guard for every radial integral in range
    lam=st.floats(min_value=50.0, max_value=2000.0, **finite),
    n=indices,
    model=models,
)
def test_lifetime_radial_integral_round_trip(r, lam, n, model):
    reff = RadialIntegralNm(r)
    wl = WavelengthNm(lam)
    idx = RefractiveIndex(n)
    tau = predicted_lifetime_ns(reff, wl, model, idx)
    back = derive_reff(tau, wl, model, idx)
    assert abs(back.value - r) <= 1e-10 * r


def _random_corpus(draw_tuples):
    records = tuple(
        make_record(f"H{i}", "syn", tau, lam, n)
        for i, (tau, lam, n) in enumerate(draw_tuples)
    )
    return Corpus(rows=records)


corpus_tuples = st.lists(
    st.tuples(
        st.floats(min_value=5.0, max_value=100.0, **finite),
        st.floats(min_value=200.0, max_value=600.0, **finite),
        st.floats(min_value=1.01, max_value=2.3, **finite),
    ),
    min_size=3,
    max_size=10,
)


@given(tuples=corpus_tuples, k=st.integers(min_value=-6, max_value=6),
       scheme=st.sampled_from(list(WeightScheme)),
       model=st.sampled_from([CavityModel.VIRTUAL, CavityModel.REAL]))
@settings(deadline=None)
def test_fit_scale_equivariance_exact_for_powers_of_two(tuples, k, scheme, model):
    """Scaling every y by s = 2^k scales the fitted r_eff^2 by exactly s."""
    s = 2.0**k
    base = derive_rows(_random_corpus(tuples))
    scaled = derive_rows(
        _random_corpus([(tau / s, lam, n) for tau, lam, n in tuples])
    )
    a0 = fit_model(base, model, scheme).reff_sq
    a1 = fit_model(scaled, model, scheme).reff_sq
    assert a1 == s * a0


@given(tuples=corpus_tuples, factor=st.floats(min_value=0.1, max_value=10.0, **finite),
       scheme=st.sampled_from(list(WeightScheme)))
@settings(deadline=None)
def test_winner_invariant_under_y_scaling(tuples, factor, scheme):
    ns = [n for _, _, n in tuples]
    assume(max(ns) - min(ns) > 1e-6)  # a chi-degenerate corpus ties instead
    base = derive_rows(_random_corpus(tuples))
    scaled = derive_rows(
        _random_corpus([(tau / factor, lam, n) for tau, lam, n in tuples])
    )
    assert compare_models(base, scheme).winner is compare_models(scaled, scheme).winner


@given(tuples=corpus_tuples, seed=st.randoms(use_true_random=False))
@settings(deadline=None)
def test_fit_permutation_invariance(tuples, seed):
    rows = derive_rows(_random_corpus(tuples))
    shuffled = list(rows)
    seed.shuffle(shuffled)
    a = fit_model(rows, CavityModel.VIRTUAL)
    b = fit_model(shuffled, CavityModel.VIRTUAL)
    assert (a.reff_sq, a.weighted_rss) == (b.reff_sq, b.weighted_rss)


records_strategy = st.lists(
    st.tuples(
        hosts,
        sources,
        st.floats(min_value=1e-3, max_value=1e6, **finite),
        st.floats(min_value=1.0, max_value=1e6, **finite),
        st.floats(min_value=1.0, max_value=2.5, **finite),
        st.floats(min_value=0.01, max_value=0.99, **finite),
    ),
    min_size=1,
    max_size=8,
)


@given(specs=records_strategy)
@settings(deadline=None)
def test_csv_emit_parse_round_trip(specs):
    corpus = Corpus(
        rows=tuple(
            make_record(host, src, tau, lam, n, rel)
            for host, src, tau, lam, n, rel in specs
        )
    )
    text = emit_table(derive_rows(corpus), "csv")
    assert parse_corpus(text).rows == corpus.rows
