import itertools
import math
import random

import numpy as np
import pytest

from hypsurf.disk import (
    DiskPoint,
    Geodesic,
    IdealPoint,
    IsometryClass,
    MobiusIsometry,
    apply,
    classify,
    fixed_points,
    translation_along,
)
from hypsurf.errors import (
    BudgetExceeded,
    CirclesOverlap,
    EmptySample,
    IndexOutOfRange,
    InvalidInput,
)
from hypsurf.groups import (
    OCTAGON_RELATOR,
    EndpointSample,
    GroupRep,
    SampleMode,
    attracting_angle,
    cusped_torus_group,
    enumerate_words,
    evaluate,
    gap_profile,
    limit_sample,
    max_angular_gap,
    orbit,
    schottky_rank2,
)
from hypsurf.words import GroupWord, word_count

W = GroupWord.from_string


def _entry_residual(m1, m2):
    return max(abs(m1.a - m2.a), abs(m1.b - m2.b))


def test_rep_validates_relators():
    t = translation_along(Geodesic(IdealPoint(0), IdealPoint(math.pi)), 1.0)
    with pytest.raises(InvalidInput):
        GroupRep((t,), relators=(W("AA"),))  # t^2 is not the identity
    GroupRep((t,), relators=())


def test_rep_needs_generators():
    with pytest.raises(InvalidInput):
        GroupRep(())


def test_evaluate_identity_and_inverse(octagon):
    assert evaluate(octagon, GroupWord()).is_identity()
    w = W("AbCd")
    m = evaluate(octagon, w).compose(evaluate(octagon, w.inverse()))
    assert m.is_identity(1e-10)


def test_evaluate_homomorphism_200_random_pairs(octagon):
    # absolute 1e-9 where entries stay small; relative 1e-9 in general
    # (renormalization noise scales with the squared entry size)
    rng = random.Random(17)
    words = enumerate_words(octagon, 3)
    for _ in range(200):
        u = rng.choice(words)
        v = rng.choice(words)
        lhs = evaluate(octagon, u * v)
        rhs = evaluate(octagon, u).compose(evaluate(octagon, v))
        residual = _entry_residual(lhs, rhs)
        assert residual / max(1.0, abs(lhs.a)) < 1e-9
        if len(u) + len(v) <= 4:
            assert residual < 1e-9


def test_evaluate_index_out_of_range(cusped_torus):
    with pytest.raises(IndexOutOfRange):
        evaluate(cusped_torus, W("C"))


def test_enumerate_words_counts(octagon, cusped_torus):
    assert len(enumerate_words(cusped_torus, 1)) == 5  # identity + 4
    exactly2 = [w for w in enumerate_words(cusped_torus, 2) if len(w) == 2]
    assert len(exactly2) == 12
    assert len(enumerate_words(octagon, 0)) == 1
    for n in range(4):
        assert len(enumerate_words(octagon, n)) == word_count(4, n)
    with pytest.raises(BudgetExceeded):
        enumerate_words(octagon, 8)


def test_orbit_base_only():
    t = translation_along(Geodesic(IdealPoint(0), IdealPoint(math.pi)), 1.0)
    rep = GroupRep((t,))
    ob = orbit(rep, DiskPoint(0.1j), 0)
    assert len(ob) == 1 and ob.points[0][1].z == 0.1j


def test_orbit_single_generator_marches_to_axis_ends():
    t = 1.0
    g = translation_along(Geodesic(IdealPoint(0), IdealPoint(math.pi)), t)
    rep = GroupRep((g,))
    ob = orbit(rep, DiskPoint(0), 10)
    assert len(ob) == 21  # identity + A^[1..10] + a^[1..10]
    # matrix-iteration oracle for every point
    for w, p in ob.points:
        m = MobiusIsometry.identity()
        for letter in w.letters:
            m = m.compose(g if letter > 0 else g.inverse())
        assert abs(apply(m, DiskPoint(0)).z - p.z) < 1e-12
    # the extremes approach the two axis endpoints
    pts = sorted(p.z.real for _, p in ob.points)
    assert pts[0] < -0.99 and pts[-1] > 0.99


def test_orbit_count_matches_word_count(octagon):
    ob = orbit(octagon, DiskPoint(0), 3)
    assert len(ob) == word_count(4, 3)
    assert all(abs(p.z) < 1.0 for _, p in ob.points)


def test_orbit_csv_shape(octagon):
    rows = list(orbit(octagon, DiskPoint(0), 1).to_csv_rows())
    assert rows[0] == "re,im,word"
    assert len(rows) == 1 + word_count(4, 1)


def test_limit_sample_single_generator_axis_mode():
    g = translation_along(Geodesic(IdealPoint(1.0), IdealPoint(1.0 + math.pi)), 2.0)
    rep = GroupRep((g,))
    s = limit_sample(rep, DiskPoint(0), 5, SampleMode.AXIS_ENDPOINTS)
    assert len(s) == 2
    assert sorted(s.angles) == pytest.approx([1.0, 1.0 + math.pi], abs=1e-9)


def test_limit_sample_axis_size_strictly_increases(octagon):
    sizes = []
    for n in (1, 2, 3, 4):
        s = limit_sample(octagon, DiskPoint(0), n, SampleMode.AXIS_ENDPOINTS)
        assert np.all(np.diff(s.angles) > 0)  # strictly increasing after dedup
        assert s.angles[0] >= 0 and s.angles[-1] < 2 * math.pi
        sizes.append(len(s))
    assert sizes == sorted(sizes) and len(set(sizes)) == 4


def test_limit_sample_orbit_mode_basepoint_stability(octagon):
    s0 = limit_sample(octagon, DiskPoint(0), 4, SampleMode.ORBIT_PROJECTION)
    s1 = limit_sample(octagon, DiskPoint(0.3 + 0.2j), 4, SampleMode.ORBIT_PROJECTION)
    assert abs(max_angular_gap(s0) - max_angular_gap(s1)) < 0.05


def test_limit_sample_empty(schottky):
    with pytest.raises(EmptySample):
        limit_sample(schottky, DiskPoint(0), 1, SampleMode.ORBIT_PROJECTION, delta=1e-6)


def test_limit_sample_rejects_bad_args(octagon):
    with pytest.raises(InvalidInput):
        limit_sample(octagon, DiskPoint(0), 0, SampleMode.AXIS_ENDPOINTS)
    with pytest.raises(InvalidInput):
        limit_sample(octagon, DiskPoint(0), 2, SampleMode.ORBIT_PROJECTION, delta=1.5)


def test_max_angular_gap_cases():
    def sample_of(angles):
        th = np.sort(np.array(angles, dtype=float))
        return EndpointSample(SampleMode.AXIS_ENDPOINTS, th,
                              np.zeros((len(th), 1), dtype=np.int8))

    assert max_angular_gap(sample_of([0.3, 0.3 + math.pi])) == pytest.approx(math.pi)
    k = 7
    eq = sample_of([2 * math.pi * i / k for i in range(k)])
    assert max_angular_gap(eq) == pytest.approx(2 * math.pi / k)
    assert max_angular_gap(sample_of([1.0])) == pytest.approx(2 * math.pi)
    with pytest.raises(EmptySample):
        max_angular_gap(sample_of([]))


def test_max_angular_gap_brute_force_oracle():
    rng = random.Random(23)
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(200))
    th = np.array(angles)
    s = EndpointSample(SampleMode.AXIS_ENDPOINTS, th, np.zeros((200, 1), dtype=np.int8))
    brute = max(
        (angles[(i + 1) % 200] - angles[i]) % (2 * math.pi) for i in range(200)
    )
    assert max_angular_gap(s) == pytest.approx(brute, abs=1e-15)
    prof = gap_profile(s)
    assert prof[0] == pytest.approx(brute, abs=1e-15)
    assert sum(prof) == pytest.approx(2 * math.pi, abs=1e-9)
    assert prof == sorted(prof, reverse=True)


def test_gap_profile_equally_spaced_constant():
    k = 12
    th = np.array([2 * math.pi * i / k for i in range(k)])
    s = EndpointSample(SampleMode.AXIS_ENDPOINTS, th, np.zeros((k, 1), dtype=np.int8))
    prof = gap_profile(s)
    assert prof == pytest.approx([2 * math.pi / k] * k)


def test_octagon_relator_and_generators(octagon):
    m = evaluate(octagon, OCTAGON_RELATOR)
    assert min(max(abs(m.a - 1), abs(m.b)), max(abs(m.a + 1), abs(m.b))) < 1e-6
    for g in octagon.generators:
        assert classify(g) is IsometryClass.HYPERBOLIC


def test_octagon_orbit_points_distinct(octagon):
    ob = orbit(octagon, DiskPoint(0), 2)
    zs = [p.z for _, p in ob.points]
    m = min(abs(a - b) for a, b in itertools.combinations(zs, 2))
    assert m > 1e-6


def test_octagon_axis_gap_decreases(octagon):
    gaps = [
        max_angular_gap(limit_sample(octagon, DiskPoint(0), n, SampleMode.AXIS_ENDPOINTS))
        for n in (2, 3, 4, 5)
    ]
    assert gaps[0] > gaps[1] > gaps[2] > gaps[3]


def test_schottky_isometric_circles_closed_form():
    t = 4.0
    rep = schottky_rank2(t)
    # closed forms: centers at +-coth(t/2) and +-i coth(t/2), radius 1/sinh(t/2)
    r = 1.0 / math.sinh(t / 2)
    c = 1.0 / math.tanh(t / 2)
    centers = [c, -c, 1j * c, -1j * c]
    got = []
    for g in rep.generators:
        got.append(-g.a.conjugate() / g.b.conjugate())
        got.append(g.a / g.b.conjugate())
        assert abs(1.0 / abs(g.b) - r) < 1e-12
    for z in got:
        assert min(abs(z - w) for w in centers) < 1e-12
        # orthogonal to the unit circle: |c|^2 = 1 + r^2
        assert abs(abs(z) ** 2 - (1 + r * r)) < 1e-9
    # pairwise disjoint with the closed-form margin
    assert math.sqrt(2) * c > 2 * r


def test_schottky_overlap_raises():
    with pytest.raises(CirclesOverlap):
        schottky_rank2(1.0)
    with pytest.raises(InvalidInput):
        schottky_rank2(-2.0)


def test_schottky_short_words_all_hyperbolic(schottky):
    for w in enumerate_words(schottky, 4):
        if w.is_identity():
            continue
        assert classify(evaluate(schottky, w)) is IsometryClass.HYPERBOLIC


def test_schottky_gap_persistence(schottky):
    s4 = limit_sample(schottky, DiskPoint(0), 4, SampleMode.AXIS_ENDPOINTS)
    s6 = limit_sample(schottky, DiskPoint(0), 6, SampleMode.AXIS_ENDPOINTS)
    assert len(s6) >= 3 * len(s4)
    top4 = gap_profile(s4)[0]
    top6 = gap_profile(s6)[0]
    assert top4 > 0.3 and top6 > 0.3
    assert abs(top4 - top6) < 1e-3


def test_cusped_torus_group_shape(cusped_torus):
    a, b = cusped_torus.generators
    assert classify(a) is IsometryClass.HYPERBOLIC
    assert classify(b) is IsometryClass.HYPERBOLIC
    comm = evaluate(cusped_torus, W("ABab"))
    assert classify(comm) is IsometryClass.PARABOLIC


def test_axis_endpoint_sample_conjugation_equivariance(cusped_torus):
    phi = 0.9
    r = MobiusIsometry.rotation(phi)
    conj = GroupRep(
        tuple(r.compose(g).compose(r.inverse()) for g in cusped_torus.generators),
        label="conjugated",
    )
    s = limit_sample(cusped_torus, DiskPoint(0), 4, SampleMode.AXIS_ENDPOINTS)
    sc = limit_sample(conj, DiskPoint(0), 4, SampleMode.AXIS_ENDPOINTS)
    assert len(s) == len(sc)
    rotated = np.sort(np.mod(s.angles + phi, 2 * math.pi))
    assert np.max(np.abs(rotated - sc.angles)) < 1e-8


def test_axis_endpoint_sample_general_conjugator_equivariance(cusped_torus):
    g = translation_along(Geodesic(IdealPoint(0.7), IdealPoint(3.0)), 0.8)
    conj = GroupRep(
        tuple(g.compose(x).compose(g.inverse()) for x in cusped_torus.generators),
        label="conjugated",
    )
    s = limit_sample(cusped_torus, DiskPoint(0), 3, SampleMode.AXIS_ENDPOINTS)
    sc = limit_sample(conj, DiskPoint(0), 3, SampleMode.AXIS_ENDPOINTS)
    assert len(s) == len(sc)
    moved = np.sort([apply(g, IdealPoint(float(t))).theta for t in s.angles])
    assert np.max(np.abs(moved - sc.angles)) < 1e-8


def test_attracting_angle_matches_fixed_points(octagon):
    rng = random.Random(31)
    words = [
        w for w in enumerate_words(octagon, 3)
        if not w.is_identity() and w.is_cyclically_reduced()
    ]
    for w in rng.sample(words, 25):
        m = evaluate(octagon, w)
        if classify(m) is not IsometryClass.HYPERBOLIC:
            continue
        assert attracting_angle(octagon, w) == pytest.approx(
            fixed_points(m)[0].theta, abs=1e-10
        )


def test_attracting_angle_conjugate_oracle(octagon):
    # short enough for evaluate: conjugation moves fixed points by the
    # boundary action of the conjugator
    u = GroupWord.reduced((1, 2, 1, 1, -3, 2, 2, 4, 1, 2))
    v = W("AB")
    w = u * v * u.inverse()
    theta = attracting_angle(octagon, w)
    m = evaluate(octagon, u)
    expected = apply(m, fixed_points(evaluate(octagon, v))[0]).theta
    assert theta == pytest.approx(expected, abs=1e-9)


def test_attracting_angle_long_word_is_fixed_by_word(octagon):
    # far beyond evaluate's range: verify the fixed-point property by
    # walking the word's letters on the circle
    u = GroupWord.reduced((1, 2, 1, 1, -3, 2, 2, 4, 1, 2) * 5)
    w = u * W("AB") * u.inverse()
    assert len(w) > 90
    theta = attracting_angle(octagon, w)
    z = complex(math.cos(theta), math.sin(theta))
    for letter in reversed(w.letters):
        g = octagon.letter_isometry(letter)
        z = (g.a * z + g.b) / (g.b.conjugate() * z + g.a.conjugate())
        z /= abs(z)
    moved = math.atan2(z.imag, z.real) % (2 * math.pi)
    diff = abs(moved - theta) % (2 * math.pi)
    assert min(diff, 2 * math.pi - diff) < 1e-6


def test_attracting_angle_none_for_parabolic(cusped_torus):
    assert attracting_angle(cusped_torus, W("ABab")) is None
    assert attracting_angle(cusped_torus, GroupWord()) is None


def test_sample_word_provenance(octagon):
    s = limit_sample(octagon, DiskPoint(0), 2, SampleMode.AXIS_ENDPOINTS)
    for theta, w in itertools.islice(iter(s), 10):
        m = evaluate(octagon, w)
        angles = [p.theta for p in fixed_points(m)]
        assert min(abs(theta.theta - t) for t in angles) < 1e-9


def test_sample_csv_and_json_deterministic(octagon):
    s1 = limit_sample(octagon, DiskPoint(0), 3, SampleMode.AXIS_ENDPOINTS)
    s2 = limit_sample(octagon, DiskPoint(0), 3, SampleMode.AXIS_ENDPOINTS)
    assert "\n".join(s1.to_csv_rows()) == "\n".join(s2.to_csv_rows())
    assert s1.to_json() == s2.to_json()
    rows = list(s1.to_csv_rows())
    assert rows[0] == "theta,word"
    assert len(rows) == len(s1) + 1
