"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""

import contextlib
import math
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from oracles import connected, overlap_edges
from swarmtrack.cli import main
from swarmtrack.engine import init, step
from swarmtrack.geometry import Rect, Vec2, coverage_fraction
from swarmtrack.network import Role, deploy
from swarmtrack.planner import Case, SensorSpec, optimal_plan, plan_for, sweep_area, sweep_radius
from swarmtrack.report import K_TOL, PUBLISHED_TABLE, check_table
from swarmtrack.scenario import load_scenario
from swarmtrack.targets import FlockParams, Target, flock_step, spawn_wave

ROOT = Path(__file__).resolve().parents[1]
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"


@contextlib.contextmanager
def criterion(num, title):
    try:
        yield
    except BaseException as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        ACCEPTANCE_LINES.append(f"FAIL  {num:<3} {title}: {msg}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {num:<3} {title}")


def simulate(tmp_path, name, *extra):
    out = tmp_path / f"{name}-{len(list(tmp_path.iterdir()))}"
    code = main(["simulate", "--config", str(SCENARIOS / f"{name}.ini"), "--out", str(out), *extra])
    return code, out


def test_c1_table_reproduction(capsys):
    with criterion(1, "17-row sizing table reproduced (n exact, k +-0.005, areas +-0.001, case exact, < 1 s)"):
        t0 = time.perf_counter()
        code = main(["table"])
        elapsed = time.perf_counter() - t0
        out = capsys.readouterr().out
        rows, diff = check_table()
        assert code == 0, diff
        assert diff == []
        assert len(rows) == 17 and len(out.splitlines()) == 18
        for got, want in zip(rows, PUBLISHED_TABLE):
            assert got.n == want.n
            assert abs(got.k - want.k) <= K_TOL
            assert abs(got.primary_area - want.primary_area) <= 0.001
            assert abs(got.secondary_area - want.secondary_area) <= 0.001
            assert got.case.label == want.case.label
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_c2_k_converges_with_area():
    with criterion(2, "K vs area (r=2,R=4) rises toward 1.5, within 2% at A=1e6"):
        limit = (4**2 - 2**2) / (2 * 2**2)
        assert limit == 1.5
        decades = sweep_area(SensorSpec(2, 4), [10.0**e for e in range(1, 7)])
        ks = [r.k for r in decades]
        assert all(a < b for a, b in zip(ks, ks[1:])), ks
        assert abs(ks[-1] - limit) / limit <= 0.02
        # dense sampling: rounding of n gives a sawtooth, squeezed between
        # 1.5*raw/(raw+2) and 1.5 with raw = 2A/(pi*12)
        dense = list(np.geomspace(10, 1e6, 400))
        for a, row in zip(dense, sweep_area(SensorSpec(2, 4), dense)):
            raw = 2 * a / (math.pi * 12)
            assert limit * raw / (raw + 2) - 1e-12 <= row.k <= limit + 1e-12


def test_c3_k_falls_with_radius():
    with criterion(3, "K vs primary radius (A=1000, r=1..7, R=r+2) strictly decreasing; Case3->Case1 at K=0.5"):
        rows = sweep_radius(1000, [SensorSpec(r, r + 2) for r in range(1, 8)])
        ks = [r.k for r in rows]
        assert all(a > b for a, b in zip(ks, ks[1:])), ks
        block = [r for r in PUBLISHED_TABLE if r.area == 1000]
        for got, want in zip(rows, block):
            assert (got.x, got.n, got.case) == (want.r, want.n, want.case)
            assert abs(got.k - want.k) <= K_TOL
        cases = [r.case for r in rows]
        assert cases == [Case.CASE3] * 4 + [Case.CASE1] * 3
        assert rows[3].k > 0.5 >= rows[4].k


def test_c4_n_linear_in_area():
    with criterion(4, "n vs area (r=2,R=4): |n - 2A/(12 pi)| <= 2"):
        areas = sorted({r.area for r in PUBLISHED_TABLE} | set(np.geomspace(1, 1e6, 300)))
        rows = sweep_area(SensorSpec(2, 4), list(areas))
        worst = max(abs(r.n - 2 * r.x / (math.pi * 12)) for r in rows)
        assert worst <= 2, worst


def random_whole_cover_plans(count, seed):
    rng = np.random.default_rng(seed)
    plans = []
    while len(plans) < count:
        l, b = rng.uniform(10, 100, 2)
        r = rng.uniform(0.5, 5)
        R = r * rng.uniform(1.01, 1.45)
        spec = SensorSpec(float(r), float(R))
        field = Rect(float(l), float(b))
        if rng.random() < 0.3:
            plan = plan_for(field, spec, int(rng.integers(1, 3 * len(plans) + 10)))
        else:
            plan = optimal_plan(field, spec)
        if plan.case in (Case.CASE1, Case.CASE2):
            plans.append(plan)
    return plans


def test_c5_whole_field_coverage():
    with criterion(5, "50 random Case1/Case2 deployments cover >= 0.99 (1e6 samples, < 30 s)"):
        t0 = time.perf_counter()
        plans = random_whole_cover_plans(50, seed=2024)
        assert {p.case for p in plans} == {Case.CASE1, Case.CASE2}
        worst = 1.0
        for i, plan in enumerate(plans):
            dep = deploy(plan)
            assert len(dep.sensors) == plan.n
            centers = [s.pos for s in dep.sensors if s.role is not Role.RESTING]
            frac = coverage_fraction(centers, plan.spec.r, plan.field, sample_seed=i, samples=10**6)
            worst = min(worst, frac)
            assert frac >= 0.99, (plan, frac)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30, f"took {elapsed:.1f}s"


def test_c6_case1_tracking_theorem():
    with criterion(6, "Case1 run (50x20, r=5, R=7, 28 sensors, 20 targets, 2000 steps): coverage and continuity 1.0"):
        config = load_scenario(SCENARIOS / "case1.ini")
        assert (config.field, config.spec.r, config.spec.R, config.spec.capacity) == (Rect(50, 20), 5, 7, 5)
        assert (config.target_count, config.steps) == (20, 2000)
        world = init(config)
        assert world.plan.case is Case.CASE1 and len(world.sensors) == 28
        for _ in range(config.steps):
            step(world)
            load = {}
            for rec in world.tracks.values():
                if rec.owner is not None:
                    load[rec.owner] = load.get(rec.owner, 0) + 1
            assert max(load.values(), default=0) <= config.spec.capacity
        m = world.metrics
        bad = [i for i, (f, c) in enumerate(zip(m.in_field, m.coverage_ratio)) if f and c != 1.0]
        assert bad == [], f"coverage < 1 at steps {bad[:5]}"
        assert len(m.continuity) == 20
        assert all(c == 1.0 for c in m.continuity.values())


@pytest.fixture(scope="module")
def case3_world():
    config = load_scenario(SCENARIOS / "case3.ini")
    world = init(config)
    duplicates = []
    bad_handoffs = []
    seen = 0
    for _ in range(config.steps):
        step(world)
        owners = [r.owner for r in world.tracks.values() if r.owner is not None]
        for sid in set(owners):
            if owners.count(sid) != world.tracker.load[sid]:
                duplicates.append(world.step)
        for e in world.events[seen:]:
            if e.kind == "HANDOFF" and e.to_sensor not in world.graph[e.from_sensor]:
                bad_handoffs.append(e)
        seen = len(world.events)
    return world, duplicates, bad_handoffs


def test_c7_case3_handoff_invariants(case3_world):
    world, duplicates, bad_handoffs = case3_world
    with criterion("7a", "Case3 run (50x20, r=2, R=4, 54 sensors): single ownership, neighbour-only handoffs, front continuity 1.0"):
        assert world.plan.case is Case.CASE3 and len(world.sensors) == 54
        assert duplicates == [] and bad_handoffs == []
        assert world.metrics.total_handoffs > 0
        relays = [s.pos.as_tuple() for s in world.sensors if s.role is Role.REAR_RELAY]
        assert connected(range(len(relays)), overlap_edges(relays, 4.0))
        fc = world.metrics.front_continuity
        assert len(fc) == 20 and all(c == 1.0 for c in fc.values())


def test_c7_case3_golden(tmp_path):
    with criterion("7b", "Case3 metrics/events byte-identical to committed golden files"):
        code, out = simulate(tmp_path, "case3")
        assert code == 0
        for name in ("metrics.csv", "events.csv"):
            assert (out / name).read_bytes() == (GOLDEN / "case3" / name).read_bytes(), name


def test_c7_case3_mean_continuity(case3_world):
    world, _, _ = case3_world
    m = world.metrics
    with criterion("7c", "Case3 mean overall continuity >= 0.9"):
        assert m.mean_continuity >= 0.9, f"mean continuity {m.mean_continuity:.4f} < 0.9"


@pytest.mark.parametrize(
    "r,R,n",
    [(1.0, 1.2, 10), (0.5, 0.6, 20), (1.0, 1.5, 4), (2.0, 2.1, 30)],
)
def test_c8_case4_refusal(tmp_path, capsys, r, R, n):
    with criterion(8, f"Case4 config (r={r}, R={R}, n={n}) exits 3 with no output files"):
        assert plan_for(Rect(50, 20), SensorSpec(r, R), n).case is Case.CASE4
        cfg = tmp_path / "c4.ini"
        cfg.write_text(
            f"[scenario]\nlength = 50\nbreadth = 20\nprimary_radius = {r}\n"
            f"secondary_radius = {R}\nsensor_count = {n}\nsteps = 10\n"
        )
        out = tmp_path / "out"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 3
        assert "tracking will not be possible" in capsys.readouterr().err
        assert not out.exists()


@pytest.mark.parametrize("name", ["case1", "case3"])
def test_c9_determinism(tmp_path, name):
    with criterion(9, f"{name}: repeat runs byte-identical, 1 vs 4 workers"):
        code_a, a = simulate(tmp_path, name)
        code_b, b = simulate(tmp_path, name, "--workers", "4")
        assert code_a == code_b == 0
        for f in ("metrics.csv", "events.csv"):
            assert (a / f).read_bytes() == (b / f).read_bytes(), f
        if name == "case1":
            assert (a / "metrics.csv").read_bytes() == (GOLDEN / "case1" / "metrics.csv").read_bytes()


def test_c10_boids_fuzz():
    with criterion(10, "boids 10,000-step fuzz: speed bound, lateral containment, lone-target progress, ring fixpoint"):
        rng = np.random.default_rng(10)
        field = Rect(5000.0, 20.0)
        for trial in range(3):
            sep = float(rng.uniform(0.5, 1.5))
            params = FlockParams(
                neighbor_radius=float(rng.uniform(sep, 8)),
                sep_radius=sep,
                w_cohesion=float(rng.uniform(0, 2)),
                w_alignment=float(rng.uniform(0, 2)),
                w_separation=float(rng.uniform(0, 3)),
                w_drift=float(rng.uniform(0.1, 1)),
                v_cruise=1.0,
                v_max=float(rng.uniform(1.0, 3.0)),
            )
            targets = spawn_wave(rng, 25, field, params)
            for _ in range(10_000):
                targets = flock_step(targets, params, field, 0.1)
                for t in targets:
                    assert t.vel.norm() <= params.v_max * (1 + 1e-12)
                    if t.alive:
                        assert 0.0 <= t.pos.y <= field.breadth

        params = FlockParams()
        lone = spawn_wave(np.random.default_rng(1), 1, Rect(20_000.0, 20.0), params)
        x = lone[0].pos.x
        for _ in range(10_000):
            lone = flock_step(lone, params, Rect(20_000.0, 20.0), 0.1)
            assert lone[0].pos.x > x
            x = lone[0].pos.x

        coh = FlockParams(w_cohesion=1.0, w_alignment=0.0, w_separation=0.0, w_drift=0.0)
        c = np.array([25.0, 10.0])
        ring = [
            Target(i, Vec2(c[0] + 2 * math.cos(2 * math.pi * i / 12), c[1] + 2 * math.sin(2 * math.pi * i / 12)), Vec2(0, 0))
            for i in range(12)
        ]
        before = np.mean([t.pos.as_tuple() for t in ring], axis=0)
        after = np.mean([t.pos.as_tuple() for t in flock_step(ring, coh, Rect(50, 20), 0.1)], axis=0)
        assert np.max(np.abs(after - before)) <= 1e-12
