"""Exit criteria; run ``pytest tests/test_acceptance.py`` for the summary table."""

import subprocess
import sys
import time

import numpy as np

from hafkit import cli, gbs
from hafkit.gbs import build_covariance, check_encodable, covariance_residual
from hafkit.hafper import (
    BlockMatrix,
    assemble,
    hafnian,
    hafnian_block,
    hafnian_naive,
    permanent_naive,
    permanent_ryser,
)
from hafkit.matrixio import dumps_matrix, loads_matrix, write_matrix
from hafkit.verify import (
    InstanceGenerator,
    gen_hermitian,
    gen_psd,
    gen_symmetric,
    verify_block_formula,
    verify_induced_suite,
    verify_monotonicity,
    verify_nonnegativity,
    verify_schur,
)

SEED = 2026


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def test_c01_hafnian_oracle_equivalence(criterion):
    worst = 0.0
    start = time.perf_counter()
    for order in (2, 4, 6, 8):
        for t in range(100):
            a = gen_symmetric(InstanceGenerator(SEED, order, stream=1000 * order + t))
            worst = max(worst, _rel(hafnian(a), hafnian_naive(a)))
    elapsed = time.perf_counter() - start
    ok = criterion(1, worst <= 1e-10 and elapsed < 10.0,
                   f"max rel dev {worst:.2e} (<= 1e-10), {elapsed:.2f} s (< 10 s)")
    assert ok


def test_c02_permanent_oracle_equivalence(criterion):
    worst = 0.0
    for order in range(1, 9):
        for t in range(100):
            g = InstanceGenerator(SEED, order, stream=2000 * order + t)
            b = g.complex_gaussian((order, order))
            worst = max(worst, _rel(permanent_ryser(b), permanent_naive(b)))
    assert criterion(2, worst <= 1e-10, f"max rel dev {worst:.2e} (<= 1e-10)")


def test_c03_block_decomposition_identity(criterion):
    rep = verify_block_formula(200, 5, seed=SEED)
    assert criterion(3, rep.failures == 0 and rep.trials == 200,
                     f"{rep.failures}/{rep.trials} failures, worst {rep.worst_violation:.2e} (tol 1e-10)")


def test_c04_nonnegativity(criterion):
    rep = verify_nonnegativity(1000, 5, seed=SEED)
    frac = rep.singular_trials / rep.trials
    assert criterion(4, rep.failures == 0 and frac >= 0.2,
                     f"{rep.failures}/{rep.trials} failures (200 per M in 1..5), "
                     f"singular B {frac:.0%}, worst {rep.worst_violation:.2e}")


def test_c05_monotonicity(criterion):
    rep = verify_monotonicity(200, 4, seed=SEED)
    assert criterion(5, rep.failures == 0 and rep.trials == 200,
                     f"{rep.failures}/{rep.trials} failures, worst {rep.worst_violation:.2e}")


def test_c06_induced_suite(criterion):
    ident, mult, psd, loew = verify_induced_suite(100, seed=SEED)
    ok = (ident.failures == 0 and ident.worst_violation <= 1e-12
          and mult.failures == 0 and mult.worst_violation <= 1e-9
          and psd.failures == 0 and loew.failures == 0)
    assert criterion(6, ok,
                     f"identity {ident.worst_violation:.1e}, multiplicativity {mult.worst_violation:.1e}, "
                     f"psd {psd.failures}/{psd.trials}, loewner {loew.failures}/{loew.trials} failures")


def test_c07_schur(criterion):
    rep = verify_schur(200, 8, seed=SEED)
    assert criterion(7, rep.failures == 0 and rep.trials == 200,
                     f"{rep.failures}/{rep.trials} failures")


def test_c08_covariance_round_trip(criterion):
    worst_res = 0.0
    min_symp = np.inf
    for t in range(100):
        g = InstanceGenerator(SEED, 1 + t % 5, stream=8000 + t)
        r = assemble(BlockMatrix(gen_symmetric(g), gen_psd(g)))
        rep = check_encodable(r)
        assert rep.encodable
        for frac in (0.5, 0.9):
            c = frac * rep.c_max
            cov = build_covariance(r, c)
            worst_res = max(worst_res, covariance_residual(r, c, cov.sigma))
            min_symp = min(min_symp, float(cov.symplectic_eigenvalues.min()))
    vac = build_covariance(np.zeros((6, 6)), 0.5).sigma
    vac_err = float(np.max(np.abs(vac - 0.5 * np.eye(6))))
    ok = worst_res <= 1e-9 and min_symp >= 0.5 - 1e-9 and vac_err <= 1e-12
    assert criterion(8, ok, f"residual {worst_res:.1e}, min symplectic {min_symp:.6f}, vacuum err {vac_err:.0e}")


def test_c09_performance(criterion):
    a = gen_symmetric(InstanceGenerator(SEED, 16, stream=9))
    start = time.perf_counter()
    hafnian(a)
    t_dense = time.perf_counter() - start
    g = InstanceGenerator(SEED, 8, stream=10)
    ab = BlockMatrix(gen_symmetric(g), gen_hermitian(g))
    start = time.perf_counter()
    hafnian_block(ab)
    t_block = time.perf_counter() - start
    assert criterion(9, t_dense < 5.0 and t_block < 30.0,
                     f"16x16 hafnian {t_dense:.2f} s (< 5 s), block M=8 {t_block:.2f} s (< 30 s)")


def test_c10_file_round_trip(criterion):
    exact = 0
    for t in range(50):
        g = InstanceGenerator(SEED, 1, stream=10_000 + t)
        rows, cols = (int(v) for v in g.rng.integers(1, 7, size=2))
        m = g.complex_gaussian((rows, cols)) * 10.0 ** float(g.rng.integers(-8, 9))
        back = loads_matrix(dumps_matrix(m))
        exact += back.tobytes() == m.tobytes()
    assert criterion(10, exact == 50, f"bit-exact round trip {exact}/50")


def _cli(argv):
    return cli.main([str(a) for a in argv])


def test_c10_exit_codes(criterion, tmp_path, capsys, monkeypatch):
    def mat(name, m):
        p = tmp_path / name
        write_matrix(p, m)
        return p

    swap = mat("swap.json", [[0, 1], [1, 0]])
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    seen = {
        0: _cli(["haf", swap]),
        1: _cli(["encode", mat("neg.json", [[0, -1], [-1, 0]])]),
        2: _cli(["haf", junk]),
        3: _cli(["haf", mat("odd.json", np.eye(3))]),
        4: _cli(["per", "--algorithm", "naive", mat("big.json", np.ones((12, 12)))]),
    }
    monkeypatch.setattr(gbs, "ROUND_TRIP_TOL", -1.0)  # force the numerical-failure path
    seen[5] = _cli(["encode", swap, "--c", 0.5])
    capsys.readouterr()
    ok = all(code == expected for expected, code in seen.items())
    assert criterion(10, ok, "exit codes " + ", ".join(f"{k}->{v}" for k, v in seen.items()))


def test_c10_verify_all(criterion):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "hafkit", "verify", "--suite", "all", "--trials", "200", "--seed", "1"],
        capture_output=True, text=True,
    )
    elapsed = time.perf_counter() - start
    lines = proc.stdout.splitlines()
    ok = proc.returncode == 0 and elapsed < 60.0 and len(lines) == 8 and all(" failures=0 " in l for l in lines)
    assert criterion(10, ok, f"verify --suite all exit {proc.returncode} in {elapsed:.1f} s (< 60 s)"), proc.stdout
