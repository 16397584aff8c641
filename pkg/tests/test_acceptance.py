"""Acceptance gate: every primary criterion at its stated tolerance.

Run with `pytest -s tests/test_acceptance.py` to see one PASS/FAIL line per
criterion.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np

from conftest import random_spd
from localbiplots import (
    EuclideanDistance,
    FunctionDistance,
    GeneralizedEuclideanDistance,
    GeneralizedForm,
    LbMode,
    ManhattanDistance,
    SimulationConfig,
    UnweightedUnifracDistance,
    WeightedUnifracDistance,
    align_column_signs,
    classical_mds,
    correlation_biplot,
    cosine_similarity,
    double_center,
    double_poisson_pmf,
    double_poisson_sample,
    embed_supplemental,
    gpca,
    lb_axes,
    lb_constancy,
    lb_field,
    simulate,
    squared_distance_matrix,
    tree_covariance_q,
)


def report(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def centered(rng, n, p):
    X = rng.normal(size=(n, p))
    return X - X.mean(axis=0)


def silhouette_1d(values, labels):
    vals = np.asarray(values, dtype=float)
    labels = np.asarray(labels)
    scores = []
    for i in range(len(vals)):
        same = vals[labels == labels[i]]
        other = vals[labels != labels[i]]
        a = np.abs(same - vals[i]).sum() / max(len(same) - 1, 1)
        b = np.abs(other - vals[i]).mean()
        scores.append((b - a) / max(a, b))
    return float(np.mean(scores))


def test_euclidean_axes_equal_pca_loadings():
    """Euclidean LB axes equal SVD right vectors, 20 random X, 10 z each."""
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(10, 51))
        p = int(rng.integers(3, 11))
        k = min(3, p - 1)
        X = centered(rng, n, p)
        dist = EuclideanDistance()
        sol = classical_mds(squared_distance_matrix(dist, X), k)
        _, _, Vt = np.linalg.svd(X, full_matrices=False)
        V = Vt.T[:, :k]
        for _ in range(10):
            z = rng.normal(size=p)
            axes = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
            worst = max(worst, float(np.abs(align_column_signs(axes, V) - V).max()))
    elapsed = time.perf_counter() - start
    report(
        "Euclidean duality: LB axes = SVD right vectors (<=1e-8, <5s)",
        worst <= 1e-8 and elapsed < 5.0,
        f"max dev {worst:.2e}, {elapsed:.2f}s",
    )


def test_gram_identity_generalized_distance():
    """-1/2 C Delta C' = X Q X' for 20 random centered X and SPD Q."""
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(8, 25))
        p = int(rng.integers(3, 9))
        X = centered(rng, n, p)
        q = random_spd(rng, p)
        delta = squared_distance_matrix(GeneralizedEuclideanDistance(GeneralizedForm(q)), X)
        g = double_center(delta)
        ref = X @ q @ X.T
        worst = max(worst, float(np.linalg.norm(g - ref) / np.linalg.norm(ref)))
    report("Double centering: -1/2 C Delta C' = XQX' (rel Frobenius <=1e-10)", worst <= 1e-10,
           f"worst rel err {worst:.2e}")


def test_gpca_defining_identities():
    """gPCA satisfies X'DXQV = V Lambda and V'QV = I on 50 random triples."""
    rng = np.random.default_rng(103)
    worst_eig = 0.0
    worst_orth = 0.0
    for _ in range(50):
        n = int(rng.integers(6, 16))
        p = int(rng.integers(3, 9))
        X = rng.normal(size=(n, p))
        q = random_spd(rng, p)
        d = random_spd(rng, n)
        k = min(p, n) - 1
        sol = gpca(X, q, d=d, k=k, center=False)
        resid = X.T @ d @ X @ q @ sol.v - sol.v * sol.lam
        worst_eig = max(worst_eig, float(np.abs(resid).max() / max(1.0, sol.lam[0])))
        worst_orth = max(worst_orth, float(np.abs(sol.v.T @ q @ sol.v - np.eye(k)).max()))
    report("gPCA: X'DXQV = V Lambda and V'QV = I (<=1e-8, 50 triples)",
           worst_eig <= 1e-8 and worst_orth <= 1e-8,
           f"eig resid {worst_eig:.2e}, orth resid {worst_orth:.2e}")


def test_generalized_axes_equal_qv():
    """Generalized-Euclidean LB axes equal QV and are constant in z."""
    rng = np.random.default_rng(104)
    worst = 0.0
    worst_const = 0.0
    for _ in range(5):
        X = centered(rng, 12, 5)
        q = random_spd(rng, 5)
        dist = GeneralizedEuclideanDistance(GeneralizedForm(q))
        sol = classical_mds(squared_distance_matrix(dist, X), 3)
        qv = q @ gpca(X, q, k=3, center=False).v
        field = lb_field(sol, X, dist, [rng.normal(size=5) for _ in range(10)],
                         LbMode("analytic"))
        worst_const = max(worst_const, lb_constancy(field))
        for m in field.successful():
            worst = max(worst, float(np.abs(align_column_signs(m.axes, qv) - qv).max()))
    report("Generalized duality: LB = QV and constant across z (<=1e-8)",
           worst <= 1e-8 and worst_const <= 1e-8,
           f"max dev {worst:.2e}, constancy {worst_const:.2e}")


def test_interpolation_identity():
    """f(sum alpha_j e_j) = p c - (p-1) f(0) for sqrt-Manhattan and Euclidean."""
    rng = np.random.default_rng(105)
    dists = [
        FunctionDistance(lambda x, y: float(np.sqrt(np.abs(x - y).sum())),
                         kind="sqrt_manhattan"),
        EuclideanDistance(),
    ]
    worst = 0.0
    for dist in dists:
        X = centered(rng, 10, 6)
        sol = classical_mds(squared_distance_matrix(dist, X), 2)
        p = 6
        basis = np.eye(p)
        f0 = embed_supplemental(sol, X, dist, np.zeros(p))
        for _ in range(20):
            alpha = rng.normal(size=p)
            pj = np.array([embed_supplemental(sol, X, dist, alpha[j] * basis[j])
                           for j in range(p)])
            c = pj.mean(axis=0)
            lhs = embed_supplemental(sol, X, dist, alpha)
            worst = max(worst, float(np.abs(lhs - (p * c - (p - 1) * f0)).max()))
    report("Interpolation: f(sum a_j e_j) = p c - (p-1) f(0) (<=1e-8, 2 distances)",
           worst <= 1e-8, f"max dev {worst:.2e}")


def test_centroid_identity():
    """f(z) = sum_j z_j (QV)'_j for a generalized Euclidean distance."""
    rng = np.random.default_rng(106)
    X = centered(rng, 12, 5)
    q = random_spd(rng, 5)
    dist = GeneralizedEuclideanDistance(GeneralizedForm(q))
    sol = classical_mds(squared_distance_matrix(dist, X), 3)
    lb = lb_axes(sol, X, dist, np.zeros(5), LbMode("analytic")).axes
    worst = 0.0
    for _ in range(20):
        z = rng.normal(size=5)
        f = embed_supplemental(sol, X, dist, z)
        worst = max(worst, float(np.abs(f - lb.T @ z).max()))
    report("Centroid identity: f(z) = sum_j z_j LB_j (<=1e-8, 20 z)", worst <= 1e-8,
           f"max dev {worst:.2e}")


def test_gower_reembedding_all_kinds():
    """embed_supplemental(x_i) recovers row i for all five distance kinds."""
    ds = simulate(SimulationConfig())
    X = ds.data.astype(float)
    q = tree_covariance_q(ds.tree, 0.5)
    kinds = [
        ("euclidean", EuclideanDistance(), 2),
        ("generalized_euclidean", GeneralizedEuclideanDistance(q), 2),
        ("manhattan", ManhattanDistance(), 2),
        ("weighted_unifrac", WeightedUnifracDistance(ds.tree), 2),
        ("unweighted_unifrac", UnweightedUnifracDistance(ds.tree), 1),
    ]
    worst = 0.0
    for _, dist, k in kinds:
        sol = classical_mds(squared_distance_matrix(dist, X), k)
        for i in range(X.shape[0]):
            f = embed_supplemental(sol, X, dist, X[i])
            ref = sol.m_embed[i]
            worst = max(worst, float(np.linalg.norm(f - ref) / (1 + np.linalg.norm(ref))))
    report("Gower re-embedding: five kinds on the simulated dataset (<=1e-8)",
           worst <= 1e-8, f"worst rel err {worst:.2e}")


def test_eps_axes_converge_to_analytic():
    """One-sided eps axes converge to the analytic matrix at slope >= 0.9."""
    rng = np.random.default_rng(108)
    X = centered(rng, 14, 6)
    dist = EuclideanDistance()
    sol = classical_mds(squared_distance_matrix(dist, X), 3)
    epsilons = np.array([1e-2, 1e-3, 1e-4])
    slopes = []
    bounded = True
    for variant in ("eps_positive", "eps_negative"):
        errs = []
        for _ in range(5):
            z = rng.normal(size=6)
            ana = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
            errs.append([
                float(np.linalg.norm(
                    lb_axes(sol, X, dist, z, LbMode(variant, epsilon=e)).axes - ana
                ))
                for e in epsilons
            ])
        mean_err = np.mean(errs, axis=0)
        slope = float(np.polyfit(np.log(epsilons), np.log(mean_err), 1)[0])
        slopes.append(slope)
        # C from the largest eps bounds the rest: err <= C * eps.
        c = mean_err[0] / epsilons[0]
        bounded = bounded and bool(np.all(mean_err <= 1.05 * c * epsilons))
    report("One-sided eps axes: ||LB^eps - LB|| = O(eps), slope >= 0.9",
           all(s >= 0.9 for s in slopes) and bounded,
           f"slopes {[round(s, 3) for s in slopes]}")


def test_simulated_dataset_qualitative():
    """Group separation, LB sign partitions, correlation-vs-LB contrast."""
    start = time.perf_counter()
    ds = simulate(SimulationConfig())
    X = ds.data.astype(float)
    manhattan = ManhattanDistance()
    wunifrac = WeightedUnifracDistance(ds.tree)

    sols = {}
    fields = {}
    for name, dist in (("manhattan", manhattan), ("wunifrac", wunifrac)):
        sol = classical_mds(squared_distance_matrix(dist, X), 2)
        field = lb_field(sol, X, dist, [X[i] for i in range(X.shape[0])],
                         LbMode("positive"))
        assert field.ok
        sols[name] = sol
        fields[name] = field

    # (a) axis-1 group separation.
    sil = {name: silhouette_1d(sol.m_embed[:, 0], ds.group) for name, sol in sols.items()}
    ok_a = all(s > 0.5 for s in sil.values())

    # (b) first-axis sign pattern vs the shallow/deep partitions.  A variable
    # matches when its majority sign across the sample points (one global
    # flip allowed) equals the partition sign; the flipped minority entries
    # are the near-zero axis values.
    def sign_agreement(field, partition):
        first = np.stack([m.axes[:, 0] for m in field.successful()])
        want = np.where(partition == 1, 1.0, -1.0)
        majority = np.sign(np.sign(first).sum(axis=0))
        agree = float(np.mean(majority == want))
        return max(agree, 1.0 - agree)

    agree_man = sign_agreement(fields["manhattan"], ds.shallow)
    agree_wuf = sign_agreement(fields["wunifrac"], ds.deep)
    ok_b = agree_man >= 0.95 and agree_wuf >= 0.95

    # (c) correlation biplots agree across distances while LB axes differ.
    corr_m = correlation_biplot(X, sols["manhattan"]).matrix
    corr_w = correlation_biplot(X, sols["wunifrac"]).matrix
    corr_cos = cosine_similarity(corr_m, align_column_signs(corr_w, corr_m))
    lb_m = np.mean([m.axes for m in fields["manhattan"].successful()], axis=0)
    lb_w = np.mean([m.axes for m in fields["wunifrac"].successful()], axis=0)
    lb_cos = cosine_similarity(lb_m, align_column_signs(lb_w, lb_m))
    ok_c = corr_cos > 0.9 and abs(lb_cos) < 0.5

    elapsed = time.perf_counter() - start
    report(
        "Simulated dataset: separation, sign partitions, corr-vs-LB (<60s)",
        ok_a and ok_b and ok_c and elapsed < 60.0,
        f"sil {sil['manhattan']:.2f}/{sil['wunifrac']:.2f}, "
        f"signs {agree_man:.0%}/{agree_wuf:.0%}, "
        f"corr cos {corr_cos:.3f}, lb cos {lb_cos:.3f}, {elapsed:.1f}s",
    )


def test_double_poisson_sampler():
    """s=1 pmf is Poisson to 1e-10 on {0..50}; empirical mean within 3 SE."""
    worst = 0.0
    for mu in (0.5, 2.0, 5.0, 12.0):
        pmf = double_poisson_pmf(mu, 1.0)
        for y in range(51):
            ours = pmf[y] if y < len(pmf) else 0.0
            ref = math.exp(-mu + y * math.log(mu) - math.lgamma(y + 1))
            worst = max(worst, abs(ours - ref))
    pmf = double_poisson_pmf(5.0, 2.0)
    y = np.arange(len(pmf))
    mean = float(y @ pmf)
    sd = math.sqrt(float((y - mean) ** 2 @ pmf))
    rng = np.random.default_rng(109)
    n = 100_000
    draws = np.fromiter(
        (double_poisson_sample(5.0, 2.0, rng) for _ in range(n)), dtype=np.int64, count=n
    )
    dev = abs(float(draws.mean()) - mean)
    limit = 3 * sd / math.sqrt(n)
    report("Double Poisson: s=1 pmf = Poisson (<=1e-10); mean within 3 SE",
           worst <= 1e-10 and dev <= limit,
           f"pmf dev {worst:.2e}; mean dev {dev:.4f} <= {limit:.4f}")


def test_pipeline_determinism(tmp_path):
    """simulate | mds | lb twice with identical flags: byte-identical bundles."""
    files = ("sim/counts.csv", "sim/tree.nwk", "sim/sidecar.json",
             "mds/bundle.json", "lb/bundle.json")

    def run(*args):
        proc = subprocess.run([sys.executable, "-m", "localbiplots.cli", *args],
                              capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        return proc

    def pipeline():
        run("simulate", "--seed", "7", "--out", str(tmp_path / "sim"))
        run("mds", "--data", str(tmp_path / "sim" / "counts.csv"),
            "--distance", "manhattan", "--k", "2", "--out", str(tmp_path / "mds"))
        run("lb", "--data", str(tmp_path / "sim" / "counts.csv"),
            "--distance", "manhattan", "--k", "2", "--mode", "positive",
            "--out", str(tmp_path / "lb"))
        return {rel: (tmp_path / rel).read_bytes() for rel in files}

    first = pipeline()
    second = pipeline()
    identical = all(first[rel] == second[rel] for rel in files)
    # Ensure the lb bundle actually carries content worth comparing.
    lb_bundle = json.loads(first["lb/bundle.json"])
    report("Pipeline determinism: byte-identical bundles across reruns",
           identical and len(lb_bundle["lb"]) == 20,
           f"{len(files)} files compared")
