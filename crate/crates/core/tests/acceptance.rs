//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use proxknap::cli::{bench, generate, GenKind, GenParams, Suite, BENCH_WIDTHS};
use proxknap::convolution::SumsMode;
use proxknap::derandomize::{balls_and_bins, lg, set_balancing, PairwiseHash, SetSystem};
use proxknap::knapsack::extend::{ExtendContext, SetTable, WeakExtendInstance};
use proxknap::knapsack::profile::ConcaveProfile;
use proxknap::knapsack::singleton::singleton_extend;
use proxknap::knapsack::tiebreak::{break_ties, maximal_prefix};
use proxknap::oracles::{bellman_dp, bitset_subset_sums, brute_force_knapsack, naive_row_maxima, proximity_check};
use proxknap::smawk::{smawk_compact, Counted, FnMatrix};
use proxknap::stats::Stats;
use proxknap::subset_sum::{
    algorithm1_trace, binary_bundle, bundle_exponents, reduce_subset_sum, solve_subset_sum, Reduction,
    SubsetSumOptions,
};
use proxknap::{
    solve_01_knapsack, validate, AdjustedProfit, KnapsackAlgo, KnapsackInstance, KnapsackOptions,
    Score, SubsetSumInstance,
};

const C: u32 = 4;

fn forced() -> KnapsackOptions {
    KnapsackOptions {
        algo: KnapsackAlgo::Proximity,
        proximity_c: C,
    }
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn knapsack_case(rng: &mut ChaCha8Rng, max_n: usize, max_w: i64, max_t: i64, dense: bool) -> KnapsackInstance {
    let params = GenParams {
        kind: if dense { GenKind::AdversarialDense } else { GenKind::Knapsack },
        n: rng.gen_range(0..=max_n),
        w_max: rng.gen_range(1..=max_w),
        p_max: rng.gen_range(0..=100),
        t: Some(rng.gen_range(0..=max_t)),
        t_ratio: 0.5,
        seed: rng.gen(),
    };
    generate(&params).unwrap().as_knapsack()
}

fn c1_brute_force() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..10_000 {
        let inst = knapsack_case(&mut rng, 16, 30, 200, false);
        let want = brute_force_knapsack(&inst).unwrap().0;
        let got = solve_01_knapsack(&inst, &forced()).unwrap();
        if got.value != want || inst.weight_of(&got.selection) > inst.capacity {
            return Verdict { ok: false, detail: format!("instance {k}: {} vs {want}", got.value) };
        }
    }
    Verdict { ok: true, detail: "10000/10000 equal to brute force".into() }
}

/// Suite shared by criteria 2 and 4.
fn suite2() -> Vec<KnapsackInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..10_000).map(|k| knapsack_case(&mut rng, 50, 25, 600, k % 4 == 3)).collect()
}

fn c2_bellman(cases: &[KnapsackInstance]) -> Verdict {
    for (k, inst) in cases.iter().enumerate() {
        let want = bellman_dp(inst).unwrap().value();
        let got = solve_01_knapsack(inst, &forced()).unwrap();
        if got.value != want || inst.weight_of(&got.selection) > inst.capacity {
            return Verdict { ok: false, detail: format!("instance {k}: {} vs {want}", got.value) };
        }
    }
    Verdict { ok: true, detail: format!("{0}/{0} equal to the capacity DP (1/4 adversarial-dense)", cases.len()) }
}

fn c3_subset_sum() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..10_000 {
        let n = rng.gen_range(0..=60);
        let w = rng.gen_range(1..=40);
        let elems: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=w)).collect();
        let total: i64 = elems.iter().sum();
        let t = rng.gen_range(0..=total + 5);
        let inst = SubsetSumInstance::new(t, elems.clone());
        let reach = bitset_subset_sums(&elems, t).unwrap();
        let want = reach.iter().rposition(|&b| b).unwrap() as i64;
        let mode = if k % 2 == 0 { SumsMode::Deterministic } else { SumsMode::Randomized { seed: k } };
        let got = solve_subset_sum(&inst, &SubsetSumOptions { proximity_c: C, mode }).unwrap();
        if (got.value, got.decision) != (want, want == t) {
            return Verdict { ok: false, detail: format!("instance {k}: {:?} vs {want}", (got.value, got.decision)) };
        }
    }
    Verdict { ok: true, detail: "10000/10000 equal to the bitset oracle (half randomized backend)".into() }
}

fn c4_proximity(cases: &[KnapsackInstance]) -> Verdict {
    let (mut max_l1, mut max_l0) = (0.0f64, 0.0f64);
    for (k, inst) in cases.iter().enumerate() {
        let norm = validate(inst).unwrap();
        if norm.trivial_all || norm.is_empty() {
            continue;
        }
        let w = norm.w_max() as f64;
        let prefix = maximal_prefix(&break_ties(&norm.as_knapsack()));
        let p = norm.to_original(prefix.selection().iter());
        let got = solve_01_knapsack(inst, &forced()).unwrap();
        let (l1, l0) = proximity_check(&p, &got.selection, inst);
        max_l1 = max_l1.max(l1 as f64 / (2.0 * w));
        max_l0 = max_l0.max(l0 as f64 / (2.0 * C as f64 * w.sqrt()));
        if l1 as f64 > 2.0 * w || l0 as f64 > 2.0 * C as f64 * w.sqrt() {
            return Verdict { ok: false, detail: format!("instance {k}: l1 {l1}, l0 {l0}, w_max {w}") };
        }
    }
    Verdict {
        ok: true,
        detail: format!("no violations; worst l1/(2w) = {max_l1:.3}, worst l0/(2C sqrt w) = {max_l0:.3}"),
    }
}

/// `A[i][j] = q[j] + f(i - p[j])` for `i >= p[j]`, with `f` strictly concave.
fn monge_view(rng: &mut ChaCha8Rng, m: usize, n: usize) -> (Vec<i64>, Vec<usize>, Vec<i64>) {
    let mut f = Vec::with_capacity(m + 1);
    let mut acc = 0i64;
    let mut inc = rng.gen_range(0..1_000_000i64);
    for _ in 0..=m {
        f.push(acc);
        acc += inc;
        inc -= rng.gen_range(1..50);
    }
    let mut p: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    p.sort_unstable();
    if rng.gen_bool(0.8) {
        p[0] = 0;
    }
    let q = (0..n).map(|_| rng.gen_range(-1_000_000..1_000_000i64)).collect();
    (f, p, q)
}

fn c5_smawk() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_ratio = 0.0f64;
    let mut check = |m: usize, n: usize, rng: &mut ChaCha8Rng| -> Result<(), String> {
        let (f, p, q) = monge_view(rng, m, n);
        let view = FnMatrix::new(m, n, |i: usize, j: usize| {
            if i < p[j] {
                Score::Bottom
            } else {
                Score::plain((q[j] + f[i - p[j]]) as i128)
            }
        });
        let counted = Counted::new(&view);
        let got = smawk_compact(&counted).map_err(|e| e.to_string())?;
        let ratio = counted.evaluations() as f64 / (n as f64 * (1.0 + (m.div_ceil(n) as f64).log2()));
        worst_ratio = worst_ratio.max(ratio);
        let expanded = got.expand();
        for (i, want) in naive_row_maxima(&view).into_iter().enumerate() {
            if let Some(j) = want {
                if expanded[i] != j {
                    return Err(format!("{m}x{n}: row {i} got {} want {j}", expanded[i]));
                }
            }
        }
        Ok(())
    };
    for _ in 0..10_000 {
        let m = (rng.gen_range(0.0..(512f64).ln()).exp() as usize).clamp(1, 512);
        let n = (rng.gen_range(0.0..(512f64).ln()).exp() as usize).clamp(1, 512);
        if let Err(e) = check(m, n, &mut rng) {
            return Verdict { ok: false, detail: e };
        }
    }
    for _ in 0..10 {
        if let Err(e) = check(100_000, 8, &mut rng) {
            return Verdict { ok: false, detail: e };
        }
    }
    Verdict {
        ok: true,
        detail: format!(
            "10000 views up to 512x512 and 10 of 100000x8 match the naive scan; max evaluations / (n (1 + log2 ceil(m/n))) = {worst_ratio:.2}"
        ),
    }
}

fn c6_singleton_contract() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for k in 0..1_000 {
        let len = rng.gen_range(1..=50usize);
        let u = rng.gen_range(1..=5usize);
        let mut steps: Vec<i64> = (1..=10).collect();
        for s in (1..steps.len()).rev() {
            steps.swap(s, rng.gen_range(0..=s));
        }
        steps.truncate(u);
        let profiles: Vec<ConcaveProfile> = (0..u)
            .map(|_| {
                let items = rng.gen_range(0..6);
                let mut inc = rng.gen_range(-20..40i128);
                let incs: Vec<AdjustedProfit> = (0..items)
                    .map(|_| {
                        let v = inc;
                        inc -= rng.gen_range(1..8);
                        AdjustedProfit::plain(v)
                    })
                    .collect();
                ConcaveProfile::new(&incs, AdjustedProfit::plain(200))
            })
            .collect();
        let ctx = ExtendContext::new(&steps, profiles);
        let mut table = SetTable::new();
        let handles: Vec<u32> = (0..len)
            .map(|_| match rng.gen_range(0..=u) {
                0 => 0,
                key => table.intern(vec![key as u32 - 1]),
            })
            .collect();
        let q: Vec<Score> = (0..len)
            .map(|_| if rng.gen_bool(0.4) { Score::plain(rng.gen_range(-30..30)) } else { Score::Bottom })
            .collect();
        let inst = WeakExtendInstance {
            universe: (0..u as u32).collect(),
            q,
            handles,
            table: Arc::new(table),
        };
        let sol = singleton_extend(&ctx, &inst, &Stats::new()).unwrap();
        if let Err(e) = sol.check(&ctx, &inst) {
            return Verdict { ok: false, detail: format!("instance {k}: {e}") };
        }
        let (best, outside) = enumerate_extensions(&ctx, &inst);
        for i in 0..len {
            if outside[i] {
                continue;
            }
            checked += 1;
            if sol.r[i] != best[i] {
                return Verdict { ok: false, detail: format!("instance {k}, index {i}: {} vs {}", sol.r[i], best[i]) };
            }
        }
    }
    Verdict { ok: true, detail: format!("1000 instances, {checked} obligated indices optimal") }
}

/// Per index: the unconstrained optimum over all sources and all vectors on
/// the universe, and whether some maximizer leaves `S[z]`.
fn enumerate_extensions(ctx: &ExtendContext, inst: &WeakExtendInstance) -> (Vec<Score>, Vec<bool>) {
    let len = inst.len();
    let mut best = vec![Score::Bottom; len];
    let mut outside = vec![false; len];
    let mut per_source = Vec::new();
    for z in 0..len {
        if !inst.q[z].is_finite() {
            continue;
        }
        let span = len - z;
        let set = inst.table.get(inst.handles[z]);
        let mut a = vec![Score::Bottom; span];
        let mut b = vec![Score::Bottom; span];
        a[0] = inst.q[z];
        for &key in &inst.universe {
            let s = ctx.steps[key as usize] as usize;
            let inside = set.contains(&key);
            let mut na = a.clone();
            let mut nb = b.clone();
            for d in 0..span {
                for c in 1..=d / s {
                    let g = ctx.gain(key, c);
                    let from_a = a[d - c * s] + g;
                    let from_b = b[d - c * s] + g;
                    if inside {
                        na[d] = na[d].max(from_a);
                    } else {
                        nb[d] = nb[d].max(from_a);
                    }
                    nb[d] = nb[d].max(from_b);
                }
            }
            a = na;
            b = nb;
        }
        for d in 0..span {
            best[z + d] = best[z + d].max(a[d]).max(b[d]);
        }
        per_source.push((z, b));
    }
    for (z, b) in per_source {
        for (d, v) in b.into_iter().enumerate() {
            if v.is_finite() && v == best[z + d] {
                outside[z + d] = true;
            }
        }
    }
    (best, outside)
}

fn c7_derandomize() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..1_000 {
        let n = rng.gen_range(1..=60);
        let m = rng.gen_range(1..=30);
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| (1..=n).filter(|_| rng.gen_bool(0.3)).collect())
            .collect();
        let system = SetSystem::new(n, sets).unwrap();
        let signs = set_balancing(&system);
        for s in &system.sets {
            let disc: i64 = s.iter().map(|&j| signs[j - 1] as i64).sum();
            if disc.unsigned_abs() as f64 > system.balance_bound(s.len()) {
                return Verdict { ok: false, detail: format!("system {k}: discrepancy {disc} on |S| = {}", s.len()) };
            }
        }
        let b = system.sets.iter().map(Vec::len).max().unwrap_or(0);
        let r = ((b as f64 / lg(m)).ceil() as usize).max(1) * rng.gen_range(1..=3);
        let coloring = balls_and_bins(&system, r).unwrap();
        for s in &system.sets {
            for class in 0..coloring.classes {
                let hit = s.iter().filter(|&&j| coloring.colors[j - 1] == class).count();
                if hit as f64 > coloring.bound {
                    return Verdict { ok: false, detail: format!("system {k}: class {class} meets a set {hit} times, bound {}", coloring.bound) };
                }
            }
        }
    }
    let pairs = [(2u64, 2u64), (4, 2), (4, 4), (8, 2), (8, 8), (16, 4), (16, 16), (32, 8), (32, 32), (64, 16), (64, 64), (128, 32)];
    for &(n, m) in &pairs {
        let count = PairwiseHash::sample(n, m, 0).unwrap().seed_count() as u64;
        let hashes: Vec<Vec<u64>> = (0..count)
            .map(|seed| {
                let h = PairwiseHash::sample(n, m, seed).unwrap();
                (0..n).map(|x| h.eval(x)).collect()
            })
            .collect();
        let expect = count / (m * m);
        for x in 0..n as usize {
            for y in 0..n as usize {
                if x == y {
                    continue;
                }
                let mut cells = vec![0u64; (m * m) as usize];
                for h in &hashes {
                    cells[(h[x] * m + h[y]) as usize] += 1;
                }
                if cells.iter().any(|&c| c != expect) {
                    return Verdict { ok: false, detail: format!("n={n} m={m}: pair ({x},{y}) not uniform") };
                }
            }
        }
    }
    Verdict {
        ok: true,
        detail: "1000 systems within the balancing and class bounds; 12 hash families exactly pairwise independent".into(),
    }
}

fn c8_bundling() -> Verdict {
    for k in 0..=(1u64 << 16) {
        let e = bundle_exponents(k);
        let mut mult = std::collections::HashMap::new();
        for &x in &e {
            *mult.entry(x).or_insert(0) += 1;
        }
        if mult.values().any(|&c| c > 2) {
            return Verdict { ok: false, detail: format!("k = {k}: multiplicity above 2") };
        }
        let words = (k as usize + 1).div_ceil(64);
        let mut bits = vec![0u64; words];
        bits[0] = 1;
        for &x in &e {
            let sh = 1usize << x;
            let (ws, bs) = (sh / 64, sh % 64);
            for w in (0..words).rev() {
                let mut v = 0;
                if w >= ws {
                    v = bits[w - ws] << bs;
                    if bs > 0 && w > ws {
                        v |= bits[w - ws - 1] >> (64 - bs);
                    }
                }
                bits[w] |= v;
            }
        }
        let total = e.iter().map(|&x| 1u64 << x).sum::<u64>();
        let full = (0..=k as usize).all(|v| bits[v / 64] >> (v % 64) & 1 == 1);
        if !full || total != k {
            return Verdict { ok: false, detail: format!("k = {k}: sums are not exactly 0..={k}") };
        }
    }
    Verdict { ok: true, detail: "k = 0..=65536 exhaustively".into() }
}

fn c9_layer_invariant() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut members = 0usize;
    for k in 0..1_000 {
        let n = rng.gen_range(1..=20);
        let w = rng.gen_range(1..=15);
        let elems: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=w)).collect();
        let total: i64 = elems.iter().sum();
        let t = rng.gen_range(0..=total);
        let r = match reduce_subset_sum(&SubsetSumInstance::new(t, elems)).unwrap() {
            Reduction::Residual(r) => r,
            Reduction::TrivialAll { .. } => continue,
        };
        let layers = binary_bundle(&r.z, r.w_max);
        let trace = algorithm1_trace(&layers, r.w_max, C, SumsMode::Deterministic, &Stats::new()).unwrap();
        for (beta, set) in trace.iter().enumerate().take(layers.ell() + 1) {
            // Signed sums of the layers at scale beta and above, in units of 2^beta.
            let mut reach: BTreeSet<i64> = BTreeSet::from([0]);
            for (e, layer) in layers.layers.iter().enumerate().skip(beta) {
                for &v in layer {
                    let d = v << (e - beta);
                    let next: Vec<i64> = reach.iter().map(|&s| s + d).collect();
                    reach.extend(next);
                }
            }
            for s in set.iter() {
                members += 1;
                if !reach.contains(&s) {
                    return Verdict { ok: false, detail: format!("instance {k}: {s} in S_{beta} is not attainable") };
                }
            }
        }
    }
    Verdict { ok: true, detail: format!("1000 instances, {members} layer members all attainable") }
}

fn c10_report() -> Verdict {
    let mut detail = String::from("gated by criteria 1-9; scaling report (not gated):");
    match bench(Suite::KnapsackScaling, &BENCH_WIDTHS) {
        Ok(csv) => {
            for line in csv.lines() {
                detail.push_str("\n    ");
                detail.push_str(line);
            }
        }
        Err(e) => detail.push_str(&format!(" bench failed: {e}")),
    }
    Verdict { ok: true, detail }
}

fn main() {
    let start = Instant::now();
    let cases = suite2();
    let mut failed = 0;
    let mut report = |id: &str, v: Verdict| {
        if !v.ok {
            failed += 1;
        }
        println!("{} criterion {id}: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
    };
    report("1 (knapsack vs brute force)", c1_brute_force());
    report("2 (knapsack vs capacity DP)", c2_bellman(&cases));
    report("3 (subset sum vs bitset)", c3_subset_sum());
    report("4 (proximity bounds)", c4_proximity(&cases));
    report("5 (SMAWK vs naive)", c5_smawk());
    report("6 (singleton extension contract)", c6_singleton_contract());
    report("7 (derandomization bounds)", c7_derandomize());
    report("8 (binary bundling)", c8_bundling());
    report("9 (layer sums attainable)", c9_layer_invariant());
    report("10 (scaling)", c10_report());
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
