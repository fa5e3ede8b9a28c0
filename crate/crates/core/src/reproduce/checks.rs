use super::{Outcome, Reproduction, Scale, Status};
use crate::certify::{
    certify_three_ev_tournament, certify_two_ev, certify_two_ev_exact, certify_two_ev_float,
    check_s_bound, is_cospectral_with_complete, EigenValue, ExactValue, Method,
};
use crate::constructions::{
    fixture_unchecked, huang_oriented_hypercube, paley_skew_hadamard, regular_tournament_5,
    signed_to_oriented, skew_hadamard_from_tournament, tournament_from_skew_hadamard,
};
use crate::cyclotomic::{build_float_h, Order, RootOfUnity};
use crate::graph::{are_isomorphic, MixedGraph, Relation, Sign, SignedGraph, SimpleGraph};
use crate::search::{
    connected_graphs_up_to_iso, scan_small_oriented_graphs, search_mixed_orientations,
    search_orientations, search_signings, Filter, SearchOptions, SearchReport,
};
use crate::spectra::{
    hermitian_eigensystem, hermitian_eigenvalues, interlaces, ComplexMatrix, Spectrum,
    DEFAULT_CLUSTER_TOL,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::error::Error;
use std::time::Instant;

type CheckResult = Result<Outcome, Box<dyn Error>>;

fn outcome(ok: bool, detail: impl Into<String>) -> CheckResult {
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
        artifacts: Vec::new(),
    })
}

fn skipped(detail: &str) -> CheckResult {
    Ok(Outcome {
        status: Status::Skipped,
        detail: detail.into(),
        artifacts: Vec::new(),
    })
}

fn int(v: i64) -> EigenValue {
    EigenValue::Exact(ExactValue::Int(v))
}

fn surd(r: u64, negative: bool) -> EigenValue {
    EigenValue::Exact(ExactValue::sqrt(r, negative))
}

pub(crate) const SIGNED_CORPUS: usize = 200;
pub(crate) const INTERLACING_CORPUS: usize = 1000;

impl Reproduction {
    pub(super) fn dispatch(&mut self, id: &str) -> CheckResult {
        match id {
            "1" => self.extremal_fixtures(),
            "2a" => self.k33_uniqueness(),
            "2b" => self.k55_uniqueness(),
            "3" => self.tournament_five(),
            "4a" => self.mixed_c4(),
            "4b" => self.mixed_cube(),
            "4c" => self.complete_graphs(),
            "5" => self.paley_tournaments(),
            "6" => self.hadamard_round_trip(),
            "7a" => self.k6_orientations(),
            "7b" => self.k6_signings(),
            "8a" => self.signed_transform(),
            "8b" => self.hypercubes(),
            "9" => self.s_bound(),
            "10" => self.small_graphs(),
            "11a" => self.interlacing(),
            "11b" => self.eigensolver_identities(),
            "11c" => self.exact_float_agreement(),
            _ => unreachable!("ids come from CHECKS"),
        }
    }

    fn fixture(&self, name: &str) -> Result<MixedGraph, Box<dyn Error>> {
        match self.overrides.get(name) {
            Some(g) => Ok(g.clone()),
            None => Ok(fixture_unchecked(name)?.graph),
        }
    }

    fn options(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            ..SearchOptions::default()
        }
    }

    fn write_hits(&self, id: &str, report: &SearchReport) -> Result<Vec<String>, Box<dyn Error>> {
        let Some(dir) = &self.artifacts_dir else {
            return Ok(Vec::new());
        };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{id}-hits.txt"));
        let mut body: String = report.hits.iter().map(|h| format!("{}\n", h.encoding)).collect();
        if body.is_empty() {
            body.push_str("# no hits\n");
        }
        std::fs::write(&path, body)?;
        Ok(vec![path.display().to_string()])
    }

    fn record_hits(&mut self, id: &'static str, report: &SearchReport) {
        let hits = report
            .hits
            .iter()
            .filter_map(|h| Some((h.mixed()?.clone(), h.certificate.clone()?)))
            .collect();
        self.hits6.insert(id, hits);
    }

    fn search_outcome(
        &mut self,
        id: &'static str,
        report: SearchReport,
        ok: bool,
        detail: String,
    ) -> CheckResult {
        let artifacts = self.write_hits(id, &report)?;
        if report.k == 6 {
            self.record_hits(id, &report);
        }
        self.searches.insert(id, report);
        let mut o = outcome(ok, detail)?;
        o.artifacts = artifacts;
        Ok(o)
    }

    fn extremal_fixtures(&mut self) -> CheckResult {
        let start = Instant::now();
        let cases = [
            ("directed-edge", int(1), int(-1), (1, 1)),
            ("directed-triangle", int(1), int(-2), (2, 1)),
            ("oriented-K33", surd(3, false), surd(3, true), (3, 3)),
            ("oriented-K55-M", int(2), int(-2), (5, 5)),
        ];
        let mut failures = Vec::new();
        let mut hits = Vec::new();
        for (name, r, s, mult) in cases {
            let g = self.fixture(name)?;
            let c = certify_two_ev(&g, 6)?;
            let ok = c.verdict
                && c.method == Method::ExactIdentity
                && c.tol.is_none()
                && c.pair == Some((r, s))
                && c.multiplicities == Some(mult);
            if !ok {
                failures.push(format!("{name}: got {:?} {:?} ({:?})", c.pair, c.multiplicities, c.failure_reason));
            }
            if c.verdict {
                hits.push((g, c));
            }
        }
        self.hits6.insert("1", hits);
        let secs = start.elapsed().as_secs_f64();
        if secs >= 1.0 {
            failures.push(format!("took {secs:.3} s, limit 1 s"));
        }
        let detail = if failures.is_empty() {
            format!("pairs (1,-1), (1,-2), (sqrt3,-sqrt3), (2,-2) in {secs:.3} s")
        } else {
            failures.join("; ")
        };
        outcome(failures.is_empty(), detail)
    }

    fn uniqueness(
        &mut self,
        id: &'static str,
        g: &SimpleGraph,
        fixture: &str,
        expected_space: u64,
        opts: &SearchOptions,
        limit_secs: Option<f64>,
    ) -> CheckResult {
        let fixture = self.fixture(fixture)?;
        let start = Instant::now();
        let r = search_orientations(g, 6, Filter::TwoEv, opts)?;
        let secs = start.elapsed().as_secs_f64();
        let all_fixture = r
            .hits
            .iter()
            .all(|h| h.mixed().is_some_and(|m| are_isomorphic(m, &fixture)));
        let in_time = limit_secs.is_none_or(|l| secs < l);
        let ok = r.space_size == expected_space
            && !r.hits.is_empty()
            && r.hits_up_to_iso.len() == 1
            && all_fixture
            && in_time;
        let detail = format!(
            "{} of {} orientations are hits, {} class(es), {} the fixture, {secs:.2} s{}",
            r.hits.len(),
            r.space_size,
            r.hits_up_to_iso.len(),
            if all_fixture { "all isomorphic to" } else { "not all isomorphic to" },
            limit_secs.map_or(String::new(), |l| format!(" (limit {l} s)")),
        );
        self.search_outcome(id, r, ok, detail)
    }

    fn k33_uniqueness(&mut self) -> CheckResult {
        let opts = self.options();
        self.uniqueness("2a", &SimpleGraph::complete_bipartite(3, 3), "oriented-K33", 512, &opts, None)
    }

    fn k55_uniqueness(&mut self) -> CheckResult {
        if self.scale == Scale::Quick {
            return skipped("2^20-point scan skipped at quick scale");
        }
        self.uniqueness(
            "2b",
            &SimpleGraph::crown(5),
            "oriented-K55-M",
            1 << 20,
            &SearchOptions::single_threaded(),
            Some(60.0),
        )
    }

    fn tournament_five(&mut self) -> CheckResult {
        let t = regular_tournament_5();
        let c = certify_two_ev(&t, 6)?;
        let eig = hermitian_eigenvalues(&build_float_h(&t, &Order::Six.root()))?;
        let min_gap = eig.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
        let ok = !c.verdict && eig.len() == 5 && min_gap > 1e-6;
        outcome(
            ok,
            format!("verdict {}, eigenvalues {eig:.6?}, smallest gap {min_gap:.3e}", c.verdict),
        )
    }

    fn mixed_c4(&mut self) -> CheckResult {
        let fixture = self.fixture("mixed-C4")?;
        let r = search_mixed_orientations(&SimpleGraph::cycle(4), 6, Filter::TwoEv, &self.options())?;
        let all_fixture = r
            .hits
            .iter()
            .all(|h| h.mixed().is_some_and(|m| are_isomorphic(m, &fixture)));
        let oriented_hits = r
            .hits
            .iter()
            .filter(|h| h.mixed().is_some_and(|m| m.is_oriented()))
            .count();
        let ok = r.space_size == 81
            && !r.hits.is_empty()
            && r.hits_up_to_iso.len() == 1
            && all_fixture
            && oriented_hits == 0;
        let detail = format!(
            "{} hits in {} assignments, {} class(es), fixture class: {all_fixture}, fully oriented hits: {oriented_hits}",
            r.hits.len(),
            r.space_size,
            r.hits_up_to_iso.len()
        );
        self.search_outcome("4a", r, ok, detail)
    }

    fn mixed_cube(&mut self) -> CheckResult {
        if self.scale == Scale::Quick {
            return skipped("531441-point mixed cube scan skipped at quick scale");
        }
        let r = search_mixed_orientations(&SimpleGraph::hypercube(3), 6, Filter::TwoEv, &self.options())?;
        let ok = r.space_size == 531_441 && r.hits.is_empty();
        let detail = format!("{} hits in {} assignments, {:.2} s", r.hits.len(), r.space_size, r.elapsed_secs);
        self.search_outcome("4b", r, ok, detail)
    }

    fn complete_graphs(&mut self) -> CheckResult {
        let mut failures = Vec::new();
        let mut hits = Vec::new();
        for n in 2..=6usize {
            let g = self.fixture(&format!("complete-K{n}"))?;
            let c = certify_two_ev(&g, 6)?;
            let cospectral = is_cospectral_with_complete(&g, 1e-8)?;
            if !(c.verdict
                && c.pair == Some((int(n as i64 - 1), int(-1)))
                && c.multiplicities == Some((1, n - 1))
                && cospectral)
            {
                failures.push(format!("K{n}: {:?}, cospectral {cospectral}", c.pair));
            }
            if c.verdict {
                hits.push((g, c));
            }
        }
        self.hits6.insert("4c", hits);
        outcome(
            failures.is_empty(),
            if failures.is_empty() {
                "K2..K6 certify with (n-1, -1) and match {n-1, -1^(n-1)} within 1e-8".into()
            } else {
                failures.join("; ")
            },
        )
    }

    fn paley_tournaments(&mut self) -> CheckResult {
        let mut parts = Vec::new();
        let mut ok = true;
        for q in [7u64, 11, 19] {
            let t = tournament_from_skew_hadamard(&paley_skew_hadamard(q)?);
            let r = certify_three_ev_tournament(&t)?;
            let good = r.verdict && r.distinct == 3 && r.max_deviation < 1e-8;
            ok &= good;
            parts.push(format!("q={q}: {} values, deviation {:.1e}", r.distinct, r.max_deviation));
        }
        let t3 = tournament_from_skew_hadamard(&paley_skew_hadamard(3)?);
        let r3 = certify_three_ev_tournament(&t3)?;
        let triangle = self.fixture("directed-triangle")?;
        let collapse = are_isomorphic(&t3, &triangle)
            && r3.collapsed
            && r3.matches_formula
            && r3.distinct == 2;
        ok &= collapse;
        parts.push(format!("q=3: directed triangle with collapse {collapse}"));
        outcome(ok, parts.join("; "))
    }

    fn hadamard_round_trip(&mut self) -> CheckResult {
        let mut parts = Vec::new();
        let mut ok = true;
        for q in [7u64, 11, 19] {
            let a = paley_skew_hadamard(q)?;
            let t = tournament_from_skew_hadamard(&a);
            // Construction re-verifies A A^T = nI and A + A^T = 2I exactly.
            let b = skew_hadamard_from_tournament(&t)?;
            let same = b == a.normalized();
            ok &= same;
            parts.push(format!("q={q}: order {} valid, equals normalized input: {same}", b.order()));
        }
        outcome(ok, parts.join("; "))
    }

    fn k6_orientations(&mut self) -> CheckResult {
        let r = search_orientations(&SimpleGraph::complete(6), 4, Filter::TwoEv, &self.options())?;
        let ok = r.space_size == 32768 && r.hits.is_empty() && r.elapsed_secs < 10.0;
        let detail = format!("{} hits in {} orientations, {:.2} s (limit 10 s)", r.hits.len(), r.space_size, r.elapsed_secs);
        self.search_outcome("7a", r, ok, detail)
    }

    fn k6_signings(&mut self) -> CheckResult {
        let r = search_signings(&SimpleGraph::complete(6), Filter::TwoEv, &self.options())?;
        let r5 = 5f64.sqrt();
        // The all-plus switching class {5, -1^5} is also a hit.
        let mut conference = 0;
        for h in &r.hits {
            let s = h.signed().ok_or("signing search produced a non-signed hit")?;
            let adj: Vec<f64> = s.adjacency().iter().map(|&x| x as f64).collect();
            let eig = hermitian_eigenvalues(&ComplexMatrix::from_real(6, &adj))?;
            let pm = eig[..3].iter().all(|x| (x - r5).abs() < 1e-8)
                && eig[3..].iter().all(|x| (x + r5).abs() < 1e-8);
            conference += pm as usize;
        }
        let ok = r.space_size == 32768 && conference > 0 && r.elapsed_secs < 10.0;
        let detail = format!(
            "{} hits ({} up to isomorphism) in {} signings, {conference} with ±sqrt(5) x3, {:.2} s (limit 10 s)",
            r.hits.len(),
            r.hits_up_to_iso.len(),
            r.space_size,
            r.elapsed_secs
        );
        self.search_outcome("7b", r, ok, detail)
    }

    fn signed_transform(&mut self) -> CheckResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut worst = 0.0f64;
        for _ in 0..SIGNED_CORPUS {
            let s = random_bipartite_signed(&mut rng, 10);
            let d = signed_to_oriented(&s)?;
            let n = s.n();
            let adj: Vec<f64> = s.adjacency().iter().map(|&x| x as f64).collect();
            let a = hermitian_eigenvalues(&ComplexMatrix::from_real(n, &adj))?;
            let b = hermitian_eigenvalues(&build_float_h(&d, &Order::Four.root()))?;
            for (x, y) in a.iter().zip(&b) {
                worst = worst.max((x - y).abs());
            }
        }
        outcome(
            worst < 1e-9,
            format!("{SIGNED_CORPUS} random bipartite signed graphs, largest eigenvalue gap {worst:.2e} (limit 1e-9)"),
        )
    }

    fn hypercubes(&mut self) -> CheckResult {
        let mut parts = Vec::new();
        let mut ok = true;
        for n in 1..=5u32 {
            let d = huang_oriented_hypercube(n)?;
            let c = certify_two_ev_exact(&d, Order::Four)?;
            let want = Some((surd(n as u64, false), surd(n as u64, true)));
            let good = c.verdict && c.pair == want;
            ok &= good;
            parts.push(format!("Q{n}: {}", if good { "±sqrt(n)" } else { "mismatch" }));
        }
        outcome(ok, parts.join(", "))
    }

    fn s_bound(&mut self) -> CheckResult {
        let mut sources: Vec<&'static str> = vec!["1", "2a", "4a", "4c"];
        if self.scale == Scale::Full {
            sources.push("2b");
        }
        for id in &sources {
            if !self.hits6.contains_key(id) {
                self.dispatch(id)?;
            }
        }
        let omega = Order::Six.root();
        let mut total = 0;
        let mut tight = 0;
        let mut failures = Vec::new();
        for id in &sources {
            for (g, c) in self.hits6.get(id).map(Vec::as_slice).unwrap_or(&[]) {
                total += 1;
                if c.s().is_some_and(|s| (s + 2.0).abs() < 1e-9) {
                    tight += 1;
                }
                if !check_s_bound(c, g, &omega)? {
                    failures.push(format!("check {id}: s = {:?} on {:?}", c.s(), g));
                }
            }
        }
        let ok = failures.is_empty() && total > 0;
        outcome(
            ok,
            if failures.is_empty() {
                format!("{total} hits from checks {sources:?}, {tight} with s = -2, all regular exactly when tight")
            } else {
                failures.join("; ")
            },
        )
    }

    fn small_graphs(&mut self) -> CheckResult {
        let start = Instant::now();
        let edge = self.fixture("directed-edge")?;
        let mut parts = Vec::new();
        let mut ok = true;
        for k in [10u32, 12] {
            let r = scan_small_oriented_graphs(k, 5, false, &self.options())?;
            let good = r.hits_up_to_iso.len() == 1
                && r.hits_up_to_iso[0].mixed().is_some_and(|m| are_isomorphic(m, &edge));
            ok &= good;
            parts.push(format!(
                "k={k}: {} orientations, {} hits, {} class(es)",
                r.space_size,
                r.hits.len(),
                r.hits_up_to_iso.len()
            ));
        }
        let secs = start.elapsed().as_secs_f64();
        ok &= secs < 120.0;
        parts.push(format!("{secs:.2} s (limit 120 s)"));
        outcome(ok, parts.join("; "))
    }

    fn interlacing(&mut self) -> CheckResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 1);
        let mut failures = 0;
        for _ in 0..INTERLACING_CORPUS {
            let (g, root) = random_mixed(&mut rng, 8);
            let n = g.n();
            let size = rng.gen_range(1..=n);
            let mut subset: Vec<usize> = (0..n).collect();
            subset.shuffle(&mut rng);
            subset.truncate(size);
            let child = g.induced_subgraph(&subset)?;
            let a = Spectrum::of(&build_float_h(&g, &root), DEFAULT_CLUSTER_TOL)?;
            let b = Spectrum::of(&build_float_h(&child, &root), DEFAULT_CLUSTER_TOL)?;
            if !interlaces(&a, &b) {
                failures += 1;
            }
        }
        outcome(
            failures == 0,
            format!("{INTERLACING_CORPUS} random (graph, induced subgraph) pairs, {failures} violations"),
        )
    }

    fn eigensolver_identities(&mut self) -> CheckResult {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 2);
        let (mut trace, mut frob, mut degree, mut resid) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for _ in 0..INTERLACING_CORPUS {
            let (g, root) = random_mixed(&mut rng, 8);
            let h = build_float_h(&g, &root);
            let (eig, vecs) = hermitian_eigensystem(&h)?;
            let fro = h.frobenius_norm();
            trace = trace.max((eig.iter().sum::<f64>() - h.trace().re).abs());
            let sq: f64 = eig.iter().map(|x| x * x).sum();
            frob = frob.max((sq - fro * fro).abs());
            degree = degree.max((sq - 2.0 * g.size() as f64).abs());
            let hv = h.matmul(&vecs);
            let n = g.n();
            for (j, &lambda) in eig.iter().enumerate() {
                let r: f64 = (0..n)
                    .map(|i| (hv[(i, j)] - vecs[(i, j)] * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                if fro > 0.0 {
                    resid = resid.max(r / fro);
                }
            }
        }
        let ok = trace < 1e-9 && frob < 1e-8 && degree < 1e-8 && resid < 1e-10;
        outcome(
            ok,
            format!(
                "{INTERLACING_CORPUS} matrices: trace gap {trace:.1e} (1e-9), sum of squares vs Frobenius {frob:.1e} (1e-8), vs 2|E| {degree:.1e} (1e-8), relative residual {resid:.1e} (1e-10)"
            ),
        )
    }

    fn exact_float_agreement(&mut self) -> CheckResult {
        let mut graphs = 0u64;
        let mut disagreements = Vec::new();
        let mut yes = 0u64;
        let counter = std::sync::atomic::AtomicU64::new(0);
        for order in Order::ALL {
            let root = order.root();
            let disagree = |g: &MixedGraph| {
                let e = certify_two_ev_exact(g, order).expect("connected input");
                let f = certify_two_ev_float(g, &root, DEFAULT_CLUSTER_TOL).expect("connected input");
                if e.verdict {
                    counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
                let values_match = match (e.r(), e.s(), f.r(), f.s()) {
                    (Some(a), Some(b), Some(c), Some(d)) => {
                        (a - c).abs() < 1e-6 && (b - d).abs() < 1e-6
                    }
                    _ => true,
                };
                e.verdict != f.verdict || !values_match
            };
            for n in 1..=5 {
                for g in connected_graphs_up_to_iso(n) {
                    let r = search_mixed_orientations(&g, order.k(), Filter::Custom(&disagree), &self.options())?;
                    graphs += r.space_size;
                    disagreements.extend(r.hits.into_iter().map(|h| format!("k={}: {}", order.k(), h.encoding)));
                }
            }
        }
        yes += counter.load(std::sync::atomic::Ordering::Relaxed);
        outcome(
            disagreements.is_empty(),
            format!(
                "{graphs} labeled mixed graphs over k = 3, 4, 6 ({yes} two-eigenvalue), {} disagreements{}",
                disagreements.len(),
                if disagreements.is_empty() {
                    String::new()
                } else {
                    format!(": {}", disagreements.iter().take(5).cloned().collect::<Vec<_>>().join(", "))
                }
            ),
        )
    }
}

/// A random mixed graph on 1 to `max_n` vertices and a random root of order
/// 3 to 12.
pub(crate) fn random_mixed(rng: &mut ChaCha8Rng, max_n: usize) -> (MixedGraph, RootOfUnity) {
    let n = rng.gen_range(1..=max_n);
    let rel: Vec<Relation> = (0..n * n)
        .map(|_| match rng.gen_range(0..5) {
            0 => Relation::Forward,
            1 => Relation::Backward,
            2 => Relation::Undirected,
            _ => Relation::None,
        })
        .collect();
    let g = MixedGraph::from_relations(n, &rel);
    let k = rng.gen_range(3..=12u32);
    let coprime: Vec<u32> = (1..k).filter(|&p| gcd(p, k) == 1).collect();
    let root = RootOfUnity::new(k, *coprime.choose(rng).expect("phi(k) > 0")).expect("coprime");
    (g, root)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random signed graph on 2 to `max_n` vertices whose edges all cross a
/// random bipartition.
pub(crate) fn random_bipartite_signed(rng: &mut ChaCha8Rng, max_n: usize) -> SignedGraph {
    let n = rng.gen_range(2..=max_n);
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let density = rng.gen_range(0.2..=1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(density) {
                let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                edges.push((u, v, sign));
            }
        }
    }
    SignedGraph::new(n, edges).expect("valid edges")
}
