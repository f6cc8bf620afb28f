//! Acceptance criteria 1–9. Each test prints one `PASS`/`FAIL` line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use simpfib::complexes::{categorical_product, validate_map, Complex, SimplicialMap};
use simpfib::contiguity::{
    chain_to_homotopy, contiguity_chain, contiguous, homotopy_to_chain, same_strong_homotopy_type,
    ChainSearch, ContiguityChain,
};
use simpfib::fibrations::{
    fiber, fiber_transport, lift_census, lift_inputs, mapping_path_factorization, sample_fibration,
    FibrationStatus, PathLifter, Transport,
};
use simpfib::format::{builtin, ComplexJson};
use simpfib::invariants::{
    check_certificate, discrete_tc, homotopy_svarc_genus, scat, svarc_genus,
    verify_scat_equals_genus, verify_tc_equals_path_genus, verify_varadarajan, InvariantReport,
};
use simpfib::moore::{MoorePath, WindowedPathComplex};
use simpfib::Budget;

/// Value of the brute-force oracle in `tests/oracle`, computed (and
/// asserted by `tests/oracles.rs`) before the library search existed.
const ORACLE_TC_C3: usize = 2;

fn named(name: &str) -> Arc<Complex> {
    builtin(name).unwrap_or_else(|| panic!("builtin {name}"))
}

/// Runs one criterion, prints its line, and fails the test on a failed
/// check or an exceeded time limit.
fn criterion(n: u32, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let verdict = match &result {
        Ok(detail) if elapsed <= limit => format!("PASS ({detail})"),
        Ok(detail) => format!("FAIL (took {elapsed:.1?}, limit {limit:?}; {detail})"),
        Err(why) => format!("FAIL ({why})"),
    };
    println!("criterion {n}: {verdict} [{elapsed:.2?}]");
    assert!(
        result.is_ok() && elapsed <= limit,
        "criterion {n}: {verdict}"
    );
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_1_chain_homotopy_round_trip() {
    criterion(1, Duration::from_secs(5), || {
        let c3 = named("C3");
        let maps = SimplicialMap::enumerate(&c3, &c3);
        ensure(maps.len() == 27, || format!("{} maps C3 → C3", maps.len()))?;
        let adj: Vec<Vec<usize>> = maps
            .iter()
            .map(|f| {
                (0..maps.len())
                    .filter(|&j| contiguous(f, &maps[j]).unwrap())
                    .collect()
            })
            .collect();
        let mut chains = 0u64;
        let mut stack: Vec<Vec<usize>> = (0..maps.len()).map(|i| vec![i]).collect();
        while let Some(seq) = stack.pop() {
            let chain = ContiguityChain::new(seq.iter().map(|&i| maps[i].clone()).collect())
                .map_err(|e| e.to_string())?;
            let h = chain_to_homotopy(&chain).map_err(|e| e.to_string())?;
            validate_map(
                h.map.domain().clone(),
                h.map.codomain().clone(),
                &h.map.assignment(),
            )
            .map_err(|e| e.to_string())?;
            ensure(homotopy_to_chain(&h) == chain, || {
                format!("round trip changed {seq:?}")
            })?;
            chains += 1;
            if seq.len() <= 3 {
                for &j in &adj[*seq.last().unwrap()] {
                    let mut next = seq.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        Ok(format!("{chains} chains of length ≤ 3"))
    });
}

/// Simplicial automorphisms of `k`: bijections carrying facets onto facets.
fn automorphisms(k: &Arc<Complex>) -> Vec<SimplicialMap> {
    let facets: std::collections::BTreeSet<Vec<u32>> = k.facets().iter().cloned().collect();
    SimplicialMap::enumerate(k, k)
        .into_iter()
        .filter(|f| {
            let mut seen = f.indices().to_vec();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == k.num_vertices()
                && k.facets().iter().all(|s| {
                    let mut t: Vec<u32> = s.iter().map(|&v| f.image(v).unwrap()).collect();
                    t.sort_unstable();
                    facets.contains(&t)
                })
        })
        .collect()
}

/// Groups maps `E → B` into orbits of `p ↦ β ∘ p ∘ α` for automorphisms
/// `α` of `E` and `β` of `B`; returns one representative and the orbit size.
fn orbits(
    maps: Vec<SimplicialMap>,
    e: &Arc<Complex>,
    b: &Arc<Complex>,
) -> Vec<(SimplicialMap, u64)> {
    let (ae, ab) = (automorphisms(e), automorphisms(b));
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for p in maps {
        if seen.contains(p.indices()) {
            continue;
        }
        let mut orbit = std::collections::HashSet::new();
        for alpha in &ae {
            let pa = p.compose(alpha).unwrap();
            for beta in &ab {
                orbit.insert(beta.compose(&pa).unwrap().indices().to_vec());
            }
        }
        let size = orbit.len() as u64;
        seen.extend(orbit);
        out.push((p, size));
    }
    out
}

/// Every lift problem is isomorphic, through `(α, β)`, to one whose map is an
/// orbit representative, and both solvability notions are invariant under
/// isomorphism. Each representative's census is therefore weighted by its
/// orbit size; the weighted count is the size of the full census.
#[test]
fn criterion_2_stepwise_and_whole_cylinder_agree() {
    criterion(2, Duration::from_secs(60), || {
        let names = ["PT", "E1", "C3", "D2", "C3xE1"];
        let family = [("PT", named("PT")), ("E1", named("E1"))];
        let budget = Budget::default();
        let (mut maps, mut reps, mut solved, mut instances, mut solvable) =
            (0u64, 0u64, 0u64, 0u64, 0u64);
        for b in names {
            for e in names {
                let (eb, bb) = (named(e), named(b));
                let all = SimplicialMap::enumerate(&eb, &bb);
                let total = all.len() as u64;
                let classes = orbits(all, &eb, &bb);
                ensure(classes.iter().map(|c| c.1).sum::<u64>() == total, || {
                    format!("orbits of {e} → {b} do not partition the maps")
                })?;
                for (p, size) in classes {
                    let v = lift_census(&p, &family, &[0, 1, 2], &budget, |_, _| {});
                    ensure(!v.census.exhausted, || {
                        format!("census exhausted for {e} → {b}")
                    })?;
                    ensure(v.census.disagreements == 0, || {
                        format!(
                            "{} disagreements for {e} → {b}: {:?}",
                            v.census.disagreements, v.disagreement
                        )
                    })?;
                    reps += 1;
                    solved += v.census.instances;
                    instances += size * v.census.instances;
                    solvable += size * v.census.solvable;
                }
                maps += total;
            }
        }
        Ok(format!(
            "{maps} maps in {reps} orbits, {solved} problems solved, \
             {instances} in the full census, {solvable} solvable, 0 disagreements"
        ))
    });
}

#[test]
fn criterion_3_path_fibration_lift() {
    criterion(3, Duration::from_secs(60), || {
        let budget = Budget::default();
        let mut count = 0u64;
        for l in ["PT", "E1"] {
            for k in ["E1", "C3"] {
                let (l, k) = (named(l), named(k));
                let small =
                    WindowedPathComplex::new(&k, 0, 1, &budget).map_err(|e| e.to_string())?;
                for m in 0..=2 {
                    let lifter = PathLifter::new(&small, m, &budget).map_err(|e| e.to_string())?;
                    let big = lifter.window();
                    let ext = small.extension_into(big).unwrap();
                    let (alpha, omega) = (big.alpha(), big.omega());
                    for (phi, g, h) in lift_inputs(&l, &small, m) {
                        let lift = lifter
                            .lift(&phi, &g, &h)
                            .map_err(|e| format!("{phi:?}, m = {m}: {e}"))?;
                        ensure(
                            alpha.compose(&lift.map).unwrap().indices() == g.map.indices(),
                            || "α ∘ Ω ≠ G".into(),
                        )?;
                        ensure(
                            omega.compose(&lift.map).unwrap().indices() == h.map.indices(),
                            || "ω ∘ Ω ≠ H".into(),
                        )?;
                        ensure(lift.column(0) == ext.compose(&phi).unwrap(), || {
                            "Ω ∘ i_0 ≠ φ".into()
                        })?;
                        validate_map(
                            lift.map.domain().clone(),
                            big.complex().clone(),
                            &lift.map.assignment(),
                        )
                        .map_err(|e| e.to_string())?;
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} lifts, 0 failures"))
    });
}

/// Normalized paths in `k` of length at most `max_len`.
fn normalized_paths(k: &Arc<Complex>, max_len: usize) -> Vec<MoorePath> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = k.vertices().iter().map(|&v| vec![v]).collect();
    while let Some(s) = stack.pop() {
        let n = s.len();
        let trimmed = n == 1 || (s[0] != s[1] && s[n - 1] != s[n - 2]);
        if trimmed {
            out.push(MoorePath::new(k.clone(), 0, s.clone()).unwrap());
        }
        if n <= max_len {
            for &w in k.vertices() {
                if w == s[n - 1] || k.is_simplex(&[s[n - 1], w]) {
                    let mut t = s.clone();
                    t.push(w);
                    stack.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_4_fibers_and_transport() {
    criterion(4, Duration::from_secs(120), || {
        let budget = Budget::default().with_max_steps(6);
        let c3 = named("C3");
        let paths = normalized_paths(&c3, 3);
        let mut checks = 0u64;
        for f in ["PT", "E1", "C3"] {
            let prod = categorical_product(&c3, &named(f));
            let p = &prod.pr1;
            let fibers: Vec<Complex> = c3
                .vertices()
                .iter()
                .map(|&b| fiber(p, b).unwrap().unwrap())
                .collect();
            for x in &fibers {
                for y in &fibers {
                    ensure(same_strong_homotopy_type(x, y), || {
                        format!("fibers of C3×{f} differ")
                    })?;
                }
            }
            let transports: BTreeMap<Vec<u32>, Transport> = paths
                .iter()
                .map(|g| {
                    (
                        g.samples().to_vec(),
                        fiber_transport(p, g, &budget).unwrap(),
                    )
                })
                .collect();
            let chain = |a: &SimplicialMap, b: &SimplicialMap| -> Result<(), String> {
                match contiguity_chain(a, b, &budget).map_err(|e| e.to_string())? {
                    ChainSearch::Found(_) => Ok(()),
                    other => Err(format!("C3×{f}: {a:?} vs {b:?}: {other:?}")),
                }
            };
            for (s, t) in &transports {
                if s.len() == 1 {
                    chain(&t.map, &SimplicialMap::identity(&t.source))?;
                    checks += 1;
                }
            }
            for g in &paths {
                for d in &paths {
                    if g.omega() != d.alpha() {
                        continue;
                    }
                    let gd = g.concat(d).unwrap().normalize();
                    let t_gd = fiber_transport(p, &gd, &budget).map_err(|e| e.to_string())?;
                    let t_g = &transports[g.samples()];
                    let t_d = &transports[d.samples()];
                    let composite = t_d.map.compose(&t_g.map).map_err(|e| e.to_string())?;
                    chain(&t_gd.map, &composite)?;
                    checks += 1;
                }
            }
        }
        Ok(format!(
            "{} paths, {checks} transport identities",
            paths.len()
        ))
    });
}

fn exact_value(r: &InvariantReport) -> Result<usize, String> {
    ensure(r.exact, || format!("{} not exact", r.invariant))?;
    if let Some(c) = &r.certificate {
        check_certificate(c).map_err(|e| format!("{} certificate: {e}", r.invariant))?;
    }
    r.value
        .ok_or_else(|| format!("{} has no value", r.invariant))
}

#[test]
fn criterion_5_invariant_values() {
    criterion(5, Duration::from_secs(600), || {
        let b = Budget::default();
        let mut seen = Vec::new();
        for (name, want) in [("PT", 0), ("E1", 0), ("D2", 0), ("C3", 1)] {
            let v = exact_value(&scat(&named(name), &b).map_err(|e| e.to_string())?)?;
            ensure(v == want, || format!("scat({name}) = {v}, expected {want}"))?;
            seen.push(format!("scat({name})={v}"));
        }
        for (name, want) in [("PT", 0), ("D2", 0), ("C3", ORACLE_TC_C3)] {
            let v = exact_value(&discrete_tc(&named(name), &b).map_err(|e| e.to_string())?)?;
            ensure(v == want, || format!("TC({name}) = {v}, expected {want}"))?;
            seen.push(format!("TC({name})={v}"));
        }
        for (base, fib) in [("C3", "E1"), ("D2", "E1")] {
            let prod = categorical_product(&named(base), &named(fib));
            let sg = exact_value(&svarc_genus(&prod.pr1, &b).map_err(|e| e.to_string())?)?;
            let hsg =
                exact_value(&homotopy_svarc_genus(&prod.pr1, &b).map_err(|e| e.to_string())?)?;
            ensure(sg == 0 && hsg == 0, || {
                format!("{base}×{fib}: Sg = {sg}, hSg = {hsg}")
            })?;
            seen.push(format!("Sg=hSg=0 over {base}"));
        }
        Ok(seen.join(", "))
    });
}

#[test]
fn criterion_6_varadarajan() {
    criterion(6, Duration::from_secs(300), || {
        let b = Budget::default();
        let c3 = named("C3");
        let pt = named("PT");
        let maps = vec![
            (
                "pr1: C3×D2 → C3",
                categorical_product(&c3, &named("D2")).pr1,
            ),
            (
                "pr1: C3×E1 → C3",
                categorical_product(&c3, &named("E1")).pr1,
            ),
            ("id_C3", SimplicialMap::identity(&c3)),
            (
                "C3 → PT",
                SimplicialMap::from_fn(c3.clone(), pt.clone(), |_| 0).unwrap(),
            ),
        ];
        let mut seen = Vec::new();
        for (name, p) in maps {
            let r = verify_varadarajan(&p, &b).map_err(|e| e.to_string())?;
            for part in [&r.scat_total, &r.scat_base, &r.scat_fiber] {
                exact_value(part)?;
            }
            ensure(r.holds == Some(true), || {
                format!("{name}: {:?} ≤ {:?} fails", r.lhs, r.rhs)
            })?;
            seen.push(format!("{name}: {} ≤ {}", r.lhs.unwrap(), r.rhs.unwrap()));
        }
        Ok(seen.join("; "))
    });
}

#[test]
fn criterion_7_mapping_path_factorization() {
    criterion(7, Duration::from_secs(120), || {
        let b = Budget::default();
        let (e1, c3, pt) = (named("E1"), named("C3"), named("PT"));
        let maps = vec![
            ("id_E1", SimplicialMap::identity(&e1)),
            ("{v0} ↪ C3", SimplicialMap::constant(&pt, &c3, 0).unwrap()),
            (
                "C3 → PT",
                SimplicialMap::from_fn(c3.clone(), pt.clone(), |_| 0).unwrap(),
            ),
        ];
        let mut seen = Vec::new();
        for (name, f) in maps {
            let fac = mapping_path_factorization(&f, 2, &b).map_err(|e| format!("{name}: {e}"))?;
            ensure(fac.p.compose(&fac.j).unwrap() == f, || {
                format!("{name}: p ∘ j ≠ f")
            })?;
            ensure(fac.alpha.compose(&fac.j).unwrap().is_identity(), || {
                format!("{name}: α′ ∘ j ≠ 1")
            })?;
            let chain = &fac.retraction;
            ContiguityChain::new(chain.steps().to_vec()).map_err(|e| format!("{name}: {e}"))?;
            ensure(
                *chain.first() == fac.j.compose(&fac.alpha).unwrap() && chain.last().is_identity(),
                || format!("{name}: chain ends"),
            )?;
            seen.push(format!(
                "{name}: |P_f| = {}, {} steps",
                fac.complex().num_vertices(),
                chain.len()
            ));
        }
        Ok(seen.join("; "))
    });
}

#[test]
fn criterion_8_genus_coherence() {
    criterion(8, Duration::from_secs(600), || {
        let b = Budget::default();
        let mut seen = Vec::new();
        for name in ["PT", "E1", "C3"] {
            let k = named(name);
            let sg = verify_scat_equals_genus(&k, k.vertex(0), 4, &b).map_err(|e| e.to_string())?;
            ensure(sg.agrees == Some(true), || {
                format!("{name}: Sg(ω) vs scat: {sg:?}")
            })?;
            let tc = verify_tc_equals_path_genus(&k, 4, &b).map_err(|e| e.to_string())?;
            ensure(tc.agrees == Some(true), || {
                format!("{name}: hSg((α, ω)) vs TC: {tc:?}")
            })?;
            seen.push(format!(
                "{name}: Sg(ω)={:?} at w={}, hSg((α,ω))={:?} at w={}",
                sg.windows.last().unwrap().value,
                sg.stabilized_at.unwrap(),
                tc.windows.last().unwrap().value,
                tc.stabilized_at.unwrap()
            ));
        }
        Ok(seen.join("; "))
    });
}

#[test]
fn criterion_9_negative_control_and_exactness() {
    criterion(9, Duration::from_secs(600), || {
        let b = Budget::default();
        let p = SimplicialMap::constant(&named("PT"), &named("E1"), 0).unwrap();
        let v = sample_fibration(&p, &b);
        ensure(v.status == FibrationStatus::Counterexample, || {
            format!("{{0}} ↪ E1: {:?}", v.status)
        })?;
        let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        let mut names = Vec::new();
        let mut entries: Vec<_> = std::fs::read_dir(&fixtures)
            .map_err(|e| e.to_string())?
            .collect();
        entries.sort_by_key(|e| e.as_ref().map(|e| e.path()).ok());
        for entry in entries {
            let path = entry.map_err(|e| e.to_string())?.path();
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let Ok(json) = serde_json::from_str::<ComplexJson>(&text) else {
                continue;
            };
            let k = Arc::new(json.build().map_err(|e| e.to_string())?);
            exact_value(&scat(&k, &b).map_err(|e| e.to_string())?)?;
            exact_value(&discrete_tc(&k, &b).map_err(|e| e.to_string())?)?;
            names.push(path.file_name().unwrap().to_string_lossy().into_owned());
        }
        ensure(!names.is_empty(), || "no fixture complexes".into())?;
        Ok(format!(
            "counterexample found; exact on {}",
            names.join(", ")
        ))
    });
}
