use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use simpfib::complexes::{categorical_product, cylinder as cylinder_of, pullback as pullback_of};
use simpfib::contiguity::{
    contiguity_chain, contiguous, core as core_of, is_strongly_collapsible, ChainSearch,
};
use simpfib::fibrations::{
    diagonal_factorization, fiber as fiber_of, fiber_transport, mapping_path_factorization,
    sample_fibration as census, solve_lift, FibrationStatus, LiftOutcome, PathLifter,
};
use simpfib::format::{
    homotopy_from_columns, homotopy_json, Assignment, ChainJson, ComplexJson, ComplexRef,
    HomotopyJson, LiftProblemJson, MapJson, PathJson,
};
use simpfib::invariants::{
    check_certificate, discrete_tc, homotopy_svarc_genus, scat as scat_of, svarc_genus,
    verify_scat_equals_genus, verify_varadarajan, CoverCertificate, InvariantReport,
};
use simpfib::moore::WindowedPathComplex;
use simpfib::{Budget, Complex, SimplicialMap, Vertex};

use crate::io::{self, load, resolver_for};
use crate::{Outcome, Status};

fn complex_json(k: &Complex) -> Value {
    json!(ComplexJson::from(k))
}

fn invariant(report: InvariantReport) -> Outcome {
    let status = match (report.value, report.exact) {
        (_, false) => Status::Budget,
        (None, true) => Status::Violated,
        (Some(_), true) => Status::Ok,
    };
    Outcome::with(json!(report), status)
}

pub fn validate(file: &Path) -> Result<Outcome> {
    let v: Value = load(file)?;
    let has = |k: &str| v.get(k).is_some();
    let mut r = resolver_for(file);
    let parse_err = |e: serde_json::Error| anyhow!("{}: {e}", file.display());
    let (kind, checked): (&str, simpfib::Result<()>) = if has("kind") && has("pieces") {
        let cert: CoverCertificate = serde_json::from_value(v).map_err(parse_err)?;
        ("certificate", check_certificate(&cert).map(drop))
    } else if has("phi") && has("p") {
        let j: LiftProblemJson = serde_json::from_value(v).map_err(parse_err)?;
        ("lift_problem", r.lift_problem(&j).map(drop))
    } else if has("columns") {
        let j: HomotopyJson = serde_json::from_value(v).map_err(parse_err)?;
        ("homotopy", r.homotopy(&j).map(drop))
    } else if has("samples") {
        let j: PathJson = serde_json::from_value(v).map_err(parse_err)?;
        ("path", r.path(&j).map(drop))
    } else if has("assignment") {
        let j: MapJson = serde_json::from_value(v).map_err(parse_err)?;
        ("map", r.map(&j).map(drop))
    } else if has("facets") {
        let j: ComplexJson = serde_json::from_value(v).map_err(parse_err)?;
        ("complex", j.build().map(drop))
    } else {
        bail!("{}: not a recognised document", file.display());
    };
    Ok(match checked {
        Ok(()) => Outcome::ok(json!({"kind": kind, "valid": true})),
        Err(e) => Outcome::with(
            json!({"kind": kind, "valid": false, "error": e.to_string()}),
            Status::Violated,
        ),
    })
}

pub fn contiguity(f: &Path, g: &Path) -> Result<Outcome> {
    let (f, g) = (io::map(f)?, io::map(g)?);
    Ok(Outcome::ok(json!({"contiguous": contiguous(&f, &g)?})))
}

pub fn chain(f: &Path, g: &Path, budget: &Budget) -> Result<Outcome> {
    let (f, g) = (io::map(f)?, io::map(g)?);
    Ok(match contiguity_chain(&f, &g, budget)? {
        ChainSearch::Found(c) => {
            Outcome::ok(json!({"status": "found", "length": c.len(), "chain": ChainJson::from(&c)}))
        }
        ChainSearch::ProvenAbsent => {
            Outcome::with(json!({"status": "proven_absent"}), Status::Violated)
        }
        ChainSearch::BudgetExhausted { shortest } => Outcome::with(
            json!({"status": "budget_exhausted", "shortest": shortest}),
            Status::Budget,
        ),
    })
}

pub fn core(complex: &str) -> Result<Outcome> {
    let k = io::complex(complex)?;
    let c = core_of(&k);
    Ok(Outcome::ok(json!({
        "core": complex_json(&c.complex),
        "removed": c.log.iter().map(|&(v, by)| json!({"vertex": v, "dominated_by": by})).collect::<Vec<_>>(),
        "strongly_collapsible": is_strongly_collapsible(&k),
    })))
}

pub fn product(left: &str, right: &str) -> Result<Outcome> {
    let (k, l) = (io::complex(left)?, io::complex(right)?);
    let p = categorical_product(&k, &l);
    let pairs: BTreeMap<Vertex, (Vertex, Vertex)> = p
        .complex
        .vertices()
        .iter()
        .map(|&x| (x, p.pair(x)))
        .collect();
    Ok(Outcome::ok(
        json!({"complex": complex_json(&p.complex), "pairs": pairs}),
    ))
}

pub fn pullback(f: &Path, g: &Path) -> Result<Outcome> {
    let (f, g) = (io::map(f)?, io::map(g)?);
    let pb = pullback_of(&f, &g)?;
    let pairs: BTreeMap<Vertex, (Vertex, Vertex)> = pb
        .complex
        .vertices()
        .iter()
        .map(|&x| {
            (
                x,
                (pb.to_left.image(x).unwrap(), pb.to_right.image(x).unwrap()),
            )
        })
        .collect();
    Ok(Outcome::ok(
        json!({"complex": complex_json(&pb.complex), "pairs": pairs}),
    ))
}

pub fn cylinder(complex: &str, m: usize) -> Result<Outcome> {
    let k = io::complex(complex)?;
    let cyl = cylinder_of(&k, m);
    let pairs: BTreeMap<Vertex, (Vertex, usize)> = (0..k.num_vertices())
        .flat_map(|v| (0..=m).map(move |i| (v, i)))
        .map(|(v, i)| (cyl.complex().vertex(cyl.index(v, i)), (k.vertex(v), i)))
        .collect();
    Ok(Outcome::ok(
        json!({"m": m, "complex": complex_json(cyl.complex()), "pairs": pairs}),
    ))
}

pub fn lift(problem: &Path, budget: &Budget) -> Result<Outcome> {
    let j: LiftProblemJson = load(problem)?;
    let problem = resolver_for(problem).lift_problem(&j)?;
    Ok(match solve_lift(&problem, budget) {
        LiftOutcome::Lifted(h) => {
            problem.check(&h)?;
            Outcome::ok(json!({"status": "lifted", "lift": homotopy_json(&h)}))
        }
        LiftOutcome::NoLift => Outcome::with(json!({"status": "no_lift"}), Status::Violated),
        LiftOutcome::Exhausted => {
            Outcome::with(json!({"status": "budget_exhausted"}), Status::Budget)
        }
    })
}

fn problem_json(p: &simpfib::fibrations::LiftProblem) -> Value {
    json!({
        "k": ComplexJson::from(&**p.k()),
        "m": p.m(),
        "h": (0..=p.m()).map(|i| p.h.column(i).assignment()).collect::<Vec<_>>(),
        "phi": p.phi.assignment(),
    })
}

pub fn sample_fibration(map: &Path, budget: &Budget) -> Result<Outcome> {
    let p = io::map(map)?;
    let v = census(&p, budget);
    let status = match v.status {
        FibrationStatus::PassedAllSampled => Status::Ok,
        FibrationStatus::Counterexample => Status::Violated,
        FibrationStatus::BudgetExhausted => Status::Budget,
    };
    Ok(Outcome::with(
        json!({
            "status": v.status,
            "census": v.census,
            "counterexample": v.counterexample.as_ref().map(problem_json),
            "disagreement": v.disagreement.as_ref().map(problem_json),
        }),
        status,
    ))
}

pub fn fiber(map: &Path, over: Vertex) -> Result<Outcome> {
    let p = io::map(map)?;
    Ok(Outcome::ok(
        json!({"over": over, "fiber": fiber_of(&p, over)?.as_ref().map(complex_json)}),
    ))
}

pub fn transport(map: &Path, path: &Path, budget: &Budget) -> Result<Outcome> {
    let p = io::map(map)?;
    let j: PathJson = load(path)?;
    let gamma = resolver_for(path).path(&j)?;
    let t = fiber_transport(&p, &gamma, budget)?;
    Ok(Outcome::ok(json!({
        "source": complex_json(&t.source),
        "target": complex_json(&t.target),
        "transport": t.map.assignment(),
        "lift": homotopy_json(&t.lift),
    })))
}

/// `φ: L → K^[a,b]` as one path (samples on `[a, b]`) per vertex of `L`;
/// `G`, `H` as columns `L → K`.
#[derive(Deserialize)]
struct PathLiftInput {
    base: ComplexRef,
    window: (i64, i64),
    domain: ComplexRef,
    m: usize,
    phi: BTreeMap<Vertex, Vec<Vertex>>,
    g: Vec<Assignment>,
    h: Vec<Assignment>,
}

pub fn path_lift(input: &Path, budget: &Budget) -> Result<Outcome> {
    let j: PathLiftInput = load(input)?;
    let mut r = resolver_for(input);
    let (k, l) = (
        io::complex_ref(&mut r, &j.base)?,
        io::complex_ref(&mut r, &j.domain)?,
    );
    let small = WindowedPathComplex::new(&k, j.window.0, j.window.1, budget)?;
    let images = l
        .vertices()
        .iter()
        .map(|v| {
            let samples = j
                .phi
                .get(v)
                .ok_or_else(|| anyhow!("φ has no path for vertex {v}"))?;
            small
                .id_of_samples(samples)
                .map(|id| id as usize)
                .ok_or_else(|| anyhow!("φ({v}) = {samples:?} is not a path on the window"))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = SimplicialMap::from_indices(l.clone(), small.complex().clone(), images)?;
    let g = homotopy_from_columns(&l, &k, j.m, &j.g)?;
    let h = homotopy_from_columns(&l, &k, j.m, &j.h)?;
    let lifter = PathLifter::new(&small, j.m, budget)?;
    let omega = lifter.lift(&phi, &g, &h)?;
    let big = lifter.window();
    let columns: Vec<BTreeMap<Vertex, Vec<Vertex>>> = (0..=j.m)
        .map(|i| {
            let col = omega.column(i);
            l.vertices()
                .iter()
                .map(|&v| (v, big.path(col.image(v).unwrap()).samples().to_vec()))
                .collect()
        })
        .collect();
    Ok(Outcome::ok(
        json!({"window": big.window(), "columns": columns}),
    ))
}

pub fn factorize(map: &Path, w: usize, budget: &Budget) -> Result<Outcome> {
    let f = io::map(map)?;
    let fac = mapping_path_factorization(&f, w, budget)?;
    let verdict = fac.check(&f);
    let report = json!({
        "window": [-(w as i64), w as i64],
        "vertices": fac.complex().num_vertices(),
        "facets": fac.complex().num_facets(),
        "j": fac.j.assignment(),
        "retraction_length": fac.retraction.len(),
        "checked": verdict.is_ok(),
        "error": verdict.as_ref().err().map(ToString::to_string),
    });
    Ok(Outcome::with(
        report,
        if verdict.is_ok() {
            Status::Ok
        } else {
            Status::Violated
        },
    ))
}

pub fn diag_factorize(complex: &str, w: usize, budget: &Budget) -> Result<Outcome> {
    let k = io::complex(complex)?;
    let fac = diagonal_factorization(&k, w, budget)?;
    Ok(Outcome::ok(json!({
        "window": [0, w],
        "paths": fac.paths.num_paths(),
        "facets": fac.paths.complex().num_facets(),
        "c": fac.c.assignment(),
        "retraction_length": fac.retraction.len(),
    })))
}

pub fn scat(complex: &str, budget: &Budget) -> Result<Outcome> {
    Ok(invariant(scat_of(&io::complex(complex)?, budget)?))
}

pub fn tc(complex: &str, budget: &Budget) -> Result<Outcome> {
    Ok(invariant(discrete_tc(&io::complex(complex)?, budget)?))
}

pub fn genus(map: &Path, homotopy: bool, budget: &Budget) -> Result<Outcome> {
    let phi = io::map(map)?;
    Ok(invariant(if homotopy {
        homotopy_svarc_genus(&phi, budget)?
    } else {
        svarc_genus(&phi, budget)?
    }))
}

pub fn varadarajan(map: &Path, budget: &Budget) -> Result<Outcome> {
    let r = verify_varadarajan(&io::map(map)?, budget)?;
    let status = match r.holds {
        Some(true) => Status::Ok,
        Some(false) => Status::Violated,
        None => Status::Budget,
    };
    Ok(Outcome::with(json!(r), status))
}

pub fn scat_genus(complex: &str, v0: Option<Vertex>, w: usize, budget: &Budget) -> Result<Outcome> {
    let k = io::complex(complex)?;
    let v0 = v0.unwrap_or(k.vertices()[0]);
    let r = verify_scat_equals_genus(&k, v0, w, budget)?;
    let status = match r.agrees {
        Some(true) => Status::Ok,
        Some(false) => Status::Violated,
        None => Status::Budget,
    };
    Ok(Outcome::with(json!(r), status))
}

/// Accepts a bare certificate or a report that carries one.
pub fn verify_cert(file: &Path) -> Result<Outcome> {
    let mut v: Value = load(file)?;
    if let Some(c) = v.get_mut("certificate") {
        v = c.take();
    }
    let cert: CoverCertificate = serde_json::from_value(v)
        .with_context(|| format!("{}: not a certificate", file.display()))?;
    Ok(match check_certificate(&cert) {
        Ok(value) => Outcome::ok(json!({"valid": true, "kind": cert.kind, "value": value})),
        Err(e) => Outcome::with(
            json!({"valid": false, "kind": cert.kind, "error": e.to_string()}),
            Status::Violated,
        ),
    })
}
