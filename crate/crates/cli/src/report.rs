//! Report assembly: every field either holds a value or names the guard
//! that skipped it. JSON output is schema "symtope/1"; the table renderer
//! walks the same tree.

use serde_json::{json, Map, Value};

use symtope_core::complex::SimplicialComplex;
use symtope_core::enumerate::{PointEnumerator, DEFAULT_MAX_ENUM_DIM};
use symtope_core::equivalence::{self, Which};
use symtope_core::error::Error;
use symtope_core::groebner;
use symtope_core::invariants::{self, ReflexivityRoute};
use symtope_core::polytope::{cohomology_polytope, homology_polytope, CSPolytope};
use symtope_core::util::SplitMix64;

pub struct Limits {
    pub max_minors: u128,
    pub max_points: u64,
    pub max_cells: u64,
    pub max_sumset: u64,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_minors: symtope_core::tu::DEFAULT_MAX_MINORS,
            max_points: symtope_core::enumerate::DEFAULT_MAX_POINTS,
            max_cells: groebner::DEFAULT_MAX_CELLS,
            max_sumset: symtope_core::sumset::DEFAULT_MAX_SUMSET,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Requests {
    pub hstar: bool,
    pub hilbert: bool,
    pub groebner: bool,
    pub triangulate: bool,
    pub facets: bool,
    pub dump_boundary: bool,
}

/// Wraps a guarded computation: value, or {"skipped": reason}.
fn guarded<T: Into<Value>>(r: Result<T, Error>, skipped_guards: &mut Vec<String>) -> Value {
    match r {
        Ok(v) => v.into(),
        Err(Error::Guard { guard, detail }) => {
            skipped_guards.push(guard.to_string());
            json!({ "skipped": guard, "detail": detail })
        }
        Err(e) => json!({ "skipped": "error", "detail": e.to_string() }),
    }
}

fn big_vec(v: &[num_bigint::BigInt]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn rational_vec(v: &[num_rational::BigRational]) -> Value {
    Value::Array(v.iter().map(|x| json!(format!("{}/{}", x.numer(), x.denom()))).collect())
}

pub fn route_name(r: &ReflexivityRoute) -> &'static str {
    match r {
        ReflexivityRoute::AllDivisorsOne => "all-divisors-one",
        ReflexivityRoute::TorsionParity => "torsion-parity",
        ReflexivityRoute::HigherTorsion => "q>=3-torsion",
        ReflexivityRoute::PolarIntegrality => "polar-integrality",
    }
}

/// Full report for one complex; `skipped` collects guard names of fields
/// that were explicitly requested but could not be computed.
pub fn analyze(
    name: &str,
    delta: &SimplicialComplex,
    which: &str,
    req: Requests,
    limits: &Limits,
    requested_skips: &mut Vec<String>,
) -> Value {
    let mut root = Map::new();
    root.insert("schema".into(), json!("symtope/1"));
    root.insert("name".into(), json!(name));

    let profile = delta.classify();
    root.insert(
        "profile".into(),
        json!({
            "dim": profile.dim,
            "f_vector": profile.f_vector,
            "pure": profile.pure,
            "pseudomanifold": profile.pseudomanifold,
            "closed": profile.closed,
            "strongly_connected": profile.strongly_connected,
            "orientable": profile.orientable,
            "boundary_ridge_count": profile.boundary_ridges.len(),
        }),
    );

    let homology: Vec<Value> = (0..=delta.dim())
        .map(|j| {
            let h = delta.homology(j).expect("degree in range");
            json!({
                "degree": j,
                "free_rank": h.free_rank,
                "torsion": h.torsion.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "display": h.to_string(),
            })
        })
        .collect();
    root.insert("homology".into(), Value::Array(homology));

    if req.dump_boundary && delta.dim() >= 1 {
        let b = delta.boundary_map(delta.dim()).expect("top boundary");
        root.insert(
            "boundary_map".into(),
            match b.to_json() {
                Ok(j) => serde_json::to_value(&j).expect("matrix json"),
                Err(e) => json!({ "skipped": "error", "detail": e.to_string() }),
            },
        );
    }

    let mut polytopes = Map::new();
    if which == "homology" || which == "both" {
        polytopes.insert(
            "homology".into(),
            polytope_report(delta, Which::Homology, req, limits, requested_skips),
        );
    }
    if which == "cohomology" || which == "both" {
        polytopes.insert(
            "cohomology".into(),
            polytope_report(delta, Which::Cohomology, req, limits, requested_skips),
        );
    }
    root.insert("polytopes".into(), Value::Object(polytopes));
    Value::Object(root)
}

fn polytope_report(
    delta: &SimplicialComplex,
    which: Which,
    req: Requests,
    limits: &Limits,
    requested_skips: &mut Vec<String>,
) -> Value {
    let built = match which {
        Which::Homology => homology_polytope(delta),
        Which::Cohomology => cohomology_polytope(delta),
    };
    let p = match built {
        Ok(p) => p,
        Err(e) => return json!({ "skipped": "construction", "detail": e.to_string() }),
    };
    let mut out = Map::new();
    let mut silent = Vec::new();
    out.insert("dim".into(), json!(p.dimension()));
    out.insert("vertices".into(), json!(p.vertex_count()));
    out.insert("ambient_dim".into(), json!(p.ambient_dim));
    out.insert("purified_input".into(), json!(p.purified_input));
    out.insert("crosspolytope".into(), json!(p.is_crosspolytope()));
    out.insert(
        "elementary_divisors".into(),
        Value::Array(p.elementary_divisors().iter().map(|d| json!(d.to_string())).collect()),
    );

    let spanning = invariants::spanning_report(&p.a);
    out.insert(
        "spanning".into(),
        json!({
            "spanning": spanning.spanning,
            "alpha_max": spanning.alpha_max.to_string(),
            "not_idp_by_spanning": spanning.not_idp,
        }),
    );

    out.insert(
        "facet_count".into(),
        guarded(p.facet_count().map(|c| Value::from(c.to_string())), &mut silent),
    );

    match invariants::is_reflexive(&p) {
        Ok(v) => {
            out.insert(
                "reflexive".into(),
                json!({ "verdict": v.reflexive, "route": route_name(&v.route) }),
            );
        }
        Err(Error::Guard { guard, detail }) => {
            silent.push(guard.to_string());
            out.insert("reflexive".into(), json!({ "skipped": guard, "detail": detail }));
        }
        Err(e) => {
            out.insert("reflexive".into(), json!({ "skipped": "error", "detail": e.to_string() }));
        }
    }

    // TU status of the generator matrix
    out.insert(
        "totally_unimodular".into(),
        guarded(
            symtope_core::tu::is_totally_unimodular(&p.a, limits.max_minors)
                .map(|r| Value::from(r.is_tu())),
            &mut silent,
        ),
    );

    if req.facets {
        out.insert("facets".into(), facet_list(&p, &mut silent, requested_skips));
    }

    if req.hstar || req.hilbert {
        let en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM);
        match en {
            Ok(en) => {
                if req.hilbert {
                    match invariants::idp_report(&p, &en, None, limits.max_points, limits.max_sumset) {
                        Ok(rep) => {
                            out.insert("hstar".into(), big_vec(&rep.hstar.coefficients));
                            if let Some(g) = rep.hstar.gamma_vector() {
                                out.insert("gamma".into(), big_vec(&g));
                            }
                            out.insert(
                                "normalized_volume".into(),
                                json!(rep.hstar.normalized_volume().to_string()),
                            );
                            out.insert("hilbert_numerator".into(), big_vec(&rep.hilbert_numerator));
                            out.insert(
                                "idp".into(),
                                json!({
                                    "idp_up_to": rep.idp_up_to,
                                    "idp": rep.idp,
                                    "smallest_failing_k": rep.smallest_failing_k,
                                    "witness_count": rep.witness_count,
                                    "witnesses_capped": rep.witnesses.len() as u64 != rep.witness_count,
                                    "witnesses": rep
                                        .witnesses
                                        .iter()
                                        .take(16)
                                        .map(|w| big_vec(w))
                                        .collect::<Vec<_>>(),
                                }),
                            );
                        }
                        Err(Error::Guard { guard, detail }) => {
                            requested_skips.push(guard.to_string());
                            out.insert("hilbert".into(), json!({ "skipped": guard, "detail": detail }));
                        }
                        Err(e) => {
                            out.insert(
                                "hilbert".into(),
                                json!({ "skipped": "error", "detail": e.to_string() }),
                            );
                        }
                    }
                } else {
                    match invariants::ehrhart_hstar(&p, &en, limits.max_points) {
                        Ok(h) => {
                            out.insert("hstar".into(), big_vec(&h.coefficients));
                            if let Some(g) = h.gamma_vector() {
                                out.insert("gamma".into(), big_vec(&g));
                            }
                            out.insert(
                                "normalized_volume".into(),
                                json!(h.normalized_volume().to_string()),
                            );
                        }
                        Err(Error::Guard { guard, detail }) => {
                            requested_skips.push(guard.to_string());
                            out.insert("hstar".into(), json!({ "skipped": guard, "detail": detail }));
                        }
                        Err(e) => {
                            out.insert("hstar".into(), json!({ "skipped": "error", "detail": e.to_string() }));
                        }
                    }
                }
            }
            Err(Error::Guard { guard, detail }) => {
                requested_skips.push(guard.to_string());
                out.insert("hstar".into(), json!({ "skipped": guard, "detail": detail }));
            }
            Err(e) => {
                out.insert("hstar".into(), json!({ "skipped": "error", "detail": e.to_string() }));
            }
        }
    }

    if req.groebner || req.triangulate {
        out.insert("groebner".into(), groebner_report(&p, req, limits, requested_skips));
    }

    // model polytope routes
    out.insert(
        "model".into(),
        match equivalence::model_polytope(delta, which) {
            Ok(rep) => json!({
                "route": rep.route,
                "model": rep.model,
                "fingerprints_match": rep.matches,
            }),
            Err(e) => json!({ "skipped": "no-route", "detail": e.to_string() }),
        },
    );

    Value::Object(out)
}

fn facet_list(p: &CSPolytope, silent: &mut Vec<String>, requested: &mut Vec<String>) -> Value {
    match p.facets() {
        Ok(facets) => Value::Array(
            facets
                .iter()
                .map(|f| {
                    let pv = p.polar_vertex(f);
                    json!({
                        "normal": rational_vec(pv.ambient()),
                        "vertices": f.incident,
                        "polar_integral": pv.integral,
                    })
                })
                .collect(),
        ),
        Err(Error::Guard { guard, detail }) => {
            silent.push(guard.to_string());
            requested.push(guard.to_string());
            json!({ "skipped": guard, "detail": detail })
        }
        Err(e) => json!({ "skipped": "error", "detail": e.to_string() }),
    }
}

fn groebner_report(
    p: &CSPolytope,
    req: Requests,
    limits: &Limits,
    requested: &mut Vec<String>,
) -> Value {
    // boundary matrices are saturated (their only lattice points are the
    // vertices and the origin); for anything else run the saturation pass
    let sat = match groebner::saturate(&p.a, limits.max_points) {
        Ok(m) => m,
        Err(Error::Guard { .. }) => p.a.clone(),
        Err(e) => return json!({ "skipped": "error", "detail": e.to_string() }),
    };
    let deps = match symtope_core::circuits::minimal_dependencies(&sat, None, 10_000_000) {
        Ok(d) => d,
        Err(e) => {
            requested.push("incomplete-dependencies".into());
            return json!({ "skipped": "incomplete-dependencies", "detail": e.to_string() });
        }
    };
    let gb = match groebner::groebner_basis(&sat, &deps, groebner::DEFAULT_MAX_BINOMIALS) {
        Ok(gb) => gb,
        Err(Error::Guard { guard, detail }) => {
            requested.push(guard.to_string());
            return json!({ "skipped": guard, "detail": detail });
        }
        Err(e) => return json!({ "skipped": "error", "detail": e.to_string() }),
    };
    let diag = groebner::gb_diagnostics(&gb);
    let mut out = Map::new();
    out.insert("binomial_count".into(), json!(gb.binomials.len()));
    out.insert(
        "counts_by_type".into(),
        json!(diag.counts_by_type.iter().map(|(k, v)| (k.to_string(), *v)).collect::<std::collections::BTreeMap<_, _>>()),
    );
    out.insert("squarefree_leads".into(), json!(diag.squarefree_leads));
    out.insert("nonsquarefree_types".into(), json!(diag.nonsquarefree_types));

    // RUT obstruction only speaks for corank exactly 1
    if sat.n_cols == sat.rank() + 1 {
        out.insert(
            "rut_obstruction".into(),
            guarded(groebner::rut_obstruction(&sat).map(Value::from), &mut Vec::new()),
        );
    } else {
        out.insert("rut_obstruction".into(), json!({ "skipped": "corank", "detail": "requires corank 1" }));
    }

    // seeded division-closure spot check
    let mut rng = SplitMix64::new(limits.seed ^ 0x5eed_5eed);
    let mut pass = 0;
    const TRIALS: usize = 100;
    for _ in 0..TRIALS {
        let (m1, m2) = groebner::random_member(&gb, &mut rng, 10);
        if groebner::reduces_to_zero(&gb, &m1, &m2) {
            pass += 1;
        }
    }
    out.insert("division_trials".into(), json!({ "trials": TRIALS, "reduced_to_zero": pass }));

    if req.groebner {
        let binomials: Vec<Value> = gb
            .binomials
            .iter()
            .map(|b| {
                let expo = |m: &groebner::Monomial| {
                    let mut obj = Map::new();
                    for &(v, e) in m.exponents() {
                        obj.insert(groebner::var_name(v), json!(e));
                    }
                    Value::Object(obj)
                };
                json!({ "type": b.btype.label(), "lead": expo(&b.lead), "trail": expo(&b.trail) })
            })
            .collect();
        out.insert("binomials".into(), Value::Array(binomials));
    }

    if req.triangulate {
        match groebner::triangulation_from_gb(&gb, &sat, limits.max_cells) {
            Ok(tri) => {
                out.insert(
                    "triangulation".into(),
                    json!({
                        "cells": tri.cells.len(),
                        "total_normalized_volume": tri.total_volume().to_string(),
                        "lattice_determinant": tri.lattice_determinant.to_string(),
                        "unimodular_wrt_spanned": tri.unimodular_wrt_spanned(),
                    }),
                );
            }
            Err(Error::Guard { guard, detail }) => {
                requested.push(guard.to_string());
                out.insert("triangulation".into(), json!({ "skipped": guard, "detail": detail }));
            }
            Err(e) => {
                out.insert("triangulation".into(), json!({ "skipped": "error", "detail": e.to_string() }));
            }
        }
    }
    Value::Object(out)
}

pub fn compare(name_a: &str, a: &SimplicialComplex, name_b: &str, b: &SimplicialComplex) -> Value {
    let fp = |delta: &SimplicialComplex, which| -> Value {
        let built = match which {
            Which::Homology => homology_polytope(delta),
            Which::Cohomology => cohomology_polytope(delta),
        };
        match built {
            Ok(p) => {
                let f = equivalence::fingerprint(&p);
                json!({
                    "dim": f.dim,
                    "vertices": f.vertex_count,
                    "facets": f.facet_count.map(|c| c.to_string()),
                    "normalized_volume": f.normalized_volume.map(|v| v.to_string()),
                    "hstar": f.hstar.map(|h| h.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                })
            }
            Err(e) => json!({ "skipped": "construction", "detail": e.to_string() }),
        }
    };
    let mut out = Map::new();
    out.insert("schema".into(), json!("symtope/1"));
    out.insert(
        "a".into(),
        json!({ "name": name_a, "homology_polytope": fp(a, Which::Homology), "cohomology_polytope": fp(a, Which::Cohomology) }),
    );
    out.insert(
        "b".into(),
        json!({ "name": name_b, "homology_polytope": fp(b, Which::Homology), "cohomology_polytope": fp(b, Which::Cohomology) }),
    );
    let iso = equivalence::shellable_sphere_equivalence(a, b);
    out.insert(
        "facet_ridge_graphs_isomorphic".into(),
        match iso {
            Ok(v) => json!(v),
            Err(e) => json!({ "skipped": "guard", "detail": e.to_string() }),
        },
    );
    Value::Object(out)
}

pub fn sweep_subcomplexes(name: &str, delta: &SimplicialComplex) -> Result<Value, Error> {
    let d = delta.dim();
    if d == 0 {
        return Err(Error::Precondition("sweep needs dim ≥ 1".into()));
    }
    let top: Vec<usize> = delta
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.len() == d + 1)
        .map(|(i, _)| i)
        .collect();
    let s = top.len();
    if s > 20 {
        return Err(Error::guard("max-sweep-facets", format!("{s} top facets")));
    }
    let whole = homology_polytope(delta)?;
    let whole_reflexive = invariants::is_reflexive(&whole).map(|v| v.reflexive).ok();
    let mut reflexive = 0u64;
    let mut nonreflexive = 0u64;
    let mut undecided = 0u64;
    let mut nonreflexive_examples: Vec<Vec<usize>> = Vec::new();
    for mask in 1u64..(1 << s) {
        let picked: Vec<usize> =
            (0..s).filter(|&i| mask & (1 << i) != 0).map(|i| top[i]).collect();
        let gamma = delta.facet_subcomplex(&picked)?;
        let boundary = gamma.boundary_map(gamma.dim())?;
        let p = match CSPolytope::from_matrix(&boundary) {
            Ok(p) => p,
            Err(_) => {
                undecided += 1;
                continue;
            }
        };
        match invariants::is_reflexive(&p) {
            Ok(v) if v.reflexive => reflexive += 1,
            Ok(_) => {
                nonreflexive += 1;
                if nonreflexive_examples.len() < 20 {
                    nonreflexive_examples.push(picked);
                }
            }
            Err(_) => undecided += 1,
        }
    }
    Ok(json!({
        "schema": "symtope/1",
        "name": name,
        "experiment": "subcomplex-reflexivity-sweep",
        "whole_reflexive": whole_reflexive,
        "subcomplexes": (1u64 << s) - 1,
        "reflexive": reflexive,
        "nonreflexive": nonreflexive,
        "undecided": undecided,
        "nonreflexive_facet_sets": nonreflexive_examples,
        "counterexample_to_hereditary_reflexivity":
            whole_reflexive == Some(true) && nonreflexive > 0,
    }))
}

/// Plain-text table rendering of a JSON report tree.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(val, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                if items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))) {
                    out.push_str(&format!(
                        "{pad}[{}]\n",
                        items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
                    ));
                } else if items.len() > 24 {
                    out.push_str(&format!("{pad}({} entries)\n", items.len()));
                } else {
                    for item in items {
                        walk(item, indent + 1, out);
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{v}\n")),
        }
    }
    walk(v, 0, &mut out);
    out
}
