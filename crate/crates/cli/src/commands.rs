//! One function per subcommand, each returning results and checks.

use std::path::PathBuf;

use hopf_cyclic::actions::{crossed_product, ModuleAlgebra};
use hopf_cyclic::cocyclic::{cyclic_total, hochschild, lambda_cohomology, periodic, CohomologyResult};
use hopf_cyclic::equivariant::{
    build_equivariant, build_nonequivariant, build_twisted, rho_star_matrix, twist_of, EquivariantComplex,
};
use hopf_cyclic::fixtures::{self, NAMES};
use hopf_cyclic::homogeneous::{decomposition_survey, quotient, verify_subgroup, HomogeneousSpace};
use hopf_cyclic::hopf::HopfPresentation;
use hopf_cyclic::index::{
    index_theorem_check, ind_f, modular_element, q_ind, twisted_index_check, verify_fredholm,
    EquivariantFredholmModule,
};
use hopf_cyclic::io::{from_value, to_pretty, to_value, Document};
use hopf_cyclic::ktheory::{
    check_idempotent, k0_semisimple, k0_survey, pair_even, pair_odd, pair_twisted, InvariantIdempotent,
};
use hopf_cyclic::linalg::{scalar_to_json, Scalar, SparseVec};
use hopf_cyclic::report::{CheckEntry, CheckReport};
use hopf_cyclic::actions::RightModule;
use hopf_cyclic::EngineError;
use serde_json::{json, Map, Value};

use crate::{parse_element, CliError, Command, JobConfig, Theory};

type Output = Result<(Value, CheckReport), CliError>;

fn wrong_kind(cmd: &Command, doc: &Document, want: &str) -> CliError {
    CliError::Usage(format!("{} needs a {want} document, got `{}`", cmd.name(), doc.kind()))
}

fn element(s: &Option<String>, h: &HopfPresentation) -> Result<Option<SparseVec>, CliError> {
    s.as_deref().map(|s| parse_element(s, h.dim(), &h.one(), &[])).transpose()
}

fn scalar(s: &Scalar) -> Value {
    let v = scalar_to_json(s);
    match v.as_array().map(|a| a.as_slice()) {
        Some([single]) => single.clone(),
        _ => v,
    }
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub(crate) fn dispatch(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    match cmd {
        Command::Verify => Ok(verify(doc)),
        Command::Cohomology => cohomology(cmd, doc, config),
        Command::Pair => pair(cmd, doc, config),
        Command::Ktheory => ktheory(cmd, doc, config),
        Command::Index => index(cmd, doc, config),
        Command::Homogeneous => homogeneous(cmd, doc, config),
        Command::Fixtures { name, out } => fixtures(name, out.as_ref()),
    }
}

fn module_algebra_checks(h: &HopfPresentation, b: &ModuleAlgebra) -> CheckReport {
    let mut r = CheckReport::new();
    r.extend_prefixed("hopf: ", h.verify());
    r.extend_prefixed("module algebra: ", b.verify(h));
    r
}

fn verify(doc: &Document) -> (Value, CheckReport) {
    let mut r = CheckReport::new();
    let results = match doc {
        Document::Hopf(h) => {
            r = h.verify();
            json!({ "kind": doc.kind(), "dim": h.dim() })
        }
        Document::ModuleAlgebra { h, b } => {
            r = module_algebra_checks(h, b);
            json!({ "kind": doc.kind(), "hopf_dim": h.dim(), "algebra_dim": b.dim() })
        }
        Document::Idempotent { h, b, p } => {
            r = module_algebra_checks(h, b);
            r.extend_prefixed("module: ", p.x.verify(h));
            r.push(CheckEntry::single("p is an invariant idempotent", true));
            json!({ "kind": doc.kind(), "hopf_dim": h.dim(), "algebra_dim": b.dim(), "module_dim": p.x.dim })
        }
        Document::Invertible { h, b, u } => {
            r = module_algebra_checks(h, b);
            r.extend_prefixed("module: ", u.x.verify(h));
            r.push(CheckEntry::single("u is an invariant invertible", true));
            json!({ "kind": doc.kind(), "hopf_dim": h.dim(), "algebra_dim": b.dim(), "module_dim": u.x.dim })
        }
        Document::Fredholm(fm) => {
            r = verify_fredholm(fm);
            json!({
                "kind": doc.kind(),
                "hopf_dim": fm.coaction.a.dim(),
                "algebra_dim": fm.coaction.b.dim,
                "space_dim": fm.dim(),
            })
        }
        Document::Subgroup(sd) => {
            r.extend_prefixed("subgroup: ", verify_subgroup(sd));
            let mut out = json!({ "kind": doc.kind(), "dim_A": sd.a.dim(), "dim_A0": sd.a0.dim() });
            if r.all_passed() {
                match quotient(sd) {
                    Ok(q) => {
                        out["dim_B"] = json!(q.bdim());
                        r.extend_prefixed("quotient: ", q.report);
                    }
                    Err(e) => r.push(CheckEntry::single("quotient", false).with_detail(e.to_string())),
                }
            }
            out
        }
    };
    (results, r)
}

fn module_algebra_of<'a>(cmd: &Command, doc: &'a Document) -> Result<(&'a HopfPresentation, &'a ModuleAlgebra), CliError> {
    match doc {
        Document::ModuleAlgebra { h, b } | Document::Idempotent { h, b, .. } | Document::Invertible { h, b, .. } => {
            Ok((h, b))
        }
        _ => Err(wrong_kind(cmd, doc, "module-algebra")),
    }
}

fn twisted_complex(b: &ModuleAlgebra, rho: &SparseVec, h: &HopfPresentation, level: usize, budget: usize) -> Result<EquivariantComplex, CliError> {
    if !h.is_group_like(rho) {
        return Err(EngineError::Invalid("rho is not group-like".into()).into());
    }
    Ok(build_twisted(&b.alg, &twist_of(b, rho), level, budget)?)
}

fn cohomology(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    let (h, b) = module_algebra_of(cmd, doc)?;
    let top = config.max_degree;
    let level = match config.theory {
        Theory::Periodic => (top + 2).max(7),
        _ => top + 2,
    };
    let c = match config.theory {
        Theory::Classical => build_nonequivariant(&b.alg, level, config.budget)?,
        Theory::Twisted => {
            let rho = element(&config.rho, h)?
                .ok_or_else(|| CliError::Usage("--theory twisted needs --rho".into()))?;
            twisted_complex(b, &rho, h, level, config.budget)?
        }
        _ => build_equivariant(b, h, level, config.budget)?,
    };
    let mut checks = CheckReport::new();
    checks.extend_prefixed("complex: ", c.materialize(level));
    let o = &c.object;
    let mut results = json!({
        "theory": config.theory.name(),
        "max_level": level,
        "cochain_dims": (0..=level).map(|n| c.dim(n)).collect::<Vec<_>>(),
    });
    if config.theory == Theory::Periodic {
        let mut rows = Vec::new();
        for parity in 0..2 {
            let p = periodic(o, parity)?;
            rows.push(json!({ "parity": parity, "dim": p.dim, "stabilized": p.stabilized, "window": p.window }));
        }
        results["periodic"] = Value::Array(rows);
        return Ok((results, checks));
    }
    let degrees: Vec<CohomologyResult> = (0..=top)
        .map(|n| match config.theory {
            Theory::Hochschild => hochschild(o, n),
            Theory::Lambda => lambda_cohomology(o, n),
            _ => cyclic_total(o, n),
        })
        .collect::<Result<_, _>>()?;
    if matches!(config.theory, Theory::Cyclic | Theory::Classical | Theory::Twisted) {
        let mut eq = CheckEntry::new("dim HC^n = dim H_lambda^n");
        for (n, r) in degrees.iter().enumerate() {
            eq.record(lambda_cohomology(o, n)?.dim() == r.dim(), vec![n]);
        }
        checks.push(eq);
    }
    results["dims"] = json!(degrees.iter().map(CohomologyResult::dim).collect::<Vec<_>>());
    results["degrees"] = Value::Array(degrees.iter().map(CohomologyResult::to_json).collect());
    Ok((results, checks))
}

fn pair(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    let (h, b) = match doc {
        Document::Idempotent { h, b, .. } | Document::Invertible { h, b, .. } => (h, b),
        _ => return Err(wrong_kind(cmd, doc, "idempotent or invertible")),
    };
    let parity = usize::from(matches!(doc, Document::Invertible { .. }));
    let level = config.max_degree + 2;
    let c = build_equivariant(b, h, level, config.budget)?;
    let omega = element(&config.omega, h)?;
    let rho = element(&config.rho, h)?;
    let tw = match (&rho, doc) {
        (Some(r), Document::Idempotent { .. }) => Some(twisted_complex(b, r, h, level, config.budget)?),
        _ => None,
    };
    let mut checks = CheckReport::new();
    let mut invariant = CheckEntry::new("pairing is H-invariant");
    let mut exact = CheckEntry::new("coboundaries pair to zero");
    let mut square = CheckEntry::new("<rho_* f, p>_rho = <f, p>(rho)");
    let mut rows = Vec::new();
    for n in (parity..=config.max_degree).step_by(2) {
        let lam = lambda_cohomology(&c.object, n)?;
        let apply = |f: &SparseVec| match doc {
            Document::Idempotent { p, .. } => pair_even(&c, n, f, p),
            Document::Invertible { u, .. } => pair_odd(&c, n, f, u, b),
            _ => unreachable!(),
        };
        for (k, beta) in lam.space.boundaries.iter().enumerate() {
            exact.record(apply(beta)?.is_zero(), vec![n, k]);
        }
        let rs = match (&rho, &tw) {
            (Some(r), Some(t)) => Some(rho_star_matrix(&c, t, r, n)?),
            _ => None,
        };
        for (k, z) in lam.representatives().iter().enumerate() {
            let f = apply(z)?;
            invariant.record(f.invariance_defects(h) == 0, vec![n, k]);
            let mut row = json!({ "degree": n, "class": k, "values": scalars(&f.values) });
            if let Some(w) = &omega {
                row["at_omega"] = scalar(&f.eval(w));
            }
            if let (Some(r), Some(t), Some(m), Document::Idempotent { p, .. }) = (&rho, &tw, &rs, doc) {
                let lhs = pair_twisted(t, n, &m.mul_vec(z), p, r, h)?;
                square.record(lhs == f.eval(r), vec![n, k]);
                row["twisted"] = scalar(&lhs);
            }
            rows.push(row);
        }
    }
    checks.push(invariant);
    checks.push(exact);
    if tw.is_some() {
        checks.push(square);
    }
    let results = json!({ "kind": doc.kind(), "max_degree": config.max_degree, "pairings": rows });
    Ok((results, checks))
}

fn ktheory(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    let (h, b) = module_algebra_of(cmd, doc)?;
    let cp = crossed_product(b, h);
    let k0 = k0_semisimple(&cp)?;
    let max_xdim = config.max_dim.unwrap_or(4);
    let survey = k0_survey(b, h, &cp, max_xdim, config.seed)?;
    let mut checks = CheckReport::new();
    checks.extend_prefixed("survey: ", survey.report.clone());
    let results = json!({
        "crossed_product_dim": cp.alg.dim,
        "k0_rank": k0.rank,
        "block_sizes": k0.block_sizes,
        "max_x_dim": max_xdim,
        "group_rank": survey.group_rank,
        "entries": survey.entries,
    });
    Ok((results, checks))
}

/// `p` on the trivial one-dimensional module: basis idempotents of `B`
/// that are invariant, then the unit.
fn index_candidates(fm: &EquivariantFredholmModule) -> Vec<(String, InvariantIdempotent)> {
    let dual = fm.coaction.dual();
    let b = fm.coaction.module_algebra();
    let x = RightModule::trivial(1, &dual);
    let unit = b.alg.unit.clone();
    let mut out: Vec<(String, InvariantIdempotent)> = (0..b.dim())
        .map(|i| (format!("e{i}"), SparseVec::unit(i)))
        .chain(std::iter::once(("1".to_string(), unit)))
        .filter_map(|(name, p)| check_idempotent(&x, &b, &dual, &p).ok().map(|p| (name, p)))
        .collect();
    let mut seen = Vec::new();
    out.retain(|(_, p)| {
        let fresh = !seen.contains(&p.p);
        seen.push(p.p.clone());
        fresh
    });
    out
}

fn index(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    let Document::Fredholm(fm) = doc else {
        return Err(wrong_kind(cmd, doc, "fredholm"));
    };
    let mut checks = CheckReport::new();
    checks.extend_prefixed("module: ", verify_fredholm(fm));
    if !checks.all_passed() {
        return Ok((json!({ "kind": doc.kind() }), checks));
    }
    let dual = fm.coaction.dual();
    let omega = element(&config.omega, &dual)?;
    let rho = match element(&config.rho, &dual)? {
        Some(r) => Some(r),
        None => match modular_element(&dual) {
            Ok(m) => Some(m.rho),
            Err(EngineError::NoModularGroupLike) => None,
            Err(e) => return Err(e.into()),
        },
    };
    let degrees: Vec<usize> = (0..=config.max_degree / 2).collect();
    let mut rows = Vec::new();
    let mut consistent = CheckEntry::new("q-Ind_F p = (Ind_F p)(rho)");
    for (name, p) in index_candidates(fm) {
        let ind = ind_f(fm, &p)?;
        let mut row = json!({
            "p": name,
            "values": scalars(&ind.values),
            "at_block_projections": scalars(&ind.at_block_projections(&dual)?),
            "kernel_dim": ind.kernel_dim,
            "cokernel_dim": ind.cokernel_dim,
        });
        if let Some(w) = &omega {
            row["at_omega"] = scalar(&ind.eval(w));
        }
        for &n in &degrees {
            checks.extend_prefixed(&format!("p = {name}: "), index_theorem_check(fm, &p, n, config.budget)?);
        }
        if let Some(r) = &rho {
            let q = q_ind(fm, &p, r)?;
            consistent.record(q == ind.eval(r), vec![rows.len()]);
            row["q_ind"] = scalar(&q);
            for &n in &degrees {
                checks.extend_prefixed(&format!("p = {name}: "), twisted_index_check(fm, &p, r, n, config.budget)?);
            }
        }
        rows.push(row);
    }
    if rho.is_some() {
        checks.push(consistent);
    }
    let results = json!({
        "hopf_dim": fm.coaction.a.dim(),
        "algebra_dim": fm.coaction.b.dim,
        "degrees": degrees.iter().map(|n| 2 * n).collect::<Vec<_>>(),
        "rho": rho.map(|r| scalars(&r.to_dense(dual.dim()))),
        "indices": rows,
    });
    Ok((results, checks))
}

fn homogeneous(cmd: &Command, doc: &Document, config: &JobConfig) -> Output {
    let Document::Subgroup(sd) = doc else {
        return Err(wrong_kind(cmd, doc, "subgroup"));
    };
    let mut checks = CheckReport::new();
    checks.extend_prefixed("subgroup: ", verify_subgroup(sd));
    if !checks.all_passed() {
        return Ok((json!({ "kind": doc.kind() }), checks));
    }
    let hs = HomogeneousSpace::new(sd)?;
    for e in hs.report().entries {
        checks.push(e);
    }
    let max_dim = config.max_dim.unwrap_or(12);
    let survey = decomposition_survey(&hs, max_dim, config.seed)?;
    checks.extend_prefixed("survey: ", survey.report.clone());
    let classes: Vec<Value> = hs
        .spectral
        .iter()
        .map(|s| {
            json!({
                "class": s.class,
                "corep_dim": s.v.dim,
                "dim_A_t": s.a_t.dim(),
                "dim_X_t": s.dim(),
                "generators": s.generators.len(),
            })
        })
        .collect();
    let results = json!({
        "dim_A": sd.a.dim(),
        "dim_A0": sd.a0.dim(),
        "dim_B": hs.quotient.bdim(),
        "crossed_product_dim": hs.cp.alg.dim,
        "classes": classes,
        "blocks": { "sizes": hs.blocks.sizes, "class_of_block": hs.blocks.class_of_block },
        "survey": { "max_dim": max_dim, "expected": survey.expected.len(), "rows": survey.rows },
    });
    Ok((results, checks))
}

pub(crate) fn fixtures(name: &str, out: Option<&PathBuf>) -> Output {
    let names: Vec<&str> = if name == "all" { NAMES.to_vec() } else { vec![name] };
    let mut checks = CheckReport::new();
    let mut docs = Map::new();
    let mut written = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    for n in names {
        let doc = fixtures::named(n)?;
        let v = to_value(&doc);
        let text = to_pretty(&v);
        let back: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?;
        let reparsed = from_value(&back)?;
        checks.push(CheckEntry::single(format!("{n}: re-parses to the same document"), to_value(&reparsed) == v));
        checks.extend_prefixed(&format!("{n}: "), verify(&reparsed).1);
        match out {
            Some(dir) => {
                let path = dir.join(format!("{n}.json"));
                std::fs::write(&path, &text)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            None => {
                docs.insert(n.to_string(), v);
            }
        }
    }
    let results = match out {
        Some(_) => json!({ "written": written }),
        None if name != "all" => docs.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
        None => Value::Object(docs),
    };
    Ok((results, checks))
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || is_leaf(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Indented `key: value` lines, with scalar arrays kept on one line.
pub(crate) fn table_results(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_leaf(x) {
                    out.push_str(&format!("{prefix}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{prefix}{k}:\n"));
                    table_results(x, &format!("{prefix}  "), out);
                }
            }
        }
        Value::Array(a) if !is_leaf(v) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{prefix}- [{i}]\n"));
                table_results(x, &format!("{prefix}  "), out);
            }
        }
        other => out.push_str(&format!("{prefix}{}\n", inline(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hopf_cyclic::index::worked_index;

    #[test]
    fn table_layout() {
        let v = json!({ "dims": [1, 0, 1], "rows": [{ "p": "e0" }], "name": "x" });
        let mut out = String::new();
        table_results(&v, "", &mut out);
        assert_eq!(out, "dims: [1, 0, 1]\nname: x\nrows:\n  - [0]\n    p: e0\n");
    }

    #[test]
    fn worked_candidates() {
        let names: Vec<String> = index_candidates(&worked_index()).into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, ["e0", "e1", "1"]);
    }

    #[test]
    fn single_scalars_are_flattened() {
        assert_eq!(scalar(&Scalar::from_frac(-1, 2)), json!("-1/2"));
        assert_eq!(scalars(&[Scalar::one()]), json!(["1"]));
    }
}
