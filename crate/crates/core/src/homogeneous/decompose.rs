//! `K₀` of the quotient: blocks of `B⋊Â` labelled by `Irr(A₀)` and the
//! decomposition of equivariant modules into the `X_t`.

use serde::Serialize;

use super::spectral::{classes, full_module, spectral_subspace, SpectralModule};
use super::{quotient, QuotientSpace, SubgroupDatum};
use crate::actions::{crossed_product, CrossedProduct, ModuleAlgebra, RightModule};
use crate::error::{EngineError, Result};
use crate::hopf::{wedderburn_blocks, BlockDecomposition, HopfPresentation};
use crate::ktheory::{invariant_idempotents, iso_test, julg_forward, multiplicities, InvariantIdempotent};
use crate::report::{CheckEntry, CheckReport};

/// Everything needed to decompose modules over `B⋊Â`.
#[derive(Clone, Debug)]
pub struct HomogeneousSpace {
    pub quotient: QuotientSpace,
    pub dual: HopfPresentation,
    pub b: ModuleAlgebra,
    pub cp: CrossedProduct,
    pub spectral: Vec<SpectralModule>,
    pub blocks: CrossedBlocks,
}

/// The simple blocks of `B⋊Â` and the class `t` with `X_t` in each block.
#[derive(Clone, Debug, Serialize)]
pub struct CrossedBlocks {
    pub sizes: Vec<usize>,
    pub class_of_block: Vec<usize>,
    #[serde(skip)]
    pub decomposition: BlockDecomposition,
    pub report: CheckReport,
}

impl HomogeneousSpace {
    pub fn new(sd: &SubgroupDatum) -> Result<Self> {
        let q = quotient(sd)?;
        let dual = sd.a.dual();
        let b = q.coaction.module_algebra();
        let cp = crossed_product(&b, &dual);
        let reps = classes(&q)?;
        let spectral = crate::par::map_range(reps.len(), |t| spectral_subspace(&q, &reps, t))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let blocks = crossed_blocks(&cp, &spectral)?;
        Ok(HomogeneousSpace {
            quotient: q,
            dual,
            b,
            cp,
            spectral,
            blocks,
        })
    }

    pub fn class_count(&self) -> usize {
        self.spectral.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spectral.iter().map(|s| s.dim()).collect()
    }

    /// `⊕_t X_t^{n_t}`, `None` for the zero module.
    pub fn sum_module(&self, mult: &[usize]) -> Option<RightModule> {
        let mut out: Option<RightModule> = None;
        for (s, &n) in self.spectral.iter().zip(mult) {
            for _ in 0..n {
                out = Some(match out {
                    None => s.module.clone(),
                    Some(m) => m.direct_sum(&s.module),
                });
            }
        }
        out
    }

    /// `A` itself, `a·(b⊗ω) = (ab)◁ω`.
    pub fn function_module(&self) -> RightModule {
        full_module(&self.quotient, 1, &self.cp)
    }

    /// The checks of the quotient, the subspaces and the blocks together.
    pub fn report(&self) -> CheckReport {
        let mut r = CheckReport::new();
        r.extend_prefixed("quotient: ", self.quotient.report.clone());
        for s in &self.spectral {
            r.extend_prefixed(&format!("X_{}: ", s.class), s.report.clone());
        }
        r.extend_prefixed("blocks: ", self.blocks.report.clone());
        r
    }
}

/// Labels the blocks of `B⋊Â` by the classes through the multiplicities of
/// the `X_t`: each `X_t` must be simple and the labelling a bijection.
pub fn crossed_blocks(cp: &CrossedProduct, spectral: &[SpectralModule]) -> Result<CrossedBlocks> {
    let decomposition = wedderburn_blocks(&cp.alg)?;
    let sizes = decomposition.sizes();
    let mut report = CheckReport::new();
    report.push(CheckEntry::single(
        "number of blocks = |Irr(A0)|",
        sizes.len() == spectral.len(),
    ));
    let mut simple = CheckEntry::new("X_t is simple");
    let mut class_of_block = vec![usize::MAX; sizes.len()];
    for s in spectral {
        let m = multiplicities(&s.module, &cp.alg)?;
        let hit: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
        let ok = hit.len() == 1 && m[hit[0]] == 1 && sizes[hit[0]] == s.dim();
        simple.record(ok, vec![s.class]);
        if ok {
            if class_of_block[hit[0]] != usize::MAX {
                return Err(EngineError::DecompositionFailed(format!(
                    "classes {} and {} share block {}",
                    class_of_block[hit[0]], s.class, hit[0]
                )));
            }
            class_of_block[hit[0]] = s.class;
        }
    }
    report.push(simple);
    let mut bij = CheckEntry::new("blocks labelled bijectively by Irr(A0)");
    for (i, &c) in class_of_block.iter().enumerate() {
        bij.record(c != usize::MAX, vec![i]);
    }
    report.push(bij);
    Ok(CrossedBlocks {
        sizes,
        class_of_block,
        decomposition,
        report,
    })
}

/// `X_p = p(X⊗B)` as a `B⋊Â`-module.
pub fn module_of_idempotent(hs: &HomogeneousSpace, p: &InvariantIdempotent) -> Result<RightModule> {
    Ok(julg_forward(p, &hs.b, &hs.dual, &hs.cp)?.x_p)
}

/// `M ≅ ⊕_t X_t^{n_t}`, certified by an explicit isomorphism.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub multiplicities: Vec<usize>,
    pub dim: usize,
    pub iso: String,
}

pub fn decompose_equivariant(hs: &HomogeneousSpace, m: &RightModule, seed: u64) -> Result<Decomposition> {
    if m.hdim != hs.cp.alg.dim {
        return Err(EngineError::Dimension(format!(
            "module over an algebra of dimension {}, expected {}",
            m.hdim, hs.cp.alg.dim
        )));
    }
    let blocks = &hs.blocks;
    if blocks.class_of_block.contains(&usize::MAX) {
        return Err(EngineError::DecompositionFailed("blocks are not labelled".into()));
    }
    let by_block = multiplicities(m, &hs.cp.alg)?;
    let mut mult = vec![0; hs.class_count()];
    for (i, &n) in by_block.iter().enumerate() {
        mult[blocks.class_of_block[i]] = n;
    }
    let iso = match hs.sum_module(&mult) {
        None if m.dim == 0 => "certified-iso".to_string(),
        None => return Err(EngineError::DecompositionFailed("nonzero module without blocks".into())),
        Some(s) => {
            let r = iso_test(m, &s, &hs.cp.alg, seed, 16);
            if !r.is_certified_iso() {
                return Err(EngineError::DecompositionFailed(format!(
                    "multiplicities {mult:?} give {}",
                    r.tag()
                )));
            }
            r.tag().to_string()
        }
    };
    Ok(Decomposition {
        multiplicities: mult,
        dim: m.dim,
        iso,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyRow {
    pub x_type: Vec<usize>,
    pub ranks: Vec<usize>,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSurvey {
    pub max_dim: usize,
    pub rows: Vec<SurveyRow>,
    /// Nonzero multiplicity vectors `n` with `Σ n_t dim X_t ≤ max_dim`.
    pub expected: Vec<Vec<usize>>,
    pub report: CheckReport,
}

fn vectors_up_to(dims: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().zip(dims).map(|(m, d)| m * d).sum();
            for m in 0..=(budget - used) / d.max(1) {
                let mut w = v.clone();
                w.push(m);
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().any(|&m| m > 0));
    out
}

/// Every module `X_p` with `dim X ≤ max_dim / dim B` and `dim X_p ≤ max_dim`,
/// decomposed and certified; every multiplicity vector within the bound
/// must be reached.
pub fn decomposition_survey(hs: &HomogeneousSpace, max_dim: usize, seed: u64) -> Result<DecompositionSurvey> {
    let bdim = hs.quotient.bdim().max(1);
    let mut rows = Vec::new();
    for sm in invariant_idempotents(&hs.b, &hs.dual, max_dim / bdim)? {
        let m = module_of_idempotent(hs, &sm.p)?;
        if m.dim > max_dim {
            continue;
        }
        rows.push(SurveyRow {
            x_type: sm.x_type,
            ranks: sm.ranks,
            decomposition: decompose_equivariant(hs, &m, seed)?,
        });
    }
    let dims = hs.dims();
    let expected = vectors_up_to(&dims, max_dim);
    let mut report = CheckReport::new();
    let mut dim_ok = CheckEntry::new("dim M = sum n_t dim X_t");
    for (i, r) in rows.iter().enumerate() {
        let d: usize = r.decomposition.multiplicities.iter().zip(&dims).map(|(n, d)| n * d).sum();
        dim_ok.record(d == r.decomposition.dim, vec![i]);
    }
    report.push(dim_ok);
    let mut reached = CheckEntry::new("every multiplicity vector reached");
    for (i, v) in expected.iter().enumerate() {
        reached.record(rows.iter().any(|r| &r.decomposition.multiplicities == v), vec![i]);
    }
    report.push(reached);
    Ok(DecompositionSurvey {
        max_dim,
        rows,
        expected,
        report,
    })
}
