//! The shipped fixtures.

use crate::actions::{ModuleAlgebra, RightModule};
use crate::hopf::examples::{function_algebra, group_algebra, sweedler, trivial_hopf, FiniteGroup};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::error::{EngineError, Result};
use crate::homogeneous::s3_z2;
use crate::index::{f2_index_upgrade, worked_index};
use crate::io::Document;
use crate::ktheory::{check_idempotent, unit_of};
use crate::linalg::{Accumulator, SparseVec};

/// A Hopf algebra together with a module algebra over it.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub h: HopfPresentation,
    pub b: ModuleAlgebra,
}

/// F1: `H = k`, `B = k`.
pub fn f1() -> Fixture {
    let h = trivial_hopf();
    let b = ModuleAlgebra::trivial(AlgebraPresentation::ground(), &h);
    Fixture { name: "trivial", h, b }
}

/// F2: `B = C(Z/2)` on `δ₀, δ₁`, with the generator of `H = C[Z/2]`
/// swapping the two points.
pub fn f2() -> Fixture {
    let h = group_algebra(&FiniteGroup::cyclic(2));
    let b_alg = function_algebra(&FiniteGroup::cyclic(2)).alg;
    let module = RightModule::from_fn(2, 2, |i, j| SparseVec::unit(if j == 0 { i } else { 1 - i }));
    Fixture {
        name: "f2",
        h,
        b: ModuleAlgebra { alg: b_alg, module },
    }
}

/// F3: Sweedler's algebra acting on itself by `b ◁ ω = S(ω₍₀₎)bω₍₁₎`.
pub fn f3() -> Fixture {
    let h = sweedler();
    let hc = h.clone();
    let module = RightModule::from_fn(4, 4, move |i, j| {
        let mut acc = Accumulator::new();
        for (a, b, c) in hc.coproduct_terms(j) {
            let l = hc.s(&SparseVec::unit(a));
            let v = hc.mul(&hc.mul(&l, &SparseVec::unit(i)), &SparseVec::unit(b));
            acc.push_scaled(&v, &c);
        }
        acc.finish()
    });
    Fixture {
        name: "f3",
        b: ModuleAlgebra {
            alg: h.alg.clone(),
            module,
        },
        h,
    }
}

/// Names accepted by [`named`].
pub const NAMES: [&str; 8] = [
    "trivial",
    "f2",
    "sweedler-h4",
    "f3",
    "s3-z2",
    "worked-index",
    "f2-index-upgrade",
    "f2-unit",
];

/// The fixture document of the given name.
pub fn named(name: &str) -> Result<Document> {
    let pair = |f: Fixture| Document::ModuleAlgebra { h: f.h, b: f.b };
    Ok(match name {
        "trivial" => pair(f1()),
        "f2" => pair(f2()),
        "sweedler-h4" => Document::Hopf(sweedler()),
        "f3" => pair(f3()),
        "s3-z2" => Document::Subgroup(s3_z2()),
        "worked-index" => Document::Fredholm(worked_index()),
        "f2-index-upgrade" => Document::Fredholm(f2_index_upgrade()),
        "f2-unit" => {
            let f = f2();
            let x = RightModule::trivial(1, &f.h);
            let p = check_idempotent(&x, &f.b, &f.h, &unit_of(1, &f.b))?;
            Document::Idempotent { h: f.h, b: f.b, p }
        }
        other => return Err(EngineError::UnknownFixture(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_document, to_pretty, to_value};

    #[test]
    fn named_fixtures_round_trip() {
        for name in NAMES {
            let doc = named(name).unwrap();
            let text = to_pretty(&to_value(&doc));
            let back = parse_document(&text).unwrap();
            assert_eq!(back.kind(), doc.kind(), "{name}");
            assert_eq!(to_pretty(&to_value(&back)), text, "{name}");
        }
        assert!(matches!(named("f9"), Err(EngineError::UnknownFixture(_))));
    }

    #[test]
    fn fixtures_verify() {
        for f in [f1(), f2(), f3()] {
            assert!(f.h.verify().all_passed(), "{}", f.name);
            let r = f.b.verify(&f.h);
            assert!(r.all_passed(), "{}: {r}", f.name);
        }
    }
}
