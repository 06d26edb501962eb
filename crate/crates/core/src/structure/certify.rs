use serde::Serialize;

use crate::axioms::AxiomChecker;
use crate::choice::{ChoiceFunction, GroundSet, LinearOrder, Menu};
use crate::error::{Error, Result};
use crate::revealed::RevealedReport;

use super::{synthesize_rs, RSStructure};

/// Per-type outcome of the threshold search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCertificate {
    pub block: Menu,
    /// The `≿₁`-lowest admissible threshold `x*_T`.
    pub threshold: Option<usize>,
    /// `≿₂`-best option of `[min(T, ≿₁), x*_T]`.
    pub peak: Option<usize>,
    /// Every admissible threshold.
    pub admissible: Menu,
    /// When no threshold works: `x ≺₁ y ≺₁ z` with `y` below both in `≿₂`.
    pub violation: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinglePeakedCertificate {
    pub types: Vec<TypeCertificate>,
    pub verified: bool,
}

impl SinglePeakedCertificate {
    /// Threshold of the type at `block_index`; panics on unverified types.
    pub fn threshold(&self, block_index: usize) -> usize {
        self.types[block_index].threshold.expect("type not certified")
    }

    pub fn peak(&self, block_index: usize) -> usize {
        self.types[block_index].peak.expect("type not certified")
    }

    pub fn to_named(&self, ground: &GroundSet) -> NamedCertificate {
        let name = |x: usize| ground.name(x).to_string();
        NamedCertificate {
            verified: self.verified,
            types: self
                .types
                .iter()
                .map(|t| NamedTypeCertificate {
                    members: ground.names(t.block),
                    threshold: t.threshold.map(name),
                    peak: t.peak.map(name),
                    admissible_thresholds: ground.names(t.admissible),
                    violation: t.violation.map(|v| v.map(name).to_vec()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCertificate {
    pub verified: bool,
    pub types: Vec<NamedTypeCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedTypeCertificate {
    pub members: Vec<String>,
    pub threshold: Option<String>,
    pub peak: Option<String>,
    pub admissible_thresholds: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<String>>,
}

/// First triple `a ≺₁ b ≺₁ c` of `chain` (best-first) whose middle is
/// below both ends in `≿₂`.
fn dip(chain: &[usize], reaction: &LinearOrder) -> Option<[usize; 3]> {
    let k = chain.len();
    for hi in 0..k {
        for mid in hi + 1..k {
            for lo in mid + 1..k {
                let (a, b, c) = (chain[lo], chain[mid], chain[hi]);
                if reaction.prefers(a, b) && reaction.prefers(c, b) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn certify_type(s: &RSStructure, block: Menu) -> TypeCertificate {
    let chain = s.welfare().sorted(block);
    let r = s.reaction();
    let mut admissible = Menu::EMPTY;
    let mut best = None;
    for i in 0..chain.len() {
        // (i) ≿₂ follows ≿₁ from the top down to the threshold
        if !chain[..=i].windows(2).all(|w| r.prefers(w[0], w[1])) {
            break;
        }
        // (ii) single-peaked on the rest, threshold included
        if dip(&chain[i..], r).is_none() {
            admissible = admissible.with(chain[i]);
            best = Some(i);
        }
    }
    match best {
        Some(i) => TypeCertificate {
            block,
            threshold: Some(chain[i]),
            peak: Some(r.max_of(chain[i..].iter().copied().collect())),
            admissible,
            violation: None,
        },
        None => TypeCertificate {
            block,
            threshold: None,
            peak: None,
            admissible,
            violation: dip(&chain, r),
        },
    }
}

/// Searches each type for a threshold satisfying the single-peakedness
/// conditions, reporting the `≿₁`-lowest one.
pub fn certify_single_peaked(s: &RSStructure) -> SinglePeakedCertificate {
    let types: Vec<TypeCertificate> = s.types().blocks().iter().map(|&b| certify_type(s, b)).collect();
    let verified = types.iter().all(|t| t.threshold.is_some());
    SinglePeakedCertificate { types, verified }
}

/// Synthesizes a structure for a choice function passing Exp, NRS, IR and
/// SPR, certifies it, and checks that each threshold is the `≿₁`-lowest
/// option of its type that reacts to nothing and each peak the `≿₁`-best
/// option whose absence triggers no reaction.
pub fn minimal_structure(cf: &ChoiceFunction) -> Result<(RSStructure, SinglePeakedCertificate)> {
    let report = RevealedReport::new(cf);
    let checker = AxiomChecker::default();
    let mut verdicts = checker.rsc(cf, &report).to_vec();
    verdicts.push(checker.spr(cf, &report));
    if let Some(v) = verdicts.into_iter().find(|v| !v.holds) {
        return Err(Error::AxiomViolation(Box::new(v)));
    }
    let (s, _) = synthesize_rs(cf)?;
    let cert = certify_single_peaked(&s);
    if !cert.verified {
        return Err(Error::InternalInconsistency(
            "synthesized structure of an SPR choice function is not single peaked".into(),
        ));
    }
    let g = cf.ground();
    let welfare = s.welfare();
    for (b, t) in cert.types.iter().enumerate() {
        let calm: Menu = t.block.iter().filter(|&x| report.reaction.successors(x).is_empty()).collect();
        let untouched: Menu = t
            .block
            .iter()
            .filter(|&x| report.reaction.predecessors(x).is_empty())
            .collect();
        if calm.is_empty() || untouched.is_empty() {
            return Err(Error::FormulaMismatch(format!("empty candidate set in type {}", g.menu_key(t.block))));
        }
        let (star, peak) = (welfare.min_of(calm), welfare.max_of(untouched));
        if cert.threshold(b) != star {
            return Err(Error::FormulaMismatch(format!(
                "threshold {} differs from lowest non-reacting option {}",
                g.name(cert.threshold(b)),
                g.name(star)
            )));
        }
        if cert.peak(b) != peak {
            return Err(Error::FormulaMismatch(format!(
                "peak {} differs from best option never reacted to {}",
                g.name(cert.peak(b)),
                g.name(peak)
            )));
        }
    }
    Ok((s, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{tsm_choice, Axiom};
    use crate::choice::{choice_from_order, GroundSet, TypePartition};
    use crate::fixtures;
    use std::sync::Arc;

    #[test]
    fn singleton_types_certify_trivially() {
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let o = LinearOrder::identity(4);
        let s = RSStructure::new(g, TypePartition::singletons(4), o.clone(), LinearOrder::new(vec![3, 2, 1, 0]).unwrap())
            .unwrap();
        let c = certify_single_peaked(&s);
        assert!(c.verified);
        for (b, t) in c.types.iter().enumerate() {
            assert_eq!(Some(t.block.first().unwrap()), t.threshold);
            assert_eq!(c.peak(b), c.threshold(b));
        }
    }

    #[test]
    fn equal_orders_threshold_at_bottom() {
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let o = LinearOrder::new(vec![2, 0, 3, 1]).unwrap();
        let s = RSStructure::new(g, TypePartition::single_block(4), o.clone(), o).unwrap();
        let c = certify_single_peaked(&s);
        assert_eq!(c.threshold(0), 1);
        assert_eq!(c.types[0].admissible, Menu::full(4));
    }

    #[test]
    fn double_dip_is_rejected() {
        // ≿₁ = 0,1,2,3 in one type; ≿₂ = 1,0,3,2 dips at 2 and swaps the top
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let s = RSStructure::new(
            g,
            TypePartition::single_block(4),
            LinearOrder::identity(4),
            LinearOrder::new(vec![1, 0, 3, 2]).unwrap(),
        )
        .unwrap();
        let c = certify_single_peaked(&s);
        assert!(!c.verified);
        let [a, b, z] = c.types[0].violation.unwrap();
        assert!(s.welfare().prefers(b, a) && s.welfare().prefers(z, b));
        assert!(s.reaction().prefers(a, b) && s.reaction().prefers(z, b));
    }

    #[test]
    fn worked_example_minimal() {
        let cf = fixtures::worked_example().evaluate();
        let (s, c) = minimal_structure(&cf).unwrap();
        let g = cf.ground();
        let ta = s.types().block_index(g.lookup("a1").unwrap());
        assert_eq!(g.name(c.threshold(ta)), "a1");
        assert_eq!(g.name(c.peak(ta)), "a2");
    }

    #[test]
    fn minimal_structure_of_order() {
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let cf = choice_from_order(g, &LinearOrder::new(vec![1, 3, 0, 2]).unwrap());
        let (_, c) = minimal_structure(&cf).unwrap();
        for t in &c.types {
            assert_eq!(t.threshold, t.block.first());
            assert_eq!(t.peak, t.block.first());
        }
    }

    #[test]
    fn tsm_spr_counterexample_fails() {
        let cf = tsm_choice(&fixtures::tsm_spr_counterexample()).unwrap();
        match minimal_structure(&cf) {
            Err(Error::AxiomViolation(v)) => assert_eq!(v.axiom, Axiom::SinglePeakedReaction),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn named_view_serializes() {
        let s = fixtures::welfare_example_1();
        let c = certify_single_peaked(&s);
        let v = serde_json::to_value(c.to_named(s.ground())).unwrap();
        assert_eq!(v["verified"], true);
        assert_eq!(v["types"][0]["threshold"], "w");
    }
}
