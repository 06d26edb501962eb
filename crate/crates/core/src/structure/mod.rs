//! RS-structures: a partition of the options into types plus a welfare
//! order `≿₁` and a reaction order `≿₂`. Choice keeps the `≿₁`-best
//! option of each type present in the menu and picks the `≿₂`-best of
//! those.

mod certify;
mod enumerate;
mod synthesis;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::choice::{ChoiceFunction, GroundSet, LinearOrder, Menu, TypePartition};
use crate::error::{Error, Result};
use crate::revealed::BinaryRelation;

pub use certify::{certify_single_peaked, minimal_structure, SinglePeakedCertificate, TypeCertificate};
pub use enumerate::{all_orders, all_structures, set_partitions};
pub use synthesis::{synthesize_rs, synthesize_rs_with, SynthesisOptions, SynthesisTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSStructure {
    ground: Arc<GroundSet>,
    types: TypePartition,
    welfare: LinearOrder,
    reaction: LinearOrder,
}

impl RSStructure {
    pub fn new(
        ground: Arc<GroundSet>,
        types: TypePartition,
        welfare: LinearOrder,
        reaction: LinearOrder,
    ) -> Result<RSStructure> {
        let n = ground.len();
        if types.ground_len() != n || welfare.len() != n || reaction.len() != n {
            return Err(Error::Malformed(format!(
                "structure components do not cover the {n} options"
            )));
        }
        Ok(RSStructure {
            ground,
            types,
            welfare,
            reaction,
        })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn types(&self) -> &TypePartition {
        &self.types
    }

    /// `≿₁`.
    pub fn welfare(&self) -> &LinearOrder {
        &self.welfare
    }

    /// `≿₂`.
    pub fn reaction(&self) -> &LinearOrder {
        &self.reaction
    }

    /// The `≿₁`-best option of each type meeting `menu`.
    pub fn consideration_set(&self, menu: Menu) -> Menu {
        self.types
            .blocks()
            .iter()
            .map(|b| b.intersection(menu))
            .filter(|m| !m.is_empty())
            .map(|m| self.welfare.max_of(m))
            .collect()
    }

    pub fn choose(&self, menu: Menu) -> usize {
        self.reaction.max_of(self.consideration_set(menu))
    }

    pub fn evaluate(&self) -> ChoiceFunction {
        ChoiceFunction::from_fn_unchecked(self.ground.clone(), |m| self.choose(m))
    }

    /// Reaction read off the structure: `x R y` iff `x` and `y` share a
    /// type, `y ≻₁ x`, and some `z` outside the type has `x ≻₂ z ≻₂ y`.
    pub fn structural_reaction(&self) -> BinaryRelation {
        let n = self.ground.len();
        let mut r = BinaryRelation::empty(n);
        for &block in self.types.blocks() {
            let outside = Menu::full(n).difference(block);
            for x in block.iter() {
                for y in block.iter() {
                    if x != y
                        && self.welfare.prefers(y, x)
                        && outside
                            .iter()
                            .any(|z| self.reaction.prefers(x, z) && self.reaction.prefers(z, y))
                    {
                        r.insert(x, y);
                    }
                }
            }
        }
        r
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            options: Some(self.ground.options().to_vec()),
            types: self.types.names(&self.ground),
            welfare: self.welfare.names(&self.ground),
            reaction: self.reaction.names(&self.ground),
        }
    }

    pub fn from_file(file: &StructureFile) -> Result<RSStructure> {
        let options = match &file.options {
            Some(o) => o.clone(),
            None => file.types.iter().flatten().cloned().collect(),
        };
        let ground = Arc::new(GroundSet::new(options)?);
        fn names(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        let blocks: Vec<Vec<&str>> = file.types.iter().map(|b| names(b)).collect();
        let types = TypePartition::from_names(&ground, &blocks)?;
        let welfare = LinearOrder::from_names(&ground, &names(&file.welfare))?;
        let reaction = LinearOrder::from_names(&ground, &names(&file.reaction))?;
        RSStructure::new(ground, types, welfare, reaction)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(&self.to_file())?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &[u8]) -> Result<RSStructure> {
        RSStructure::from_file(&serde_json::from_slice(text)?)
    }
}

/// On-disk form. Orders are best-first. Without `options`, the ground set
/// is the concatenation of the type lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Vec<String>>,
    pub types: Vec<Vec<String>>,
    pub welfare: Vec<String>,
    pub reaction: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::choice_from_order;
    use crate::fixtures;
    use crate::revealed::reveal_reaction;

    #[test]
    fn single_type_picks_welfare_max() {
        let g = Arc::new(GroundSet::numbered(4).unwrap());
        let s = RSStructure::new(
            g,
            TypePartition::single_block(4),
            LinearOrder::new(vec![2, 0, 3, 1]).unwrap(),
            LinearOrder::identity(4),
        )
        .unwrap();
        for menu in Menu::full(4).submenus() {
            assert_eq!(s.consideration_set(menu).len(), 1);
        }
        assert_eq!(s.choose(Menu::full(4)), 2);
    }

    #[test]
    fn worked_example_choices() {
        let s = fixtures::worked_example();
        let g = s.ground().clone();
        let all = g.full_menu();
        assert_eq!(s.consideration_set(all), g.menu_of(&["a1", "b1"]).unwrap());
        let cf = s.evaluate();
        assert_eq!(cf.choice_named(&["a1", "a2", "b1"]), "b1");
        assert_eq!(cf.choice_named(&["a2", "b1"]), "a2");
        let (r, _) = reveal_reaction(&cf);
        assert!(r.contains(1, 0));
        assert_eq!(r, s.structural_reaction());
    }

    #[test]
    fn same_orders_singleton_types_is_maximization() {
        let g = Arc::new(GroundSet::numbered(5).unwrap());
        let o = LinearOrder::new(vec![4, 1, 3, 0, 2]).unwrap();
        let s = RSStructure::new(g.clone(), TypePartition::singletons(5), o.clone(), o.clone()).unwrap();
        assert_eq!(s.evaluate(), choice_from_order(g, &o));
    }

    #[test]
    fn json_round_trip_and_optional_options() {
        let s = fixtures::worked_example();
        let text = s.to_json().unwrap();
        assert_eq!(RSStructure::from_json(text.as_bytes()).unwrap(), s);
        let short = r#"{"types": [["a1","a2"],["b1"]], "welfare": ["a1","a2","b1"], "reaction": ["a2","b1","a1"]}"#;
        assert_eq!(RSStructure::from_json(short.as_bytes()).unwrap(), s);
    }

    #[test]
    fn json_rejects_bad_orders() {
        let bad = r#"{"types": [["a","b"]], "welfare": ["a"], "reaction": ["a","b"]}"#;
        assert!(RSStructure::from_json(bad.as_bytes()).is_err());
    }
}
