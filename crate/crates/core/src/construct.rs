//! Iterated construction of the subtyping relation from the class table.
//!
//! `S_0` holds the types of the non-generic classes (plus the `Null`
//! bottom). Each step applies the argument constructor of the chosen mode
//! to `S_i` and pairs the generic classes with the result, producing
//! `S_{i+1}` — the ascending chain whose limit is the full subtyping
//! relation. The depth index equals the maximal argument nesting, so every
//! ground type of depth at most `i` appears in `S_i`.

use thiserror::Error;

use crate::operators::{self, int_op, ppp, wc, ArgPoset, Mode};
use crate::poset::Poset;
use crate::typesys::{parse_type, ClassTable, TypeExpr};

/// Default cap on the element count of a constructed approximation.
pub const DEFAULT_CEILING: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("depth {depth} would materialize {required} types, above the ceiling of {ceiling}")]
    CeilingExceeded {
        depth: usize,
        required: usize,
        ceiling: usize,
    },
}

/// A finite approximation of the subtyping relation: the poset of all
/// ground types of depth at most `depth`, in the given argument mode.
#[derive(Debug, Clone)]
pub struct SubtypingApprox {
    poset: Poset,
    depth: usize,
    mode: Mode,
    table: ClassTable,
}

impl SubtypingApprox {
    /// The subtyping order over rendered type expressions.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    /// Every element parsed back into a type expression, in element order.
    pub fn types(&self) -> Vec<TypeExpr> {
        self.poset
            .elements()
            .iter()
            .map(|e| parse_type(e, &self.table).expect("approximation elements are canonical"))
            .collect()
    }
}

/// The depth-0 approximation: non-generic classes under declared
/// subclassing, with `Null` below everything.
pub fn s0(table: &ClassTable) -> SubtypingApprox {
    let cp = table.class_poset();
    let keep: Vec<usize> = (0..cp.len())
        .filter(|&i| !table.generic_set().contains(cp.element(i)))
        .collect();
    let elements: Vec<String> = keep.iter().map(|&i| cp.element(i).to_string()).collect();
    let poset = Poset::from_leq(elements, |i, j| cp.leq_idx(keep[i], keep[j]));
    SubtypingApprox {
        poset,
        depth: 0,
        mode: Mode::Wildcard,
        table: table.clone(),
    }
}

/// One construction step: argument poset of `s`, then the partial poset
/// product with the class poset.
pub fn step(table: &ClassTable, s: &SubtypingApprox) -> SubtypingApprox {
    debug_assert_eq!(table.class_poset(), s.table.class_poset());
    let args = match s.mode {
        Mode::Wildcard => wc(&s.poset).expect("every approximation is bounded"),
        Mode::Interval => int_op(&s.poset),
    };
    let poset = ppp(table.class_poset(), table.generic_set(), &args)
        .expect("generic classes live in the class poset");
    SubtypingApprox {
        poset,
        depth: s.depth + 1,
        mode: s.mode,
        table: s.table.clone(),
    }
}

/// Iterates [`step`] from [`s0`] exactly `depth_limit` times under the
/// default element ceiling.
pub fn build(
    table: &ClassTable,
    depth_limit: usize,
    mode: Mode,
) -> Result<SubtypingApprox, BuildError> {
    build_with_ceiling(table, depth_limit, mode, DEFAULT_CEILING)
}

/// Like [`build`], aborting before any approximation would exceed `ceiling`
/// elements. The element count of the next step is predicted from census
/// formulas, so an oversized poset is never materialized.
pub fn build_with_ceiling(
    table: &ClassTable,
    depth_limit: usize,
    mode: Mode,
    ceiling: usize,
) -> Result<SubtypingApprox, BuildError> {
    let mut s = s0(table);
    s.mode = mode;
    if s.poset.len() > ceiling {
        return Err(BuildError::CeilingExceeded {
            depth: 0,
            required: s.poset.len(),
            ceiling,
        });
    }
    let non_generic_types = table.class_poset().len() - table.generic_set().len();
    for d in 0..depth_limit {
        let args_count = match mode {
            Mode::Wildcard => operators::wc_size(&s.poset).expect("every approximation is bounded"),
            Mode::Interval => operators::int_size(&s.poset),
        };
        let required = non_generic_types + table.generic_set().len() * args_count;
        if required > ceiling {
            return Err(BuildError::CeilingExceeded {
                depth: d + 1,
                required,
                ceiling,
            });
        }
        s = step(table, &s);
    }
    Ok(s)
}

/// The containment poset of `s`'s type arguments, per its mode.
pub fn containment_poset(s: &SubtypingApprox) -> ArgPoset {
    match s.mode {
        Mode::Wildcard => wc(&s.poset).expect("every approximation is bounded"),
        Mode::Interval => int_op(&s.poset),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{h1, h2};
    use crate::judge;
    use crate::poset::{is_embedding, OrderMap};
    use crate::typesys::{parse_class_table, parse_type};
    use std::collections::BTreeSet;

    #[test]
    fn s0_restricts_subclassing_to_non_generics() {
        let s = s0(&h1());
        assert_eq!(s.poset().elements(), &["Null", "Object", "String"]);
        assert!(s.poset().leq("Null", "String").unwrap());
        assert!(s.poset().leq("String", "Object").unwrap());
        assert_eq!(s.poset().bounds(), (Some("Object"), Some("Null")));

        let only_object = parse_class_table("").unwrap();
        assert_eq!(s0(&only_object).poset().elements(), &["Null", "Object"]);

        let s = s0(&h2());
        assert_eq!(s.poset().elements(), &["Null", "Object"]);
    }

    #[test]
    fn step_materializes_depth_one_types() {
        let table = h1();
        let s1 = step(&table, &s0(&table));
        assert_eq!(s1.depth(), 1);
        assert_eq!(s1.poset().len(), 3 + 2 * 6);
        assert!(s1.poset().contains_element("List<?>"));
        assert!(s1.poset().contains_element("LinkedList<? super String>"));
        assert!(s1.poset().leq("LinkedList<String>", "List<?>").unwrap());
    }

    #[test]
    fn step_is_a_fixed_point_without_generics() {
        let table = parse_class_table("class A extends Object\n").unwrap();
        let s = s0(&table);
        let stepped = step(&table, &s);
        assert_eq!(stepped.poset(), s.poset());
    }

    #[test]
    fn build_at_depth_zero_is_s0() {
        let table = h1();
        let built = build(&table, 0, Mode::Wildcard).unwrap();
        assert_eq!(built.poset(), s0(&table).poset());
    }

    #[test]
    fn build_contains_nested_wildcard_types() {
        let table = h1();
        let s2 = build(&table, 2, Mode::Wildcard).unwrap();
        assert!(s2.poset().contains_element("List<? extends List<String>>"));
        assert!(s2
            .poset()
            .leq("List<LinkedList<String>>", "List<? extends List<String>>")
            .unwrap());
        // Same verdict from the recursive decision procedure.
        let t1 = parse_type("List<LinkedList<String>>", &table).unwrap();
        let t2 = parse_type("List<? extends List<String>>", &table).unwrap();
        assert!(judge::subtype(&table, &t1, &t2).unwrap());
    }

    #[test]
    fn census_formula_holds_for_wildcard_mode() {
        for table in [h1(), h2()] {
            let non_generic = table.class_poset().len() - table.generic_set().len();
            let mut s = build(&table, 0, Mode::Wildcard).unwrap();
            for _ in 0..2 {
                let args = containment_poset(&s).len();
                let next = step(&table, &s);
                assert_eq!(
                    next.poset().len(),
                    non_generic + table.generic_set().len() * args
                );
                s = next;
            }
        }
    }

    #[test]
    fn interval_mode_adds_exactly_the_proper_intervals() {
        let table = h2();
        // At depth 1 every argument endpoint is Null or Object, so the two
        // modes coincide.
        let w1: BTreeSet<String> = build(&table, 1, Mode::Wildcard)
            .unwrap()
            .poset()
            .elements()
            .iter()
            .cloned()
            .collect();
        let i1: BTreeSet<String> = build(&table, 1, Mode::Interval)
            .unwrap()
            .poset()
            .elements()
            .iter()
            .cloned()
            .collect();
        assert_eq!(w1, i1);
        // At depth 2 interval mode gains the arguments with neither endpoint
        // Null nor Object.
        let w2: BTreeSet<String> = build(&table, 2, Mode::Wildcard)
            .unwrap()
            .poset()
            .elements()
            .iter()
            .cloned()
            .collect();
        let i2: BTreeSet<String> = build(&table, 2, Mode::Interval)
            .unwrap()
            .poset()
            .elements()
            .iter()
            .cloned()
            .collect();
        let diff: Vec<&String> = i2.difference(&w2).collect();
        assert_eq!(
            diff,
            vec!["Enum<[Enum<Null>,Enum<?>]>", "Enum<[Enum<Object>,Enum<?>]>"]
        );
        assert!(w2.difference(&i2).next().is_none());
    }

    #[test]
    fn approximations_embed_into_their_successors() {
        for table in [h1(), h2()] {
            for mode in [Mode::Wildcard, Mode::Interval] {
                let mut s = build(&table, 0, mode).unwrap();
                for _ in 0..2 {
                    let next = step(&table, &s);
                    let id = OrderMap::identity(s.poset());
                    assert!(is_embedding(s.poset(), next.poset(), &id).unwrap());
                    s = next;
                }
            }
        }
    }

    #[test]
    fn every_approximation_is_bounded() {
        for table in [h1(), h2()] {
            for mode in [Mode::Wildcard, Mode::Interval] {
                for depth in 0..=2 {
                    let s = build(&table, depth, mode).unwrap();
                    assert_eq!(s.poset().bounds(), (Some("Object"), Some("Null")));
                }
            }
        }
    }

    #[test]
    fn ceiling_aborts_before_materializing() {
        let table = h1();
        let err = build_with_ceiling(&table, 2, Mode::Wildcard, 20).unwrap_err();
        assert_eq!(
            err,
            BuildError::CeilingExceeded {
                depth: 2,
                required: 87,
                ceiling: 20
            }
        );
        assert!(build_with_ceiling(&table, 1, Mode::Wildcard, 15).is_ok());
        assert!(build_with_ceiling(&table, 1, Mode::Wildcard, 14).is_err());
    }

    #[test]
    fn containment_poset_orders_arguments() {
        let table = h1();
        let args = containment_poset(&s0(&table));
        assert_eq!(args.base().bounds().0, Some("?"));
        assert!(args.base().leq("String", "?").unwrap());
        assert!(!args.base().leq("Object", "String").unwrap());
        assert!(!args.base().leq("String", "Object").unwrap());
    }
}
