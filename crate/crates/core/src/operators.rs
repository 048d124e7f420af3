//! The three poset constructors that generate subtyping from subclassing:
//!
//! - [`wc`] builds the wildcard type arguments of a bounded subtyping poset,
//!   ordered by containment. The result is triangle-shaped: singletons along
//!   the base, lower-bounded and upper-bounded intervals up the sides.
//! - [`int_op`] builds every interval `[lo, hi]` with `lo <= hi`, ordered by
//!   containment; the input need not be bounded.
//! - [`ppp`] is the partial poset product: it pairs each generic class with
//!   every argument and carries non-generic classes over as atoms.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::parallel;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("wc requires bounded poset")]
    UnboundedInput,
    #[error("generic element `{0}` is not in the class poset")]
    GenericNotInPoset(String),
}

/// Which argument constructor a containment poset (or an approximation built
/// from one) came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Wildcard,
    Interval,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Wildcard => f.write_str("wildcard"),
            Mode::Interval => f.write_str("interval"),
        }
    }
}

/// Canonical rendering of the interval argument `[lo, hi]`.
///
/// Every wildcard syntax is one canonical interval: an exact argument `t` is
/// `[t, t]`, `? extends u` is `[Null, u]`, `? super l` is `[l, Object]`, and
/// the unbounded `?` is `[Null, Object]`. Distinct intervals render to
/// distinct strings.
pub fn canonical_arg(lo: &str, hi: &str) -> String {
    if lo == hi {
        lo.to_string()
    } else if lo == "Null" && hi == "Object" {
        "?".to_string()
    } else if lo == "Null" {
        format!("? extends {hi}")
    } else if hi == "Object" {
        format!("? super {lo}")
    } else {
        format!("[{lo},{hi}]")
    }
}

/// A containment-ordered poset of canonical interval arguments over some
/// input subtyping poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgPoset {
    base: Poset,
    input: Poset,
    mode: Mode,
    /// Endpoint indices into `input`, aligned with `base.elements()`.
    spans: Vec<(u32, u32)>,
}

impl ArgPoset {
    /// The containment order itself.
    pub fn base(&self) -> &Poset {
        &self.base
    }

    /// The subtyping poset the arguments were built from.
    pub fn input(&self) -> &Poset {
        &self.input
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// The `(lo, hi)` endpoints of a canonical argument element.
    pub fn endpoints(&self, arg: &str) -> Option<(&str, &str)> {
        let i = self.base.index_of(arg)?;
        let (l, u) = self.spans[i];
        Some((
            self.input.element(l as usize),
            self.input.element(u as usize),
        ))
    }
}

fn arg_poset(input: &Poset, mode: Mode, pairs: BTreeSet<(u32, u32)>) -> ArgPoset {
    let mut items: Vec<(String, (u32, u32))> = pairs
        .into_iter()
        .map(|(l, u)| {
            (
                canonical_arg(input.element(l as usize), input.element(u as usize)),
                (l, u),
            )
        })
        .collect();
    items.sort();
    debug_assert!(items.windows(2).all(|w| w[0].0 < w[1].0));
    let elements: Vec<String> = items.iter().map(|(s, _)| s.clone()).collect();
    let spans: Vec<(u32, u32)> = items.iter().map(|&(_, p)| p).collect();
    // Containment: [l1,u1] <= [l2,u2] iff l2 <= l1 and u1 <= u2 in the input.
    let base = Poset::from_leq(elements, |i, j| {
        let (l1, u1) = spans[i];
        let (l2, u2) = spans[j];
        input.leq_idx(l2 as usize, l1 as usize) && input.leq_idx(u1 as usize, u2 as usize)
    });
    ArgPoset {
        base,
        input: input.clone(),
        mode,
        spans,
    }
}

/// Wildcard arguments of a bounded poset: all `[t, t]`, `[bottom, u]` and
/// `[l, top]`, deduplicated by canonical form and ordered by containment.
pub fn wc(s: &Poset) -> Result<ArgPoset, OperatorError> {
    let (top, bottom) = s.bounds();
    let (top, bottom) = match (top, bottom) {
        (Some(t), Some(b)) => (s.index_of(t).unwrap() as u32, s.index_of(b).unwrap() as u32),
        _ => return Err(OperatorError::UnboundedInput),
    };
    let mut pairs = BTreeSet::new();
    for i in 0..s.len() as u32 {
        pairs.insert((i, i));
        pairs.insert((bottom, i));
        pairs.insert((i, top));
    }
    Ok(arg_poset(s, Mode::Wildcard, pairs))
}

/// Interval arguments: every `[l, u]` with `l <= u`, ordered by containment.
pub fn int_op(s: &Poset) -> ArgPoset {
    let n = s.len();
    let per_lo = parallel::map_indices(n, |l| {
        (0..n)
            .filter(|&u| s.leq_idx(l, u))
            .map(|u| (l as u32, u as u32))
            .collect::<Vec<_>>()
    });
    let pairs: BTreeSet<(u32, u32)> = per_lo.into_iter().flatten().collect();
    arg_poset(s, Mode::Interval, pairs)
}

/// Predicted `wc` element count without materializing the poset.
pub(crate) fn wc_size(s: &Poset) -> Option<usize> {
    let (top, bottom) = s.bounds();
    match (top, bottom) {
        (Some(_), Some(_)) if s.len() == 1 => Some(1),
        (Some(_), Some(_)) => Some(3 * s.len() - 3),
        _ => None,
    }
}

/// Predicted `int_op` element count: the number of comparable pairs.
pub(crate) fn int_size(s: &Poset) -> usize {
    s.comparable_pair_count()
}

#[derive(Clone, Copy)]
enum Node {
    NonGeneric(u32),
    App { class: u32, arg: u32 },
}

/// Partial poset product of a class poset with an argument poset.
///
/// Elements are the non-generic classes plus `g<a>` for every generic `g`
/// and argument `a`. Order: applications compare by class order and argument
/// containment, an application sits below a non-generic class iff the class
/// order says so, non-generic classes keep their order, `Null` is the global
/// bottom, and no other non-generic class sits below an application.
pub fn ppp(
    c: &Poset,
    generic_subset: &BTreeSet<String>,
    args: &ArgPoset,
) -> Result<Poset, OperatorError> {
    for g in generic_subset {
        if !c.contains_element(g) {
            return Err(OperatorError::GenericNotInPoset(g.clone()));
        }
    }
    let null_idx = c.index_of("Null");
    let mut items: Vec<(String, Node)> = Vec::new();
    for (i, e) in c.elements().iter().enumerate() {
        if !generic_subset.contains(e) {
            items.push((e.clone(), Node::NonGeneric(i as u32)));
        }
    }
    for g in generic_subset {
        let gi = c.index_of(g).unwrap() as u32;
        for (ai, a) in args.base().elements().iter().enumerate() {
            items.push((
                format!("{g}<{a}>"),
                Node::App {
                    class: gi,
                    arg: ai as u32,
                },
            ));
        }
    }
    items.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(items.windows(2).all(|w| w[0].0 < w[1].0));
    let elements: Vec<String> = items.iter().map(|(s, _)| s.clone()).collect();
    let nodes: Vec<Node> = items.iter().map(|&(_, n)| n).collect();
    let arg_order = args.base();
    let product = Poset::from_leq(elements, |i, j| match (nodes[i], nodes[j]) {
        (Node::NonGeneric(x), Node::NonGeneric(y)) => {
            c.leq_idx(x as usize, y as usize) || Some(x as usize) == null_idx
        }
        (Node::App { class, .. }, Node::NonGeneric(y)) => c.leq_idx(class as usize, y as usize),
        (Node::NonGeneric(x), Node::App { .. }) => Some(x as usize) == null_idx,
        (Node::App { class: g1, arg: a1 }, Node::App { class: g2, arg: a2 }) => {
            c.leq_idx(g1 as usize, g2 as usize) && arg_order.leq_idx(a1 as usize, a2 as usize)
        }
    });
    Ok(product)
}
