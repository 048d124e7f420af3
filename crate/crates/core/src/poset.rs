//! Finite posets stored as an element list plus an irredundant cover
//! relation (a Hasse diagram).
//!
//! Elements are opaque strings so that the same machinery carries the
//! subclassing relation between classes, the subtyping relation between
//! ground types, and the containment relation between type arguments.
//! Element lists are kept in lexicographic order and the reflexive-transitive
//! closure is computed on first use and cached, so all queries and exports
//! are deterministic.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use thiserror::Error;

use crate::parallel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation contains a cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("chain requires at least one element")]
    EmptyChain,
    #[error("map is not defined on element `{0}`")]
    PartialMap(String),
    #[error("map sends both `{0}` and `{1}` to `{2}`")]
    NonInjectiveMap(String, String, String),
}

/// Row-major square bit matrix; `get(i, j)` reads bit `j` of row `i`.
#[derive(Debug, Clone)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        let words = n.div_ceil(64);
        let mut bits = Vec::with_capacity(n * words);
        for row in rows {
            debug_assert_eq!(row.len(), words);
            bits.extend_from_slice(&row);
        }
        BitMatrix { n, words, bits }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// rows[dst] |= rows[src]
    fn or_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }

    fn row_popcount(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn row_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

fn clear_bit(row: &mut [u64], j: usize) {
    row[j / 64] &= !(1 << (j % 64));
}

fn and_not(row: &mut [u64], other: &[u64]) {
    for (a, b) in row.iter_mut().zip(other) {
        *a &= !b;
    }
}

/// Cached reflexive-transitive closure.
#[derive(Debug, Clone)]
struct Closure {
    up: BitMatrix,
}

impl Closure {
    /// Closure from acyclic adjacency lists.
    fn from_acyclic_adjacency(n: usize, adj: &[Vec<u32>]) -> Closure {
        let post = postorder(n, adj).expect("adjacency must be acyclic");
        let mut up = BitMatrix::new(n);
        for &v in &post {
            // Postorder visits successors first, so their rows are complete.
            let v = v as usize;
            up.set(v, v);
            for &w in &adj[v] {
                up.or_into(w as usize, v);
            }
        }
        Closure { up }
    }
}

/// DFS postorder over `adj`; `Err` carries one cycle as an index path.
fn postorder(n: usize, adj: &[Vec<u32>]) -> Result<Vec<u32>, Vec<u32>> {
    const UNSEEN: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![UNSEEN; n];
    let mut post = Vec::with_capacity(n);
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for start in 0..n as u32 {
        if state[start as usize] != UNSEEN {
            continue;
        }
        stack.push((start, 0));
        state[start as usize] = OPEN;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v as usize].get(*next) {
                *next += 1;
                match state[w as usize] {
                    UNSEEN => {
                        state[w as usize] = OPEN;
                        stack.push((w, 0));
                    }
                    OPEN => {
                        // Cycle: slice the DFS stack from w back to w.
                        let from = stack.iter().position(|&(x, _)| x == w).unwrap();
                        let mut cycle: Vec<u32> = stack[from..].iter().map(|&(x, _)| x).collect();
                        cycle.push(w);
                        return Err(cycle);
                    }
                    _ => {}
                }
            } else {
                state[v as usize] = DONE;
                post.push(v);
                stack.pop();
            }
        }
    }
    Ok(post)
}

/// Covers of each element: the minimal elements of its strict up-set,
/// found by scanning a linear extension and discarding dominated elements.
fn extract_covers(up: &BitMatrix, topo: &[u32]) -> Vec<(u32, u32)> {
    let n = up.n;
    let per_row = parallel::map_indices(n, |x| {
        let mut s = up.row(x).to_vec();
        clear_bit(&mut s, x);
        let mut out = Vec::new();
        for &y in topo {
            if row_bit(&s, y as usize) {
                out.push((x as u32, y));
                and_not(&mut s, up.row(y as usize));
            }
        }
        out
    });
    let mut covers: Vec<(u32, u32)> = per_row.into_iter().flatten().collect();
    covers.sort_unstable();
    covers
}

/// A finite partial order over string elements.
///
/// Immutable after construction; cheap to share read-only across threads.
#[derive(Debug, Clone)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, u32>,
    covers: Vec<(u32, u32)>,
    closure: OnceLock<Closure>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    fn assemble(elements: Vec<String>, covers: Vec<(u32, u32)>, closure: Closure) -> Poset {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        Poset {
            elements,
            index,
            covers,
            closure: OnceLock::from(closure),
        }
    }

    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `relation`; the stored covers are the unique transitive reduction.
    ///
    /// `relation` may be any acyclic relation over `elements` (it need not be
    /// transitively closed). A cycle among distinct elements is an error.
    pub fn from_relation<E, R>(elements: E, relation: R) -> Result<Poset, PosetError>
    where
        E: IntoIterator<Item = String>,
        R: IntoIterator<Item = (String, String)>,
    {
        let mut elems: Vec<String> = elements.into_iter().collect();
        elems.sort();
        elems.dedup();
        let index: HashMap<&str, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i as u32))
            .collect();
        let n = elems.len();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (a, b) in relation {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            if ia != ib && !adj[ia as usize].contains(&ib) {
                adj[ia as usize].push(ib);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let post = postorder(n, &adj).map_err(|cycle| {
            PosetError::Cycle(
                cycle
                    .into_iter()
                    .map(|i| elems[i as usize].clone())
                    .collect(),
            )
        })?;
        let mut up = BitMatrix::new(n);
        for &v in &post {
            let v = v as usize;
            up.set(v, v);
            for &w in &adj[v] {
                up.or_into(w as usize, v);
            }
        }
        let mut topo = post;
        topo.reverse();
        let covers = extract_covers(&up, &topo);
        Ok(Poset::assemble(elems, covers, Closure { up }))
    }

    /// Builds a poset directly from an order predicate over indices into the
    /// (sorted, duplicate-free) element list.
    ///
    /// The predicate must be a partial order up to reflexivity; antisymmetry
    /// is checked and violations panic. This is the data-parallel kernel
    /// behind the poset constructors.
    pub(crate) fn from_leq<F>(elements: Vec<String>, leq: F) -> Poset
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let n = elements.len();
        let words = n.div_ceil(64);
        let rows = parallel::map_indices(n, |i| {
            let mut row = vec![0u64; words];
            for (j, word) in row.iter_mut().enumerate().map(|(w, word)| (w * 64, word)) {
                let hi = (j + 64).min(n);
                for k in j..hi {
                    if i == k || leq(i, k) {
                        *word |= 1 << (k - j);
                    }
                }
            }
            row
        });
        let up = BitMatrix::from_rows(rows);
        for i in 0..n {
            for j in i + 1..n {
                if up.get(i, j) && up.get(j, i) {
                    panic!(
                        "order predicate is not antisymmetric between `{}` and `{}`",
                        elements[i], elements[j]
                    );
                }
            }
        }
        // Cubic, so only worth it on small inputs.
        debug_assert!(
            n > 512
                || (0..n).all(|i| (0..n)
                    .filter(|&j| up.get(i, j))
                    .all(|j| (0..n).filter(|&k| up.get(j, k)).all(|k| up.get(i, k)))),
            "order predicate is not transitive"
        );
        // Larger up-sets come first: a < b forces |up(a)| > |up(b)|.
        let mut topo: Vec<u32> = (0..n as u32).collect();
        topo.sort_by_key(|&i| (std::cmp::Reverse(up.row_popcount(i as usize)), i));
        let covers = extract_covers(&up, &topo);
        Poset::assemble(elements, covers, Closure { up })
    }

    /// Total order e0 < e1 < ... < e(n-1).
    pub fn chain(n: usize) -> Result<Poset, PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyChain);
        }
        let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let relation: Vec<(String, String)> = (1..n)
            .map(|i| (format!("e{}", i - 1), format!("e{i}")))
            .collect();
        Poset::from_relation(elements, relation)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn contains_element(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub(crate) fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).map(|&i| i as usize)
    }

    pub(crate) fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    /// Cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.covers
            .iter()
            .map(|&(a, b)| (self.element(a as usize), self.element(b as usize)))
    }

    pub fn cover_count(&self) -> usize {
        self.covers.len()
    }

    fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let n = self.len();
            let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
            for &(a, b) in &self.covers {
                adj[a as usize].push(b);
            }
            Closure::from_acyclic_adjacency(n, &adj)
        })
    }

    /// True iff `a = b` or `a` reaches `b` through covers.
    pub fn leq(&self, a: &str, b: &str) -> Result<bool, PosetError> {
        let ia = self
            .index_of(a)
            .ok_or_else(|| PosetError::UnknownElement(a.to_string()))?;
        let ib = self
            .index_of(b)
            .ok_or_else(|| PosetError::UnknownElement(b.to_string()))?;
        Ok(self.leq_idx(ia, ib))
    }

    pub(crate) fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.closure().up.get(a, b)
    }

    pub fn maximal_elements(&self) -> Vec<&str> {
        let up = &self.closure().up;
        (0..self.len())
            .filter(|&i| up.row_popcount(i) == 1)
            .map(|i| self.element(i))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<&str> {
        let up = &self.closure().up;
        let mut above = vec![0usize; self.len()];
        for i in 0..self.len() {
            for (j, count) in above.iter_mut().enumerate() {
                if up.get(i, j) {
                    *count += 1;
                }
            }
        }
        (0..self.len())
            .filter(|&i| above[i] == 1)
            .map(|i| self.element(i))
            .collect()
    }

    /// The unique maximum and minimum, when they exist.
    pub fn bounds(&self) -> (Option<&str>, Option<&str>) {
        let top = match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        };
        let bottom = match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        };
        (top, bottom)
    }

    /// Number of ordered pairs (a, b) with a <= b, reflexive pairs included.
    pub fn comparable_pair_count(&self) -> usize {
        let up = &self.closure().up;
        (0..self.len()).map(|i| up.row_popcount(i)).sum()
    }
}

/// The unique transitive reduction of `relation` as a [`Poset`].
///
/// A cycle among distinct elements is reported as an error listing the cycle.
pub fn transitive_reduction<R, E>(relation: R, elements: E) -> Result<Poset, PosetError>
where
    R: IntoIterator<Item = (String, String)>,
    E: IntoIterator<Item = String>,
{
    Poset::from_relation(elements, relation)
}

/// A total mapping from the elements of one poset into another.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderMap {
    pairs: BTreeMap<String, String>,
}

impl OrderMap {
    /// The identity map on `p`'s elements.
    pub fn identity(p: &Poset) -> OrderMap {
        OrderMap {
            pairs: p
                .elements()
                .iter()
                .map(|e| (e.clone(), e.clone()))
                .collect(),
        }
    }

    pub fn from_pairs<I>(pairs: I) -> OrderMap
    where
        I: IntoIterator<Item = (String, String)>,
    {
        OrderMap {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, source: &str) -> Option<&str> {
        self.pairs.get(source).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }
}

/// True iff `m` maps `p` into `q` reflecting and preserving order:
/// for all a, b in p, `a <= b` in p iff `m(a) <= m(b)` in q.
///
/// `m` must be total and injective on `p`'s elements with image inside `q`.
pub fn is_embedding(p: &Poset, q: &Poset, m: &OrderMap) -> Result<bool, PosetError> {
    let mut images: Vec<usize> = Vec::with_capacity(p.len());
    let mut seen: HashMap<usize, &str> = HashMap::new();
    for a in p.elements() {
        let img = m.get(a).ok_or_else(|| PosetError::PartialMap(a.clone()))?;
        let iq = q
            .index_of(img)
            .ok_or_else(|| PosetError::UnknownElement(img.to_string()))?;
        if let Some(prev) = seen.insert(iq, a) {
            return Err(PosetError::NonInjectiveMap(
                prev.to_string(),
                a.clone(),
                img.to_string(),
            ));
        }
        images.push(iq);
    }
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.leq_idx(a, b) != q.leq_idx(images[a], images[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn owned(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn names(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn antichain(elems: &[&str]) -> Poset {
        Poset::from_relation(names(elems), Vec::new()).unwrap()
    }

    #[test]
    fn chain_order_queries() {
        let p = Poset::chain(3).unwrap();
        assert!(p.leq("e0", "e2").unwrap());
        assert!(p.leq("e1", "e1").unwrap());
        assert!(!p.leq("e2", "e0").unwrap());
    }

    #[test]
    fn antichain_incomparable() {
        let p = antichain(&["x", "y"]);
        assert!(!p.leq("x", "y").unwrap());
        assert!(!p.leq("y", "x").unwrap());
    }

    #[test]
    fn leq_unknown_element_is_named() {
        let p = Poset::chain(2).unwrap();
        let err = p.leq("e0", "zz").unwrap_err();
        assert_eq!(err, PosetError::UnknownElement("zz".to_string()));
    }

    #[test]
    fn reduction_drops_implied_pair() {
        let p = transitive_reduction(
            owned(&[("a", "b"), ("b", "c"), ("a", "c")]),
            names(&["a", "b", "c"]),
        )
        .unwrap();
        let covers: Vec<_> = p.covers().collect();
        assert_eq!(covers, vec![("a", "b"), ("b", "c")]);
        assert!(p.leq("a", "c").unwrap());
    }

    #[test]
    fn reduction_of_empty_relation() {
        let p = transitive_reduction(Vec::new(), names(&["a", "b"])).unwrap();
        assert_eq!(p.cover_count(), 0);
    }

    #[test]
    fn reduction_rejects_cycle() {
        let err =
            transitive_reduction(owned(&[("a", "b"), ("b", "a")]), names(&["a", "b"])).unwrap_err();
        match err {
            PosetError::Cycle(cycle) => {
                assert!(cycle.len() >= 3);
                assert_eq!(cycle.first(), cycle.last());
            }
            other => panic!("expected cycle error, got {other:?}"),
        }
    }

    #[test]
    fn bounds_of_chain_and_antichain() {
        let p = Poset::chain(2).unwrap();
        assert_eq!(p.bounds(), (Some("e1"), Some("e0")));
        let q = antichain(&["x", "y"]);
        assert_eq!(q.bounds(), (None, None));
    }

    #[test]
    fn chain_shapes() {
        let p = Poset::chain(1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.cover_count(), 0);
        let p = Poset::chain(2).unwrap();
        assert_eq!(p.cover_count(), 1);
        let p = Poset::chain(4).unwrap();
        assert_eq!(p.cover_count(), 3);
        assert!(p.leq("e0", "e3").unwrap());
        assert!(Poset::chain(0).is_err());
    }

    #[test]
    fn identity_embedding_of_chain() {
        let p = Poset::chain(3).unwrap();
        assert!(is_embedding(&p, &p, &OrderMap::identity(&p)).unwrap());
    }

    #[test]
    fn chain_does_not_embed_into_antichain() {
        let p = Poset::chain(2).unwrap();
        let q = antichain(&["e0", "e1"]);
        assert!(!is_embedding(&p, &q, &OrderMap::identity(&p)).unwrap());
    }

    #[test]
    fn embedding_rejects_partial_and_noninjective_maps() {
        let p = Poset::chain(2).unwrap();
        let q = Poset::chain(3).unwrap();
        let partial = OrderMap::from_pairs([("e0".to_string(), "e0".to_string())]);
        assert!(matches!(
            is_embedding(&p, &q, &partial),
            Err(PosetError::PartialMap(_))
        ));
        let squash = OrderMap::from_pairs([
            ("e0".to_string(), "e1".to_string()),
            ("e1".to_string(), "e1".to_string()),
        ]);
        assert!(matches!(
            is_embedding(&p, &q, &squash),
            Err(PosetError::NonInjectiveMap(..))
        ));
        let escape = OrderMap::from_pairs([
            ("e0".to_string(), "e0".to_string()),
            ("e1".to_string(), "e9".to_string()),
        ]);
        assert!(matches!(
            is_embedding(&p, &q, &escape),
            Err(PosetError::UnknownElement(_))
        ));
    }

    #[test]
    fn from_leq_matches_from_relation() {
        // Diamond: bot < l, r < top.
        let p = Poset::from_relation(
            names(&["bot", "l", "r", "top"]),
            owned(&[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")]),
        )
        .unwrap();
        let order = [
            ("bot", "l"),
            ("bot", "r"),
            ("bot", "top"),
            ("l", "top"),
            ("r", "top"),
        ];
        let elems = names(&["bot", "l", "r", "top"]);
        let q = Poset::from_leq(elems.clone(), |i, j| {
            order.contains(&(elems[i].as_str(), elems[j].as_str()))
        });
        assert_eq!(p, q);
        assert_eq!(q.comparable_pair_count(), 9);
    }

    // Naive reachability over a raw relation, used as the independent oracle.
    fn naive_closure(elems: &[String], rel: &[(String, String)]) -> Vec<Vec<bool>> {
        let n = elems.len();
        let idx: HashMap<&str, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in rel {
            m[idx[a.as_str()]][idx[b.as_str()]] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    fn check_order_laws(p: &Poset) {
        let n = p.len();
        let e = p.elements();
        for a in 0..n {
            assert!(p.leq(&e[a], &e[a]).unwrap(), "reflexivity at {}", e[a]);
            for b in 0..n {
                if a != b && p.leq(&e[a], &e[b]).unwrap() {
                    assert!(
                        !p.leq(&e[b], &e[a]).unwrap(),
                        "antisymmetry {}/{}",
                        e[a],
                        e[b]
                    );
                }
                for c in 0..n {
                    if p.leq(&e[a], &e[b]).unwrap() && p.leq(&e[b], &e[c]).unwrap() {
                        assert!(p.leq(&e[a], &e[c]).unwrap(), "transitivity");
                    }
                }
            }
        }
    }

    #[test]
    fn bounds_agree_with_brute_force_scan() {
        let p = Poset::from_relation(
            names(&["a", "b", "c", "d"]),
            owned(&[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]),
        )
        .unwrap();
        let e = p.elements();
        let brute_top: Vec<&String> = e
            .iter()
            .filter(|t| e.iter().all(|x| p.leq(x, t).unwrap()))
            .collect();
        let brute_bot: Vec<&String> = e
            .iter()
            .filter(|b| e.iter().all(|x| p.leq(b, x).unwrap()))
            .collect();
        assert_eq!(p.bounds(), (Some("d"), Some("a")));
        assert_eq!(brute_top, vec!["d"]);
        assert_eq!(brute_bot, vec!["a"]);
    }

    proptest::proptest! {
        // Random DAG via edges that only point from lower to higher index.
        #[test]
        fn closure_of_reduction_equals_closure_of_input(
            n in 1usize..12,
            edges in proptest::collection::vec((0usize..12, 0usize..12), 0..40),
        ) {
            let elems: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
            let rel: Vec<(String, String)> = edges
                .into_iter()
                .filter(|&(a, b)| a < b && b < n)
                .map(|(a, b)| (elems[a].clone(), elems[b].clone()))
                .collect();
            let p = transitive_reduction(rel.clone(), elems.clone()).unwrap();
            let oracle = naive_closure(&elems, &rel);
            let covers: Vec<(String, String)> = p
                .covers()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            let reduced = naive_closure(&elems, &covers);
            proptest::prop_assert_eq!(&oracle, &reduced);
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    proptest::prop_assert_eq!(p.leq(a, b).unwrap(), oracle[i][j]);
                }
            }
            check_order_laws(&p);
        }
    }
}
