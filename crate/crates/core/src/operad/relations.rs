use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::graft::{graft, Node};
use super::tree::{arity_of, enumerate_codes, enumerate_trees, plane_tree_count, PlanarTree};
use super::{Family, OperadPresentation};
use crate::error::{precondition, Error, Result};
use crate::linalg::SparseMatrix;
use crate::series::Parity;

/// Finite linear combination of trees with the same `n` and vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVector {
    n: usize,
    p: usize,
    terms: BTreeMap<PlanarTree, BigRational>,
}

impl TreeVector {
    pub fn zero(n: usize, p: usize) -> Self {
        Self {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> usize {
        self.p
    }

    pub fn add_term(&mut self, tree: PlanarTree, coeff: BigRational) -> Result<()> {
        if tree.n() != self.n || tree.vertices() != self.p {
            return precondition(format!(
                "tree {tree} does not live in the component n = {}, p = {}",
                self.n, self.p
            ));
        }
        let slot = self.terms.entry(tree).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlanarTree, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, tree: &PlanarTree) -> BigRational {
        self.terms
            .get(tree)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `μ ∘_i μ` for 1-based `i`.
pub fn two_vertex_tree(n: usize, i: usize) -> Result<PlanarTree> {
    let mu = PlanarTree::corolla(n);
    let (tree, sign) = graft(&mu, i - 1, &mu, Parity::Odd)?;
    debug_assert_eq!(sign, 1);
    Ok(tree)
}

/// Generators of the relation space in arity `2n-1`.
///
/// Total: `μ∘_1μ - μ∘_{i+1}μ` for `i = 1..n-1`.
/// Partial: the single element `Σ_i (-1)^{(i+1)(n-1)} μ∘_iμ`.
pub fn relation_element(presentation: &OperadPresentation) -> Result<Vec<TreeVector>> {
    let n = presentation.n;
    let int = |k: i64| BigRational::from_integer(k.into());
    match presentation.family {
        Family::Total => (1..n)
            .map(|i| {
                let mut v = TreeVector::zero(n, 2);
                v.add_term(two_vertex_tree(n, 1)?, int(1))?;
                v.add_term(two_vertex_tree(n, i + 1)?, int(-1))?;
                Ok(v)
            })
            .collect(),
        Family::Partial => {
            let mut v = TreeVector::zero(n, 2);
            for i in 1..=n {
                let sign = if ((i + 1) * (n - 1)).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                v.add_term(two_vertex_tree(n, i)?, int(sign))?;
            }
            Ok(vec![v])
        }
    }
}

/// Number of trees with one vertex of arity `2n-1` and `p-2` of arity `n`.
pub fn skeleton_count(n: usize, p: usize) -> BigUint {
    if p < 2 {
        return BigUint::zero();
    }
    plane_tree_count(&[(0, arity_of(n, p)), (n, p - 2), (2 * n - 1, 1)])
}

/// Plugs `replacement` (a tree of arity `2n-1`) into the unique wide vertex
/// of a skeleton and returns the signed composite.
///
/// The natural vertex order is the skeleton's preorder with the wide vertex
/// expanded into the replacement's own preorder.
pub(crate) fn substitute(
    skeleton: &[usize],
    n: usize,
    replacement: &PlanarTree,
    parity: Parity,
) -> (PlanarTree, i8) {
    let wide = 2 * n - 1;
    let node = Node::from_arities(skeleton, |i, _| (i, 0));
    fn expand(node: Node, wide: usize, replacement: &PlanarTree) -> Node {
        match node {
            Node::Leaf => Node::Leaf,
            Node::Vertex(key, children) => {
                let children: Vec<Node> = children
                    .into_iter()
                    .map(|c| expand(c, wide, replacement))
                    .collect();
                if children.len() == wide {
                    let r = Node::from_tree(replacement, |j, _| (key.0, j));
                    r.fill_leaves(&mut children.into_iter())
                } else {
                    Node::Vertex(key, children)
                }
            }
        }
    }
    expand(node, wide, replacement).into_signed_tree(n, parity)
}

/// The relation matrix of one arity component: columns are the planar trees
/// with `p` vertices, rows span the component of the ideal generated by
/// the relations.
#[derive(Debug, Clone)]
pub struct RelationSpan {
    pub columns: Vec<PlanarTree>,
    pub matrix: SparseMatrix,
}

/// Limits on the size of a relation span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpanLimits {
    pub max_trees: Option<usize>,
    pub max_entries: Option<usize>,
}

/// One row per (one-wide-vertex skeleton, relation generator) pair.
pub fn relation_span(
    presentation: &OperadPresentation,
    p: usize,
    limits: SpanLimits,
) -> Result<RelationSpan> {
    if p < 2 {
        return precondition(format!("relations start at p = 2, got p = {p}"));
    }
    let n = presentation.n;
    let parity = presentation.parity();
    let generators = relation_element(presentation)?;
    let per_row: usize = generators.iter().map(TreeVector::len).max().unwrap_or(0);
    let rows = skeleton_count(n, p) * BigUint::from(generators.len());
    if let Some(cap) = limits.max_entries {
        if rows.clone() * BigUint::from(per_row) > BigUint::from(cap) {
            return Err(Error::ResourceBound(format!(
                "{rows} relation rows for n = {n}, p = {p} exceed the entry cap of {cap}"
            )));
        }
    }
    let columns = enumerate_trees(n, p, limits.max_trees)?;
    let index: HashMap<&PlanarTree, u32> = columns
        .iter()
        .enumerate()
        .map(|(i, t)| (t, i as u32))
        .collect();
    let relation_terms: Vec<Vec<(PlanarTree, i64)>> = generators
        .iter()
        .map(|g| {
            g.terms()
                .map(|(t, c)| {
                    let c = c
                        .is_integer()
                        .then(|| c.to_integer().to_i64())
                        .flatten()
                        .expect("relation coefficients are small integers");
                    (t.clone(), c)
                })
                .collect()
        })
        .collect();

    let skeletons = enumerate_codes(&[0, n, 2 * n - 1], &[arity_of(n, p), p - 2, 1]);
    let mut matrix = SparseMatrix::new(columns.len());
    let mut arities = Vec::new();
    for code in &skeletons {
        arities.clear();
        arities.extend(code.iter().map(|&s| [0, n, 2 * n - 1][s as usize]));
        for terms in &relation_terms {
            let mut row: Vec<(u32, i64)> = terms
                .iter()
                .map(|(r, c)| {
                    let (tree, sign) = substitute(&arities, n, r, parity);
                    (index[&tree], c * i64::from(sign))
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            matrix.push_row(merge_duplicates(row));
        }
    }
    Ok(RelationSpan { columns, matrix })
}

fn merge_duplicates(row: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}
