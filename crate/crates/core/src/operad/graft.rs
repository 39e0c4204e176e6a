//! Composition of tree monomials with Koszul signs.
//!
//! A tree monomial in the free operad on one odd generator is a planar tree
//! together with an ordering of its vertices, up to the sign of reordering.
//! The canonical representative orders vertices by preorder. Composing
//! `host ∘_i guest` orders host vertices before guest vertices; the sign of
//! the result is the parity of the permutation that sorts this ordering into
//! the preorder of the composite. For even degree every sign is `+1`.

use super::tree::PlanarTree;
use crate::error::{Error, Result};
use crate::series::Parity;

/// Sort key of a vertex in the "natural" ordering of a composite.
pub(crate) type VertexKey = (u32, u32);

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Leaf,
    Vertex(VertexKey, Vec<Node>),
}

impl Node {
    /// Parses a preorder code of node arities (0 = leaf); `key` receives the
    /// preorder index of each vertex and its arity.
    pub(crate) fn from_arities<F>(arities: &[usize], mut key: F) -> Node
    where
        F: FnMut(u32, usize) -> VertexKey,
    {
        let mut pos = 0usize;
        let mut vertex = 0u32;
        fn go<F: FnMut(u32, usize) -> VertexKey>(
            arities: &[usize],
            pos: &mut usize,
            vertex: &mut u32,
            key: &mut F,
        ) -> Node {
            let a = arities[*pos];
            *pos += 1;
            if a == 0 {
                return Node::Leaf;
            }
            let k = key(*vertex, a);
            *vertex += 1;
            let children = (0..a).map(|_| go(arities, pos, vertex, key)).collect();
            Node::Vertex(k, children)
        }
        let node = go(arities, &mut pos, &mut vertex, &mut key);
        debug_assert_eq!(pos, arities.len());
        node
    }

    pub(crate) fn from_tree<F>(tree: &PlanarTree, key: F) -> Node
    where
        F: FnMut(u32, usize) -> VertexKey,
    {
        let arities: Vec<usize> = tree
            .code()
            .iter()
            .map(|&b| if b { tree.n() } else { 0 })
            .collect();
        Self::from_arities(&arities, key)
    }

    /// Replaces the leaves of `self`, left to right, by `fill`.
    pub(crate) fn fill_leaves(self, fill: &mut impl Iterator<Item = Node>) -> Node {
        match self {
            Node::Leaf => fill.next().expect("enough subtrees to fill every leaf"),
            Node::Vertex(k, children) => Node::Vertex(
                k,
                children.into_iter().map(|c| c.fill_leaves(fill)).collect(),
            ),
        }
    }

    /// Replaces the leaf with index `target` (left to right) by `guest`.
    fn replace_leaf(self, target: usize, seen: &mut usize, guest: &mut Option<Node>) -> Node {
        match self {
            Node::Leaf => {
                let here = *seen;
                *seen += 1;
                if here == target {
                    guest.take().expect("single replacement")
                } else {
                    Node::Leaf
                }
            }
            Node::Vertex(k, children) => Node::Vertex(
                k,
                children
                    .into_iter()
                    .map(|c| c.replace_leaf(target, seen, guest))
                    .collect(),
            ),
        }
    }

    fn walk(&self, code: &mut Vec<bool>, keys: &mut Vec<VertexKey>) {
        match self {
            Node::Leaf => code.push(false),
            Node::Vertex(k, children) => {
                code.push(true);
                keys.push(*k);
                for c in children {
                    c.walk(code, keys);
                }
            }
        }
    }

    /// Preorder code (uniform arity `n`) and the sign of sorting the vertex
    /// keys into preorder.
    pub(crate) fn into_signed_tree(self, n: usize, parity: Parity) -> (PlanarTree, i8) {
        let mut code = Vec::new();
        let mut keys = Vec::new();
        self.walk(&mut code, &mut keys);
        let sign = if parity.is_odd() && inversions_odd(&keys) {
            -1
        } else {
            1
        };
        let tree = PlanarTree::from_code(n, code).expect("composite of valid trees is valid");
        (tree, sign)
    }
}

fn inversions_odd(keys: &[VertexKey]) -> bool {
    let mut parity = false;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] > keys[j] {
                parity = !parity;
            }
        }
    }
    parity
}

/// `host ∘_i guest`: plugs `guest` into leaf `leaf_index` (0-based, left to
/// right) of `host`, returning the composite and its Koszul sign.
pub fn graft(
    host: &PlanarTree,
    leaf_index: usize,
    guest: &PlanarTree,
    parity: Parity,
) -> Result<(PlanarTree, i8)> {
    if host.n() != guest.n() {
        return Err(Error::Precondition(format!(
            "cannot graft an arity-{} tree into an arity-{} tree",
            guest.n(),
            host.n()
        )));
    }
    let leaves = host.arity();
    if leaf_index >= leaves {
        return Err(Error::IndexOutOfRange {
            index: leaf_index,
            len: leaves,
        });
    }
    let offset = host.vertices() as u32;
    let host_node = Node::from_tree(host, |i, _| (i, 0));
    let guest_node = Node::from_tree(guest, |i, _| (offset + i, 0));
    let composite = host_node.replace_leaf(leaf_index, &mut 0, &mut Some(guest_node));
    Ok(composite.into_signed_tree(host.n(), parity))
}
