//! Planar rooted trees with uniform vertex arity, stored as preorder codes.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::combinat::binomial;
use crate::error::{precondition, Error, Result};

/// A planar tree whose internal vertices all have `n` inputs.
///
/// `code` lists the nodes in preorder (root first, children left to right),
/// `true` for an internal vertex and `false` for a leaf. Codes compare
/// lexicographically with leaf before vertex; that is the canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarTree {
    n: usize,
    code: Vec<bool>,
}

impl PlanarTree {
    /// The bare leaf, i.e. the identity in arity 1.
    pub fn leaf(n: usize) -> Self {
        Self {
            n,
            code: vec![false],
        }
    }

    /// The generator: one vertex with `n` leaves.
    pub fn corolla(n: usize) -> Self {
        let mut code = vec![true];
        code.extend(std::iter::repeat_n(false, n));
        Self { n, code }
    }

    pub fn from_code(n: usize, code: Vec<bool>) -> Result<Self> {
        if n < 2 {
            return precondition(format!("arity must be at least 2, got {n}"));
        }
        let mut open = 1usize;
        for (i, &internal) in code.iter().enumerate() {
            if open == 0 {
                return Err(Error::Parse(format!(
                    "code continues after the tree closed at {i}"
                )));
            }
            if internal {
                open += n - 1;
            } else {
                open -= 1;
            }
        }
        if open != 0 {
            return Err(Error::Parse("code ends with unfilled inputs".into()));
        }
        Ok(Self { n, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> &[bool] {
        &self.code
    }

    /// Number of internal vertices.
    pub fn vertices(&self) -> usize {
        self.code.iter().filter(|&&b| b).count()
    }

    /// Number of leaves, `p(n-1) + 1`.
    pub fn arity(&self) -> usize {
        self.code.len() - self.vertices()
    }

    /// Bracket notation: `·` for a leaf, `( ... )` around each vertex's inputs.
    pub fn to_brackets(&self) -> String {
        let mut out = String::new();
        let mut stack: Vec<usize> = Vec::new();
        for &internal in &self.code {
            if internal {
                out.push('(');
                stack.push(self.n);
            } else {
                out.push('·');
                close(&mut out, &mut stack);
            }
        }
        out
    }

    pub fn parse_brackets(n: usize, text: &str) -> Result<Self> {
        let code = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .filter_map(|c| match c {
                '(' => Some(Ok(true)),
                '·' | '.' | '*' => Some(Ok(false)),
                ')' => None,
                other => Some(Err(Error::Parse(format!("unexpected {other:?} in tree")))),
            })
            .collect::<Result<Vec<_>>>()?;
        let tree = Self::from_code(n, code)?;
        if tree.to_brackets() != text.replace(['.', '*'], "·") {
            return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
        }
        Ok(tree)
    }
}

fn close(out: &mut String, stack: &mut Vec<usize>) {
    while let Some(top) = stack.last_mut() {
        *top -= 1;
        if *top == 0 {
            stack.pop();
            out.push(')');
        } else {
            break;
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brackets())
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarTree[{}]", self.to_brackets())
    }
}

/// `p(n-1) + 1`, the arity reached by `p` copies of an `n`-ary operation.
pub fn arity_of(n: usize, p: usize) -> usize {
    p * (n - 1) + 1
}

/// Number of planar `n`-ary trees with `p` vertices, `C(np, p) / (p(n-1)+1)`.
pub fn fuss_catalan(n: usize, p: usize) -> BigUint {
    binomial(n * p, p) / BigUint::from(arity_of(n, p))
}

/// Number of planar trees with the given out-degree counts (leaves included
/// as degree 0): `(1/V) * V! / prod(count!)` with `V` the total node count.
pub(crate) fn plane_tree_count(degree_counts: &[(usize, usize)]) -> BigUint {
    let total: usize = degree_counts.iter().map(|(_, c)| c).sum();
    if total == 0 {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    let mut remaining = total;
    for &(_, c) in degree_counts {
        acc *= binomial(remaining, c);
        remaining -= c;
    }
    acc / BigUint::from(total)
}

/// Enumerates preorder codes over symbols with the given arities
/// (symbol 0 must be the leaf, arity 0), using each symbol exactly
/// `counts[s]` times. Output is lexicographic in symbol index.
pub(crate) fn enumerate_codes(arities: &[usize], counts: &[usize]) -> Vec<Vec<u8>> {
    debug_assert_eq!(arities[0], 0);
    let mut out = Vec::new();
    let mut remaining = counts.to_vec();
    let total: usize = counts.iter().sum();
    let mut current = Vec::with_capacity(total);
    fn go(
        arities: &[usize],
        remaining: &mut [usize],
        need: usize,
        left: usize,
        current: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if left == 0 {
            if need == 0 {
                out.push(current.clone());
            }
            return;
        }
        if need == 0 {
            return;
        }
        for s in 0..arities.len() {
            if remaining[s] == 0 {
                continue;
            }
            let next_need = need - 1 + arities[s];
            remaining[s] -= 1;
            // every open input needs at least one leaf below it
            if next_need <= remaining[0] && (next_need > 0 || left == 1) {
                current.push(s as u8);
                go(arities, remaining, next_need, left - 1, current, out);
                current.pop();
            }
            remaining[s] += 1;
        }
    }
    go(arities, &mut remaining, 1, total, &mut current, &mut out);
    out
}

/// All planar `n`-ary trees with `p` vertices in canonical order.
///
/// Fails with a resource error when there are more than `max_trees`.
pub fn enumerate_trees(n: usize, p: usize, max_trees: Option<usize>) -> Result<Vec<PlanarTree>> {
    if n < 2 {
        return precondition(format!("arity must be at least 2, got {n}"));
    }
    let count = fuss_catalan(n, p);
    if let Some(cap) = max_trees {
        if count > BigUint::from(cap) {
            return Err(Error::ResourceBound(format!(
                "{count} trees with n = {n}, p = {p} exceed the cap of {cap}"
            )));
        }
    }
    let codes = enumerate_codes(&[0, n], &[arity_of(n, p), p]);
    debug_assert_eq!(Some(codes.len()), count.to_usize());
    Ok(codes
        .into_iter()
        .map(|c| PlanarTree {
            n,
            code: c.into_iter().map(|s| s == 1).collect(),
        })
        .collect())
}
