//! Reference-counted syntax nodes with a cached structural hash.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A node with its structural hash, computed once from the children's
/// cached hashes. Formulas produced by translation share subterms heavily,
/// and walking them as trees would take exponential time.
#[derive(Debug)]
pub(crate) struct Hashed<N> {
    pub(crate) hash: u64,
    pub(crate) node: N,
}

impl<N: Hash> Hashed<N> {
    pub(crate) fn new(node: N) -> Arc<Self> {
        let mut h = DefaultHasher::new();
        node.hash(&mut h);
        Arc::new(Hashed {
            hash: h.finish(),
            node,
        })
    }
}

macro_rules! shared_node {
    ($outer:ident, $node:ident) => {
        impl PartialEq for $outer {
            fn eq(&self, other: &Self) -> bool {
                std::sync::Arc::ptr_eq(&self.0, &other.0)
                    || (self.0.hash == other.0.hash && self.0.node == other.0.node)
            }
        }

        impl Eq for $outer {}

        impl std::hash::Hash for $outer {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                state.write_u64(self.0.hash);
            }
        }

        impl std::fmt::Debug for $outer {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                self.0.node.fmt(f)
            }
        }

        impl $outer {
            pub fn from_node(node: $node) -> Self {
                $outer($crate::syntax::shared::Hashed::new(node))
            }

            pub fn node(&self) -> &$node {
                &self.0.node
            }

            pub(crate) fn ptr(&self) -> *const $node {
                &self.0.node
            }
        }
    };
}

pub(crate) use shared_node;
