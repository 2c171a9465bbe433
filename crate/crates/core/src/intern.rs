use std::hash::Hash;

use rustc_hash::FxHashMap;

/// Assigns dense ids to values in first-seen order.
#[derive(Debug, Clone)]
pub(crate) struct Interner<T> {
    items: Vec<T>,
    index: FxHashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Interner<T> {
    pub(crate) fn new() -> Self {
        Interner {
            items: Vec::new(),
            index: FxHashMap::default(),
        }
    }

    pub(crate) fn intern(&mut self, t: T) -> usize {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        let i = self.items.len();
        self.index.insert(t.clone(), i);
        self.items.push(t);
        i
    }

    pub(crate) fn get(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub(crate) fn len(&self) -> usize {
        self.items.len()
    }

    pub(crate) fn items(&self) -> &[T] {
        &self.items
    }
}

impl<T: Clone + Eq + Hash> Default for Interner<T> {
    fn default() -> Self {
        Interner::new()
    }
}
