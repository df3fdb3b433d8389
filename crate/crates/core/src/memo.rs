//! Shared memo tables used by the caches of the various modules.

use parking_lot::RwLock;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

pub struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Hash + Eq + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Hash + Eq + Clone, V> Memo<K, V> {
    pub fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &K) -> Option<Arc<V>> {
        self.map.read().get(key).cloned()
    }

    /// Looks the key up and otherwise computes the value outside the lock, so
    /// nested lookups from `f` cannot deadlock.
    pub fn get_or_try<E>(&self, key: &K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = Arc::new(f()?);
        let mut w = self.map.write();
        Ok(w.entry(key.clone()).or_insert(v).clone())
    }

    pub fn get_or(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        self.get_or_try::<std::convert::Infallible>(key, || Ok(f()))
            .unwrap_or_else(|e| match e {})
    }
}
