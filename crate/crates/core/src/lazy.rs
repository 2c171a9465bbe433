use std::fmt;
use std::sync::OnceLock;

/// A derived index cached next to immutable data. Ignored by equality and
/// `Debug` so two structures with identical tables compare equal whether or
/// not their caches have been filled.
#[derive(Clone)]
pub(crate) struct Cache<T>(OnceLock<T>);

impl<T> Cache<T> {
    pub(crate) fn new() -> Self {
        Cache(OnceLock::new())
    }

    pub(crate) fn get_or_init(&self, f: impl FnOnce() -> T) -> &T {
        self.0.get_or_init(f)
    }
}

impl<T> Default for Cache<T> {
    fn default() -> Self {
        Cache::new()
    }
}

impl<T> PartialEq for Cache<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for Cache<T> {}

impl<T> fmt::Debug for Cache<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("..")
    }
}
