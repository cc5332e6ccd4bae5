/// Memory footprint in words: one node ID, one label, or one small integer each.
pub trait Words {
    fn words(&self) -> usize;

    /// Part of [`Words::words`] held by forwarding machines on this machine's
    /// behalf. It counts toward global memory only.
    fn forwarded_words(&self) -> usize {
        0
    }
}

macro_rules! one_word {
    ($($t:ty),*) => {
        $(impl Words for $t {
            fn words(&self) -> usize {
                1
            }
        })*
    };
}

one_word!(u8, u16, u32, u64, usize, i32, i64, bool);

impl Words for () {
    fn words(&self) -> usize {
        0
    }
}

impl<T: Words> Words for Vec<T> {
    fn words(&self) -> usize {
        self.iter().map(Words::words).sum()
    }
}

impl<T: Words> Words for Option<T> {
    fn words(&self) -> usize {
        self.as_ref().map_or(0, Words::words)
    }
}

impl<A: Words, B: Words> Words for (A, B) {
    fn words(&self) -> usize {
        self.0.words() + self.1.words()
    }
}
