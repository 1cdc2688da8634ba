//! Quality sequences driving Phase 1 termination.

use serde::Serialize;

/// Sorted non-decreasing sequence of per-set quality values, padded with the
/// `pad` value up to the collection cap. Comparison is positional: the first
/// differing entry decides, so a strictly smaller sequence means strictly
/// better quality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct ValSeq {
    entries: Vec<u32>,
}

impl ValSeq {
    pub fn new(mut vals: Vec<u32>, cap: usize, pad: u32) -> ValSeq {
        assert!(vals.len() <= cap, "collection exceeds its cap");
        debug_assert!(vals.iter().all(|&v| v <= pad));
        vals.sort_unstable();
        vals.resize(cap, pad);
        ValSeq { entries: vals }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padded_and_sorted() {
        let v = ValSeq::new(vec![3, 1], 4, 5);
        assert_eq!(v.entries(), &[1, 3, 5, 5]);
    }

    #[test]
    fn comparison_is_positional() {
        let old = ValSeq::new(vec![3, 5], 3, 6);
        let replaced = ValSeq::new(vec![2], 3, 6);
        assert!(replaced < old);
        let extended = ValSeq::new(vec![3, 5, 4], 3, 6);
        assert!(extended < old);
        assert!(ValSeq::new(vec![3, 5], 3, 6) == old);
    }
}
