//! Integer partitions indexing Schur classes.

use std::fmt;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `(cols^rows)`.
    pub fn rectangle(rows: usize, cols: u32) -> Partition {
        Partition::new(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition::new(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// All partitions obtained by adding a vertical strip of `r` boxes while
    /// staying inside the `rows × cols` box.
    pub fn add_vertical_strip(&self, r: usize, rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut base: Vec<u32> = (0..rows).map(|i| self.part(i)).collect();
        fn rec(base: &mut Vec<u32>, start: usize, left: usize, cols: u32, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition::new(base.clone()));
                return;
            }
            for i in start..base.len() {
                if base.len() - i < left {
                    break;
                }
                // row i may grow iff the row above (already final) stays weakly longer
                let above = if i == 0 { u32::MAX } else { base[i - 1] };
                if base[i] + 1 <= above && base[i] < cols {
                    base[i] += 1;
                    rec(base, i + 1, left - 1, cols, out);
                    base[i] -= 1;
                }
            }
        }
        if self.len() <= rows {
            rec(&mut base, 0, r, cols, &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let p = Partition::new(vec![1, 3, 0, 2]);
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.size(), 6);
        assert_eq!(p.conjugate(), Partition::new(vec![3, 2, 1]));
        assert_eq!(Partition::new(vec![4, 1]).conjugate(), Partition::new(vec![2, 1, 1, 1]));
        assert!(Partition::rectangle(2, 3).fits_in_box(2, 3));
        assert!(!Partition::new(vec![4]).fits_in_box(2, 3));
    }

    #[test]
    fn vertical_strips() {
        let mut s = Partition::new(vec![1]).add_vertical_strip(1, 3, 5);
        s.sort();
        assert_eq!(s, vec![Partition::new(vec![1, 1]), Partition::new(vec![2])]);
        // (1) + strip of 2 in 2 rows: (2,1) only
        assert_eq!(
            Partition::new(vec![1]).add_vertical_strip(2, 2, 5),
            vec![Partition::new(vec![2, 1])]
        );
        // width limit
        assert!(Partition::new(vec![2, 2]).add_vertical_strip(1, 2, 2).is_empty());
    }
}
