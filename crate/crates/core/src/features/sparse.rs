use serde::{Deserialize, Serialize};

/// A vector stored as `(column, value)` pairs sorted by column. Zero values
/// are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// Build from arbitrary `(column, value)` pairs. Values for repeated
    /// columns are summed; zeros are dropped.
    ///
    /// Panics if a column is `>= dim`.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> SparseVector {
        let mut entries: Vec<(usize, f64)> = entries.into_iter().collect();
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            assert!(i < dim, "column {i} out of range for dimension {dim}");
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|e| e.1 != 0.0);
        SparseVector { dim, entries: merged }
    }

    pub fn from_dense(values: &[f64]) -> SparseVector {
        SparseVector {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i, *v))
                .collect(),
        }
    }

    pub fn zeros(dim: usize) -> SparseVector {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn get(&self, column: usize) -> f64 {
        match self.entries.binary_search_by_key(&column, |e| e.0) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1.abs()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt()
    }

    pub fn dot_dense(&self, w: &[f64]) -> f64 {
        self.entries.iter().map(|&(i, v)| v * w[i]).sum()
    }

    pub fn scale(&mut self, factor: f64) {
        for e in &mut self.entries {
            e.1 *= factor;
        }
        self.entries.retain(|e| e.1 != 0.0);
    }

    /// Keep only `columns` (ascending), renumbering them `0..columns.len()`.
    pub fn project(&self, columns: &[usize]) -> SparseVector {
        let entries = columns
            .iter()
            .enumerate()
            .filter_map(|(new, &old)| {
                let v = self.get(old);
                (v != 0.0).then_some((new, v))
            })
            .collect();
        SparseVector {
            dim: columns.len(),
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_drops_zeros() {
        let v = SparseVector::new(5, [(3, 1.0), (1, 2.0), (3, 0.5), (4, 0.0)]);
        assert_eq!(v.entries(), &[(1, 2.0), (3, 1.5)]);
        assert_eq!(v.get(3), 1.5);
        assert_eq!(v.get(0), 0.0);
        assert_eq!(v.to_dense(), vec![0.0, 2.0, 0.0, 1.5, 0.0]);
    }

    #[test]
    fn dense_round_trip_and_projection() {
        let d = [0.0, -1.0, 2.0, 0.0];
        let v = SparseVector::from_dense(&d);
        assert_eq!(v.to_dense(), d);
        assert_eq!(v.project(&[2, 3]).to_dense(), vec![2.0, 0.0]);
    }

    #[test]
    #[should_panic]
    fn out_of_range_column() {
        SparseVector::new(2, [(2, 1.0)]);
    }
}
